#pragma once

#include <stdexcept>
#include <string>

namespace shapebag {

/// Stable error classes; the CLI maps them to exit codes and E_* tags.
enum class ErrorCode {
    usage = 1,       // bad arguments / config
    dataset = 2,     // unreadable input data, bad manifest, bad raster file
    vocab_size = 3,  // vocabulary larger than available descriptor count
    index = 4,       // index file malformed / version / checksum
    probe = 5,       // probe references an unknown object id
    internal = 10,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

    const char* tag() const {
        switch (code_) {
            case ErrorCode::usage: return "E_USAGE";
            case ErrorCode::dataset: return "E_DATASET";
            case ErrorCode::vocab_size: return "E_VOCAB_SIZE";
            case ErrorCode::index: return "E_INDEX";
            case ErrorCode::probe: return "E_PROBE";
            case ErrorCode::internal: return "E_INTERNAL";
        }
        return "E_INTERNAL";
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) { throw Error(ErrorCode::usage, msg); }
[[noreturn]] inline void throw_dataset(const std::string& msg) { throw Error(ErrorCode::dataset, msg); }
[[noreturn]] inline void throw_index(const std::string& msg) { throw Error(ErrorCode::index, msg); }

}  // namespace shapebag
