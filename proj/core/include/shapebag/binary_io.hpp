#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "shapebag/error.hpp"

namespace shapebag {

/// Little-endian append-only byte buffer for the artifact file formats.
class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void f32(float v) { u32(std::bit_cast<uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<uint32_t>(s.size()));
        buf_.append(s);
    }
    void raw(std::string_view s) { buf_.append(s); }

    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

/// Bounds-checked little-endian reader; failures raise Error with the code
/// chosen by the owning file format.
class ByteReader {
public:
    ByteReader(std::string_view data, ErrorCode on_error)
        : data_(data), code_(on_error) {}

    uint8_t u8() { return static_cast<uint8_t>(take(1)[0]); }
    uint32_t u32() {
        const std::string_view b = take(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(b[static_cast<size_t>(i)])) << (8 * i);
        return v;
    }
    uint64_t u64() {
        const std::string_view b = take(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(b[static_cast<size_t>(i)])) << (8 * i);
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const uint32_t n = u32();
        return std::string(take(n));
    }

    size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }

private:
    std::string_view take(size_t n) {
        if (remaining() < n) throw Error(code_, "truncated file");
        const std::string_view out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    std::string_view data_;
    size_t pos_ = 0;
    ErrorCode code_;
};

/// Reads a whole file; missing/unreadable paths raise Error(on_error).
std::string read_file_bytes(const std::filesystem::path& path, ErrorCode on_error);

/// Writes via a sibling temp file + rename so failures never leave a
/// partial artifact at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace shapebag
