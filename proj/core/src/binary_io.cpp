#include "shapebag/binary_io.hpp"

#include <fstream>
#include <system_error>

namespace shapebag {

namespace fs = std::filesystem;

std::string read_file_bytes(const fs::path& path, ErrorCode on_error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(on_error, "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(on_error, "read failed on " + path.string());
    return bytes;
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::dataset, "cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw Error(ErrorCode::dataset, "write failed on " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::dataset, "cannot move temp file onto " + path.string());
    }
}

}  // namespace shapebag
