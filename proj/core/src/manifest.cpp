#include "shapebag/manifest.hpp"

#include <sstream>

#include "shapebag/binary_io.hpp"
#include "shapebag/digest.hpp"
#include "shapebag/error.hpp"

namespace shapebag {

namespace fs = std::filesystem;

std::vector<DatasetRecord> load_manifest(const fs::path& path, bool allow_empty) {
    const std::string text = read_file_bytes(path, ErrorCode::dataset);
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");

    std::vector<DatasetRecord> records;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string> fields;
        size_t start = 0;
        for (;;) {
            const size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (fields.size() != 4)
            throw Error(ErrorCode::dataset, where + ": expected 4 tab-separated fields, got " +
                                                std::to_string(fields.size()));
        for (const std::string& f : fields)
            if (f.empty()) throw Error(ErrorCode::dataset, where + ": empty field");

        DatasetRecord r;
        r.object_id = fields[0];
        r.view_label = fields[1];
        r.image_path = base / fields[2];
        r.mask_path = base / fields[3];
        records.push_back(std::move(r));
    }
    if (records.empty() && !allow_empty)
        throw Error(ErrorCode::dataset, path.string() + ": no records");
    return records;
}

uint64_t manifest_digest(const fs::path& path) {
    return fnv1a64(read_file_bytes(path, ErrorCode::dataset));
}

}  // namespace shapebag
