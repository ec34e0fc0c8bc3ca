#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace shapebag {

/// One dataset row: object id, view label (e.g. yaw in degrees), and the
/// image/mask pair. Paths are resolved relative to the manifest file.
struct DatasetRecord {
    std::string object_id;
    std::string view_label;
    std::filesystem::path image_path;
    std::filesystem::path mask_path;
};

/// Parses a manifest: UTF-8, one record per line as
/// object_id<TAB>view_label<TAB>image_path<TAB>mask_path, with '#' comment
/// lines and blank lines ignored. Raises Error(dataset) on malformed rows
/// and, unless allow_empty, on manifests with no records.
std::vector<DatasetRecord> load_manifest(const std::filesystem::path& path,
                                         bool allow_empty = false);

/// Content digest of the manifest file, recorded inside built indexes.
uint64_t manifest_digest(const std::filesystem::path& path);

}  // namespace shapebag
