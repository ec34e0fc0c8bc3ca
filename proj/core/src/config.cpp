#include "shapebag/config.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <variant>
#include <vector>

#include "shapebag/binary_io.hpp"
#include "shapebag/digest.hpp"
#include "shapebag/error.hpp"
#include "shapebag/fusion.hpp"

namespace shapebag {

namespace {

using Field = std::variant<double RunConfig::*, int RunConfig::*, uint64_t RunConfig::*,
                           std::string RunConfig::*>;

struct KeySpec {
    const char* name;
    Field field;
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"kernel_sigma", &RunConfig::kernel_sigma},
        {"contour_octaves", &RunConfig::contour_octaves},
        {"min_abs_curvature", &RunConfig::min_abs_curvature},
        {"min_contour_length", &RunConfig::min_contour_length},
        {"bon_samples", &RunConfig::bon_samples},
        {"bon_span", &RunConfig::bon_span},
        {"dog_octaves", &RunConfig::dog_octaves},
        {"dog_levels_per_octave", &RunConfig::dog_levels_per_octave},
        {"dog_threshold", &RunConfig::dog_threshold},
        {"texture_vocab_size", &RunConfig::texture_vocab_size},
        {"shape_vocab_size", &RunConfig::shape_vocab_size},
        {"kmeans_max_iters", &RunConfig::kmeans_max_iters},
        {"mask_threshold", &RunConfig::mask_threshold},
        {"warps_per_image", &RunConfig::warps_per_image},
        {"warp_magnitude", &RunConfig::warp_magnitude},
        {"fusion_grid_step", &RunConfig::fusion_grid_step},
        {"fusion_objective", &RunConfig::fusion_objective},
        {"seed", &RunConfig::seed},
        {"threads", &RunConfig::threads},
    };
    return table;
}

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void set_field(RunConfig& cfg, const KeySpec& spec, const std::string& value) {
    const std::string what = std::string("config key '") + spec.name + "'";
    try {
        if (const auto* d = std::get_if<double RunConfig::*>(&spec.field)) {
            size_t used = 0;
            cfg.**d = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } else if (const auto* i = std::get_if<int RunConfig::*>(&spec.field)) {
            size_t used = 0;
            const long v = std::stol(value, &used);
            if (used != value.size() || v < INT_MIN || v > INT_MAX)
                throw std::invalid_argument(value);
            cfg.**i = static_cast<int>(v);
        } else if (const auto* u = std::get_if<uint64_t RunConfig::*>(&spec.field)) {
            size_t used = 0;
            cfg.**u = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } else {
            cfg.*std::get<std::string RunConfig::*>(spec.field) = value;
        }
    } catch (const std::logic_error&) {
        throw_usage(what + ": cannot parse value '" + value + "'");
    }
}

std::string get_field(const RunConfig& cfg, const KeySpec& spec) {
    if (const auto* d = std::get_if<double RunConfig::*>(&spec.field)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", cfg.**d);
        return buf;
    }
    if (const auto* i = std::get_if<int RunConfig::*>(&spec.field)) return std::to_string(cfg.**i);
    if (const auto* u = std::get_if<uint64_t RunConfig::*>(&spec.field))
        return std::to_string(cfg.**u);
    return cfg.*std::get<std::string RunConfig::*>(spec.field);
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const size_t eq = line.find('=');
        const std::string where = source + ":" + std::to_string(line_no);
        if (eq == std::string::npos) throw_usage(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool known = false;
        for (const KeySpec& spec : key_table())
            if (key == spec.name) {
                set_field(cfg, spec, value);
                known = true;
                break;
            }
        if (!known) throw_usage(where + ": unknown config key '" + key + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    apply_config_text(cfg, read_file_bytes(path, ErrorCode::usage), path.string());
}

void apply_env_overrides(RunConfig& cfg) {
    for (const KeySpec& spec : key_table()) {
        std::string env_name = "SHAPEBAG_";
        for (const char* p = spec.name; *p; ++p)
            env_name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*p))));
        if (const char* value = std::getenv(env_name.c_str())) set_field(cfg, spec, value);
    }
}

void validate_config(const RunConfig& cfg) {
    const auto fail = [](const char* key, const char* why) {
        throw_usage(std::string("config key '") + key + "' " + why);
    };
    if (!(cfg.kernel_sigma >= 0.0)) fail("kernel_sigma", "must be >= 0");
    if (cfg.contour_octaves < 1) fail("contour_octaves", "must be >= 1");
    if (!(cfg.min_abs_curvature >= 0.0)) fail("min_abs_curvature", "must be >= 0");
    if (cfg.min_contour_length < 3) fail("min_contour_length", "must be >= 3");
    if (cfg.bon_samples < 2) fail("bon_samples", "must be >= 2");
    if (cfg.bon_span < 1) fail("bon_span", "must be >= 1");
    if (cfg.dog_octaves < 1) fail("dog_octaves", "must be >= 1");
    if (cfg.dog_levels_per_octave < 1) fail("dog_levels_per_octave", "must be >= 1");
    if (!(cfg.dog_threshold >= 0.0)) fail("dog_threshold", "must be >= 0");
    if (cfg.texture_vocab_size < 1) fail("texture_vocab_size", "must be >= 1");
    if (cfg.shape_vocab_size < 1) fail("shape_vocab_size", "must be >= 1");
    if (cfg.kmeans_max_iters < 1) fail("kmeans_max_iters", "must be >= 1");
    if (!(cfg.mask_threshold >= 0.0 && cfg.mask_threshold < 1.0))
        fail("mask_threshold", "must be in [0, 1)");
    if (cfg.warps_per_image < 1) fail("warps_per_image", "must be >= 1");
    if (!(cfg.warp_magnitude >= 0.0 && cfg.warp_magnitude <= 0.3))
        fail("warp_magnitude", "must be in [0, 0.3]");
    make_weight_grid(cfg.fusion_grid_step);  // validates divisibility
    fusion_objective_from_name(cfg.fusion_objective);
    if (cfg.threads < 0) fail("threads", "must be >= 0");
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    for (const KeySpec& spec : key_table()) {
        out += spec.name;
        out += " = ";
        out += get_field(cfg, spec);
        out += "\n";
    }
    return out;
}

std::string config_digest(const RunConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(serialize_config(cfg))));
    return buf;
}

}  // namespace shapebag
