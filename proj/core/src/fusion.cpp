#include "shapebag/fusion.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "shapebag/error.hpp"

namespace shapebag {

double fused_distance(double dt, double ds, double w) {
    if (w < 0.0 || w > 1.0) throw_usage("fusion weight must be in [0, 1]");
    if (dt < 0.0 || ds < 0.0) throw_usage("modality distances must be nonnegative");
    return (1.0 - w) * dt + w * ds;
}

FusionObjective fusion_objective_from_name(const std::string& name) {
    if (name == "rank1") return FusionObjective::rank1;
    if (name == "margin") return FusionObjective::margin;
    throw_usage("unknown fusion objective '" + name + "' (expected rank1 or margin)");
}

const char* fusion_objective_name(FusionObjective o) {
    return o == FusionObjective::rank1 ? "rank1" : "margin";
}

std::vector<double> make_weight_grid(double grid_step) {
    if (grid_step <= 0.0 || grid_step > 1.0) throw_usage("grid_step must be in (0, 1]");
    const double steps_real = 1.0 / grid_step;
    const long steps = std::lround(steps_real);
    if (std::abs(steps * grid_step - 1.0) > 1e-9)
        throw_usage("grid_step must divide 1 evenly");
    std::vector<double> grid(static_cast<size_t>(steps) + 1);
    for (long i = 0; i <= steps; ++i) grid[static_cast<size_t>(i)] = std::min(1.0, i * grid_step);
    return grid;
}

namespace {

struct DistanceTables {
    std::vector<double> dt, ds;  // flattened queries x gallery
    std::vector<size_t> source;  // gallery index each query stems from
    size_t n_gallery = 0;

    double fused(size_t q, size_t g, double w) const {
        const size_t i = q * n_gallery + g;
        return (1.0 - w) * dt[i] + w * ds[i];
    }
};

DistanceTables tabulate(const std::vector<SignaturePair>& gallery,
                        const std::vector<std::vector<SignaturePair>>& warped_queries) {
    DistanceTables t;
    t.n_gallery = gallery.size();
    for (size_t obj = 0; obj < warped_queries.size(); ++obj)
        for (const SignaturePair& q : warped_queries[obj]) {
            t.source.push_back(obj);
            for (const SignaturePair& g : gallery) {
                t.dt.push_back(histogram_distance(q.texture, g.texture));
                t.ds.push_back(histogram_distance(q.shape, g.shape));
            }
        }
    return t;
}

double rank1_accuracy(const DistanceTables& t, double w) {
    const size_t n_queries = t.source.size();
    size_t hits = 0;
    for (size_t q = 0; q < n_queries; ++q) {
        const double own = t.fused(q, t.source[q], w);
        bool beaten = false;
        for (size_t g = 0; g < t.n_gallery && !beaten; ++g)
            beaten = g != t.source[q] && t.fused(q, g, w) < own;
        if (!beaten) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n_queries);
}

double margin_objective(const DistanceTables& t, double w) {
    const size_t n_queries = t.source.size();
    double intra = 0.0, inter = 0.0;
    size_t n_inter = 0;
    for (size_t q = 0; q < n_queries; ++q) {
        intra += t.fused(q, t.source[q], w);
        for (size_t g = 0; g < t.n_gallery; ++g)
            if (g != t.source[q]) {
                inter += t.fused(q, g, w);
                ++n_inter;
            }
    }
    return inter / static_cast<double>(n_inter) - intra / static_cast<double>(n_queries);
}

}  // namespace

FusionModel learn_weight(const std::vector<SignaturePair>& gallery,
                         const std::vector<std::vector<SignaturePair>>& warped_queries,
                         double grid_step, FusionObjective objective, int n_warps_per_image,
                         double warp_magnitude, uint64_t seed) {
    if (gallery.size() < 2) throw_usage("weight learning needs at least 2 gallery objects");
    if (warped_queries.size() != gallery.size())
        throw_usage("warped query lists must align with the gallery");
    for (const auto& views : warped_queries)
        if (views.empty()) throw_usage("every object needs at least one warped view");

    FusionModel m;
    m.grid = make_weight_grid(grid_step);
    m.objective = objective;
    m.n_warps_per_image = n_warps_per_image;
    m.warp_magnitude = warp_magnitude;
    m.seed = seed;

    const DistanceTables tables = tabulate(gallery, warped_queries);
    m.objective_values.reserve(m.grid.size());
    for (double w : m.grid)
        m.objective_values.push_back(objective == FusionObjective::rank1
                                         ? rank1_accuracy(tables, w)
                                         : margin_objective(tables, w));

    size_t best = 0;
    for (size_t i = 1; i < m.grid.size(); ++i) {
        const double v = m.objective_values[i];
        const double bv = m.objective_values[best];
        if (v > bv) {
            best = i;
        } else if (v == bv) {
            const double di = std::abs(m.grid[i] - 0.5);
            const double db = std::abs(m.grid[best] - 0.5);
            if (di < db || (di == db && m.grid[i] < m.grid[best])) best = i;
        }
    }
    m.w = m.grid[best];
    return m;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::index, "bad number in fusion block: " + s);
    }
}

uint64_t parse_u64(const std::string& s) {
    try {
        size_t used = 0;
        const uint64_t v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::index, "bad integer in fusion block: " + s);
    }
}

}  // namespace

std::string serialize_fusion_model(const FusionModel& m) {
    std::ostringstream out;
    out << "w = " << fmt_double(m.w) << "\n";
    out << "grid_step = " << fmt_double(m.grid.size() > 1 ? m.grid[1] - m.grid[0] : 1.0) << "\n";
    out << "objective = " << fusion_objective_name(m.objective) << "\n";
    out << "n_warps_per_image = " << m.n_warps_per_image << "\n";
    out << "warp_magnitude = " << fmt_double(m.warp_magnitude) << "\n";
    out << "seed = " << m.seed << "\n";
    out << "curve =";
    for (size_t i = 0; i < m.objective_values.size(); ++i)
        out << (i == 0 ? " " : ",") << fmt_double(m.objective_values[i]);
    out << "\n";
    return out.str();
}

FusionModel parse_fusion_model(const std::string& block) {
    FusionModel m;
    bool have_w = false, have_step = false, have_curve = false;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::index, "malformed fusion line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "w") {
            m.w = parse_double(value);
            have_w = true;
        } else if (key == "grid_step") {
            m.grid = make_weight_grid(parse_double(value));
            have_step = true;
        } else if (key == "objective") {
            if (value != "rank1" && value != "margin")
                throw Error(ErrorCode::index, "unknown fusion objective: " + value);
            m.objective = fusion_objective_from_name(value);
        } else if (key == "n_warps_per_image") {
            m.n_warps_per_image = static_cast<int>(parse_double(value));
        } else if (key == "warp_magnitude") {
            m.warp_magnitude = parse_double(value);
        } else if (key == "seed") {
            m.seed = parse_u64(value);
        } else if (key == "curve") {
            std::istringstream cs(value);
            std::string item;
            while (std::getline(cs, item, ','))
                m.objective_values.push_back(parse_double(trim(item)));
            have_curve = true;
        } else {
            throw Error(ErrorCode::index, "unknown fusion key: " + key);
        }
    }
    if (!have_w || !have_step || !have_curve)
        throw Error(ErrorCode::index, "incomplete fusion block");
    return m;
}

}  // namespace shapebag
