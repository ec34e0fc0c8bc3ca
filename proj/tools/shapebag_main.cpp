// shapebag: match object images across viewpoint change by fusing a
// visual-word texture channel with an apparent-shape channel.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shapebag/binary_io.hpp"
#include "shapebag/config.hpp"
#include "shapebag/error.hpp"
#include "shapebag/index.hpp"
#include "shapebag/pipeline.hpp"
#include "shapebag/synth.hpp"

namespace fs = std::filesystem;
using namespace shapebag;

namespace {

std::string fmt(double v, int digits = 9) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct GlobalArgs {
    std::string config_path;
    uint64_t seed = 0;
    int threads = -1;
    bool quiet = false;
    bool seed_given = false;
    bool threads_given = false;

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        apply_env_overrides(cfg);
        if (seed_given) cfg.seed = seed;
        if (threads_given) cfg.threads = threads;
        validate_config(cfg);
        std::cerr << "config_digest " << config_digest(cfg) << "\n";
        return cfg;
    }
};

int run_build(const RunConfig& cfg, const std::string& manifest, const std::string& out_path,
              bool quiet) {
    const Index index = build_index(manifest, cfg);
    save_index(index, out_path);
    if (!quiet) {
        uint64_t nt = 0, ns = 0;
        for (const ObjectSignature& sig : index.signatures) {
            nt += sig.n_texture_descriptors;
            ns += sig.n_shape_descriptors;
        }
        std::cout << "objects " << index.signatures.size() << "\n";
        std::cout << "texture_descriptors " << nt << "\n";
        std::cout << "shape_descriptors " << ns << "\n";
        std::cout << "fusion_weight " << fmt(index.fusion.w) << "\n";
        std::cout << "objective_curve";
        for (size_t i = 0; i < index.fusion.grid.size(); ++i)
            std::cout << " " << fmt(index.fusion.grid[i], 3) << ":"
                      << fmt(index.fusion.objective_values[i], 6);
        std::cout << "\n";
        std::cout << "index " << out_path << "\n";
    }
    return 0;
}

int run_query(const std::string& index_path, const std::string& image_path,
              const std::string& mask_path, size_t top_k, double weight, bool weight_given) {
    const Index index = load_index(index_path);
    const GrayImage img = load_image(image_path);
    const BinaryMask mask = load_mask(mask_path);
    std::optional<double> w;
    if (weight_given) w = weight;
    const auto results = query(index, img, mask, top_k, w);
    std::cout << "rank,object_id,distance,dt,ds\n";
    for (size_t i = 0; i < results.size(); ++i)
        std::cout << i + 1 << "," << results[i].object_id << "," << fmt(results[i].distance)
                  << "," << fmt(results[i].dt) << "," << fmt(results[i].ds) << "\n";
    return 0;
}

int run_eval(const RunConfig& cfg, const std::string& index_path, const std::string& probes_path,
             const std::vector<int>& ranks, const std::string& out_dir, bool quiet) {
    const Index index = load_index(index_path);
    const auto probes = load_manifest(probes_path, /*allow_empty=*/true);
    const RankReport report = evaluate(index, probes, ranks, cfg.threads);

    std::ostringstream summary;
    summary << "view_label,N,rate_fused,rate_texture,rate_shape\n";
    for (const auto& row : report.rows)
        summary << row.view_label << "," << row.n << "," << fmt(row.rate_fused) << ","
                << fmt(row.rate_texture) << "," << fmt(row.rate_shape) << "\n";

    std::ostringstream per_query;
    per_query << "object_id,view_label,rank_fused,rank_texture,rank_shape\n";
    for (const auto& q : report.per_query)
        per_query << q.object_id << "," << q.view_label << "," << q.rank_fused << ","
                  << q.rank_texture << "," << q.rank_shape << "\n";

    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "summary.csv", summary.str());
    write_file_atomic(fs::path(out_dir) / "per_query.csv", per_query.str());
    if (!quiet) std::cout << summary.str();
    return 0;
}

int run_synth(const RunConfig& cfg, const std::string& out_dir, int n_objects, int views,
              const std::string& magnitudes_csv, int canvas, bool quiet) {
    SynthOptions opt;
    opt.n_objects = n_objects;
    opt.seed = cfg.seed;
    opt.views_per_magnitude = views;
    opt.canvas = canvas;
    opt.magnitudes.clear();
    std::istringstream in(magnitudes_csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            opt.magnitudes.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw_usage("bad magnitude '" + item + "'");
        }
    }
    if (opt.magnitudes.empty()) throw_usage("need at least one warp magnitude");

    const SynthResult result = generate_synthetic_dataset(out_dir, opt);
    if (!quiet) {
        std::cout << "gallery_manifest " << result.gallery_manifest.string() << "\n";
        std::cout << "probe_manifest " << result.probe_manifest.string() << "\n";
        std::cout << "gallery_images " << result.n_gallery << "\n";
        std::cout << "probe_images " << result.n_probes << "\n";
    }
    return 0;
}

void print_keypoint_rows(std::ostream& out, const std::string& id, const ObjectFeatures& f) {
    for (const BoundaryKeypoint& kp : f.boundary_keypoints)
        out << id << ",shape," << kp.contour_id << "," << kp.vertex_index << "," << kp.octave
            << "," << fmt(kp.position.x) << "," << fmt(kp.position.y) << ",,"
            << fmt(kp.curvature) << ",\n";
    for (const TextureKeypoint& kp : f.texture_keypoints)
        out << id << ",texture,,,," << fmt(kp.position.x) << "," << fmt(kp.position.y) << ","
            << fmt(kp.sigma) << ",," << fmt(kp.response) << "\n";
}

int run_dump(const RunConfig& cfg, const std::string& image_path, const std::string& mask_path,
             std::string id, bool with_descriptors) {
    const GrayImage img = load_image(image_path);
    const BinaryMask mask = load_mask(mask_path);
    if (id.empty()) id = fs::path(image_path).stem().string();
    const ObjectFeatures f = extract_features(img, mask, cfg);

    if (!with_descriptors) {
        std::cout << "object_id,modality,contour_id,vertex_index,octave,x,y,sigma,curvature,response\n";
        print_keypoint_rows(std::cout, id, f);
        return 0;
    }
    std::cout << "object_id,modality,contour_id,vertex_index,octave,x,y,sigma,components...\n";
    for (const NormalProfileDescriptor& d : f.shape_descriptors) {
        std::cout << id << ",shape," << d.source.contour_id << "," << d.source.vertex_index << ","
                  << d.source.octave << "," << fmt(d.source.position.x) << ","
                  << fmt(d.source.position.y) << ",";
        for (double v : d.values) std::cout << "," << fmt(v, 6);
        std::cout << "\n";
    }
    for (const GradientDescriptor& d : f.texture_descriptors) {
        std::cout << id << ",texture,,,," << fmt(d.source.position.x) << ","
                  << fmt(d.source.position.y) << "," << fmt(d.source.sigma);
        for (double v : d.values) std::cout << "," << fmt(v, 6);
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-modality (texture + apparent shape) object image retrieval"};
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--config", global.config_path, "key = value config file");
    auto* seed_opt = app.add_option("--seed", global.seed, "override the RNG seed");
    auto* threads_opt =
        app.add_option("--threads", global.threads, "worker threads (0 = hardware)");
    app.add_flag("--quiet", global.quiet, "suppress human-oriented summaries");

    auto* build_cmd = app.add_subcommand("build", "build an index from a gallery manifest");
    std::string build_manifest, build_out;
    build_cmd->add_option("manifest", build_manifest, "gallery manifest")->required();
    build_cmd->add_option("-o,--out", build_out, "output index path")->required();

    auto* query_cmd = app.add_subcommand("query", "rank gallery objects for one query image");
    std::string query_index, query_image, query_mask;
    size_t query_top_k = 10;
    double query_weight = 0.0;
    query_cmd->add_option("index", query_index, "index file")->required();
    query_cmd->add_option("image", query_image, "query image (PGM/PPM)")->required();
    query_cmd->add_option("mask", query_mask, "query mask (PGM)")->required();
    query_cmd->add_option("--top-k", query_top_k, "result count (default 10)");
    auto* weight_opt =
        query_cmd->add_option("--weight", query_weight, "force fusion weight (0=texture, 1=shape)");

    auto* eval_cmd = app.add_subcommand("eval", "rank-N recognition rates over a probe manifest");
    std::string eval_index, eval_probes, eval_out_dir = ".";
    std::vector<int> eval_ranks = {1, 5, 10, 20};
    eval_cmd->add_option("index", eval_index, "index file")->required();
    eval_cmd->add_option("probes", eval_probes, "probe manifest")->required();
    eval_cmd->add_option("--ranks", eval_ranks, "rank thresholds (default 1 5 10 20)");
    eval_cmd->add_option("--out-dir", eval_out_dir, "where summary.csv and per_query.csv go");

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic gallery + probe corpus");
    std::string synth_out, synth_magnitudes = "0.08";
    int synth_objects = 30, synth_views = 5, synth_canvas = 160;
    synth_cmd->add_option("out_dir", synth_out, "output directory")->required();
    synth_cmd->add_option("--objects", synth_objects, "object count, multiple of 3 (default 30)");
    synth_cmd->add_option("--views", synth_views, "warped views per magnitude (default 5)");
    synth_cmd->add_option("--magnitudes", synth_magnitudes,
                          "comma-separated warp magnitudes (default 0.08)");
    synth_cmd->add_option("--canvas", synth_canvas, "canvas size in pixels (default 160)");

    auto* dump_kp_cmd = app.add_subcommand("dump-keypoints", "CSV of detected keypoints");
    std::string dump_image, dump_mask, dump_id;
    dump_kp_cmd->add_option("image", dump_image, "image")->required();
    dump_kp_cmd->add_option("mask", dump_mask, "mask")->required();
    dump_kp_cmd->add_option("--id", dump_id, "object id column (default: image stem)");

    auto* dump_desc_cmd = app.add_subcommand("dump-descriptors", "CSV of extracted descriptors");
    std::string dump2_image, dump2_mask, dump2_id;
    dump_desc_cmd->add_option("image", dump2_image, "image")->required();
    dump_desc_cmd->add_option("mask", dump2_mask, "mask")->required();
    dump_desc_cmd->add_option("--id", dump2_id, "object id column (default: image stem)");

    try {
        app.parse(argc, argv);
        global.seed_given = seed_opt->count() > 0;
        global.threads_given = threads_opt->count() > 0;
        const RunConfig cfg = global.resolve();

        if (*build_cmd) return run_build(cfg, build_manifest, build_out, global.quiet);
        if (*query_cmd)
            return run_query(query_index, query_image, query_mask, query_top_k, query_weight,
                             weight_opt->count() > 0);
        if (*eval_cmd)
            return run_eval(cfg, eval_index, eval_probes, eval_ranks, eval_out_dir, global.quiet);
        if (*synth_cmd)
            return run_synth(cfg, synth_out, synth_objects, synth_views, synth_magnitudes,
                             synth_canvas, global.quiet);
        if (*dump_kp_cmd) return run_dump(cfg, dump_image, dump_mask, dump_id, false);
        if (*dump_desc_cmd) return run_dump(cfg, dump2_image, dump2_mask, dump2_id, true);
        return static_cast<int>(ErrorCode::usage);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorCode::usage);
    } catch (const Error& e) {
        std::cerr << e.tag() << ": " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL: " << e.what() << "\n";
        return static_cast<int>(ErrorCode::internal);
    }
}
