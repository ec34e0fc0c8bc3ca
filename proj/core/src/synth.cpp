#include "shapebag/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "shapebag/binary_io.hpp"
#include "shapebag/digest.hpp"
#include "shapebag/dog.hpp"
#include "shapebag/error.hpp"
#include "shapebag/image.hpp"
#include "shapebag/rng.hpp"
#include "shapebag/warp.hpp"

namespace shapebag {

namespace fs = std::filesystem;

namespace {

struct ObjectImages {
    GrayImage image;
    BinaryMask mask;
};

/// Band-limited noise in [lo, hi]: per-pixel uniform draws blurred a little.
GrayImage noise_field(int canvas, double lo, double hi, double blur_sigma,
                      std::mt19937_64& rng) {
    GrayImage noise(canvas, canvas);
    for (double& p : noise.pixels()) p = uniform_double(rng, lo, hi);
    return gaussian_blur(noise, blur_sigma);
}

void apply_mask(ObjectImages& obj) {
    for (int y = 0; y < obj.image.height(); ++y)
        for (int x = 0; x < obj.image.width(); ++x)
            if (!obj.mask.at(x, y)) obj.image.at(x, y) = 0.0;
}

/// Noise-filled rectangle; shape nearly shared across the class, texture
/// unique per object.
ObjectImages make_textured_rect(int canvas, std::mt19937_64& rng) {
    ObjectImages obj{noise_field(canvas, 0.15, 1.0, 1.1, rng), BinaryMask(canvas, canvas)};
    const double cx = canvas / 2.0 + uniform_double(rng, -4.0, 4.0);
    const double cy = canvas / 2.0 + uniform_double(rng, -4.0, 4.0);
    const double hw = 0.24 * canvas * (1.0 + uniform_double(rng, -0.06, 0.06));
    const double hh = 0.17 * canvas * (1.0 + uniform_double(rng, -0.06, 0.06));
    const double angle = uniform_double(rng, -0.15, 0.15);
    const double ca = std::cos(angle), sa = std::sin(angle);
    for (int y = 0; y < canvas; ++y)
        for (int x = 0; x < canvas; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double u = ca * dx + sa * dy;
            const double v = -sa * dx + ca * dy;
            obj.mask.set(x, y, std::abs(u) <= hw && std::abs(v) <= hh);
        }
    apply_mask(obj);
    return obj;
}

/// Smooth blob with mild texture; both channels carry signal.
ObjectImages make_semi_blob(int canvas, std::mt19937_64& rng) {
    ObjectImages obj{noise_field(canvas, 0.35, 0.75, 1.6, rng), BinaryMask(canvas, canvas)};
    const double cx = canvas / 2.0 + uniform_double(rng, -3.0, 3.0);
    const double cy = canvas / 2.0 + uniform_double(rng, -3.0, 3.0);
    const double r0 = 0.21 * canvas * (1.0 + uniform_double(rng, -0.05, 0.05));
    double amp[4], phase[4];
    for (int k = 0; k < 4; ++k) {
        amp[k] = uniform_double(rng, 0.0, 0.09);
        phase[k] = uniform_double(rng, 0.0, 2.0 * std::numbers::pi);
    }
    for (int y = 0; y < canvas; ++y)
        for (int x = 0; x < canvas; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double theta = std::atan2(dy, dx);
            double r = r0;
            for (int k = 0; k < 4; ++k) r += r0 * amp[k] * std::cos((k + 2) * theta + phase[k]);
            obj.mask.set(x, y, dx * dx + dy * dy <= r * r);
        }
    apply_mask(obj);
    return obj;
}

/// Flat-filled star; texture words are scarce, the silhouette does the work.
ObjectImages make_smooth_star(int canvas, std::mt19937_64& rng) {
    ObjectImages obj{GrayImage(canvas, canvas), BinaryMask(canvas, canvas)};
    const double fill = 0.45 + uniform_double(rng, 0.0, 0.25);
    const double cx = canvas / 2.0 + uniform_double(rng, -3.0, 3.0);
    const double cy = canvas / 2.0 + uniform_double(rng, -3.0, 3.0);
    const double r0 = 0.20 * canvas * (1.0 + uniform_double(rng, -0.08, 0.08));
    const int petals = 5 + static_cast<int>(uniform_index(rng, 5));  // 5..9
    const double amp = uniform_double(rng, 0.18, 0.30);
    const double phase = uniform_double(rng, 0.0, 2.0 * std::numbers::pi);
    for (int y = 0; y < canvas; ++y)
        for (int x = 0; x < canvas; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double theta = std::atan2(dy, dx);
            const double r = r0 * (1.0 + amp * std::cos(petals * theta + phase));
            const bool inside = dx * dx + dy * dy <= r * r;
            obj.mask.set(x, y, inside);
            if (inside) obj.image.at(x, y) = fill;
        }
    return obj;
}

ObjectImages make_object(int class_id, int canvas, std::mt19937_64& rng) {
    switch (class_id) {
        case 0: return make_textured_rect(canvas, rng);
        case 1: return make_semi_blob(canvas, rng);
        default: return make_smooth_star(canvas, rng);
    }
}

std::string magnitude_label(double m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "m%.3f", m);
    return buf;
}

}  // namespace

SynthResult generate_synthetic_dataset(const fs::path& out_dir, const SynthOptions& opt) {
    if (opt.n_objects < 3 || opt.n_objects % 3 != 0)
        throw_usage("n_objects must be a positive multiple of 3");
    if (opt.views_per_magnitude < 1) throw_usage("views_per_magnitude must be >= 1");
    if (opt.canvas < 64) throw_usage("canvas must be at least 64 pixels");
    for (double m : opt.magnitudes)
        if (m < 0.0 || m > 0.3) throw_usage("warp magnitudes must be in [0, 0.3]");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::dataset, "cannot create " + out_dir.string());

    std::string gallery_lines = "# object_id\tview_label\timage\tmask\n";
    std::string probe_lines = gallery_lines;

    SynthResult result;
    for (int i = 0; i < opt.n_objects; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "obj%03d", i);
        std::mt19937_64 rng(derive_seed(opt.seed, fnv1a64(id)));
        const ObjectImages base = make_object(i % 3, opt.canvas, rng);

        const std::string img_name = std::string(id) + "_v0.pgm";
        const std::string mask_name = std::string(id) + "_v0_mask.pgm";
        save_pgm(base.image, out_dir / img_name);
        save_mask_pgm(base.mask, out_dir / mask_name);
        gallery_lines += std::string(id) + "\t0\t" + img_name + "\t" + mask_name + "\n";
        ++result.n_gallery;

        std::mt19937_64 warp_rng(derive_seed(opt.seed, fnv1a64(std::string(id) + "#probes")));
        for (double m : opt.magnitudes) {
            const std::string label = magnitude_label(m);
            for (int v = 1; v <= opt.views_per_magnitude; ++v) {
                const AffineWarp warp = random_warp(m, warp_rng);
                const std::string stem = std::string(id) + "_" + label + "_v" + std::to_string(v);
                save_pgm(warp_image(base.image, warp), out_dir / (stem + ".pgm"));
                save_mask_pgm(warp_mask(base.mask, warp), out_dir / (stem + "_mask.pgm"));
                probe_lines +=
                    std::string(id) + "\t" + label + "\t" + stem + ".pgm\t" + stem + "_mask.pgm\n";
                ++result.n_probes;
            }
        }
    }

    result.gallery_manifest = out_dir / "gallery.manifest";
    result.probe_manifest = out_dir / "probes.manifest";
    write_file_atomic(result.gallery_manifest, gallery_lines);
    write_file_atomic(result.probe_manifest, probe_lines);
    return result;
}

}  // namespace shapebag
