#include "shapebag/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "shapebag/binary_io.hpp"
#include "shapebag/error.hpp"

namespace shapebag {

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw Error(ErrorCode::dataset, "image dimensions must be positive");
    pixels_.assign(static_cast<size_t>(width) * height, fill);
}

double GrayImage::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y);
}

double GrayImage::sample_bilinear(double x, double y) const {
    const double fx = std::floor(x), fy = std::floor(y);
    const int x0 = static_cast<int>(fx), y0 = static_cast<int>(fy);
    const double tx = x - fx, ty = y - fy;
    const double v00 = at_clamped(x0, y0), v10 = at_clamped(x0 + 1, y0);
    const double v01 = at_clamped(x0, y0 + 1), v11 = at_clamped(x0 + 1, y0 + 1);
    const double top = v00 + tx * (v10 - v00);
    const double bot = v01 + tx * (v11 - v01);
    return top + ty * (bot - top);
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw Error(ErrorCode::dataset, "mask dimensions must be positive");
    bits_.assign(static_cast<size_t>(width) * height, fill ? 1 : 0);
}

size_t BinaryMask::foreground_count() const {
    return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), uint8_t{1}));
}

namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
int next_header_int(std::istream& in, const std::filesystem::path& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c))
        throw Error(ErrorCode::dataset, "malformed PNM header: " + path.string());
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1 << 30)
            throw Error(ErrorCode::dataset, "PNM header value out of range: " + path.string());
        c = in.get();
    }
    if (c != EOF) in.unget();
    return static_cast<int>(v);
}

struct PnmHeader {
    int type = 0;  // 5 or 6
    int width = 0, height = 0, maxval = 0;
};

PnmHeader read_pnm_header(std::istream& in, const std::filesystem::path& path) {
    PnmHeader h;
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw Error(ErrorCode::dataset, "unsupported raster format (need binary P5/P6): " + path.string());
    h.type = magic[1] - '0';
    h.width = next_header_int(in, path);
    h.height = next_header_int(in, path);
    h.maxval = next_header_int(in, path);
    if (h.width < 1 || h.height < 1)
        throw Error(ErrorCode::dataset, "zero-dimension image: " + path.string());
    if (h.maxval < 1 || h.maxval > 65535)
        throw Error(ErrorCode::dataset, "invalid PNM maxval: " + path.string());
    // Single whitespace byte separates header from raster data.
    in.get();
    return h;
}

std::vector<uint16_t> read_samples(std::istream& in, const PnmHeader& h,
                                   const std::filesystem::path& path) {
    const size_t n = static_cast<size_t>(h.width) * h.height * (h.type == 6 ? 3 : 1);
    const bool wide = h.maxval > 255;
    std::vector<uint8_t> raw(n * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size())
        throw Error(ErrorCode::dataset, "truncated raster data: " + path.string());
    std::vector<uint16_t> samples(n);
    if (wide) {
        for (size_t i = 0; i < n; ++i)  // 16-bit PNM samples are big-endian
            samples[i] = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    } else {
        for (size_t i = 0; i < n; ++i) samples[i] = raw[i];
    }
    return samples;
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::dataset, "cannot open image file: " + path.string());
    const PnmHeader h = read_pnm_header(in, path);
    const auto samples = read_samples(in, h, path);

    GrayImage img(h.width, h.height);
    const double scale = 1.0 / h.maxval;
    if (h.type == 5) {
        for (size_t i = 0; i < img.pixels().size(); ++i)
            img.pixels()[i] = samples[i] * scale;
    } else {
        for (size_t i = 0; i < img.pixels().size(); ++i) {
            const double r = samples[3 * i] * scale;
            const double g = samples[3 * i + 1] * scale;
            const double b = samples[3 * i + 2] * scale;
            img.pixels()[i] = 0.299 * r + 0.587 * g + 0.114 * b;
        }
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::string bytes = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                        "\n255\n";
    bytes.reserve(bytes.size() + static_cast<size_t>(img.width()) * static_cast<size_t>(img.height()));
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 1.0);
            bytes.push_back(static_cast<char>(static_cast<uint8_t>(std::lround(v * 255.0))));
        }
    write_file_atomic(path, bytes);
}

BinaryMask load_mask(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::dataset, "cannot open mask file: " + path.string());
    const PnmHeader h = read_pnm_header(in, path);
    if (h.type != 5)
        throw Error(ErrorCode::dataset, "mask must be a P5 graymap: " + path.string());
    const auto samples = read_samples(in, h, path);
    BinaryMask mask(h.width, h.height);
    for (int y = 0; y < h.height; ++y)
        for (int x = 0; x < h.width; ++x)
            mask.set(x, y, samples[static_cast<size_t>(y) * h.width + x] != 0);
    return mask;
}

void save_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
    GrayImage img(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            img.at(x, y) = mask.at(x, y) ? 1.0 : 0.0;
    save_pgm(img, path);
}

BinaryMask threshold_mask(const GrayImage& img, double t) {
    BinaryMask mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            mask.set(x, y, img.at(x, y) > t);
    return mask;
}

}  // namespace shapebag
