#include "shapebag/dog.hpp"

#include <algorithm>
#include <cmath>

#include "shapebag/error.hpp"

namespace shapebag {

namespace {

std::vector<double> gaussian_taps(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int j = -radius; j <= radius; ++j) {
        const double w = std::exp(-0.5 * j * j / (sigma * sigma));
        taps[static_cast<size_t>(j + radius)] = w;
        sum += w;
    }
    for (double& w : taps) w /= sum;
    return taps;
}

GrayImage decimate(const GrayImage& img) {
    GrayImage out((img.width() + 1) / 2, (img.height() + 1) / 2);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) out.at(x, y) = img.at(2 * x, 2 * y);
    return out;
}

GrayImage subtract(const GrayImage& a, const GrayImage& b) {
    GrayImage out(a.width(), a.height());
    for (size_t i = 0; i < out.pixels().size(); ++i)
        out.pixels()[i] = a.pixels()[i] - b.pixels()[i];
    return out;
}

bool strict_extremum(const std::vector<GrayImage>& dog, int l, int x, int y) {
    const double v = dog[static_cast<size_t>(l)].at(x, y);
    const bool positive = v > 0.0;
    for (int dl = -1; dl <= 1; ++dl)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dl == 0 && dy == 0 && dx == 0) continue;
                const double n = dog[static_cast<size_t>(l + dl)].at(x + dx, y + dy);
                if (positive ? n >= v : n <= v) return false;
            }
    return true;
}

}  // namespace

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
    if (sigma <= 0.0) return img;
    const std::vector<double> taps = gaussian_taps(sigma);
    const int radius = static_cast<int>(taps.size() / 2);

    GrayImage horiz(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j)
                acc += taps[static_cast<size_t>(j + radius)] * img.at_clamped(x + j, y);
            horiz.at(x, y) = acc;
        }

    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j)
                acc += taps[static_cast<size_t>(j + radius)] * horiz.at_clamped(x, y + j);
            out.at(x, y) = acc;
        }
    return out;
}

std::vector<TextureKeypoint> detect_texture_keypoints(const GrayImage& img, int n_octaves,
                                                      int levels_per_octave, double threshold) {
    std::vector<TextureKeypoint> keypoints;
    if (img.width() < 32 || img.height() < 32) return keypoints;
    if (n_octaves < 1 || levels_per_octave < 1) throw_usage("pyramid shape must be positive");

    const int s = levels_per_octave;
    std::vector<double> sigmas(static_cast<size_t>(s + 3));
    for (int l = 0; l < s + 3; ++l) sigmas[static_cast<size_t>(l)] = kDogBaseSigma * std::pow(2.0, static_cast<double>(l) / s);

    GrayImage base = gaussian_blur(img, kDogBaseSigma);
    for (int o = 0; o < n_octaves; ++o) {
        if (base.width() < 8 || base.height() < 8) break;

        std::vector<GrayImage> gauss;
        gauss.reserve(static_cast<size_t>(s + 3));
        gauss.push_back(base);
        for (int l = 1; l < s + 3; ++l) {
            const double inc = std::sqrt(sigmas[static_cast<size_t>(l)] * sigmas[static_cast<size_t>(l)] -
                                         sigmas[static_cast<size_t>(l - 1)] * sigmas[static_cast<size_t>(l - 1)]);
            gauss.push_back(gaussian_blur(gauss.back(), inc));
        }

        std::vector<GrayImage> dog;
        dog.reserve(static_cast<size_t>(s + 2));
        for (int l = 0; l < s + 2; ++l) dog.push_back(subtract(gauss[static_cast<size_t>(l + 1)], gauss[static_cast<size_t>(l)]));

        const double octave_scale = std::pow(2.0, o);
        for (int l = 1; l <= s; ++l)
            for (int y = 1; y < base.height() - 1; ++y)
                for (int x = 1; x < base.width() - 1; ++x) {
                    const double v = dog[static_cast<size_t>(l)].at(x, y);
                    if (std::abs(v) < threshold) continue;
                    if (!strict_extremum(dog, l, x, y)) continue;
                    TextureKeypoint kp;
                    kp.position = Vec2{x * octave_scale, y * octave_scale};
                    kp.sigma = kDogBaseSigma * std::pow(2.0, o + static_cast<double>(l) / s);
                    kp.response = v;
                    const double margin = descriptor_margin(kp);
                    if (kp.position.x < margin || kp.position.y < margin ||
                        kp.position.x > img.width() - 1 - margin ||
                        kp.position.y > img.height() - 1 - margin)
                        continue;
                    keypoints.push_back(kp);
                }

        base = decimate(gauss[static_cast<size_t>(s)]);
    }

    std::stable_sort(keypoints.begin(), keypoints.end(), [](const TextureKeypoint& a, const TextureKeypoint& b) {
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        if (a.position.y != b.position.y) return a.position.y < b.position.y;
        return a.position.x < b.position.x;
    });
    keypoints.erase(std::unique(keypoints.begin(), keypoints.end(),
                                [](const TextureKeypoint& a, const TextureKeypoint& b) {
                                    return a.position.x == b.position.x &&
                                           a.position.y == b.position.y && a.sigma == b.sigma;
                                }),
                    keypoints.end());
    return keypoints;
}

}  // namespace shapebag
