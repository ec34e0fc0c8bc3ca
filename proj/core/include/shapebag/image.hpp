#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "shapebag/geometry.hpp"

namespace shapebag {

/// Row-major luminance image, values in [0,1].
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }

    double at(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    double& at(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }

    const std::vector<double>& pixels() const { return pixels_; }
    std::vector<double>& pixels() { return pixels_; }

    /// Nearest-border clamped access.
    double at_clamped(int x, int y) const;
    /// Bilinear sample with border clamping.
    double sample_bilinear(double x, double y) const;

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> pixels_;
};

/// Row-major foreground flags paired with an image of the same size.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const { return bits_[static_cast<size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool v) { bits_[static_cast<size_t>(y) * width_ + x] = v ? 1 : 0; }

    /// False outside the image bounds.
    bool at_safe(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_ && at(x, y);
    }

    size_t foreground_count() const;
    bool empty_foreground() const { return foreground_count() == 0; }

    bool operator==(const BinaryMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<uint8_t> bits_;
};

/// Reads a binary PGM (P5) or PPM (P6) file; 8- and 16-bit samples supported.
/// Color input is converted with luminance weights 0.299/0.587/0.114.
/// Throws Error(dataset) on unreadable or malformed input.
GrayImage load_image(const std::filesystem::path& path);

/// Writes an 8-bit binary PGM (P5). Used by the synthetic dataset generator
/// and debugging dumps; output is byte-deterministic.
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// Reads a P5 file as a mask: nonzero sample = foreground.
BinaryMask load_mask(const std::filesystem::path& path);

void save_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);

/// Foreground = pixel value strictly greater than t.
BinaryMask threshold_mask(const GrayImage& img, double t);

}  // namespace shapebag
