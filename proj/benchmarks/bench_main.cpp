#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "shapebag/boundary_keypoints.hpp"
#include "shapebag/bon.hpp"
#include "shapebag/curvature.hpp"
#include "shapebag/dog.hpp"
#include "shapebag/gradient_descriptor.hpp"
#include "shapebag/histograms.hpp"
#include "shapebag/pipeline.hpp"
#include "shapebag/smoothing.hpp"
#include "shapebag/vocabulary.hpp"

namespace {

using namespace shapebag;

Contour regular_ngon(size_t n, double r) {
    Contour c;
    c.vertices.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
        c.vertices.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return c;
}

// wavy blob: enough curvature structure to produce keypoints at every octave
Contour blob_contour(size_t n) {
    Contour c;
    c.vertices.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
        const double r = 80.0 + 12.0 * std::sin(5.0 * a) + 6.0 * std::cos(9.0 * a);
        c.vertices.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return c;
}

GrayImage textured_image(int size, uint64_t seed) {
    GrayImage img(size, size);
    std::mt19937_64 rng(seed);
    for (double& p : img.pixels())
        p = static_cast<double>(rng() >> 11) * 0x1p-53;
    return gaussian_blur(img, 1.2);
}

std::vector<std::vector<double>> random_vectors(size_t n, size_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> out(n, std::vector<double>(dim));
    for (auto& v : out)
        for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1p-53;
    return out;
}

void BM_SmoothCorrected(benchmark::State& state) {
    const Contour c = regular_ngon(static_cast<size_t>(state.range(0)), 100.0);
    const SmoothingKernel kernel = SmoothingKernel::gaussian(2.0);
    for (auto _ : state) {
        Contour out = smooth_corrected(c, kernel);
        benchmark::DoNotOptimize(out.vertices.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CurvatureScan(benchmark::State& state) {
    const Contour c = blob_contour(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        double sum = 0.0;
        for (size_t i = 0; i < c.size(); ++i) sum += curvature_at(c, i);
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PyramidKeypoints(benchmark::State& state) {
    const Contour c = blob_contour(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        const auto kps = detect_keypoints(c, 4, 2.0, 0.02);
        benchmark::DoNotOptimize(kps.data());
    }
}

void BM_NormalProfile(benchmark::State& state) {
    const Contour c = blob_contour(512);
    const auto kps = detect_keypoints(c, 1, 2.0, 0.0);
    const ContourPyramid pyr(c, 1, 2.0);
    size_t i = 0;
    for (auto _ : state) {
        const auto d = extract_bon(pyr.level(0), kps[i], 13, 24);
        benchmark::DoNotOptimize(d);
        i = (i + 1) % kps.size();
    }
}

void BM_GaussianBlur(benchmark::State& state) {
    const GrayImage img = textured_image(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        GrayImage out = gaussian_blur(img, 1.6);
        benchmark::DoNotOptimize(out.pixels().data());
    }
    state.SetBytesProcessed(state.iterations() * state.range(0) * state.range(0) * 8);
}

void BM_DogDetect(benchmark::State& state) {
    const GrayImage img = textured_image(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        const auto kps = detect_texture_keypoints(img, 4, 3, 0.03);
        benchmark::DoNotOptimize(kps.data());
    }
}

void BM_GradientDescriptor(benchmark::State& state) {
    const GrayImage img = textured_image(128, 3);
    const auto kps = detect_texture_keypoints(img, 4, 3, 0.01);
    size_t i = 0;
    for (auto _ : state) {
        const auto d = extract_gradient_descriptor(img, kps[i]);
        benchmark::DoNotOptimize(d);
        i = (i + 1) % kps.size();
    }
}

void BM_ExtractFeatures(benchmark::State& state) {
    const GrayImage img = textured_image(160, 4);
    BinaryMask mask(160, 160, false);
    for (int y = 20; y < 140; ++y)
        for (int x = 30; x < 130; ++x)
            if (std::hypot(x - 80.0, y - 80.0) < 55.0) mask.set(x, y, true);
    RunConfig cfg;
    for (auto _ : state) {
        const ObjectFeatures f = extract_features(img, mask, cfg);
        benchmark::DoNotOptimize(f.texture_descriptors.data());
    }
}

void BM_KMeansTrain(benchmark::State& state) {
    const auto pool = random_vectors(2000, 26, 5);
    for (auto _ : state) {
        const Vocabulary v = train_vocabulary(pool, Modality::shape,
                                              static_cast<uint32_t>(state.range(0)), 7, 20, 1);
        benchmark::DoNotOptimize(v.centroids.data());
    }
}

void BM_Quantize(benchmark::State& state) {
    const auto pool = random_vectors(4000, 128, 6);
    const Vocabulary v = train_vocabulary(pool, Modality::texture, 256, 7, 10, 0);
    const auto probes = random_vectors(256, 128, 8);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(quantize(v, probes[i]));
        i = (i + 1) % probes.size();
    }
}

void BM_HistogramDistance(benchmark::State& state) {
    const auto pool = random_vectors(1200, 128, 9);
    const Vocabulary v = train_vocabulary(pool, Modality::texture, 64, 7, 10, 0);
    WordHistogram a = build_histogram(v, random_vectors(300, 128, 10));
    WordHistogram b = build_histogram(v, random_vectors(300, 128, 11));
    const IdfModel idf = fit_idf({a, b});
    a = apply_tfidf(a, idf);
    b = apply_tfidf(b, idf);
    for (auto _ : state) benchmark::DoNotOptimize(histogram_distance(a, b));
}

}  // namespace

BENCHMARK(BM_SmoothCorrected)->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(BM_CurvatureScan)->Arg(256)->Arg(2048);
BENCHMARK(BM_PyramidKeypoints)->Arg(256)->Arg(1024);
BENCHMARK(BM_NormalProfile);
BENCHMARK(BM_GaussianBlur)->Arg(128)->Arg(256);
BENCHMARK(BM_DogDetect)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientDescriptor);
BENCHMARK(BM_ExtractFeatures)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KMeansTrain)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Quantize);
BENCHMARK(BM_HistogramDistance);

BENCHMARK_MAIN();
