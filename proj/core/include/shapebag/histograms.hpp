#pragma once

#include <vector>

#include "shapebag/vocabulary.hpp"

namespace shapebag {

/// Word histogram for one object. Raw form holds integral counts; the
/// tf-idf form is L2-normalized. Objects with no descriptors in a modality
/// carry an all-zero, zero-flagged histogram rather than being dropped.
struct WordHistogram {
    Modality modality = Modality::texture;
    std::vector<double> values;
    bool normalized = false;
    bool zero = false;

    bool operator==(const WordHistogram&) const = default;
};

struct IdfModel {
    Modality modality = Modality::texture;
    std::vector<double> idf;
    uint64_t n_docs = 0;

    bool operator==(const IdfModel&) const = default;
};

/// Raw counts of descriptor-to-word assignments.
WordHistogram build_histogram(const Vocabulary& v, const std::vector<std::vector<double>>& ds);

/// idf_w = ln(n_docs / max(1, df_w)) over a corpus of raw histograms.
IdfModel fit_idf(const std::vector<WordHistogram>& histograms);

/// weights_w = (counts_w / total) * idf_w, then L2-normalized.
/// Zero histograms (or histograms whose support has all-zero idf) pass
/// through as zero-flagged normalized vectors.
WordHistogram apply_tfidf(const WordHistogram& h, const IdfModel& m);

/// Euclidean distance between normalized histograms of the same modality.
/// Zero-flagged vectors take part as literal zero vectors, which puts them
/// at distance 1 from any unit vector.
double histogram_distance(const WordHistogram& a, const WordHistogram& b);

}  // namespace shapebag
