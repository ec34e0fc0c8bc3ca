#include "shapebag/histograms.hpp"

#include <cmath>

#include "shapebag/error.hpp"

namespace shapebag {

WordHistogram build_histogram(const Vocabulary& v, const std::vector<std::vector<double>>& ds) {
    WordHistogram h;
    h.modality = v.modality;
    h.values.assign(v.k, 0.0);
    h.zero = ds.empty();
    for (const auto& d : ds) h.values[quantize(v, d)] += 1.0;
    return h;
}

IdfModel fit_idf(const std::vector<WordHistogram>& histograms) {
    if (histograms.empty()) throw_usage("idf requires a non-empty corpus");
    const size_t k = histograms.front().values.size();
    IdfModel m;
    m.modality = histograms.front().modality;
    m.n_docs = histograms.size();
    m.idf.assign(k, 0.0);
    for (size_t w = 0; w < k; ++w) {
        uint64_t df = 0;
        for (const auto& h : histograms) {
            if (h.values.size() != k || h.modality != m.modality)
                throw_usage("idf corpus histograms disagree in shape or modality");
            if (h.values[w] > 0.0) ++df;
        }
        m.idf[w] = std::log(static_cast<double>(m.n_docs) / static_cast<double>(std::max<uint64_t>(1, df)));
    }
    return m;
}

WordHistogram apply_tfidf(const WordHistogram& h, const IdfModel& m) {
    if (h.values.size() != m.idf.size() || h.modality != m.modality)
        throw_usage("histogram does not match idf model");
    WordHistogram out;
    out.modality = h.modality;
    out.normalized = true;
    out.values.assign(h.values.size(), 0.0);

    double total = 0.0;
    for (double c : h.values) total += c;
    if (total <= 0.0) {
        out.zero = true;
        return out;
    }
    double norm2 = 0.0;
    for (size_t w = 0; w < h.values.size(); ++w) {
        out.values[w] = (h.values[w] / total) * m.idf[w];
        norm2 += out.values[w] * out.values[w];
    }
    if (norm2 <= 0.0) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        out.zero = true;
        return out;
    }
    const double norm = std::sqrt(norm2);
    for (double& v : out.values) v /= norm;
    return out;
}

double histogram_distance(const WordHistogram& a, const WordHistogram& b) {
    if (a.modality != b.modality) throw_usage("histogram modalities differ");
    if (a.values.size() != b.values.size()) throw_usage("histogram lengths differ");
    if (!a.normalized || !b.normalized) throw_usage("histogram distance needs normalized inputs");
    double acc = 0.0;
    for (size_t w = 0; w < a.values.size(); ++w) {
        const double d = a.values[w] - b.values[w];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace shapebag
