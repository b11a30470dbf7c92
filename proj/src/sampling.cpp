#include "ponzi/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "ponzi/rng.hpp"

namespace ponzi::sampling {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

// indices of the `count` nearest candidates to `from`, ties by row index
std::vector<size_t> nearest(const std::vector<std::vector<double>>& z, size_t from,
                            const std::vector<size_t>& candidates, size_t count) {
    std::vector<std::pair<double, size_t>> dists;
    dists.reserve(candidates.size());
    for (size_t c : candidates) {
        if (c == from) continue;
        dists.emplace_back(sq_dist(z[from], z[c]), c);
    }
    const size_t take = std::min(count, dists.size());
    std::partial_sort(dists.begin(), dists.begin() + static_cast<long>(take), dists.end());
    std::vector<size_t> out;
    out.reserve(take);
    for (size_t i = 0; i < take; ++i) out.push_back(dists[i].second);
    return out;
}

}  // namespace

SmoteResult borderline_smote(const feat::LabeledMatrix& data, const SmoteConfig& config) {
    if (config.m < 1 || config.k < 1) throw std::invalid_argument("smote: m and k must be >= 1");
    const size_t n_ponzi = data.count(Label::ponzi);
    const size_t n_non = data.size() - n_ponzi;
    const Label minority = n_ponzi <= n_non ? Label::ponzi : Label::non_ponzi;
    const size_t n_minority = std::min(n_ponzi, n_non);
    const size_t n_majority = data.size() - n_minority;
    if (n_minority < 2) throw std::invalid_argument("smote: minority class needs at least 2 rows");

    SmoteResult result;
    result.data = data;

    const long want = std::lround(config.target_ratio * static_cast<double>(n_majority)) -
                      static_cast<long>(n_minority);
    if (want <= 0) return result;
    const size_t n_synthetic = static_cast<size_t>(want);

    const feat::ZScaler scaler = feat::ZScaler::fit(data.rows);
    std::vector<std::vector<double>> z(data.size());
    for (size_t i = 0; i < data.size(); ++i) z[i] = scaler.transform(data.rows[i]);

    std::vector<size_t> all_rows(data.size()), minority_rows;
    for (size_t i = 0; i < data.size(); ++i) {
        all_rows[i] = i;
        if (data.labels[i] == minority) minority_rows.push_back(i);
    }

    for (size_t p : minority_rows) {
        const auto neighborhood = nearest(z, p, all_rows, config.m);
        size_t majority_neighbors = 0;
        for (size_t q : neighborhood)
            if (data.labels[q] != minority) ++majority_neighbors;
        const size_t m_eff = neighborhood.size();
        if (2 * majority_neighbors >= m_eff && majority_neighbors < m_eff)
            result.danger_rows.push_back(p);
    }

    std::vector<size_t> seeds = result.danger_rows;
    if (seeds.empty()) {
        result.fallback_plain_smote = true;
        seeds = minority_rows;
    }

    // k nearest minority neighbors per seed, computed once
    std::vector<std::vector<size_t>> k_neighbors(seeds.size());
    for (size_t s = 0; s < seeds.size(); ++s)
        k_neighbors[s] = nearest(z, seeds[s], minority_rows, config.k);

    Rng rng(config.seed);
    for (size_t s = 0; s < n_synthetic; ++s) {
        const size_t seed_slot = s % seeds.size();
        const size_t p = seeds[seed_slot];
        const auto& neighbors = k_neighbors[seed_slot];
        const size_t q = neighbors[rng.uniform_index(neighbors.size())];
        const double u = rng.uniform();
        std::vector<double> row(data.arity());
        for (size_t j = 0; j < row.size(); ++j)
            row[j] = data.rows[p][j] + u * (data.rows[q][j] - data.rows[p][j]);
        result.data.addresses.push_back("smote_" + std::to_string(s));
        result.data.rows.push_back(std::move(row));
        result.data.labels.push_back(minority);
        result.data.types.emplace_back();
        ++result.synthesized;
    }
    return result;
}

}  // namespace ponzi::sampling
