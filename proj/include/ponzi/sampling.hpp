#pragma once

#include <cstdint>
#include <vector>

#include "ponzi/feature_matrix.hpp"

namespace ponzi::sampling {

struct SmoteConfig {
    size_t m = 10;             // neighbors for danger detection (any class)
    size_t k = 5;              // minority neighbors for interpolation
    double target_ratio = 1.0; // minority/majority after sampling
    uint64_t seed = 0;
};

struct SmoteResult {
    feat::LabeledMatrix data;          // originals in order, synthetics appended
    std::vector<size_t> danger_rows;   // minority row indices flagged borderline
    bool fallback_plain_smote = false; // danger set was empty
    size_t synthesized = 0;
};

/// Borderline oversampling of the minority class: a minority point whose
/// m-neighborhood (over all rows, z-scored Euclidean) contains m' majority
/// points with m/2 <= m' < m is in the danger set; m' = m marks noise and is
/// skipped. Synthetic rows interpolate toward one of the point's k nearest
/// minority neighbors, round-robin over the danger set, until the class
/// ratio reaches target_ratio. Falls back to plain interpolation over all
/// minority points when the danger set is empty.
SmoteResult borderline_smote(const feat::LabeledMatrix& data, const SmoteConfig& config);

}  // namespace ponzi::sampling
