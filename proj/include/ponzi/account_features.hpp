#pragma once

#include <string>
#include <vector>

#include "ponzi/types.hpp"

namespace ponzi::feat {

/// Ordered feature-name list; registry order is the canonical column order
/// in every matrix, CSV, and importance table downstream.
struct FeatureRegistry {
    std::vector<std::string> names;
    size_t arity() const { return names.size(); }
    int index_of(const std::string& name) const;
};

/// The 29 whole-lifetime account features, in canonical order.
const FeatureRegistry& account_registry();

/// Mean-absolute-difference Gini: sum_ij |xi - xj| / (2 n^2 mean).
/// All-zero input returns 0. Values must be non-negative and nonempty.
double gini(const std::vector<double>& values);

/// Sample skewness g1 = m3 / m2^(3/2) with central moments over n.
/// Returns 0 for fewer than 3 values or zero standard deviation.
double skewness(const std::vector<double>& values);

/// Computes all account features for one refined application.
std::vector<double> compute_account_features(const ApplicationRecord& app);

}  // namespace ponzi::feat
