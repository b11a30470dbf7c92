#pragma once

#include <string>
#include <vector>

#include "ponzi/account_features.hpp"
#include "ponzi/types.hpp"

namespace ponzi::feat {

enum class FeatureSet { acc, ts, acc_ts };

FeatureSet feature_set_from_string(const std::string& s);
const char* to_string(FeatureSet set);

/// Registry for a feature set; ACC-TS is the 29 account names followed by
/// the 516 `<series>__<measure>` names.
FeatureRegistry registry_for(FeatureSet set);

/// True when the named feature is a time-series feature.
bool is_ts_feature(const std::string& name);

/// Feature rows aligned to a registry, with per-row label and provenance.
struct LabeledMatrix {
    FeatureRegistry registry;
    std::vector<std::string> addresses;           // or synthetic ids
    std::vector<std::vector<double>> rows;
    std::vector<Label> labels;
    std::vector<std::optional<PonziType>> types;  // empty optional for non-ponzi

    size_t size() const { return rows.size(); }
    size_t arity() const { return registry.arity(); }
    size_t count(Label l) const;
};

/// Builds the feature matrix for a refined dataset; parallel across apps.
LabeledMatrix build_matrix(const Dataset& dataset, FeatureSet set, int t_hours);

/// Keeps the named features (any order given) materialized in registry order.
LabeledMatrix select_features(const LabeledMatrix& m, const std::vector<std::string>& names);

/// Per-column standardization statistics fit on one matrix and applied to
/// another (population sd; zero-sd columns pass through centered).
struct ZScaler {
    std::vector<double> mean;
    std::vector<double> sd;

    static ZScaler fit(const std::vector<std::vector<double>>& rows);
    std::vector<double> transform(const std::vector<double>& row) const;
};

void write_matrix_csv(const LabeledMatrix& m, const std::string& path);
LabeledMatrix read_matrix_csv(const std::string& path);

}  // namespace ponzi::feat
