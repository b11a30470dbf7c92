#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ponzi/feature_matrix.hpp"
#include "ponzi/models.hpp"
#include "ponzi/sampling.hpp"

namespace ponzi::eval {

struct ConfusionCounts {
    size_t tp = 0, fp = 0, tn = 0, fn = 0;
    size_t total() const { return tp + fp + tn + fn; }
};

struct Metrics {
    double accuracy = 0, precision = 0, recall = 0, f1 = 0;
};

/// Positive class is ponzi. Degenerate denominators give 0; empty counts are
/// an error.
Metrics metrics(const ConfusionCounts& c);

ConfusionCounts confusion(const std::vector<Label>& truth, const std::vector<Label>& predicted);

struct SplitIndices {
    std::vector<size_t> train;
    std::vector<size_t> test;
};

/// Per-class proportional split: the test set takes floor(total * fraction)
/// rows with floor(minority * fraction) minority rows, remainder majority;
/// rounding favors the training set. Deterministic given seed.
SplitIndices stratified_split(const std::vector<Label>& labels, double test_fraction, uint64_t seed);

/// Stratified fold assignment; folds must not exceed the minority count.
std::vector<std::vector<size_t>> stratified_folds(const std::vector<Label>& labels, size_t folds,
                                                  uint64_t seed);

struct FoldMetrics {
    Metrics metrics;
    ConfusionCounts confusion;
};

std::vector<FoldMetrics> kfold_cv(const feat::LabeledMatrix& train, size_t folds,
                                  const models::ModelConfig& config, uint64_t seed);

struct ProtocolOptions {
    size_t repeats = 50;
    size_t folds = 5;  // 0 disables CV diagnostics
    double test_fraction = 0.2;
    uint64_t seed = 0;
    sampling::SmoteConfig smote;  // seed overridden per repeat
};

struct RepeatResult {
    size_t repeat = 0;
    uint64_t seed = 0;
    ConfusionCounts confusion;
    Metrics test;
    std::vector<FoldMetrics> cv;  // diagnostics, optional
};

struct EvaluationReport {
    std::string model_name;
    std::string feature_set;
    int t_hours = 0;
    size_t feature_count = 0;
    size_t repeats = 0;
    size_t folds = 0;
    double test_fraction = 0.2;
    uint64_t seed = 0;
    std::vector<RepeatResult> per_repeat;
    Metrics mean;
    double wall_time_s = 0.0;
};

/// One full protocol run: per repeat, split -> oversample train -> optional
/// CV diagnostics -> fit on the oversampled train -> evaluate on the
/// untouched test rows. Per-repeat seeds are seed + repeat index.
EvaluationReport run_protocol(const feat::LabeledMatrix& data, const models::ModelConfig& config,
                              const ProtocolOptions& options);

struct ExperimentPlan {
    std::vector<feat::FeatureSet> feature_sets = {feat::FeatureSet::acc, feat::FeatureSet::ts,
                                                  feat::FeatureSet::acc_ts};
    std::vector<int> interval_hours = {12, 24, 48};
    std::vector<std::string> model_tokens = {"knn", "rf", "gbdt-level", "gbdt-leaf"};
    size_t repeats = 50;
    size_t folds = 5;
    double test_fraction = 0.2;
    uint64_t seed = 0;
    sampling::SmoteConfig smote;
};

struct Experiment1Row {
    std::string feature_set;
    int t_hours = 0;  // 0 for the interval-free account set
    std::string model;
    EvaluationReport report;
};

std::vector<Experiment1Row> run_experiment1(const Dataset& dataset, const ExperimentPlan& plan);

struct ImportanceEntry {
    std::string name;
    uint64_t split_count = 0;
    bool is_ts = false;
};

/// Features ordered by leaf-wise gbdt split count (descending, ties by
/// registry order) from one pipeline fit at the plan seed.
std::vector<ImportanceEntry> importance_ranking(const feat::LabeledMatrix& data,
                                                const ExperimentPlan& plan);

struct Experiment2Point {
    size_t k = 0;
    double f1 = 0.0;
    double ts_share = 0.0;
};

struct Experiment2Result {
    std::vector<ImportanceEntry> ranking;
    std::vector<Experiment2Point> curve;
    size_t best_k = 0;
    double best_f1 = 0.0;
    std::vector<std::string> refined_names;  // top best_k, registry order
    size_t refined_acc_count = 0;
    size_t refined_ts_count = 0;
};

/// Importance sweep: re-runs the pipeline on the top-k features for
/// k = step, 2*step, ..., arity. Selected columns are materialized in
/// registry order so the top-arity run reproduces the full-set run exactly.
Experiment2Result run_experiment2(const feat::LabeledMatrix& data, const ExperimentPlan& plan,
                                  size_t step);

enum class HoldoutType { tree, handover, waterfall, all_three };
HoldoutType holdout_type_from_string(const std::string& s);
const char* to_string(HoldoutType t);

/// Removes every application of the held-out scheme type(s) from training and
/// tests on them plus non-ponzi rows sampled (floor(P*(1-rate)/rate), without
/// replacement) to reach the requested scam rate.
EvaluationReport run_experiment3(const feat::LabeledMatrix& data, const ExperimentPlan& plan,
                                 const models::ModelConfig& config, HoldoutType holdout,
                                 double scam_rate);

std::string report_to_json(const EvaluationReport& report, bool include_wall_time = true);

}  // namespace ponzi::eval
