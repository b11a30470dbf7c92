#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ponzi/feature_matrix.hpp"

namespace ponzi::models {

enum class ModelKind { knn, random_forest, gbdt };
enum class Growth { level_wise, leaf_wise };
enum class FeatureSubsample { sqrt_features, all_features };

ModelKind model_kind_from_string(const std::string& s);
const char* to_string(ModelKind k);

struct ModelConfig {
    ModelKind kind = ModelKind::gbdt;
    size_t knn_k = 5;
    size_t trees = 100;
    size_t max_depth = 6;     // level-wise gbdt; 0 = unlimited (forest)
    size_t max_leaves = 31;   // leaf-wise gbdt
    double learning_rate = 0.1;
    Growth growth = Growth::leaf_wise;
    FeatureSubsample subsample_features = FeatureSubsample::all_features;
    bool bootstrap = true;    // forest only
    double l2_lambda = 1.0;   // gbdt leaf regularization
    uint64_t seed = 0;
};

/// Named presets matching the CLI's --model tokens:
/// knn | rf | gbdt-level | gbdt-leaf.
ModelConfig config_for_token(const std::string& token);

/// Flat binary tree; feature < 0 marks a leaf carrying `value`
/// (class vote fraction for CART, additive score for boosted trees).
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;
    double leaf_value(const std::vector<double>& row) const;
    size_t split_count() const;
};

struct Model {
    ModelConfig config;
    std::vector<std::string> feature_names;
    // knn state
    feat::ZScaler scaler;
    std::vector<std::vector<double>> knn_rows;  // standardized train rows
    std::vector<int> knn_labels;                // 1 = ponzi
    // tree state
    std::vector<Tree> trees;
    double base_score = 0.0;  // gbdt initial log-odds

    size_t arity() const { return feature_names.size(); }
};

struct Prediction {
    std::vector<Label> labels;
    std::vector<double> scores;  // in [0,1]; label = score >= 0.5
};

Model fit_knn(const feat::LabeledMatrix& train, size_t k);
Model fit_random_forest(const feat::LabeledMatrix& train, ModelConfig config);
/// Logistic-loss boosting; per round fits a regression tree to residuals with
/// Newton leaf values sum(y-p)/(sum(h)+lambda).
Model fit_gbdt(const feat::LabeledMatrix& train, ModelConfig config);
Model fit(const feat::LabeledMatrix& train, const ModelConfig& config);

Prediction predict(const Model& model, const std::vector<std::vector<double>>& rows);

/// Per-feature split counts over all trees; rejects non-tree models.
std::vector<uint64_t> feature_importance(const Model& model);

/// Mean logistic loss of a gbdt model truncated to the first `rounds` trees.
double gbdt_training_loss(const Model& model, const feat::LabeledMatrix& train, size_t rounds);

void save_model_json(const Model& model, const std::string& path);
Model load_model_json(const std::string& path);

}  // namespace ponzi::models
