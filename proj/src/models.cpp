#include "ponzi/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>

#include <json.hpp>

#include "ponzi/rng.hpp"

namespace ponzi::models {

namespace {

constexpr double kMinGain = 1e-12;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

int label_int(Label l) { return l == Label::ponzi ? 1 : 0; }

// ---------------------------------------------------------------------------
// Split search
//
// Column orders over the full training matrix are sorted once per fit and
// reused by every tree; a node evaluates a feature either by walking the full
// sorted column and masking rows outside the node (large nodes) or by
// gathering and sorting just its own rows (small nodes).
// ---------------------------------------------------------------------------

struct TrainData {
    const std::vector<std::vector<double>>& rows;
    std::vector<std::vector<uint32_t>> sorted_columns;  // per feature, row ids ascending by value

    explicit TrainData(const std::vector<std::vector<double>>& r) : rows(r) {
        const size_t arity = rows.empty() ? 0 : rows[0].size();
        sorted_columns.resize(arity);
        for (size_t f = 0; f < arity; ++f) {
            auto& col = sorted_columns[f];
            col.resize(rows.size());
            for (uint32_t i = 0; i < rows.size(); ++i) col[i] = i;
            std::stable_sort(col.begin(), col.end(), [&](uint32_t a, uint32_t b) {
                return rows[a][f] < rows[b][f];
            });
        }
    }
};

struct SplitCandidate {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;  // impurity decrease or boosting gain
};

// Accumulates (value, w0, w1) triples in sorted-value order and scans the
// midpoints between consecutive distinct values.
template <typename Accum>
SplitCandidate best_split_for_feature(const TrainData& data, const std::vector<uint32_t>& node_rows,
                                       const std::vector<uint8_t>& in_node, size_t feature,
                                       Accum&& accum) {
    thread_local std::vector<std::pair<double, uint32_t>> scratch;
    scratch.clear();
    const bool walk_full = node_rows.size() * 4 >= data.rows.size();
    if (walk_full) {
        for (uint32_t row : data.sorted_columns[feature])
            if (in_node[row]) scratch.emplace_back(data.rows[row][feature], row);
    } else {
        for (uint32_t row : node_rows) scratch.emplace_back(data.rows[row][feature], row);
        std::stable_sort(scratch.begin(), scratch.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    SplitCandidate best;
    for (size_t i = 0; i + 1 < scratch.size(); ++i) {
        accum.push(scratch[i].second);
        if (scratch[i].first == scratch[i + 1].first) continue;
        const double score = accum.score();
        if (score > best.score + kMinGain || (!best.valid && score > kMinGain)) {
            best.valid = true;
            best.feature = static_cast<int>(feature);
            best.threshold = scratch[i].first + (scratch[i + 1].first - scratch[i].first) / 2.0;
            best.score = score;
        }
    }
    return best;
}

// Gini impurity decrease for weighted binary class counts.
struct GiniAccum {
    const std::vector<double>& weights;  // bootstrap multiplicity per row
    const std::vector<int>& labels;
    double total_w, total_w1, parent_impurity;
    double left_w = 0.0, left_w1 = 0.0;

    GiniAccum(const std::vector<double>& w, const std::vector<int>& y, double tw, double tw1)
        : weights(w), labels(y), total_w(tw), total_w1(tw1) {
        const double p = total_w1 / total_w;
        parent_impurity = 2.0 * p * (1.0 - p);
    }
    void push(uint32_t row) {
        left_w += weights[row];
        left_w1 += weights[row] * labels[row];
    }
    double score() const {
        const double right_w = total_w - left_w;
        if (left_w <= 0.0 || right_w <= 0.0) return 0.0;
        const double pl = left_w1 / left_w;
        const double pr = (total_w1 - left_w1) / right_w;
        const double child = (left_w * 2.0 * pl * (1.0 - pl) + right_w * 2.0 * pr * (1.0 - pr)) / total_w;
        return parent_impurity - child;
    }
};

// Newton gain for logistic boosting with L2 leaf regularization.
struct GradAccum {
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    double total_g, total_h, lambda;
    double left_g = 0.0, left_h = 0.0;

    GradAccum(const std::vector<double>& g, const std::vector<double>& h, double tg, double th,
              double lam)
        : grad(g), hess(h), total_g(tg), total_h(th), lambda(lam) {}
    void push(uint32_t row) {
        left_g += grad[row];
        left_h += hess[row];
    }
    double score() const {
        const double right_g = total_g - left_g;
        const double right_h = total_h - left_h;
        const double parent = total_g * total_g / (total_h + lambda);
        return 0.5 * (left_g * left_g / (left_h + lambda) + right_g * right_g / (right_h + lambda) -
                      parent);
    }
};

std::vector<size_t> pick_features(size_t arity, FeatureSubsample mode, Rng& rng) {
    std::vector<size_t> all(arity);
    for (size_t i = 0; i < arity; ++i) all[i] = i;
    if (mode == FeatureSubsample::all_features) return all;
    const size_t take = std::max<size_t>(1, static_cast<size_t>(std::lround(std::sqrt(
                                                static_cast<double>(arity)))));
    for (size_t i = 0; i < take; ++i) {
        const size_t j = i + static_cast<size_t>(rng.uniform_index(arity - i));
        std::swap(all[i], all[j]);
    }
    all.resize(take);
    std::sort(all.begin(), all.end());  // evaluation order independent of draw order
    return all;
}

struct NodeState {
    std::vector<uint32_t> rows;
    int node_id = -1;
    size_t depth = 0;
    SplitCandidate split;
};

// ---------------------------------------------------------------------------
// CART (classification, gini)
// ---------------------------------------------------------------------------

Tree grow_cart_tree(const TrainData& data, const std::vector<int>& labels,
                    const std::vector<double>& weights, const ModelConfig& config, Rng& rng) {
    Tree tree;
    std::vector<uint8_t> in_node(data.rows.size(), 0);

    std::vector<NodeState> pending;
    {
        NodeState root;
        for (uint32_t i = 0; i < data.rows.size(); ++i)
            if (weights[i] > 0.0) root.rows.push_back(i);
        tree.nodes.emplace_back();
        root.node_id = 0;
        pending.push_back(std::move(root));
    }

    auto leaf_fraction = [&](const std::vector<uint32_t>& rows) {
        double w = 0.0, w1 = 0.0;
        for (uint32_t r : rows) {
            w += weights[r];
            w1 += weights[r] * labels[r];
        }
        return w > 0.0 ? w1 / w : 0.0;
    };

    while (!pending.empty()) {
        NodeState node = std::move(pending.back());
        pending.pop_back();

        const bool depth_ok = config.max_depth == 0 || node.depth < config.max_depth;
        SplitCandidate best;
        if (depth_ok && node.rows.size() >= 2) {
            double w = 0.0, w1 = 0.0;
            for (uint32_t r : node.rows) {
                w += weights[r];
                w1 += weights[r] * labels[r];
            }
            if (w1 > 0.0 && w1 < w) {
                for (uint32_t r : node.rows) in_node[r] = 1;
                for (size_t f : pick_features(data.rows[0].size(), config.subsample_features, rng)) {
                    GiniAccum accum(weights, labels, w, w1);
                    const auto cand = best_split_for_feature(data, node.rows, in_node, f, accum);
                    if (cand.valid && (!best.valid || cand.score > best.score + kMinGain)) best = cand;
                }
                for (uint32_t r : node.rows) in_node[r] = 0;
            }
        }

        if (!best.valid) {
            tree.nodes[node.node_id].feature = -1;
            tree.nodes[node.node_id].value = leaf_fraction(node.rows);
            continue;
        }

        NodeState left, right;
        left.depth = right.depth = node.depth + 1;
        for (uint32_t r : node.rows)
            (data.rows[r][static_cast<size_t>(best.feature)] < best.threshold ? left.rows
                                                                              : right.rows)
                .push_back(r);
        const int left_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        tree.nodes[node.node_id].feature = best.feature;
        tree.nodes[node.node_id].threshold = best.threshold;
        tree.nodes[node.node_id].left = left_id;
        tree.nodes[node.node_id].right = left_id + 1;
        left.node_id = left_id;
        right.node_id = left_id + 1;
        pending.push_back(std::move(left));
        pending.push_back(std::move(right));
    }
    return tree;
}

// ---------------------------------------------------------------------------
// Boosted regression trees
// ---------------------------------------------------------------------------

Tree grow_regression_tree(const TrainData& data, const std::vector<double>& grad,
                          const std::vector<double>& hess, const ModelConfig& config, Rng& rng) {
    Tree tree;
    std::vector<uint8_t> in_node(data.rows.size(), 0);
    const double lambda = config.l2_lambda;

    auto evaluate = [&](NodeState& node) {
        node.split = SplitCandidate{};
        if (node.rows.size() < 2) return;
        double g = 0.0, h = 0.0;
        for (uint32_t r : node.rows) {
            g += grad[r];
            h += hess[r];
        }
        for (uint32_t r : node.rows) in_node[r] = 1;
        for (size_t f : pick_features(data.rows[0].size(), config.subsample_features, rng)) {
            GradAccum accum(grad, hess, g, h, lambda);
            const auto cand = best_split_for_feature(data, node.rows, in_node, f, accum);
            if (cand.valid && (!node.split.valid || cand.score > node.split.score + kMinGain))
                node.split = cand;
        }
        for (uint32_t r : node.rows) in_node[r] = 0;
    };

    auto make_leaf = [&](const NodeState& node) {
        double g = 0.0, h = 0.0;
        for (uint32_t r : node.rows) {
            g += grad[r];
            h += hess[r];
        }
        tree.nodes[node.node_id].feature = -1;
        // residual fit: leaf = sum(y - p) / (sum(h) + lambda) = -G/(H+lambda)
        tree.nodes[node.node_id].value = -g / (h + lambda);
    };

    auto split_node = [&](NodeState& node, NodeState& left, NodeState& right) {
        const int left_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        tree.nodes[node.node_id].feature = node.split.feature;
        tree.nodes[node.node_id].threshold = node.split.threshold;
        tree.nodes[node.node_id].left = left_id;
        tree.nodes[node.node_id].right = left_id + 1;
        left.node_id = left_id;
        right.node_id = left_id + 1;
        left.depth = right.depth = node.depth + 1;
        for (uint32_t r : node.rows)
            (data.rows[r][static_cast<size_t>(node.split.feature)] < node.split.threshold
                 ? left.rows
                 : right.rows)
                .push_back(r);
    };

    NodeState root;
    for (uint32_t i = 0; i < data.rows.size(); ++i) root.rows.push_back(i);
    tree.nodes.emplace_back();
    root.node_id = 0;

    if (config.growth == Growth::level_wise) {
        std::vector<NodeState> level;
        level.push_back(std::move(root));
        while (!level.empty()) {
            std::vector<NodeState> next;
            for (auto& node : level) {
                if (node.depth < config.max_depth) evaluate(node);
                if (!node.split.valid) {
                    make_leaf(node);
                    continue;
                }
                NodeState left, right;
                split_node(node, left, right);
                next.push_back(std::move(left));
                next.push_back(std::move(right));
            }
            level = std::move(next);
        }
    } else {
        // leaf-wise: always split the open leaf with the largest gain
        auto cmp = [](const NodeState& a, const NodeState& b) {
            if (a.split.score != b.split.score) return a.split.score < b.split.score;
            return a.node_id > b.node_id;  // deterministic tie-break: older node first
        };
        std::priority_queue<NodeState, std::vector<NodeState>, decltype(cmp)> open(cmp);
        evaluate(root);
        size_t leaves = 1;
        if (root.split.valid)
            open.push(std::move(root));
        else
            make_leaf(root);
        while (!open.empty() && leaves < config.max_leaves) {
            NodeState node = open.top();
            open.pop();
            NodeState left, right;
            split_node(node, left, right);
            ++leaves;  // one leaf became two
            evaluate(left);
            evaluate(right);
            if (left.split.valid)
                open.push(std::move(left));
            else
                make_leaf(left);
            if (right.split.valid)
                open.push(std::move(right));
            else
                make_leaf(right);
        }
        while (!open.empty()) {
            make_leaf(open.top());
            open.pop();
        }
    }
    return tree;
}

void check_arity(const Model& model, const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows)
        if (row.size() != model.arity())
            throw std::invalid_argument("prediction arity " + std::to_string(row.size()) +
                                        " does not match model arity " + std::to_string(model.arity()));
}

}  // namespace

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "knn") return ModelKind::knn;
    if (s == "random_forest") return ModelKind::random_forest;
    if (s == "gbdt") return ModelKind::gbdt;
    throw std::invalid_argument("unknown model kind: '" + s + "'");
}

const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::knn: return "knn";
        case ModelKind::random_forest: return "random_forest";
        case ModelKind::gbdt: return "gbdt";
    }
    return "gbdt";
}

ModelConfig config_for_token(const std::string& token) {
    ModelConfig config;
    if (token == "knn") {
        config.kind = ModelKind::knn;
    } else if (token == "rf") {
        config.kind = ModelKind::random_forest;
        config.trees = 100;
        config.max_depth = 0;
        config.subsample_features = FeatureSubsample::sqrt_features;
    } else if (token == "gbdt-level") {
        config.kind = ModelKind::gbdt;
        config.growth = Growth::level_wise;
        config.max_depth = 6;
    } else if (token == "gbdt-leaf") {
        config.kind = ModelKind::gbdt;
        config.growth = Growth::leaf_wise;
        config.max_leaves = 31;
    } else {
        throw std::invalid_argument("unknown model token: '" + token +
                                    "' (expected knn|rf|gbdt-level|gbdt-leaf)");
    }
    return config;
}

double Tree::leaf_value(const std::vector<double>& row) const {
    int i = 0;
    while (nodes[static_cast<size_t>(i)].feature >= 0) {
        const TreeNode& n = nodes[static_cast<size_t>(i)];
        i = row[static_cast<size_t>(n.feature)] < n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<size_t>(i)].value;
}

size_t Tree::split_count() const {
    size_t count = 0;
    for (const auto& n : nodes)
        if (n.feature >= 0) ++count;
    return count;
}

Model fit_knn(const feat::LabeledMatrix& train, size_t k) {
    if (k == 0 || k > train.size())
        throw std::invalid_argument("knn: k must be in [1, train size]");
    Model model;
    model.config.kind = ModelKind::knn;
    model.config.knn_k = k;
    model.feature_names = train.registry.names;
    model.scaler = feat::ZScaler::fit(train.rows);
    model.knn_rows.reserve(train.size());
    for (const auto& row : train.rows) model.knn_rows.push_back(model.scaler.transform(row));
    for (Label l : train.labels) model.knn_labels.push_back(label_int(l));
    return model;
}

Model fit_random_forest(const feat::LabeledMatrix& train, ModelConfig config) {
    const size_t n_pos = train.count(Label::ponzi);
    if (n_pos == 0 || n_pos == train.size())
        throw std::invalid_argument("random forest: training data must contain both classes");
    config.kind = ModelKind::random_forest;
    Model model;
    model.config = config;
    model.feature_names = train.registry.names;

    std::vector<int> labels(train.size());
    for (size_t i = 0; i < train.size(); ++i) labels[i] = label_int(train.labels[i]);
    const TrainData data(train.rows);
    const Rng root(config.seed);

    model.trees.resize(config.trees);
    for (size_t t = 0; t < config.trees; ++t) {
        Rng rng = root.child(t);
        std::vector<double> weights(train.size(), config.bootstrap ? 0.0 : 1.0);
        if (config.bootstrap) {
            for (size_t i = 0; i < train.size(); ++i)
                weights[rng.uniform_index(train.size())] += 1.0;
        }
        model.trees[t] = grow_cart_tree(data, labels, weights, config, rng);
    }
    return model;
}

Model fit_gbdt(const feat::LabeledMatrix& train, ModelConfig config) {
    const size_t n_pos = train.count(Label::ponzi);
    if (n_pos == 0 || n_pos == train.size())
        throw std::invalid_argument("gbdt: training data must contain both classes");
    if (config.learning_rate <= 0.0 || config.learning_rate > 1.0)
        throw std::invalid_argument("gbdt: learning rate must be in (0, 1]");
    config.kind = ModelKind::gbdt;
    Model model;
    model.config = config;
    model.feature_names = train.registry.names;

    const size_t n = train.size();
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = label_int(train.labels[i]);
    const double base_rate = static_cast<double>(n_pos) / static_cast<double>(n);
    model.base_score = std::log(base_rate / (1.0 - base_rate));

    const TrainData data(train.rows);
    const Rng root(config.seed);
    std::vector<double> score(n, model.base_score), grad(n), hess(n);

    for (size_t round = 0; round < config.trees; ++round) {
        for (size_t i = 0; i < n; ++i) {
            const double p = sigmoid(score[i]);
            grad[i] = p - y[i];
            hess[i] = p * (1.0 - p);
        }
        Rng rng = root.child(round);
        Tree tree = grow_regression_tree(data, grad, hess, config, rng);
        for (size_t i = 0; i < n; ++i)
            score[i] += config.learning_rate * tree.leaf_value(train.rows[i]);
        model.trees.push_back(std::move(tree));
    }
    return model;
}

Model fit(const feat::LabeledMatrix& train, const ModelConfig& config) {
    switch (config.kind) {
        case ModelKind::knn: return fit_knn(train, config.knn_k);
        case ModelKind::random_forest: return fit_random_forest(train, config);
        case ModelKind::gbdt: return fit_gbdt(train, config);
    }
    throw std::invalid_argument("unknown model kind");
}

Prediction predict(const Model& model, const std::vector<std::vector<double>>& rows) {
    check_arity(model, rows);
    Prediction out;
    out.labels.reserve(rows.size());
    out.scores.reserve(rows.size());

    for (const auto& row : rows) {
        double score = 0.0;
        if (model.config.kind == ModelKind::knn) {
            const auto z = model.scaler.transform(row);
            std::vector<std::pair<double, size_t>> dists(model.knn_rows.size());
            for (size_t i = 0; i < model.knn_rows.size(); ++i) {
                double acc = 0.0;
                for (size_t j = 0; j < z.size(); ++j) {
                    const double d = z[j] - model.knn_rows[i][j];
                    acc += d * d;
                }
                dists[i] = {acc, i};
            }
            const size_t k = model.config.knn_k;
            std::partial_sort(dists.begin(), dists.begin() + static_cast<long>(k), dists.end());
            size_t votes = 0;
            for (size_t i = 0; i < k; ++i) votes += static_cast<size_t>(model.knn_labels[dists[i].second]);
            score = static_cast<double>(votes) / static_cast<double>(k);
        } else if (model.config.kind == ModelKind::random_forest) {
            size_t votes = 0;
            for (const auto& tree : model.trees)
                if (tree.leaf_value(row) >= 0.5) ++votes;
            score = static_cast<double>(votes) / static_cast<double>(model.trees.size());
        } else {
            double margin = model.base_score;
            for (const auto& tree : model.trees)
                margin += model.config.learning_rate * tree.leaf_value(row);
            score = sigmoid(margin);
        }
        out.scores.push_back(score);
        out.labels.push_back(score >= 0.5 ? Label::ponzi : Label::non_ponzi);
    }
    return out;
}

std::vector<uint64_t> feature_importance(const Model& model) {
    if (model.config.kind == ModelKind::knn)
        throw std::invalid_argument("feature importance requires a tree-based model");
    std::vector<uint64_t> counts(model.arity(), 0);
    for (const auto& tree : model.trees)
        for (const auto& node : tree.nodes)
            if (node.feature >= 0) ++counts[static_cast<size_t>(node.feature)];
    return counts;
}

double gbdt_training_loss(const Model& model, const feat::LabeledMatrix& train, size_t rounds) {
    if (model.config.kind != ModelKind::gbdt)
        throw std::invalid_argument("training loss requires a gbdt model");
    rounds = std::min(rounds, model.trees.size());
    double loss = 0.0;
    for (size_t i = 0; i < train.size(); ++i) {
        double margin = model.base_score;
        for (size_t t = 0; t < rounds; ++t)
            margin += model.config.learning_rate * model.trees[t].leaf_value(train.rows[i]);
        const double y = label_int(train.labels[i]);
        // log(1 + exp(m)) - y*m, numerically stable
        loss += (margin > 0 ? margin + std::log1p(std::exp(-margin)) : std::log1p(std::exp(margin))) -
                y * margin;
    }
    return loss / static_cast<double>(train.size());
}

namespace {

using nlohmann::json;

json config_to_json(const ModelConfig& c) {
    return json{{"kind", to_string(c.kind)},
                {"knn_k", c.knn_k},
                {"trees", c.trees},
                {"max_depth", c.max_depth},
                {"max_leaves", c.max_leaves},
                {"learning_rate", c.learning_rate},
                {"growth", c.growth == Growth::leaf_wise ? "leaf_wise" : "level_wise"},
                {"subsample_features",
                 c.subsample_features == FeatureSubsample::sqrt_features ? "sqrt" : "all"},
                {"bootstrap", c.bootstrap},
                {"l2_lambda", c.l2_lambda},
                {"seed", c.seed}};
}

ModelConfig config_from_json(const json& j) {
    ModelConfig c;
    c.kind = model_kind_from_string(j.at("kind").get<std::string>());
    c.knn_k = j.at("knn_k").get<size_t>();
    c.trees = j.at("trees").get<size_t>();
    c.max_depth = j.at("max_depth").get<size_t>();
    c.max_leaves = j.at("max_leaves").get<size_t>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.growth = j.at("growth").get<std::string>() == "leaf_wise" ? Growth::leaf_wise : Growth::level_wise;
    c.subsample_features = j.at("subsample_features").get<std::string>() == "sqrt"
                               ? FeatureSubsample::sqrt_features
                               : FeatureSubsample::all_features;
    c.bootstrap = j.at("bootstrap").get<bool>();
    c.l2_lambda = j.at("l2_lambda").get<double>();
    c.seed = j.at("seed").get<uint64_t>();
    return c;
}

}  // namespace

void save_model_json(const Model& model, const std::string& path) {
    json j;
    j["format_version"] = 1;
    j["config"] = config_to_json(model.config);
    j["features"] = model.feature_names;
    j["base_score"] = model.base_score;
    if (model.config.kind == ModelKind::knn) {
        j["scaler"] = {{"mean", model.scaler.mean}, {"sd", model.scaler.sd}};
        j["knn_rows"] = model.knn_rows;
        j["knn_labels"] = model.knn_labels;
    }
    json trees = json::array();
    for (const auto& tree : model.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes)
            nodes.push_back({{"f", n.feature}, {"t", n.threshold}, {"l", n.left}, {"r", n.right},
                             {"v", n.value}});
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    j["trees"] = std::move(trees);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

Model load_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    json j = json::parse(in);
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("unsupported model format version");
    Model model;
    model.config = config_from_json(j.at("config"));
    model.feature_names = j.at("features").get<std::vector<std::string>>();
    model.base_score = j.at("base_score").get<double>();
    if (model.config.kind == ModelKind::knn) {
        model.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
        model.scaler.sd = j.at("scaler").at("sd").get<std::vector<double>>();
        model.knn_rows = j.at("knn_rows").get<std::vector<std::vector<double>>>();
        model.knn_labels = j.at("knn_labels").get<std::vector<int>>();
    }
    for (const auto& tj : j.at("trees")) {
        Tree tree;
        for (const auto& nj : tj.at("nodes")) {
            TreeNode n;
            n.feature = nj.at("f").get<int>();
            n.threshold = nj.at("t").get<double>();
            n.left = nj.at("l").get<int>();
            n.right = nj.at("r").get<int>();
            n.value = nj.at("v").get<double>();
            tree.nodes.push_back(n);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace ponzi::models
