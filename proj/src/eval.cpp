#include "ponzi/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "ponzi/parallel.hpp"
#include "ponzi/rng.hpp"

namespace ponzi::eval {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<size_t> shuffled_class_rows(const std::vector<Label>& labels, Label cls, Rng& rng) {
    std::vector<size_t> rows;
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == cls) rows.push_back(i);
    for (size_t i = rows.size(); i > 1; --i)
        std::swap(rows[i - 1], rows[rng.uniform_index(i)]);
    return rows;
}

feat::LabeledMatrix take_rows(const feat::LabeledMatrix& m, const std::vector<size_t>& rows) {
    feat::LabeledMatrix out;
    out.registry = m.registry;
    out.addresses.reserve(rows.size());
    out.rows.reserve(rows.size());
    out.labels.reserve(rows.size());
    out.types.reserve(rows.size());
    for (size_t i : rows) {
        out.addresses.push_back(m.addresses[i]);
        out.rows.push_back(m.rows[i]);
        out.labels.push_back(m.labels[i]);
        out.types.push_back(m.types[i]);
    }
    return out;
}

Metrics mean_metrics(const std::vector<RepeatResult>& repeats) {
    Metrics mean;
    if (repeats.empty()) return mean;
    for (const auto& r : repeats) {
        mean.accuracy += r.test.accuracy;
        mean.precision += r.test.precision;
        mean.recall += r.test.recall;
        mean.f1 += r.test.f1;
    }
    const double n = static_cast<double>(repeats.size());
    mean.accuracy /= n;
    mean.precision /= n;
    mean.recall /= n;
    mean.f1 /= n;
    return mean;
}

RepeatResult run_single_repeat(const feat::LabeledMatrix& data, const models::ModelConfig& config,
                               const ProtocolOptions& options, size_t repeat) {
    RepeatResult result;
    result.repeat = repeat;
    result.seed = options.seed + repeat;

    const auto split = stratified_split(data.labels, options.test_fraction, result.seed);
    feat::LabeledMatrix train = take_rows(data, split.train);
    const feat::LabeledMatrix test = take_rows(data, split.test);

    sampling::SmoteConfig smote = options.smote;
    smote.seed = result.seed;
    train = sampling::borderline_smote(train, smote).data;

    if (options.folds >= 2) {
        models::ModelConfig cv_config = config;
        cv_config.seed = result.seed;
        result.cv = kfold_cv(train, options.folds, cv_config, result.seed);
    }

    models::ModelConfig fit_config = config;
    fit_config.seed = result.seed;
    const models::Model model = models::fit(train, fit_config);
    const auto prediction = models::predict(model, test.rows);
    result.confusion = confusion(test.labels, prediction.labels);
    result.test = metrics(result.confusion);
    return result;
}

}  // namespace

Metrics metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw std::invalid_argument("metrics: empty confusion counts");
    Metrics m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.precision = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    m.recall = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    m.f1 = m.precision + m.recall == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

ConfusionCounts confusion(const std::vector<Label>& truth, const std::vector<Label>& predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("confusion: size mismatch");
    ConfusionCounts c;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == Label::ponzi)
            (predicted[i] == Label::ponzi ? c.tp : c.fn)++;
        else
            (predicted[i] == Label::ponzi ? c.fp : c.tn)++;
    }
    return c;
}

SplitIndices stratified_split(const std::vector<Label>& labels, double test_fraction, uint64_t seed) {
    if (test_fraction <= 0.0 || test_fraction >= 1.0)
        throw std::invalid_argument("test fraction must be in (0, 1)");
    size_t n_pos = 0;
    for (Label l : labels)
        if (l == Label::ponzi) ++n_pos;
    const size_t n_neg = labels.size() - n_pos;
    if (n_pos < 2 || n_neg < 2)
        throw std::invalid_argument("stratified split requires at least 2 rows per class");

    const Label minority = n_pos <= n_neg ? Label::ponzi : Label::non_ponzi;
    const Label majority = minority == Label::ponzi ? Label::non_ponzi : Label::ponzi;
    const size_t n_minority = std::min(n_pos, n_neg);

    const size_t test_total = static_cast<size_t>(std::floor(
        static_cast<double>(labels.size()) * test_fraction));
    size_t test_minority = static_cast<size_t>(std::floor(
        static_cast<double>(n_minority) * test_fraction));
    test_minority = std::min(test_minority, n_minority > 0 ? n_minority - 1 : 0);
    size_t test_majority = test_total > test_minority ? test_total - test_minority : 0;
    const size_t n_majority = labels.size() - n_minority;
    test_majority = std::min(test_majority, n_majority > 0 ? n_majority - 1 : 0);

    Rng rng(seed);
    const auto minority_rows = shuffled_class_rows(labels, minority, rng);
    const auto majority_rows = shuffled_class_rows(labels, majority, rng);

    SplitIndices out;
    for (size_t i = 0; i < minority_rows.size(); ++i)
        (i < test_minority ? out.test : out.train).push_back(minority_rows[i]);
    for (size_t i = 0; i < majority_rows.size(); ++i)
        (i < test_majority ? out.test : out.train).push_back(majority_rows[i]);
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

std::vector<std::vector<size_t>> stratified_folds(const std::vector<Label>& labels, size_t folds,
                                                  uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("folds must be >= 2");
    size_t n_pos = 0;
    for (Label l : labels)
        if (l == Label::ponzi) ++n_pos;
    const size_t minority_count = std::min(n_pos, labels.size() - n_pos);
    if (folds > minority_count)
        throw std::invalid_argument("folds exceed the minority class count");

    Rng rng(seed);
    std::vector<std::vector<size_t>> out(folds);
    for (Label cls : {Label::ponzi, Label::non_ponzi}) {
        const auto rows = shuffled_class_rows(labels, cls, rng);
        for (size_t i = 0; i < rows.size(); ++i) out[i % folds].push_back(rows[i]);
    }
    for (auto& fold : out) std::sort(fold.begin(), fold.end());
    return out;
}

std::vector<FoldMetrics> kfold_cv(const feat::LabeledMatrix& train, size_t folds,
                                  const models::ModelConfig& config, uint64_t seed) {
    const auto fold_rows = stratified_folds(train.labels, folds, seed);
    std::vector<FoldMetrics> out(folds);
    for (size_t f = 0; f < folds; ++f) {
        std::vector<size_t> fit_rows;
        for (size_t g = 0; g < folds; ++g)
            if (g != f) fit_rows.insert(fit_rows.end(), fold_rows[g].begin(), fold_rows[g].end());
        std::sort(fit_rows.begin(), fit_rows.end());
        const auto fit_matrix = take_rows(train, fit_rows);
        const auto val_matrix = take_rows(train, fold_rows[f]);
        models::ModelConfig fold_config = config;
        fold_config.seed = seed + f;
        const auto model = models::fit(fit_matrix, fold_config);
        const auto prediction = models::predict(model, val_matrix.rows);
        out[f].confusion = confusion(val_matrix.labels, prediction.labels);
        out[f].metrics = metrics(out[f].confusion);
    }
    return out;
}

EvaluationReport run_protocol(const feat::LabeledMatrix& data, const models::ModelConfig& config,
                              const ProtocolOptions& options) {
    const auto start = Clock::now();
    EvaluationReport report;
    report.model_name = to_string(config.kind);
    report.feature_count = data.arity();
    report.repeats = options.repeats;
    report.folds = options.folds;
    report.test_fraction = options.test_fraction;
    report.seed = options.seed;
    report.per_repeat.resize(options.repeats);
    parallel_for(options.repeats, [&](size_t r) {
        report.per_repeat[r] = run_single_repeat(data, config, options, r);
    });
    report.mean = mean_metrics(report.per_repeat);
    report.wall_time_s = elapsed_s(start);
    return report;
}

std::vector<Experiment1Row> run_experiment1(const Dataset& dataset, const ExperimentPlan& plan) {
    ProtocolOptions options;
    options.repeats = plan.repeats;
    options.folds = plan.folds;
    options.test_fraction = plan.test_fraction;
    options.seed = plan.seed;
    options.smote = plan.smote;

    std::vector<Experiment1Row> rows;
    for (feat::FeatureSet set : plan.feature_sets) {
        const std::vector<int> intervals =
            set == feat::FeatureSet::acc ? std::vector<int>{0} : plan.interval_hours;
        for (int t_hours : intervals) {
            const auto matrix =
                feat::build_matrix(dataset, set, set == feat::FeatureSet::acc ? 24 : t_hours);
            for (const auto& token : plan.model_tokens) {
                models::ModelConfig config = models::config_for_token(token);
                Experiment1Row row;
                row.feature_set = feat::to_string(set);
                row.t_hours = t_hours;
                row.model = token;
                row.report = run_protocol(matrix, config, options);
                row.report.feature_set = row.feature_set;
                row.report.t_hours = t_hours;
                row.report.model_name = token;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<ImportanceEntry> importance_ranking(const feat::LabeledMatrix& data,
                                                const ExperimentPlan& plan) {
    const auto split = stratified_split(data.labels, plan.test_fraction, plan.seed);
    feat::LabeledMatrix train = take_rows(data, split.train);
    sampling::SmoteConfig smote = plan.smote;
    smote.seed = plan.seed;
    train = sampling::borderline_smote(train, smote).data;

    models::ModelConfig config = models::config_for_token("gbdt-leaf");
    config.seed = plan.seed;
    const auto model = models::fit_gbdt(train, config);
    const auto counts = models::feature_importance(model);

    std::vector<size_t> order(counts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return counts[a] > counts[b];  // ties keep registry order
    });

    std::vector<ImportanceEntry> out;
    out.reserve(order.size());
    for (size_t i : order) {
        ImportanceEntry entry;
        entry.name = data.registry.names[i];
        entry.split_count = counts[i];
        entry.is_ts = feat::is_ts_feature(entry.name);
        out.push_back(std::move(entry));
    }
    return out;
}

Experiment2Result run_experiment2(const feat::LabeledMatrix& data, const ExperimentPlan& plan,
                                  size_t step) {
    if (step == 0) throw std::invalid_argument("experiment 2 step must be positive");
    Experiment2Result result;
    result.ranking = importance_ranking(data, plan);

    ProtocolOptions options;
    options.repeats = plan.repeats;
    options.folds = plan.folds;
    options.test_fraction = plan.test_fraction;
    options.seed = plan.seed;
    options.smote = plan.smote;

    std::vector<size_t> ks;
    for (size_t k = step; k <= data.arity(); k += step) ks.push_back(k);
    if (ks.empty() || ks.back() != data.arity()) ks.push_back(data.arity());

    const models::ModelConfig config = models::config_for_token("gbdt-leaf");
    result.curve.resize(ks.size());
    parallel_for(ks.size(), [&](size_t i) {
        const size_t k = ks[i];
        std::vector<std::string> names;
        size_t ts_count = 0;
        names.reserve(k);
        for (size_t j = 0; j < k; ++j) {
            names.push_back(result.ranking[j].name);
            if (result.ranking[j].is_ts) ++ts_count;
        }
        const auto subset = feat::select_features(data, names);
        const auto report = run_protocol(subset, config, options);
        result.curve[i] = {k, report.mean.f1, static_cast<double>(ts_count) / static_cast<double>(k)};
    });

    result.best_k = result.curve.front().k;
    result.best_f1 = result.curve.front().f1;
    for (const auto& point : result.curve) {
        if (point.f1 > result.best_f1) {
            result.best_f1 = point.f1;
            result.best_k = point.k;
        }
    }
    std::vector<std::string> top_names;
    for (size_t j = 0; j < result.best_k; ++j) top_names.push_back(result.ranking[j].name);
    // materialize in registry order
    for (const auto& name : data.registry.names) {
        if (std::find(top_names.begin(), top_names.end(), name) != top_names.end()) {
            result.refined_names.push_back(name);
            (feat::is_ts_feature(name) ? result.refined_ts_count : result.refined_acc_count)++;
        }
    }
    return result;
}

HoldoutType holdout_type_from_string(const std::string& s) {
    if (s == "tree") return HoldoutType::tree;
    if (s == "handover") return HoldoutType::handover;
    if (s == "waterfall") return HoldoutType::waterfall;
    if (s == "all_three" || s == "all-three") return HoldoutType::all_three;
    if (s == "chain")
        throw std::invalid_argument(
            "chain-shaped schemes cannot be held out: they are the dominant type and removing "
            "them leaves too few scam examples to train on");
    throw std::invalid_argument("unknown holdout type: '" + s +
                                "' (expected tree|handover|waterfall|all_three)");
}

const char* to_string(HoldoutType t) {
    switch (t) {
        case HoldoutType::tree: return "tree";
        case HoldoutType::handover: return "handover";
        case HoldoutType::waterfall: return "waterfall";
        case HoldoutType::all_three: return "all_three";
    }
    return "all_three";
}

EvaluationReport run_experiment3(const feat::LabeledMatrix& data, const ExperimentPlan& plan,
                                 const models::ModelConfig& config, HoldoutType holdout,
                                 double scam_rate) {
    if (scam_rate <= 0.0 || scam_rate > 1.0)
        throw std::invalid_argument("scam rate must be in (0, 1]");
    auto matches = [&](const std::optional<PonziType>& type) {
        if (!type) return false;
        switch (holdout) {
            case HoldoutType::tree: return *type == PonziType::tree;
            case HoldoutType::handover: return *type == PonziType::handover;
            case HoldoutType::waterfall: return *type == PonziType::waterfall;
            case HoldoutType::all_three:
                return *type == PonziType::tree || *type == PonziType::handover ||
                       *type == PonziType::waterfall;
        }
        return false;
    };

    std::vector<size_t> holdout_rows, remaining_rows, non_ponzi_rows;
    for (size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] == Label::ponzi && matches(data.types[i])) {
            holdout_rows.push_back(i);
        } else {
            remaining_rows.push_back(i);
            if (data.labels[i] == Label::non_ponzi) non_ponzi_rows.push_back(i);
        }
    }
    if (holdout_rows.empty())
        throw std::invalid_argument(std::string("no applications of holdout type ") +
                                    to_string(holdout));

    const size_t n_holdout = holdout_rows.size();
    const size_t n_non = static_cast<size_t>(std::floor(
        static_cast<double>(n_holdout) * (1.0 - scam_rate) / scam_rate));
    if (n_non > non_ponzi_rows.size())
        throw std::invalid_argument("not enough non-ponzi applications for the requested scam rate");

    const auto start = Clock::now();
    EvaluationReport report;
    report.model_name = to_string(config.kind);
    report.feature_set = "experiment3/" + std::string(to_string(holdout));
    report.feature_count = data.arity();
    report.repeats = plan.repeats;
    report.seed = plan.seed;
    report.per_repeat.resize(plan.repeats);

    parallel_for(plan.repeats, [&](size_t r) {
        RepeatResult result;
        result.repeat = r;
        result.seed = plan.seed + r;
        Rng rng(result.seed);

        std::vector<size_t> pool = non_ponzi_rows;
        for (size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.uniform_index(i)]);
        std::vector<size_t> test_rows = holdout_rows;
        test_rows.insert(test_rows.end(), pool.begin(), pool.begin() + static_cast<long>(n_non));
        std::sort(test_rows.begin(), test_rows.end());

        std::vector<size_t> train_rows;
        for (size_t i : remaining_rows)
            if (!std::binary_search(test_rows.begin(), test_rows.end(), i)) train_rows.push_back(i);

        feat::LabeledMatrix train = take_rows(data, train_rows);
        const feat::LabeledMatrix test = take_rows(data, test_rows);
        sampling::SmoteConfig smote = plan.smote;
        smote.seed = result.seed;
        train = sampling::borderline_smote(train, smote).data;

        models::ModelConfig fit_config = config;
        fit_config.seed = result.seed;
        const auto model = models::fit(train, fit_config);
        const auto prediction = models::predict(model, test.rows);
        result.confusion = confusion(test.labels, prediction.labels);
        result.test = metrics(result.confusion);
        report.per_repeat[r] = result;
    });
    report.mean = mean_metrics(report.per_repeat);
    report.wall_time_s = elapsed_s(start);
    return report;
}

std::string report_to_json(const EvaluationReport& report, bool include_wall_time) {
    using nlohmann::json;
    json j;
    j["plan"] = {{"model", report.model_name},
                 {"feature_set", report.feature_set},
                 {"t_hours", report.t_hours},
                 {"feature_count", report.feature_count},
                 {"repeats", report.repeats},
                 {"folds", report.folds},
                 {"test_fraction", report.test_fraction},
                 {"seed", report.seed}};
    json repeats = json::array();
    for (const auto& r : report.per_repeat) {
        json rj = {{"repeat", r.repeat},
                   {"seed", r.seed},
                   {"confusion",
                    {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn},
                     {"fn", r.confusion.fn}}},
                   {"accuracy", r.test.accuracy},
                   {"precision", r.test.precision},
                   {"recall", r.test.recall},
                   {"f1", r.test.f1}};
        if (!r.cv.empty()) {
            json cv = json::array();
            for (const auto& fold : r.cv)
                cv.push_back({{"accuracy", fold.metrics.accuracy},
                              {"precision", fold.metrics.precision},
                              {"recall", fold.metrics.recall},
                              {"f1", fold.metrics.f1}});
            rj["cv"] = std::move(cv);
        }
        repeats.push_back(std::move(rj));
    }
    j["per_repeat"] = std::move(repeats);
    j["mean"] = {{"accuracy", report.mean.accuracy},
                 {"precision", report.mean.precision},
                 {"recall", report.mean.recall},
                 {"f1", report.mean.f1}};
    if (include_wall_time) j["wall_time_s"] = report.wall_time_s;
    return j.dump(2) + "\n";
}

}  // namespace ponzi::eval
