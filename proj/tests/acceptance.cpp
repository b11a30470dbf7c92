// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. The CLI binary path arrives as argv[1]; the
// corpus-count check runs only when PONZI_REAL_CORPUS points at a directory
// holding transactions.jsonl and labels.csv.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ponzi/eval.hpp"
#include "ponzi/ingest.hpp"
#include "ponzi/manifest.hpp"
#include "ponzi/rng.hpp"
#include "ponzi/sampling.hpp"
#include "ponzi/synthgen.hpp"
#include "ponzi/ts_measures.hpp"

namespace fs = std::filesystem;
using namespace ponzi;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
int g_failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s  %-34s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool near(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool expect(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) detail = what;
    return ok;
}

int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string mask_wall_time(std::string text) {
    const auto pos = text.find("\"wall_time_s\":");
    if (pos == std::string::npos) return text;
    const auto end = text.find('\n', pos);
    return text.replace(pos, end - pos, "\"wall_time_s\": X");
}

std::vector<double> random_series(Rng& rng, size_t n) {
    std::vector<double> x(n);
    const int style = static_cast<int>(rng.uniform_index(4));
    for (size_t t = 0; t < n; ++t) {
        switch (style) {
            case 0: x[t] = rng.normal(0.0, 1.0); break;
            case 1: x[t] = 0.1 * static_cast<double>(t) + rng.normal(0.0, 0.5); break;
            case 2:
                x[t] = std::sin(2.0 * M_PI * static_cast<double>(t) / 9.0) + rng.normal(0.0, 0.3);
                break;
            default: x[t] = rng.uniform() < 0.6 ? 0.0 : rng.uniform(0.0, 5.0); break;
        }
    }
    return x;
}

feat::LabeledMatrix separable_blobs(size_t rows, uint64_t seed) {
    Rng rng(seed);
    feat::LabeledMatrix m;
    m.registry.names = {"x", "y"};
    for (size_t i = 0; i < rows; ++i) {
        const bool pos = i % 2 == 0;
        m.rows.push_back({rng.normal(pos ? 6.0 : 0.0, 1.0), rng.normal(pos ? 6.0 : 0.0, 1.0)});
        m.labels.push_back(pos ? Label::ponzi : Label::non_ponzi);
        m.addresses.push_back("r" + std::to_string(i));
        m.types.emplace_back();
    }
    return m;
}

// minimal recursive CART, the reference for the single-tree equivalence gate
struct RefCart {
    struct Node {
        int feature = -1;
        double threshold = 0.0;
        std::unique_ptr<Node> left, right;
        double fraction = 0.0;
    };
    std::unique_ptr<Node> root;

    static double gini2(double w1, double w) {
        const double p = w1 / w;
        return 2.0 * p * (1.0 - p);
    }
    std::unique_ptr<Node> build(const feat::LabeledMatrix& d, std::vector<size_t> rows) {
        auto node = std::make_unique<Node>();
        double w1 = 0;
        for (size_t r : rows) w1 += d.labels[r] == Label::ponzi;
        node->fraction = w1 / static_cast<double>(rows.size());
        if (w1 == 0 || w1 == static_cast<double>(rows.size()) || rows.size() < 2) return node;
        const double parent = gini2(w1, static_cast<double>(rows.size()));
        double best = 0.0;
        int bf = -1;
        double bt = 0;
        for (size_t f = 0; f < d.arity(); ++f) {
            std::vector<std::pair<double, size_t>> vals;
            for (size_t r : rows) vals.emplace_back(d.rows[r][f], r);
            std::stable_sort(vals.begin(), vals.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            double lw = 0, lw1 = 0;
            for (size_t i = 0; i + 1 < vals.size(); ++i) {
                lw += 1;
                lw1 += d.labels[vals[i].second] == Label::ponzi;
                if (vals[i].first == vals[i + 1].first) continue;
                const double rw = static_cast<double>(rows.size()) - lw;
                const double gain =
                    parent - (lw * gini2(lw1, lw) + rw * gini2(w1 - lw1, rw)) /
                                 static_cast<double>(rows.size());
                if (gain > best + 1e-12) {
                    best = gain;
                    bf = static_cast<int>(f);
                    bt = vals[i].first + (vals[i + 1].first - vals[i].first) / 2.0;
                }
            }
        }
        if (bf < 0) return node;
        node->feature = bf;
        node->threshold = bt;
        std::vector<size_t> l, r;
        for (size_t row : rows) (d.rows[row][static_cast<size_t>(bf)] < bt ? l : r).push_back(row);
        node->left = build(d, std::move(l));
        node->right = build(d, std::move(r));
        return node;
    }
    explicit RefCart(const feat::LabeledMatrix& d) {
        std::vector<size_t> rows(d.size());
        for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
        root = build(d, std::move(rows));
    }
    Label predict(const std::vector<double>& row) const {
        const Node* n = root.get();
        while (n->feature >= 0)
            n = row[static_cast<size_t>(n->feature)] < n->threshold ? n->left.get() : n->right.get();
        return n->fraction >= 0.5 ? Label::ponzi : Label::non_ponzi;
    }
};

double train_f1(const models::Model& model, const feat::LabeledMatrix& data) {
    const auto pred = models::predict(model, data.rows);
    eval::ConfusionCounts c;
    for (size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] == Label::ponzi)
            (pred.labels[i] == Label::ponzi ? c.tp : c.fn)++;
        else
            (pred.labels[i] == Label::ponzi ? c.fp : c.tn)++;
    }
    return eval::metrics(c).f1;
}

}  // namespace

int main(int argc, char** argv) {
    g_cli = argc > 1 ? argv[1] : "";

    // shared synthetic corpus: 48 chain + 4 tree + 4 handover + 4 waterfall
    // ponzi applications and 940 benign ones
    synth::CorpusSpec corpus_spec;
    corpus_spec.seed = 1;
    Dataset corpus;
    feat::LabeledMatrix acc_ts_24;

    criterion("measure-oracle suite", [&](std::string& detail) {
        Rng rng(20240601);
        size_t checked = 0;
        for (size_t trial = 0; trial < 1000; ++trial) {
            const size_t n = 2 + rng.uniform_index(499);
            const auto x = random_series(rng, n);
            const int period = static_cast<int>(2 + rng.uniform_index(13));
            const auto [m, v] = ts::mean_var(x);
            bool ok = near(m, oracles::mean(x), 1e-9) && near(v, oracles::pvar(x), 1e-9) &&
                      near(ts::acf1(x), oracles::acf1(x), 1e-9);
            const auto [lin, curv] = ts::linearity_curvature(x);
            const auto [olin, ocurv] = oracles::linearity_curvature(x);
            ok = ok && near(lin, olin, 1e-9) && near(curv, ocurv, 1e-9);
            const auto [tr, se] = ts::stl_strengths(x, period);
            const auto [otr, ose] = oracles::stl_strengths(x, period);
            ok = ok && near(tr, otr, 1e-6) && near(se, ose, 1e-6);
            ok = ok && near(ts::spectral_entropy(x), oracles::spectral_entropy(x), 1e-6);
            ok = ok && near(ts::lumpiness(x, 10), oracles::lumpiness(x, 10), 1e-9);
            ok = ok && near(ts::spikiness(x, period), oracles::spikiness(x, period), 1e-9);
            ok = ok && ts::flat_spots(x) == oracles::flat_spots(x);
            ok = ok && ts::crossing_points(x) == oracles::crossing_points(x);
            if (!ok) {
                detail = "mismatch at trial " + std::to_string(trial) + " (n=" + std::to_string(n) +
                         ")";
                return false;
            }
            ++checked;
        }
        detail = std::to_string(checked) + " series x 12 measures";
        return true;
    });

    criterion("dimensional contract", [&](std::string& detail) {
        const auto acc = feat::registry_for(feat::FeatureSet::acc);
        const auto ts_reg = feat::registry_for(feat::FeatureSet::ts);
        const auto both = feat::registry_for(feat::FeatureSet::acc_ts);
        return expect(acc.arity() == 29, "acc != 29", detail) &&
               expect(ts_reg.arity() == 516, "ts != 516", detail) &&
               expect(both.arity() == 545, "acc-ts != 545", detail) &&
               expect(ts::kSeriesCount * ts::kMeasureCount == 516, "43*12 != 516", detail) &&
               expect(ts::ts_feature_names().size() == ts::kSeriesCount * ts::kMeasureCount,
                      "ts names not 43*12", detail);
    });

    criterion("ingest refinement rules", [&](std::string& detail) {
        using test_helpers::make_app;
        // failed-tx filtering
        std::vector<Transaction> txs;
        for (int i = 0; i < 6; ++i) {
            Transaction tx;
            tx.tx_hash = "t" + std::to_string(i);
            tx.timestamp = i * 40000;
            tx.from_addr = "0xinv";
            tx.to_addr = "0xapp";
            tx.value_wei = 1;
            tx.status = i % 3 == 0 ? TxStatus::failed : TxStatus::success;
            txs.push_back(tx);
        }
        const auto kept = ingest::filter_failed(txs);
        if (!expect(kept.size() == 4, "failed filtering", detail)) return false;
        for (const auto& tx : kept)
            if (!expect(tx.status == TxStatus::success, "failed tx survived", detail)) return false;

        // zero-tx and short-lifetime drops
        const auto refined = ingest::refine_dataset(
            {make_app("0xa", {}), make_app("0xb", {{0, true, 1.0}, {7200, true, 1.0}}),
             make_app("0xc", {{0, true, 1.0}, {86400, true, 1.0}})});
        if (!expect(refined.dataset.apps.size() == 1 && refined.dataset.apps[0].address == "0xc",
                    "drop rules", detail))
            return false;

        // idempotence fuzz
        Rng rng(77);
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<ApplicationRecord> apps;
            const size_t n_apps = 1 + rng.uniform_index(6);
            for (size_t a = 0; a < n_apps; ++a) {
                std::vector<test_helpers::TxSpec> specs;
                int64_t ts = 0;
                const size_t n_txs = rng.uniform_index(5);
                for (size_t t = 0; t < n_txs; ++t) {
                    ts += static_cast<int64_t>(rng.uniform_index(100000));
                    specs.push_back({ts, rng.uniform() < 0.5, 1.0, "0xc"});
                }
                apps.push_back(make_app("0x" + std::to_string(trial) + "_" + std::to_string(a),
                                        specs));
            }
            const auto once = ingest::refine_dataset(apps);
            const auto twice = ingest::refine_dataset(once.dataset.apps);
            if (!expect(once.dataset.apps.size() == twice.dataset.apps.size(),
                        "idempotence trial " + std::to_string(trial), detail))
                return false;
            if (!expect(twice.stats.dropped_no_txs + twice.stats.dropped_short_lifetime == 0,
                        "second refine dropped rows", detail))
                return false;
        }
        return true;
    });

    criterion("smote properties", [&](std::string& detail) {
        // 60-point toy set: 10 minority near the origin, 50 majority on a ring
        Rng rng(41);
        feat::LabeledMatrix toy;
        toy.registry.names = {"x", "y"};
        for (int i = 0; i < 10; ++i) {
            toy.rows.push_back({rng.normal(0.0, 0.4), rng.normal(0.0, 0.4)});
            toy.labels.push_back(Label::ponzi);
        }
        for (int i = 0; i < 50; ++i) {
            const double a = rng.uniform(0.0, 2.0 * M_PI);
            const double r = rng.uniform(1.2, 2.5);
            toy.rows.push_back({r * std::cos(a), r * std::sin(a)});
            toy.labels.push_back(Label::non_ponzi);
        }
        for (size_t i = 0; i < toy.size(); ++i) {
            toy.addresses.push_back("p" + std::to_string(i));
            toy.types.emplace_back();
        }

        sampling::SmoteConfig config;
        config.seed = 4;
        const auto result = sampling::borderline_smote(toy, config);
        size_t minority = 0;
        for (Label l : result.data.labels)
            if (l == Label::ponzi) ++minority;
        if (!expect(std::llabs(static_cast<long long>(minority) - 50) <= 1, "ratio not target +-1",
                    detail))
            return false;

        // convexity: synthetic = p + u (q - p) for some original minority pair
        for (size_t s = toy.size(); s < result.data.size(); ++s) {
            const auto& row = result.data.rows[s];
            bool convex = false;
            for (size_t a = 0; a < 10 && !convex; ++a) {
                for (size_t b = 0; b < 10 && !convex; ++b) {
                    if (a == b) continue;
                    const double dx = toy.rows[b][0] - toy.rows[a][0];
                    const double dy = toy.rows[b][1] - toy.rows[a][1];
                    const double u = std::fabs(dx) > std::fabs(dy)
                                         ? (row[0] - toy.rows[a][0]) / dx
                                         : (row[1] - toy.rows[a][1]) / dy;
                    if (u < -1e-9 || u > 1.0 + 1e-9) continue;
                    if (std::fabs(toy.rows[a][0] + u * dx - row[0]) < 1e-9 &&
                        std::fabs(toy.rows[a][1] + u * dy - row[1]) < 1e-9)
                        convex = true;
                }
            }
            if (!expect(convex, "synthetic row not on a minority segment", detail)) return false;
        }

        // danger membership against the exhaustive oracle
        const auto scaler = feat::ZScaler::fit(toy.rows);
        std::vector<std::vector<double>> z;
        for (const auto& row : toy.rows) z.push_back(scaler.transform(row));
        std::vector<size_t> expected;
        for (size_t p = 0; p < toy.size(); ++p) {
            if (toy.labels[p] != Label::ponzi) continue;
            std::vector<std::pair<double, size_t>> dists;
            for (size_t q = 0; q < toy.size(); ++q) {
                if (q == p) continue;
                const double dx = z[p][0] - z[q][0];
                const double dy = z[p][1] - z[q][1];
                dists.emplace_back(dx * dx + dy * dy, q);
            }
            std::sort(dists.begin(), dists.end());
            size_t majority = 0;
            for (size_t i = 0; i < config.m; ++i)
                if (toy.labels[dists[i].second] != Label::ponzi) ++majority;
            if (2 * majority >= config.m && majority < config.m) expected.push_back(p);
        }
        if (!expect(result.danger_rows == expected, "danger set != oracle", detail)) return false;

        const auto result2 = sampling::borderline_smote(toy, config);
        return expect(result.data.rows == result2.data.rows, "seed determinism", detail);
    });

    criterion("classifier sanity", [&](std::string& detail) {
        const auto blobs = separable_blobs(500, 51);
        models::ModelConfig rf = models::config_for_token("rf");
        rf.seed = 1;
        if (!expect(train_f1(models::fit_random_forest(blobs, rf), blobs) == 1.0,
                    "forest not perfect on separable data", detail))
            return false;
        models::ModelConfig gb = models::config_for_token("gbdt-leaf");
        gb.seed = 1;
        const auto gb_model = models::fit_gbdt(blobs, gb);
        if (!expect(train_f1(gb_model, blobs) == 1.0, "gbdt not perfect on separable data", detail))
            return false;

        double prev = models::gbdt_training_loss(gb_model, blobs, 0);
        for (size_t rounds = 1; rounds <= 100; ++rounds) {
            const double loss = models::gbdt_training_loss(gb_model, blobs, rounds);
            if (!expect(loss <= prev + 1e-12, "loss increased at round " + std::to_string(rounds),
                        detail))
                return false;
            prev = loss;
        }

        // 100-row fixture: single tree, no bootstrap, all features == reference cart
        Rng rng(52);
        feat::LabeledMatrix fixture;
        fixture.registry.names = {"a", "b", "c"};
        for (int i = 0; i < 100; ++i) {
            fixture.rows.push_back(
                {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)});
            fixture.labels.push_back(fixture.rows.back()[0] - fixture.rows.back()[1] +
                                                 rng.normal(0.0, 2.0) >
                                             0.0
                                         ? Label::ponzi
                                         : Label::non_ponzi);
            fixture.addresses.push_back("f" + std::to_string(i));
            fixture.types.emplace_back();
        }
        models::ModelConfig single;
        single.kind = models::ModelKind::random_forest;
        single.trees = 1;
        single.max_depth = 0;
        single.bootstrap = false;
        single.subsample_features = models::FeatureSubsample::all_features;
        const auto tree_model = models::fit_random_forest(fixture, single);
        const RefCart reference(fixture);
        const auto tree_pred = models::predict(tree_model, fixture.rows);
        for (size_t i = 0; i < fixture.size(); ++i)
            if (!expect(tree_pred.labels[i] == reference.predict(fixture.rows[i]),
                        "single tree != reference cart", detail))
                return false;

        // knn equals the exhaustive neighbor oracle
        const auto train = separable_blobs(200, 53);
        const auto queries = separable_blobs(60, 54);
        const auto knn = models::fit_knn(train, 5);
        const auto knn_pred = models::predict(knn, queries.rows);
        const auto scaler = feat::ZScaler::fit(train.rows);
        for (size_t q = 0; q < queries.size(); ++q) {
            const auto zq = scaler.transform(queries.rows[q]);
            std::vector<std::pair<double, size_t>> dists;
            for (size_t i = 0; i < train.size(); ++i) {
                const auto zi = scaler.transform(train.rows[i]);
                const double dx = zq[0] - zi[0], dy = zq[1] - zi[1];
                dists.emplace_back(dx * dx + dy * dy, i);
            }
            std::sort(dists.begin(), dists.end());
            size_t votes = 0;
            for (size_t i = 0; i < 5; ++i)
                if (train.labels[dists[i].second] == Label::ponzi) ++votes;
            const Label want = 2 * votes >= 5 ? Label::ponzi : Label::non_ponzi;
            if (!expect(knn_pred.labels[q] == want, "knn != oracle", detail)) return false;
        }
        return true;
    });

    criterion("end-to-end synthetic experiment", [&](std::string& detail) {
        corpus = synth::make_corpus(corpus_spec);
        const auto refined = ingest::refine_dataset(corpus.apps);
        if (!expect(refined.dataset.apps.size() == 1000, "refinement changed the corpus", detail))
            return false;
        if (!expect(refined.stats.retained_ponzi == 60 && refined.stats.retained_non_ponzi == 940,
                    "corpus composition", detail))
            return false;

        acc_ts_24 = feat::build_matrix(refined.dataset, feat::FeatureSet::acc_ts, 24);
        if (!expect(acc_ts_24.arity() == 545, "matrix arity", detail)) return false;

        eval::ProtocolOptions options;
        options.repeats = 10;
        options.folds = 0;
        options.seed = 1;
        const auto report =
            eval::run_protocol(acc_ts_24, models::config_for_token("gbdt-leaf"), options);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "mean F1 %.4f over 10 repeats", report.mean.f1);
        detail = buf;
        return report.mean.f1 >= 0.90;
    });

    criterion("experiment-3 holdout harness", [&](std::string& detail) {
        if (acc_ts_24.size() == 0) {
            detail = "corpus unavailable";
            return false;
        }
        eval::ExperimentPlan plan;
        plan.repeats = 3;
        plan.seed = 1;
        const auto config = models::config_for_token("gbdt-leaf");
        std::string summary;
        for (const auto holdout : {eval::HoldoutType::tree, eval::HoldoutType::handover,
                                   eval::HoldoutType::waterfall, eval::HoldoutType::all_three}) {
            const auto report = eval::run_experiment3(acc_ts_24, plan, config, holdout, 0.5);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%s recall %.3f; ", eval::to_string(holdout),
                          report.mean.recall);
            summary += buf;
            if (report.mean.recall < 0.80) {
                detail = summary + "(below 0.80)";
                return false;
            }
        }
        detail = summary;
        return true;
    });

    criterion("experiment-2 importance sweep", [&](std::string& detail) {
        if (acc_ts_24.size() == 0) {
            detail = "corpus unavailable";
            return false;
        }
        eval::ExperimentPlan plan;
        plan.repeats = 1;
        plan.folds = 0;
        plan.seed = 1;
        const auto result = eval::run_experiment2(acc_ts_24, plan, 5);

        if (!expect(result.curve.size() == 109 && result.curve.back().k == 545,
                    "curve does not span 5..545 step 5", detail))
            return false;

        // ranking invariants: counts descending; zero-count features strictly
        // after every positive-count feature (prefix nesting is structural)
        bool seen_zero = false;
        for (const auto& entry : result.ranking) {
            if (entry.split_count == 0) seen_zero = true;
            if (seen_zero && entry.split_count > 0) {
                detail = "zero-count feature ranked before a used feature";
                return false;
            }
        }

        eval::ProtocolOptions options;
        options.repeats = 1;
        options.folds = 0;
        options.seed = 1;
        const auto full =
            eval::run_protocol(acc_ts_24, models::config_for_token("gbdt-leaf"), options);
        if (!expect(std::fabs(result.curve.back().f1 - full.mean.f1) < 1e-12,
                    "top-545 run differs from the full-set run", detail))
            return false;

        char buf[96];
        std::snprintf(buf, sizeof(buf), "best k=%zu F1 %.4f vs full %.4f", result.best_k,
                      result.best_f1, full.mean.f1);
        detail = buf;
        return result.best_f1 >= full.mean.f1 - 0.01;
    });

    criterion("cli manifest determinism", [&](std::string& detail) {
        if (g_cli.empty()) {
            detail = "cli binary path not provided";
            return false;
        }
        const fs::path dir = fs::temp_directory_path() / "ponzi_acceptance_cli";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string d = dir.string();
        if (!expect(run_cli("synth-corpus --chain 4 --tree 1 --handover 1 --waterfall 1 --benign 8 "
                            "--seed 9 --out-dir " + d + "/c") == 0,
                    "synth-corpus failed", detail))
            return false;
        if (!expect(run_cli("ingest --txs " + d + "/c/transactions.jsonl --labels " + d +
                            "/c/labels.csv --out " + d + "/data.jsonl") == 0,
                    "ingest failed", detail))
            return false;
        if (!expect(run_cli("features --dataset " + d + "/data.jsonl --set acc-ts "
                            "--interval-hours 24 --out " + d + "/f.csv") == 0,
                    "features failed", detail))
            return false;
        if (!expect(run_cli("eval --features " + d + "/f.csv --model gbdt-leaf --repeats 2 "
                            "--folds 0 --seed 3 --out " + d + "/r.json") == 0,
                    "eval failed", detail))
            return false;

        const auto traces = slurp(d + "/c/transactions.jsonl");
        const auto features = slurp(d + "/f.csv");
        const auto dataset_bytes = slurp(d + "/data.jsonl");
        const auto report = slurp(d + "/r.json");
        bool ok = true;
        ok = ok && expect(run_cli("rerun " + d + "/c/manifest.json") == 0, "rerun synth", detail);
        ok = ok && expect(run_cli("rerun " + d + "/data.jsonl.manifest.json") == 0, "rerun ingest",
                          detail);
        ok = ok && expect(run_cli("rerun " + d + "/f.csv.manifest.json") == 0, "rerun features",
                          detail);
        ok = ok && expect(run_cli("rerun " + d + "/r.json.manifest.json") == 0, "rerun eval",
                          detail);
        if (!ok) return false;
        ok = ok && expect(slurp(d + "/c/transactions.jsonl") == traces, "traces differ", detail);
        ok = ok && expect(slurp(d + "/data.jsonl") == dataset_bytes, "dataset differs", detail);
        ok = ok && expect(slurp(d + "/f.csv") == features, "features differ", detail);
        ok = ok && expect(mask_wall_time(slurp(d + "/r.json")) == mask_wall_time(report),
                          "reports differ beyond timing", detail);
        fs::remove_all(dir);
        return ok;
    });

    criterion("refined-corpus counts", [&](std::string& detail) {
        const char* root = std::getenv("PONZI_REAL_CORPUS");
        if (root == nullptr || !fs::exists(fs::path(root) / "transactions.jsonl")) {
            detail = "SKIP: real corpus not supplied";
            return true;
        }
        const fs::path base(root);
        auto txs = ingest::parse_transactions((base / "transactions.jsonl").string(),
                                              ingest::TxFileSchema::jsonl);
        txs = ingest::filter_failed(txs);
        const auto labels = ingest::read_labels_csv((base / "labels.csv").string());
        const auto joined = ingest::join_labels(txs, labels, nullptr, false);
        const auto refined = ingest::refine_dataset(joined.records);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "retained %zu non-ponzi, %zu ponzi",
                      refined.stats.retained_non_ponzi, refined.stats.retained_ponzi);
        detail = buf;
        return refined.stats.retained_non_ponzi == 1182 && refined.stats.retained_ponzi == 79;
    });

    if (g_failures > 0) {
        std::printf("%d criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
