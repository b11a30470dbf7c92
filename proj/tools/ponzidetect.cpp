// Command-line front end: ingest -> features -> eval / experiments, plus
// synthetic trace generation and figure-data export. Every command writes a
// run manifest next to its outputs; `rerun` re-executes a manifest.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ponzi/eval.hpp"
#include "ponzi/ingest.hpp"
#include "ponzi/manifest.hpp"
#include "ponzi/parallel.hpp"
#include "ponzi/synthgen.hpp"
#include "ponzi/ts_measures.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ponzi;

using Clock = std::chrono::steady_clock;

int run_cli(const std::vector<std::string>& args, bool is_rerun);

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ManifestScope {
    cli::RunManifest manifest;
    Clock::time_point start = Clock::now();
    std::string path;

    ManifestScope(const std::string& command, const std::vector<std::string>& argv,
                  uint64_t seed, const std::string& manifest_path) {
        manifest.command = command;
        manifest.argv = argv;
        manifest.seed = seed;
        path = manifest_path;
    }
    void input(const std::string& file) {
        manifest.input_digests[file] = cli::digest_hex(cli::fnv1a64_file(file));
    }
    void output(const std::string& file) { manifest.outputs.push_back(file); }
    void commit() {
        manifest.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        cli::write_manifest(manifest, path);
    }
};

eval::ExperimentPlan plan_from(size_t repeats, size_t folds, double test_fraction, uint64_t seed) {
    eval::ExperimentPlan plan;
    plan.repeats = repeats;
    plan.folds = folds;
    plan.test_fraction = test_fraction;
    plan.seed = seed;
    return plan;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

struct IngestArgs {
    std::string txs, labels, addr_types, out;
    std::string schema = "jsonl";
    bool lenient = false;
};

void cmd_ingest(const IngestArgs& a, ManifestScope& scope) {
    scope.input(a.txs);
    scope.input(a.labels);
    if (!a.addr_types.empty()) scope.input(a.addr_types);

    const auto schema = a.schema == "csv" ? ingest::TxFileSchema::csv : ingest::TxFileSchema::jsonl;
    auto txs = ingest::parse_transactions(a.txs, schema);
    const size_t parsed = txs.size();
    txs = ingest::filter_failed(txs);
    const auto labels = ingest::read_labels_csv(a.labels);
    std::unordered_map<std::string, bool> addr_types;
    if (!a.addr_types.empty()) addr_types = ingest::read_address_types_csv(a.addr_types);
    const auto joined = ingest::join_labels(txs, labels, a.addr_types.empty() ? nullptr : &addr_types,
                                            !a.lenient);
    const auto refined = ingest::refine_dataset(joined.records);
    ingest::write_dataset_jsonl(refined.dataset, a.out);
    scope.output(a.out);

    const auto& s = refined.stats;
    std::printf("parsed %zu transactions (%zu successful), %zu labeled applications\n", parsed,
                txs.size(), joined.records.size());
    if (joined.unmatched_labels > 0)
        std::printf("warning: %zu labeled addresses had no transactions\n", joined.unmatched_labels);
    if (joined.dropped_self_transfers > 0)
        std::printf("warning: dropped %zu self-transfers\n", joined.dropped_self_transfers);
    std::printf("retained: %zu non-ponzi, %zu ponzi\n", s.retained_non_ponzi, s.retained_ponzi);
    std::printf("dropped: %zu without transactions, %zu with lifetime under one day "
                "(%zu non-ponzi, %zu ponzi)\n",
                s.dropped_no_txs, s.dropped_short_lifetime, s.dropped_non_ponzi, s.dropped_ponzi);
}

struct FeaturesArgs {
    std::string dataset, out;
    std::string set = "acc-ts";
    int interval_hours = 24;
};

void cmd_features(const FeaturesArgs& a, ManifestScope& scope) {
    scope.input(a.dataset);
    const auto dataset = ingest::read_dataset_jsonl(a.dataset);
    const auto matrix = feat::build_matrix(dataset, feat::feature_set_from_string(a.set),
                                           a.interval_hours);
    feat::write_matrix_csv(matrix, a.out);
    scope.output(a.out);
    std::printf("wrote %zu rows x %zu features to %s\n", matrix.size(), matrix.arity(),
                a.out.c_str());
}

struct PanelArgs {
    std::string dataset, address, out;
    int interval_hours = 24;
};

void cmd_panel(const PanelArgs& a, ManifestScope& scope) {
    scope.input(a.dataset);
    const auto dataset = ingest::read_dataset_jsonl(a.dataset);
    for (const auto& app : dataset.apps) {
        if (app.address != a.address) continue;
        const auto panel = ts::build_panel(app, a.interval_hours);
        ts::write_panel_csv(panel, a.out);
        scope.output(a.out);
        if (panel.negative_balance_warning)
            std::printf("warning: balance went negative (outflow not covered by recorded inflow)\n");
        std::printf("wrote %zu intervals x %zu series to %s\n", panel.spec.n, ts::kSeriesCount,
                    a.out.c_str());
        return;
    }
    throw std::runtime_error("address not found in dataset: " + a.address);
}

struct EvalArgs {
    std::string features, out, model = "gbdt-leaf", select;
    size_t repeats = 50, folds = 5, top_k = 0;
    double test_fraction = 0.2;
    uint64_t seed = 0;
};

void cmd_eval(const EvalArgs& a, ManifestScope& scope) {
    scope.input(a.features);
    auto matrix = feat::read_matrix_csv(a.features);

    if (!a.select.empty()) {
        scope.input(a.select);
        std::ifstream in(a.select);
        if (!in) throw std::runtime_error("cannot open feature list: " + a.select);
        std::vector<std::string> names;
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty()) names.push_back(line);
        }
        matrix = feat::select_features(matrix, names);
        std::printf("restricted to %zu listed features\n", matrix.arity());
    }

    if (a.top_k > 0) {
        const auto plan = plan_from(a.repeats, a.folds, a.test_fraction, a.seed);
        const auto ranking = eval::importance_ranking(matrix, plan);
        std::vector<std::string> names;
        for (size_t i = 0; i < std::min(a.top_k, ranking.size()); ++i)
            names.push_back(ranking[i].name);
        matrix = feat::select_features(matrix, names);
        std::printf("refined to top-%zu features by split count\n", matrix.arity());
    }

    eval::ProtocolOptions options;
    options.repeats = a.repeats;
    options.folds = a.folds;
    options.test_fraction = a.test_fraction;
    options.seed = a.seed;
    const auto config = models::config_for_token(a.model);
    const auto report = eval::run_protocol(matrix, config, options);
    write_text(a.out, eval::report_to_json(report));
    scope.output(a.out);
    std::printf("%s on %zu features: accuracy %.3f precision %.3f recall %.3f f1 %.3f (%zu repeats)\n",
                a.model.c_str(), matrix.arity(), report.mean.accuracy, report.mean.precision,
                report.mean.recall, report.mean.f1, a.repeats);
}

struct TrainArgs {
    std::string features, out, model = "gbdt-leaf";
    uint64_t seed = 0;
};

void cmd_train(const TrainArgs& a, ManifestScope& scope) {
    scope.input(a.features);
    const auto matrix = feat::read_matrix_csv(a.features);
    auto config = models::config_for_token(a.model);
    config.seed = a.seed;
    const auto model = models::fit(matrix, config);
    models::save_model_json(model, a.out);
    scope.output(a.out);
    std::printf("trained %s on %zu rows x %zu features -> %s\n", a.model.c_str(), matrix.size(),
                matrix.arity(), a.out.c_str());
}

struct ExperimentArgs {
    int number = 1;
    std::string dataset, out_dir;
    std::vector<std::string> sets = {"acc", "ts", "acc-ts"};
    std::vector<int> intervals = {12, 24, 48};
    std::vector<std::string> models = {"knn", "rf", "gbdt-level", "gbdt-leaf"};
    int interval_hours = 12;
    size_t repeats = 50, folds = 5, step = 5;
    double test_fraction = 0.2;
    std::string holdout = "waterfall";
    double scam_rate = 0.5;
    uint64_t seed = 0;
};

void cmd_experiment(const ExperimentArgs& a, ManifestScope& scope) {
    scope.input(a.dataset);
    const auto dataset = ingest::read_dataset_jsonl(a.dataset);
    fs::create_directories(a.out_dir);
    auto plan = plan_from(a.repeats, a.folds, a.test_fraction, a.seed);

    if (a.number == 1) {
        plan.feature_sets.clear();
        for (const auto& s : a.sets) plan.feature_sets.push_back(feat::feature_set_from_string(s));
        plan.interval_hours = a.intervals;
        plan.model_tokens = a.models;
        const auto rows = eval::run_experiment1(dataset, plan);

        std::string csv = "feature_set,t_hours,model,features,accuracy,precision,recall,f1,wall_time_s\n";
        std::string json_all = "[\n";
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            csv += r.feature_set + "," + std::to_string(r.t_hours) + "," + r.model + "," +
                   std::to_string(r.report.feature_count) + "," + fmt(r.report.mean.accuracy) + "," +
                   fmt(r.report.mean.precision) + "," + fmt(r.report.mean.recall) + "," +
                   fmt(r.report.mean.f1) + "," + fmt(r.report.wall_time_s) + "\n";
            json_all += eval::report_to_json(r.report);
            if (i + 1 < rows.size()) json_all += ",\n";
            std::printf("%-7s T=%-2d %-10s f1=%.3f\n", r.feature_set.c_str(), r.t_hours,
                        r.model.c_str(), r.report.mean.f1);
        }
        json_all += "]\n";
        const std::string csv_path = a.out_dir + "/experiment1.csv";
        write_text(csv_path, csv);
        scope.output(csv_path);
        const std::string json_path = a.out_dir + "/experiment1.json";
        write_text(json_path, json_all);
        scope.output(json_path);
    } else if (a.number == 2) {
        const auto matrix = feat::build_matrix(dataset, feat::FeatureSet::acc_ts, a.interval_hours);
        const auto result = eval::run_experiment2(matrix, plan, a.step);

        std::string curve = "k,f1,ts_share\n";
        for (const auto& p : result.curve)
            curve += std::to_string(p.k) + "," + fmt(p.f1) + "," + fmt(p.ts_share) + "\n";
        const std::string curve_path = a.out_dir + "/experiment2_curve.csv";
        write_text(curve_path, curve);
        scope.output(curve_path);

        std::string refined = "rank,feature,type\n";
        for (size_t i = 0; i < result.refined_names.size(); ++i)
            refined += std::to_string(i + 1) + "," + result.refined_names[i] + "," +
                       (feat::is_ts_feature(result.refined_names[i]) ? "TS" : "ACC") + "\n";
        const std::string refined_path = a.out_dir + "/experiment2_refined.csv";
        write_text(refined_path, refined);
        scope.output(refined_path);

        size_t used = 0;
        for (const auto& e : result.ranking)
            if (e.split_count > 0) ++used;
        std::printf("features used at least once: %zu/%zu\n", used, result.ranking.size());
        std::printf("best k=%zu f1=%.3f (refined set: %zu account + %zu time-series)\n",
                    result.best_k, result.best_f1, result.refined_acc_count, result.refined_ts_count);
    } else if (a.number == 3) {
        const auto matrix = feat::build_matrix(dataset, feat::FeatureSet::acc_ts, a.interval_hours);
        const auto holdout = eval::holdout_type_from_string(a.holdout);
        const auto config = models::config_for_token("gbdt-leaf");
        const auto report = eval::run_experiment3(matrix, plan, config, holdout, a.scam_rate);
        char name[128];
        std::snprintf(name, sizeof(name), "%s/experiment3_%s_%g.json", a.out_dir.c_str(),
                      eval::to_string(holdout), a.scam_rate);
        write_text(name, eval::report_to_json(report));
        scope.output(name);
        std::printf("holdout %s at scam rate %.2f: accuracy %.3f precision %.3f recall %.3f f1 %.3f\n",
                    eval::to_string(holdout), a.scam_rate, report.mean.accuracy,
                    report.mean.precision, report.mean.recall, report.mean.f1);
    } else {
        throw std::runtime_error("experiment number must be 1, 2 or 3");
    }
}

struct SynthArgs {
    std::string scheme = "chain", out_dir;
    size_t count = 1;
    synth::SchemeParams params;
};

void write_traces(const std::vector<ApplicationRecord>& apps, const std::string& out_dir,
                  ManifestScope& scope) {
    fs::create_directories(out_dir);
    std::vector<Transaction> txs;
    std::vector<ingest::LabelRow> labels;
    std::map<std::string, bool> addr_types;
    for (const auto& app : apps) {
        txs.insert(txs.end(), app.txs.begin(), app.txs.end());
        labels.push_back({app.address, app.label, app.ponzi_type});
        addr_types[app.address] = true;
        for (const auto& tx : app.txs)
            addr_types[app.counterpart(tx)] = tx.counterpart_is_contract;
    }
    const std::string txs_path = out_dir + "/transactions.jsonl";
    const std::string labels_path = out_dir + "/labels.csv";
    const std::string types_path = out_dir + "/address_types.csv";
    ingest::write_transactions_jsonl(txs, txs_path);
    ingest::write_labels_csv(labels, labels_path);
    ingest::write_address_types_csv(addr_types, types_path);
    scope.output(txs_path);
    scope.output(labels_path);
    scope.output(types_path);
    std::printf("wrote %zu traces (%zu transactions) to %s\n", apps.size(), txs.size(),
                out_dir.c_str());
}

void cmd_synth(const SynthArgs& a, ManifestScope& scope) {
    std::vector<ApplicationRecord> apps;
    for (size_t i = 0; i < a.count; ++i) {
        synth::SchemeParams params = a.params;
        params.scheme = synth::scheme_from_string(a.scheme);
        params.seed = a.params.seed + i;
        params.address.clear();  // derive unique addresses from the seed
        apps.push_back(synth::generate(params));
    }
    write_traces(apps, a.out_dir, scope);
}

struct CorpusArgs {
    std::string out_dir;
    synth::CorpusSpec spec;
};

void cmd_synth_corpus(const CorpusArgs& a, ManifestScope& scope) {
    const auto dataset = synth::make_corpus(a.spec);
    write_traces(dataset.apps, a.out_dir, scope);
}

struct FigureDataArgs {
    std::string dataset, address, out_dir;
};

void cmd_figure_data(const FigureDataArgs& a, ManifestScope& scope) {
    scope.input(a.dataset);
    const auto dataset = ingest::read_dataset_jsonl(a.dataset);
    const ApplicationRecord* app = nullptr;
    for (const auto& candidate : dataset.apps)
        if (candidate.address == a.address) app = &candidate;
    if (!app) throw std::runtime_error("address not found in dataset: " + a.address);
    fs::create_directories(a.out_dir);

    const size_t days = static_cast<size_t>(app->lifetime_secs() / 86400) + 1;
    std::vector<size_t> volume(days, 0);
    std::vector<WeiSigned> daily_net(days, 0);

    std::string events = "timestamp,direction,value_eth\n";
    for (const auto& tx : app->txs) {
        const size_t day = static_cast<size_t>((tx.timestamp - app->created_at) / 86400);
        ++volume[day];
        const bool incoming = app->is_incoming(tx);
        daily_net[day] += incoming ? static_cast<WeiSigned>(tx.value_wei)
                                   : -static_cast<WeiSigned>(tx.value_wei);
        events += std::to_string(tx.timestamp) + "," + (incoming ? "investment" : "payment") + "," +
                  fmt(wei_to_eth(tx.value_wei)) + "\n";
    }

    std::string volume_csv = "day,txs\n";
    std::string balance_csv = "day,balance_eth\n";
    WeiSigned running = 0;
    for (size_t d = 0; d < days; ++d) {
        volume_csv += std::to_string(d) + "," + std::to_string(volume[d]) + "\n";
        running += daily_net[d];
        balance_csv += std::to_string(d) + "," + fmt(wei_to_eth(running)) + "\n";
    }

    const std::string volume_path = a.out_dir + "/daily_volume.csv";
    const std::string events_path = a.out_dir + "/events.csv";
    const std::string balance_path = a.out_dir + "/balance.csv";
    write_text(volume_path, volume_csv);
    write_text(events_path, events);
    write_text(balance_path, balance_csv);
    scope.output(volume_path);
    scope.output(events_path);
    scope.output(balance_path);
    std::printf("wrote figure data for %s (%zu days, %zu events)\n", a.address.c_str(), days,
                app->txs.size());
}

// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, bool is_rerun) {
    CLI::App app{"Transaction-based Ponzi scheme detection for Ethereum"};
    app.set_config("--config");
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

    IngestArgs ingest_args;
    auto* ingest_cmd = app.add_subcommand("ingest", "parse, filter and refine a transaction corpus");
    ingest_cmd->add_option("--txs", ingest_args.txs, "transactions file")->required();
    ingest_cmd->add_option("--labels", ingest_args.labels, "labels csv")->required();
    ingest_cmd->add_option("--addr-types", ingest_args.addr_types, "address-type map csv");
    ingest_cmd->add_option("--schema", ingest_args.schema, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    ingest_cmd->add_flag("--lenient", ingest_args.lenient, "skip labels without transactions");
    ingest_cmd->add_option("--out", ingest_args.out, "output dataset jsonl")->required();

    FeaturesArgs features_args;
    auto* features_cmd = app.add_subcommand("features", "build a feature matrix csv");
    features_cmd->add_option("--dataset", features_args.dataset)->required();
    features_cmd->add_option("--interval-hours", features_args.interval_hours)
        ->check(CLI::IsMember({12, 24, 48}));
    features_cmd->add_option("--set", features_args.set)->check(CLI::IsMember({"acc", "ts", "acc-ts"}));
    features_cmd->add_option("--out", features_args.out)->required();

    PanelArgs panel_args;
    auto* panel_cmd = app.add_subcommand("panel", "dump one application's interval series");
    panel_cmd->add_option("--dataset", panel_args.dataset)->required();
    panel_cmd->add_option("--address", panel_args.address)->required();
    panel_cmd->add_option("--interval-hours", panel_args.interval_hours)
        ->check(CLI::IsMember({12, 24, 48}));
    panel_cmd->add_option("--out", panel_args.out)->required();

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "train/test protocol with repeats");
    eval_cmd->add_option("--features", eval_args.features)->required();
    eval_cmd->add_option("--model", eval_args.model)
        ->check(CLI::IsMember({"knn", "rf", "gbdt-level", "gbdt-leaf"}));
    eval_cmd->add_option("--repeats", eval_args.repeats);
    eval_cmd->add_option("--folds", eval_args.folds, "cross-validation folds (0 disables)");
    eval_cmd->add_option("--test-fraction", eval_args.test_fraction);
    eval_cmd->add_option("--seed", eval_args.seed);
    eval_cmd->add_option("--top-k", eval_args.top_k, "refine to the k most important features");
    eval_cmd->add_option("--select", eval_args.select, "file listing feature names to keep");
    eval_cmd->add_option("--out", eval_args.out)->required();

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "fit on all rows and save the model");
    train_cmd->add_option("--features", train_args.features)->required();
    train_cmd->add_option("--model", train_args.model)
        ->check(CLI::IsMember({"knn", "rf", "gbdt-level", "gbdt-leaf"}));
    train_cmd->add_option("--seed", train_args.seed);
    train_cmd->add_option("--out", train_args.out)->required();

    ExperimentArgs exp_args;
    auto* exp_cmd = app.add_subcommand("experiment", "run experiment 1, 2 or 3");
    exp_cmd->add_option("number", exp_args.number, "experiment number")->required();
    exp_cmd->add_option("--dataset", exp_args.dataset)->required();
    exp_cmd->add_option("--out-dir", exp_args.out_dir)->required();
    exp_cmd->add_option("--sets", exp_args.sets, "experiment 1 feature sets");
    exp_cmd->add_option("--intervals", exp_args.intervals, "experiment 1 interval hours");
    exp_cmd->add_option("--models", exp_args.models, "experiment 1 model tokens");
    exp_cmd->add_option("--interval-hours", exp_args.interval_hours, "experiments 2/3 interval");
    exp_cmd->add_option("--repeats", exp_args.repeats);
    exp_cmd->add_option("--folds", exp_args.folds);
    exp_cmd->add_option("--test-fraction", exp_args.test_fraction);
    exp_cmd->add_option("--step", exp_args.step, "experiment 2 top-k step");
    exp_cmd->add_option("--holdout", exp_args.holdout, "experiment 3 held-out type");
    exp_cmd->add_option("--scam-rate", exp_args.scam_rate, "experiment 3 test scam rate");
    exp_cmd->add_option("--seed", exp_args.seed);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "generate synthetic traces for one scheme");
    synth_cmd->add_option("--scheme", synth_args.scheme)
        ->check(CLI::IsMember({"chain", "tree", "handover", "waterfall", "benign"}));
    synth_cmd->add_option("--count", synth_args.count);
    synth_cmd->add_option("--n-investors", synth_args.params.n_investors);
    synth_cmd->add_option("--multiplier", synth_args.params.multiplier);
    synth_cmd->add_option("--fee-rate", synth_args.params.fee_rate);
    synth_cmd->add_option("--toll-growth", synth_args.params.toll_growth);
    synth_cmd->add_option("--payout-fraction", synth_args.params.payout_fraction);
    synth_cmd->add_option("--arrival-mean-secs", synth_args.params.arrival_mean_secs);
    synth_cmd->add_option("--arrival-decay", synth_args.params.arrival_decay);
    synth_cmd->add_option("--duration-days", synth_args.params.duration_days);
    synth_cmd->add_option("--seed", synth_args.params.seed);
    synth_cmd->add_option("--out-dir", synth_args.out_dir)->required();

    CorpusArgs corpus_args;
    auto* corpus_cmd = app.add_subcommand("synth-corpus", "generate a mixed labeled corpus");
    corpus_cmd->add_option("--chain", corpus_args.spec.chain);
    corpus_cmd->add_option("--tree", corpus_args.spec.tree);
    corpus_cmd->add_option("--handover", corpus_args.spec.handover);
    corpus_cmd->add_option("--waterfall", corpus_args.spec.waterfall);
    corpus_cmd->add_option("--benign", corpus_args.spec.benign);
    corpus_cmd->add_option("--seed", corpus_args.spec.seed);
    corpus_cmd->add_option("--out-dir", corpus_args.out_dir)->required();

    FigureDataArgs figure_args;
    auto* figure_cmd = app.add_subcommand("figure-data", "per-day volume, events and balance csvs");
    figure_cmd->add_option("--dataset", figure_args.dataset)->required();
    figure_cmd->add_option("--address", figure_args.address)->required();
    figure_cmd->add_option("--out-dir", figure_args.out_dir)->required();

    std::string rerun_path;
    auto* rerun_cmd = app.add_subcommand("rerun", "re-execute a command from its manifest");
    rerun_cmd->add_option("manifest", rerun_path)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    set_max_threads(threads);

    try {
        if (rerun_cmd->parsed()) {
            if (is_rerun) throw std::runtime_error("nested rerun is not supported");
            const auto manifest = cli::read_manifest(rerun_path);
            std::printf("re-running: %s\n", manifest.command.c_str());
            return run_cli(manifest.argv, true);
        }

        const CLI::App* active = app.get_subcommands().front();
        const std::string name = active->get_name();
        uint64_t seed = 0;
        std::string manifest_path;
        if (ingest_cmd->parsed()) manifest_path = ingest_args.out + ".manifest.json";
        if (features_cmd->parsed()) manifest_path = features_args.out + ".manifest.json";
        if (panel_cmd->parsed()) manifest_path = panel_args.out + ".manifest.json";
        if (eval_cmd->parsed()) {
            manifest_path = eval_args.out + ".manifest.json";
            seed = eval_args.seed;
        }
        if (train_cmd->parsed()) {
            manifest_path = train_args.out + ".manifest.json";
            seed = train_args.seed;
        }
        if (exp_cmd->parsed()) {
            fs::create_directories(exp_args.out_dir);
            manifest_path = exp_args.out_dir + "/manifest.json";
            seed = exp_args.seed;
        }
        if (synth_cmd->parsed()) {
            fs::create_directories(synth_args.out_dir);
            manifest_path = synth_args.out_dir + "/manifest.json";
            seed = synth_args.params.seed;
        }
        if (corpus_cmd->parsed()) {
            fs::create_directories(corpus_args.out_dir);
            manifest_path = corpus_args.out_dir + "/manifest.json";
            seed = corpus_args.spec.seed;
        }
        if (figure_cmd->parsed()) {
            fs::create_directories(figure_args.out_dir);
            manifest_path = figure_args.out_dir + "/manifest.json";
        }

        ManifestScope scope(name, args, seed, manifest_path);
        if (ingest_cmd->parsed()) cmd_ingest(ingest_args, scope);
        if (features_cmd->parsed()) cmd_features(features_args, scope);
        if (panel_cmd->parsed()) cmd_panel(panel_args, scope);
        if (eval_cmd->parsed()) cmd_eval(eval_args, scope);
        if (train_cmd->parsed()) cmd_train(train_args, scope);
        if (exp_cmd->parsed()) cmd_experiment(exp_args, scope);
        if (synth_cmd->parsed()) cmd_synth(synth_args, scope);
        if (corpus_cmd->parsed()) cmd_synth_corpus(corpus_args, scope);
        if (figure_cmd->parsed()) cmd_figure_data(figure_args, scope);
        scope.commit();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, false);
}
