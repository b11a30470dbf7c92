#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "ponzi/account_features.hpp"
#include "ponzi/rng.hpp"
#include "ponzi/synthgen.hpp"
#include "ponzi/ts_panel.hpp"

using namespace ponzi;
using namespace ponzi::ts;
using test_helpers::make_app;
using test_helpers::TxSpec;

namespace {

constexpr int64_t kHour = 3600;

ApplicationRecord random_app(Rng& rng, size_t max_txs = 80) {
    std::vector<TxSpec> specs;
    const size_t n = 2 + rng.uniform_index(max_txs);
    int64_t ts = 0;
    for (size_t t = 0; t < n; ++t) {
        ts += static_cast<int64_t>(rng.uniform_index(8 * kHour)) + 1;
        TxSpec spec;
        spec.ts = ts;
        spec.incoming = rng.uniform() < 0.6;
        spec.value_eth = rng.uniform(0.0, 4.0);
        spec.counterpart = "0xc" + std::to_string(rng.uniform_index(12));
        spec.kind = rng.uniform() < 0.3 ? TxKind::internal : TxKind::normal;
        spec.counterpart_is_contract = rng.uniform() < 0.25;
        if (rng.uniform() < 0.5) spec.selector = "0000000" + std::to_string(rng.uniform_index(8));
        specs.push_back(spec);
    }
    specs.push_back({ts + 86400 + static_cast<int64_t>(rng.uniform_index(86400)), true, 1.0, "0xz"});
    return make_app("0xapp", specs);
}

}  // namespace

TEST_CASE("series registry has 43 names grouped as expected") {
    CHECK(series_names().size() == 43);
    CHECK(series_index("balance") == 0);
    CHECK(series_index("num_unique_out_going_person_address") == 42);
    CHECK(series_index("nope") == -1);
}

TEST_CASE("interval count is the ceiling of lifetime over T") {
    const auto app = make_app("0xapp", {{0, true, 1.0}, {100 * kHour, true, 1.0}});
    CHECK(make_interval_spec(app, 12).n == 9);  // ceil(100/12)
    CHECK(make_interval_spec(app, 24).n == 5);
    CHECK(make_interval_spec(app, 48).n == 3);
    CHECK_THROWS_AS(make_interval_spec(app, 13), std::invalid_argument);
}

TEST_CASE("interval assignment is left-closed right-open") {
    const auto app = make_app("0xapp", {{1000, true, 1.0},
                                        {1000 + 24 * kHour, true, 1.0},
                                        {1000 + 50 * kHour, true, 1.0}});
    const auto idx = assign_intervals(app, 24);
    REQUIRE(idx.size() == 3);
    CHECK(idx[0] == 0);  // at created_at
    CHECK(idx[1] == 1);  // at exactly created_at + 24h
    CHECK(idx[2] == 2);
}

TEST_CASE("last timestamp lands in interval N-1 even at an exact multiple") {
    const auto app = make_app("0xapp", {{0, true, 1.0}, {48 * kHour, true, 1.0}});
    const auto spec = make_interval_spec(app, 24);
    CHECK(spec.n == 2);
    const auto idx = assign_intervals(app, 24);
    CHECK(idx.back() == spec.n - 1);
}

TEST_CASE("transaction before creation is rejected") {
    auto app = make_app("0xapp", {{1000, true, 1.0}, {90000, true, 1.0}});
    app.created_at = 2000;  // corrupt record
    CHECK_THROWS_AS(assign_intervals(app, 24), std::runtime_error);
}

TEST_CASE("balance carries forward over empty intervals") {
    // one 2 ETH investment in interval 0, a zero-value ping at 60h
    const auto app = make_app("0xapp", {{0, true, 2.0}, {60 * kHour, true, 0.0}});
    const auto panel = build_panel(app, 24);
    REQUIRE(panel.spec.n == 3);
    CHECK(panel.at("profit") == std::vector<double>{2.0, 0.0, 0.0});
    CHECK(panel.at("balance") == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(panel.at("profit_and_loss") == std::vector<double>{2.0, 0.0, 0.0});
}

TEST_CASE("unique series count distinct values within each interval") {
    const auto app = make_app("0xapp", {{0, true, 1.0, "0xsame"},
                                        {10, true, 1.0, "0xsame"},
                                        {20, true, 1.0, "0xother"},
                                        {30 * kHour, true, 1.0, "0xsame"},
                                        {40 * kHour, true, 1.0, "0xlast"}});
    const auto panel = build_panel(app, 24);
    CHECK(panel.at("total_unique_in_coming_addresses")[0] == 2.0);
    CHECK(panel.at("total_in_coming_txs")[0] == 3.0);
    CHECK(panel.at("total_unique_in_coming_addresses")[1] == 2.0);  // interval-local, not cumulative
}

TEST_CASE("panel identities hold on random applications") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const auto app = random_app(rng);
        for (int t_hours : {12, 24, 48}) {
            const auto panel = build_panel(app, t_hours);
            const size_t n = panel.spec.n;
            double total = 0.0;
            for (size_t i = 0; i < n; ++i) {
                total += panel.at("total_txs")[i];
                CHECK(panel.at("total_txs")[i] == panel.at("total_in_coming_txs")[i] +
                                                      panel.at("total_out_going_txs")[i]);
                CHECK(panel.at("total_txs")[i] ==
                      panel.at("total_internal_txs")[i] + panel.at("total_normal_txs")[i]);
                CHECK(panel.at("total_in_coming_txs")[i] ==
                      panel.at("total_in_coming_internal_txs")[i] +
                          panel.at("total_in_coming_normal_txs")[i]);
                CHECK(panel.at("total_out_going_txs")[i] ==
                      panel.at("total_out_going_internal_txs")[i] +
                          panel.at("total_out_going_normal_txs")[i]);
                CHECK(panel.at("profit")[i] ==
                      doctest::Approx(panel.at("profit_by_contract")[i] +
                                      panel.at("profit_by_person")[i]));
                CHECK(panel.at("loss")[i] == doctest::Approx(panel.at("loss_by_contract")[i] +
                                                             panel.at("loss_by_person")[i]));
                CHECK(panel.at("profit_and_loss")[i] ==
                      doctest::Approx(panel.at("profit")[i] - panel.at("loss")[i]));
                const double prev = i == 0 ? 0.0 : panel.at("balance")[i - 1];
                CHECK(panel.at("balance")[i] ==
                      doctest::Approx(prev + panel.at("profit_and_loss")[i]));
                CHECK(panel.at("loss")[i] >= 0.0);
                CHECK(panel.at("profit")[i] >= 0.0);
            }
            CHECK(total == static_cast<double>(app.txs.size()));
        }
    }
}

TEST_CASE("shifting all timestamps leaves the panel unchanged") {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const auto app = random_app(rng);
        ApplicationRecord shifted = app;
        shifted.created_at += 987654;
        for (auto& tx : shifted.txs) tx.timestamp += 987654;
        const auto a = build_panel(app, 24);
        const auto b = build_panel(shifted, 24);
        for (size_t s = 0; s < kSeriesCount; ++s) CHECK(a.series[s] == b.series[s]);
    }
}

TEST_CASE("interval sums reconcile with whole-lifetime account aggregates") {
    Rng rng(33);
    const auto& reg = feat::account_registry();
    auto acc = [&](const std::vector<double>& values, const char* name) {
        return values[static_cast<size_t>(reg.index_of(name))];
    };
    for (int trial = 0; trial < 30; ++trial) {
        const auto app = random_app(rng);
        const auto features = feat::compute_account_features(app);
        for (int t_hours : {12, 24, 48}) {
            const auto panel = build_panel(app, t_hours);
            auto series_sum = [&](const char* name) {
                double sum = 0.0;
                for (double v : panel.at(name)) sum += v;
                return sum;
            };
            CHECK(series_sum("total_txs") == acc(features, "num_all_txs"));
            CHECK(series_sum("total_in_coming_txs") == acc(features, "num_in_txs"));
            CHECK(series_sum("total_out_going_txs") == acc(features, "num_out_txs"));
            CHECK(series_sum("total_in_coming_internal_txs") ==
                  acc(features, "num_in_internal_txs"));
            CHECK(series_sum("total_out_going_internal_txs") ==
                  acc(features, "num_out_internal_txs"));
            CHECK(series_sum("total_in_coming_normal_txs") == acc(features, "nbr_tx_in"));
            CHECK(series_sum("profit") == doctest::Approx(acc(features, "total_inv_amt")));
            CHECK(series_sum("loss") == doctest::Approx(acc(features, "total_pay_amt")));
            CHECK(panel.at("balance").back() == doctest::Approx(acc(features, "balance")));
        }
    }
}

TEST_CASE("waterfall loss series matches an interval replay oracle") {
    synth::SchemeParams params;
    params.scheme = synth::Scheme::waterfall;
    params.n_investors = 50;
    params.duration_days = 25;
    params.seed = 77;
    const auto app = synth::gen_waterfall(params);
    const auto panel = build_panel(app, 24);

    // replay: accumulate outgoing value per interval directly
    std::vector<double> loss(panel.spec.n, 0.0);
    const int64_t t_secs = 24 * kHour;
    for (const auto& tx : app.txs) {
        if (tx.from_addr != app.address) continue;
        size_t idx = static_cast<size_t>((tx.timestamp - app.created_at) / t_secs);
        idx = std::min(idx, panel.spec.n - 1);
        loss[idx] += wei_to_eth(tx.value_wei);
    }
    for (size_t i = 0; i < panel.spec.n; ++i)
        CHECK(panel.at("loss")[i] == doctest::Approx(loss[i]).epsilon(1e-12));
}
