#include "ponzi/account_features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace ponzi::feat {

namespace {

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

// Population standard deviation; single elements give 0.
double pop_sd(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

struct CounterpartStats {
    int64_t first_investment = std::numeric_limits<int64_t>::max();
    int64_t first_payment = std::numeric_limits<int64_t>::max();
    size_t payments_received = 0;
    Wei invested = 0;
    Wei received = 0;
    size_t investments_made = 0;
};

}  // namespace

int FeatureRegistry::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

const FeatureRegistry& account_registry() {
    // num_in_internal_txs / num_out_internal_txs are the normal-vs-internal
    // count splits; nbr_tx_in counts incoming normal transactions.
    static const FeatureRegistry registry{{
        "know_rate",
        "balance",
        "num_in_txs",
        "num_out_txs",
        "difference_idx",
        "paid_rate",
        "max_pay",
        "total_inv_amt",
        "total_pay_amt",
        "avg_inv_amt",
        "avg_pay_amt",
        "dev_inv_amt",
        "dev_pay_amt",
        "avg_time_btw_txs",
        "life_time",
        "gini_amt_in",
        "gini_amt_out",
        "gini_time_in",
        "gini_time_out",
        "overlap_addr",
        "num_inv_acc",
        "num_pay_acc",
        "balance_rate",
        "payment_time",
        "num_all_txs",
        "pay_skewness",
        "num_in_internal_txs",
        "num_out_internal_txs",
        "nbr_tx_in",
    }};
    return registry;
}

double gini(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("gini: empty input");
    double total = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("gini: negative value");
        total += v;
    }
    if (total == 0.0) return 0.0;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double weighted = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i)
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
    return weighted / (n * total);
}

double skewness(const std::vector<double>& values) {
    if (values.size() < 3) return 0.0;
    const double n = static_cast<double>(values.size());
    const double m = mean_of(values);
    double m2 = 0.0, m3 = 0.0;
    for (double x : values) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

std::vector<double> compute_account_features(const ApplicationRecord& app) {
    if (app.txs.empty()) throw std::invalid_argument("account features require a refined application");

    size_t num_in = 0, num_out = 0, num_in_internal = 0, num_out_internal = 0, num_in_normal = 0;
    Wei total_in = 0, total_out = 0;
    std::vector<double> in_amounts, out_amounts;
    int64_t last_payment_ts = 0;
    bool any_payment = false;
    std::unordered_map<std::string, CounterpartStats> participants;

    for (const auto& tx : app.txs) {
        auto& stats = participants[app.counterpart(tx)];
        if (app.is_incoming(tx)) {
            ++num_in;
            if (tx.kind == TxKind::internal)
                ++num_in_internal;
            else
                ++num_in_normal;
            total_in += tx.value_wei;
            in_amounts.push_back(wei_to_eth(tx.value_wei));
            stats.first_investment = std::min(stats.first_investment, tx.timestamp);
            stats.invested += tx.value_wei;
            ++stats.investments_made;
        } else {
            ++num_out;
            if (tx.kind == TxKind::internal) ++num_out_internal;
            total_out += tx.value_wei;
            out_amounts.push_back(wei_to_eth(tx.value_wei));
            stats.first_payment = std::min(stats.first_payment, tx.timestamp);
            stats.received += tx.value_wei;
            ++stats.payments_received;
            last_payment_ts = std::max(last_payment_ts, tx.timestamp);
            any_payment = true;
        }
    }

    size_t investors = 0, payees = 0, overlap = 0, invested_before_paid = 0, max_pay = 0;
    std::vector<double> inv_totals, pay_totals, inv_counts, pay_counts;
    for (const auto& [addr, stats] : participants) {
        const bool invested = stats.investments_made > 0;
        const bool paid = stats.payments_received > 0;
        if (invested) {
            ++investors;
            inv_totals.push_back(wei_to_eth(stats.invested));
            inv_counts.push_back(static_cast<double>(stats.investments_made));
        }
        if (paid) {
            ++payees;
            pay_totals.push_back(wei_to_eth(stats.received));
            pay_counts.push_back(static_cast<double>(stats.payments_received));
            max_pay = std::max(max_pay, stats.payments_received);
        }
        if (invested && paid) ++overlap;
        if (invested && stats.first_investment < stats.first_payment) ++invested_before_paid;
    }

    const double lifetime = static_cast<double>(app.lifetime_secs());
    double gap_sum = 0.0;
    for (size_t i = 1; i < app.txs.size(); ++i)
        gap_sum += static_cast<double>(app.txs[i].timestamp - app.txs[i - 1].timestamp);
    const double avg_gap =
        app.txs.size() < 2 ? 0.0 : gap_sum / static_cast<double>(app.txs.size() - 1);

    const double balance_eth =
        wei_to_eth(static_cast<WeiSigned>(total_in) - static_cast<WeiSigned>(total_out));
    const double total_in_eth = wei_to_eth(total_in);
    const double total_out_eth = wei_to_eth(total_out);

    std::vector<double> out(account_registry().arity(), 0.0);
    size_t i = 0;
    out[i++] = participants.empty()
                   ? 0.0
                   : static_cast<double>(invested_before_paid) / static_cast<double>(participants.size());
    out[i++] = balance_eth;
    out[i++] = static_cast<double>(num_in);
    out[i++] = static_cast<double>(num_out);
    out[i++] = (static_cast<double>(num_in) - static_cast<double>(num_out)) /
               std::max<double>(1.0, static_cast<double>(num_in + num_out));
    out[i++] = investors == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(investors);
    out[i++] = static_cast<double>(max_pay);
    out[i++] = total_in_eth;
    out[i++] = total_out_eth;
    out[i++] = num_in == 0 ? 0.0 : total_in_eth / static_cast<double>(num_in);
    out[i++] = num_out == 0 ? 0.0 : total_out_eth / static_cast<double>(num_out);
    out[i++] = pop_sd(in_amounts);
    out[i++] = pop_sd(out_amounts);
    out[i++] = avg_gap;
    out[i++] = lifetime;
    out[i++] = inv_totals.empty() ? 0.0 : gini(inv_totals);
    out[i++] = pay_totals.empty() ? 0.0 : gini(pay_totals);
    out[i++] = inv_counts.empty() ? 0.0 : gini(inv_counts);
    out[i++] = pay_counts.empty() ? 0.0 : gini(pay_counts);
    out[i++] = static_cast<double>(overlap);
    out[i++] = static_cast<double>(investors);
    out[i++] = static_cast<double>(payees);
    out[i++] = total_in_eth == 0.0 ? 0.0 : balance_eth / total_in_eth;
    out[i++] = !any_payment || lifetime <= 0.0
                   ? 0.0
                   : static_cast<double>(last_payment_ts - app.created_at) / lifetime;
    out[i++] = static_cast<double>(num_in + num_out);
    out[i++] = skewness(out_amounts);
    out[i++] = static_cast<double>(num_in_internal);
    out[i++] = static_cast<double>(num_out_internal);
    out[i++] = static_cast<double>(num_in_normal);
    return out;
}

}  // namespace ponzi::feat
