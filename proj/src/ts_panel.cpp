#include "ponzi/ts_panel.hpp"

#include <cstdio>
#include <fstream>
#include <unordered_set>

namespace ponzi::ts {

namespace {

enum SeriesId : size_t {
    // ETH value
    kBalance = 0,
    kProfitAndLoss,
    kLoss,
    kLossByContract,
    kLossByPerson,
    kLossFromInternal,
    kLossFromNormal,
    kProfit,
    kProfitByContract,
    kProfitByPerson,
    kProfitFromInternal,
    kProfitFromNormal,
    // Transaction counts
    kTotalTxs,
    kTotalInternalTxs,
    kTotalInTxs,
    kTotalInInternalTxs,
    kTotalInNormalTxs,
    kTotalNormalTxs,
    kTotalOutTxs,
    kTotalOutInternalTxs,
    kTotalOutNormalTxs,
    // Participant addresses (interval-local distinct)
    kUniqueAddresses,
    kUniqueInAddresses,
    kUniqueInAddressesInternal,
    kUniqueInAddressesNormal,
    kUniqueOutAddresses,
    kUniqueOutAddressesInternal,
    kUniqueOutAddressesNormal,
    // Calling functions (interval-local distinct selectors)
    kUniqueFunctions,
    kUniqueInFunctions,
    kUniqueInFunctionsInternal,
    kUniqueInFunctionsNormal,
    kUniqueOutFunctions,
    kUniqueOutFunctionsInternal,
    kUniqueOutFunctionsNormal,
    // Participant account type
    kInTxsFromContract,
    kInTxsFromPerson,
    kOutTxsToContract,
    kOutTxsToPerson,
    kUniqueInContractAddresses,
    kUniqueInPersonAddresses,
    kUniqueOutContractAddresses,
    kUniqueOutPersonAddresses,
};

struct IntervalScratch {
    Wei profit = 0, loss = 0;
    Wei loss_contract = 0, loss_person = 0, loss_internal = 0, loss_normal = 0;
    Wei profit_contract = 0, profit_person = 0, profit_internal = 0, profit_normal = 0;
    std::unordered_set<std::string> addrs, in_addrs, in_addrs_internal, in_addrs_normal;
    std::unordered_set<std::string> out_addrs, out_addrs_internal, out_addrs_normal;
    std::unordered_set<std::string> funcs, in_funcs, in_funcs_internal, in_funcs_normal;
    std::unordered_set<std::string> out_funcs, out_funcs_internal, out_funcs_normal;
    std::unordered_set<std::string> in_contract_addrs, in_person_addrs;
    std::unordered_set<std::string> out_contract_addrs, out_person_addrs;
};

}  // namespace

const std::array<std::string, kSeriesCount>& series_names() {
    static const std::array<std::string, kSeriesCount> names = {
        "balance",
        "profit_and_loss",
        "loss",
        "loss_by_contract",
        "loss_by_person",
        "loss_from_internal_txs",
        "loss_from_normal_txs",
        "profit",
        "profit_by_contract",
        "profit_by_person",
        "profit_from_internal_txs",
        "profit_from_normal_txs",
        "total_txs",
        "total_internal_txs",
        "total_in_coming_txs",
        "total_in_coming_internal_txs",
        "total_in_coming_normal_txs",
        "total_normal_txs",
        "total_out_going_txs",
        "total_out_going_internal_txs",
        "total_out_going_normal_txs",
        "total_unique_addresses",
        "total_unique_in_coming_addresses",
        "total_unique_in_coming_addresses_from_internal",
        "total_unique_in_coming_addresses_from_normal",
        "total_unique_out_going_addresses",
        "total_unique_out_going_addresses_from_internal",
        "total_unique_out_going_addresses_from_normal",
        "total_unique_calling_function",
        "total_unique_in_coming_calling_function",
        "total_unique_in_coming_calling_function_from_internal",
        "total_unique_in_coming_calling_function_from_normal",
        "total_unique_out_going_calling_function",
        "total_unique_out_going_calling_function_from_internal",
        "total_unique_out_going_calling_function_from_normal",
        "num_in_coming_txs_from_contract",
        "num_in_coming_txs_from_person",
        "num_out_going_txs_to_contract",
        "num_out_going_txs_to_person",
        "num_unique_in_coming_contract_address",
        "num_unique_in_coming_person_address",
        "num_unique_out_going_contract_address",
        "num_unique_out_going_person_address",
    };
    return names;
}

int series_index(const std::string& name) {
    const auto& names = series_names();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

IntervalSpec make_interval_spec(const ApplicationRecord& app, int t_hours) {
    if (t_hours != 12 && t_hours != 24 && t_hours != 48)
        throw std::invalid_argument("interval length must be 12, 24 or 48 hours");
    const int64_t t_secs = static_cast<int64_t>(t_hours) * 3600;
    const int64_t lifetime = app.lifetime_secs();
    IntervalSpec spec;
    spec.t_hours = t_hours;
    spec.n = static_cast<size_t>(std::max<int64_t>(1, (lifetime + t_secs - 1) / t_secs));
    return spec;
}

std::vector<size_t> assign_intervals(const ApplicationRecord& app, int t_hours) {
    const IntervalSpec spec = make_interval_spec(app, t_hours);
    const int64_t t_secs = static_cast<int64_t>(t_hours) * 3600;
    std::vector<size_t> out;
    out.reserve(app.txs.size());
    for (const auto& tx : app.txs) {
        const int64_t delta = tx.timestamp - app.created_at;
        if (delta < 0)
            throw std::runtime_error("transaction before creation time in " + app.address);
        out.push_back(std::min<size_t>(static_cast<size_t>(delta / t_secs), spec.n - 1));
    }
    return out;
}

const std::vector<double>& TimeSeriesPanel::at(const std::string& name) const {
    const int idx = series_index(name);
    if (idx < 0) throw std::invalid_argument("unknown series: " + name);
    return series[static_cast<size_t>(idx)];
}

TimeSeriesPanel build_panel(const ApplicationRecord& app, int t_hours) {
    TimeSeriesPanel panel;
    panel.address = app.address;
    panel.spec = make_interval_spec(app, t_hours);
    const size_t n = panel.spec.n;
    for (auto& s : panel.series) s.assign(n, 0.0);

    std::vector<IntervalScratch> scratch(n);
    const auto intervals = assign_intervals(app, t_hours);
    for (size_t t = 0; t < app.txs.size(); ++t) {
        const Transaction& tx = app.txs[t];
        IntervalScratch& cell = scratch[intervals[t]];
        auto& row = panel.series;
        const size_t i = intervals[t];
        const bool incoming = app.is_incoming(tx);
        const bool internal = tx.kind == TxKind::internal;
        const std::string& other = app.counterpart(tx);

        row[kTotalTxs][i] += 1;
        if (internal)
            row[kTotalInternalTxs][i] += 1;
        else
            row[kTotalNormalTxs][i] += 1;
        cell.addrs.insert(other);
        if (tx.input_selector) cell.funcs.insert(*tx.input_selector);

        if (incoming) {
            row[kTotalInTxs][i] += 1;
            row[internal ? kTotalInInternalTxs : kTotalInNormalTxs][i] += 1;
            cell.profit += tx.value_wei;
            (internal ? cell.profit_internal : cell.profit_normal) += tx.value_wei;
            (tx.counterpart_is_contract ? cell.profit_contract : cell.profit_person) += tx.value_wei;
            cell.in_addrs.insert(other);
            (internal ? cell.in_addrs_internal : cell.in_addrs_normal).insert(other);
            if (tx.input_selector) {
                cell.in_funcs.insert(*tx.input_selector);
                (internal ? cell.in_funcs_internal : cell.in_funcs_normal).insert(*tx.input_selector);
            }
            row[tx.counterpart_is_contract ? kInTxsFromContract : kInTxsFromPerson][i] += 1;
            (tx.counterpart_is_contract ? cell.in_contract_addrs : cell.in_person_addrs).insert(other);
        } else {
            row[kTotalOutTxs][i] += 1;
            row[internal ? kTotalOutInternalTxs : kTotalOutNormalTxs][i] += 1;
            cell.loss += tx.value_wei;
            (internal ? cell.loss_internal : cell.loss_normal) += tx.value_wei;
            (tx.counterpart_is_contract ? cell.loss_contract : cell.loss_person) += tx.value_wei;
            cell.out_addrs.insert(other);
            (internal ? cell.out_addrs_internal : cell.out_addrs_normal).insert(other);
            if (tx.input_selector) {
                cell.out_funcs.insert(*tx.input_selector);
                (internal ? cell.out_funcs_internal : cell.out_funcs_normal).insert(*tx.input_selector);
            }
            row[tx.counterpart_is_contract ? kOutTxsToContract : kOutTxsToPerson][i] += 1;
            (tx.counterpart_is_contract ? cell.out_contract_addrs : cell.out_person_addrs).insert(other);
        }
    }

    WeiSigned running_balance = 0;
    for (size_t i = 0; i < n; ++i) {
        const IntervalScratch& cell = scratch[i];
        auto& row = panel.series;
        running_balance += static_cast<WeiSigned>(cell.profit) - static_cast<WeiSigned>(cell.loss);
        if (running_balance < 0) panel.negative_balance_warning = true;
        row[kBalance][i] = wei_to_eth(running_balance);
        row[kProfitAndLoss][i] =
            wei_to_eth(static_cast<WeiSigned>(cell.profit) - static_cast<WeiSigned>(cell.loss));
        row[kLoss][i] = wei_to_eth(cell.loss);
        row[kLossByContract][i] = wei_to_eth(cell.loss_contract);
        row[kLossByPerson][i] = wei_to_eth(cell.loss_person);
        row[kLossFromInternal][i] = wei_to_eth(cell.loss_internal);
        row[kLossFromNormal][i] = wei_to_eth(cell.loss_normal);
        row[kProfit][i] = wei_to_eth(cell.profit);
        row[kProfitByContract][i] = wei_to_eth(cell.profit_contract);
        row[kProfitByPerson][i] = wei_to_eth(cell.profit_person);
        row[kProfitFromInternal][i] = wei_to_eth(cell.profit_internal);
        row[kProfitFromNormal][i] = wei_to_eth(cell.profit_normal);
        row[kUniqueAddresses][i] = static_cast<double>(cell.addrs.size());
        row[kUniqueInAddresses][i] = static_cast<double>(cell.in_addrs.size());
        row[kUniqueInAddressesInternal][i] = static_cast<double>(cell.in_addrs_internal.size());
        row[kUniqueInAddressesNormal][i] = static_cast<double>(cell.in_addrs_normal.size());
        row[kUniqueOutAddresses][i] = static_cast<double>(cell.out_addrs.size());
        row[kUniqueOutAddressesInternal][i] = static_cast<double>(cell.out_addrs_internal.size());
        row[kUniqueOutAddressesNormal][i] = static_cast<double>(cell.out_addrs_normal.size());
        row[kUniqueFunctions][i] = static_cast<double>(cell.funcs.size());
        row[kUniqueInFunctions][i] = static_cast<double>(cell.in_funcs.size());
        row[kUniqueInFunctionsInternal][i] = static_cast<double>(cell.in_funcs_internal.size());
        row[kUniqueInFunctionsNormal][i] = static_cast<double>(cell.in_funcs_normal.size());
        row[kUniqueOutFunctions][i] = static_cast<double>(cell.out_funcs.size());
        row[kUniqueOutFunctionsInternal][i] = static_cast<double>(cell.out_funcs_internal.size());
        row[kUniqueOutFunctionsNormal][i] = static_cast<double>(cell.out_funcs_normal.size());
        row[kUniqueInContractAddresses][i] = static_cast<double>(cell.in_contract_addrs.size());
        row[kUniqueInPersonAddresses][i] = static_cast<double>(cell.in_person_addrs.size());
        row[kUniqueOutContractAddresses][i] = static_cast<double>(cell.out_contract_addrs.size());
        row[kUniqueOutPersonAddresses][i] = static_cast<double>(cell.out_person_addrs.size());
    }
    return panel;
}

void write_panel_csv(const TimeSeriesPanel& panel, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write panel file: " + path);
    out << "interval_index";
    for (const auto& name : series_names()) out << ',' << name;
    out << '\n';
    char buf[64];
    for (size_t i = 0; i < panel.spec.n; ++i) {
        out << i;
        for (const auto& s : panel.series) {
            std::snprintf(buf, sizeof(buf), "%.17g", s[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace ponzi::ts
