#include "ponzi/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ponzi/ingest.hpp"
#include "ponzi/parallel.hpp"
#include "ponzi/rng.hpp"

namespace ponzi::synth {

namespace {

constexpr const char* kInvestSelector = "d0e30db0";  // deposit()

struct TraceBuilder {
    ApplicationRecord record;
    size_t tx_counter = 0;
    WeiSigned balance = 0;

    explicit TraceBuilder(const SchemeParams& params) {
        record.address = params.address;
        record.created_at = params.start_time;
    }

    std::string next_hash() {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%08zu", tx_counter++);
        return record.address + "_t" + buf;
    }

    void invest(int64_t ts, const std::string& investor, Wei amount, bool investor_is_contract) {
        Transaction tx;
        tx.tx_hash = next_hash();
        tx.timestamp = ts;
        tx.from_addr = investor;
        tx.to_addr = record.address;
        tx.value_wei = amount;
        tx.kind = TxKind::normal;
        tx.status = TxStatus::success;
        tx.input_selector = kInvestSelector;
        tx.counterpart_is_contract = investor_is_contract;
        balance += static_cast<WeiSigned>(amount);
        record.txs.push_back(std::move(tx));
    }

    void pay(int64_t ts, const std::string& payee, Wei amount, bool payee_is_contract) {
        Transaction tx;
        tx.tx_hash = next_hash();
        tx.timestamp = ts;
        tx.from_addr = record.address;
        tx.to_addr = payee;
        tx.value_wei = amount;
        tx.kind = TxKind::internal;  // contract-emitted transfer
        tx.status = TxStatus::success;
        tx.counterpart_is_contract = payee_is_contract;
        balance -= static_cast<WeiSigned>(amount);
        if (balance < 0) throw std::logic_error("generator overdrew the contract balance");
        record.txs.push_back(std::move(tx));
    }

    ApplicationRecord finish(Label label, std::optional<PonziType> type) {
        if (record.txs.empty())
            throw std::runtime_error("generated trace has no transactions; it would fail refinement");
        record.label = label;
        record.ponzi_type = type;
        std::sort(record.txs.begin(), record.txs.end(),
                  [](const Transaction& a, const Transaction& b) {
                      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                      return a.tx_hash < b.tx_hash;
                  });
        record.created_at = record.txs.front().timestamp;
        if (record.lifetime_secs() < ingest::kMinLifetimeSecs)
            throw std::runtime_error(
                "generated trace lifetime is shorter than one day; it would fail refinement "
                "(increase duration, investors, or arrival spacing)");
        return std::move(record);
    }
};

std::string default_address(const SchemeParams& params) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0xsyn%016llx",
                  static_cast<unsigned long long>(params.seed * 0x9e3779b97f4a7c15ULL + params.seed));
    return buf;
}

SchemeParams with_address(SchemeParams params) {
    if (params.address.empty()) params.address = default_address(params);
    return params;
}

std::string investor_address(const SchemeParams& params, size_t i) {
    return params.address + "_inv" + std::to_string(i);
}

// Sparse contract-typed participants keep the account-type series non-degenerate.
bool is_contract_participant(size_t i) { return i % 13 == 5; }

Wei draw_investment(const SchemeParams& params, Rng& rng) {
    const double eth = rng.lognormal(params.invest_mu, params.invest_sigma);
    const double wei = std::max(1.0, eth * kWeiPerEth);
    return static_cast<Wei>(wei);
}

Wei scale_wei(Wei amount, double factor) {
    return static_cast<Wei>(std::max(0.0, static_cast<double>(amount) * factor));
}

// Arrival times: exponential gaps whose mean grows per arrival, bunching
// activity near launch; stops at the configured duration or investor target.
std::vector<int64_t> arrival_times(const SchemeParams& params, Rng& rng) {
    std::vector<int64_t> times;
    const int64_t end = params.start_time + static_cast<int64_t>(params.duration_days) * 86400;
    double t = static_cast<double>(params.start_time);
    double mean = params.arrival_mean_secs;
    for (size_t i = 0; i < params.n_investors; ++i) {
        times.push_back(static_cast<int64_t>(t));
        if (static_cast<int64_t>(t) > end) break;
        t += std::max(1.0, rng.exponential(mean));
        mean *= 1.0 + params.arrival_decay;
    }
    return times;
}

}  // namespace

Scheme scheme_from_string(const std::string& s) {
    if (s == "chain") return Scheme::chain;
    if (s == "tree") return Scheme::tree;
    if (s == "handover") return Scheme::handover;
    if (s == "waterfall") return Scheme::waterfall;
    if (s == "benign") return Scheme::benign;
    throw std::invalid_argument("unknown scheme: '" + s + "'");
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::chain: return "chain";
        case Scheme::tree: return "tree";
        case Scheme::handover: return "handover";
        case Scheme::waterfall: return "waterfall";
        case Scheme::benign: return "benign";
    }
    return "benign";
}

ApplicationRecord gen_chain(const SchemeParams& raw) {
    const SchemeParams params = with_address(raw);
    if (params.multiplier <= 1.0) throw std::invalid_argument("chain multiplier must exceed 1");
    Rng rng(params.seed);
    TraceBuilder trace(params);

    struct Pending {
        size_t investor;
        Wei owed;
    };
    std::deque<Pending> queue;
    // the distributable fund accrues investments net of commission; payouts
    // are made in full from it, strictly in arrival order
    Wei fund = 0;
    const auto arrivals = arrival_times(params, rng);
    for (size_t i = 0; i < arrivals.size(); ++i) {
        const Wei amount = draw_investment(params, rng);
        trace.invest(arrivals[i], investor_address(params, i), amount, is_contract_participant(i));
        fund += scale_wei(amount, 1.0 - params.fee_rate);
        queue.push_back({i, scale_wei(amount, params.multiplier)});
        while (!queue.empty() && fund >= queue.front().owed) {
            const Pending head = queue.front();
            queue.pop_front();
            fund -= head.owed;
            trace.pay(arrivals[i] + 1, investor_address(params, head.investor), head.owed,
                      is_contract_participant(head.investor));
        }
    }
    return trace.finish(Label::ponzi, PonziType::chain);
}

ApplicationRecord gen_tree(const SchemeParams& raw) {
    const SchemeParams params = with_address(raw);
    if (params.n_investors < 2) throw std::invalid_argument("tree scheme needs at least 2 investors");
    Rng rng(params.seed);
    TraceBuilder trace(params);

    std::vector<int> parent;  // node index -> inviter (-1 for the root)
    const auto arrivals = arrival_times(params, rng);
    for (size_t i = 0; i < arrivals.size(); ++i) {
        const Wei amount = draw_investment(params, rng);
        trace.invest(arrivals[i], investor_address(params, i), amount, is_contract_participant(i));
        if (i == 0) {
            parent.push_back(-1);
            continue;
        }
        parent.push_back(static_cast<int>(rng.uniform_index(i)));

        // geometrically decaying shares along the ancestor chain; the root
        // takes the remainder so distribution + fee == investment exactly
        Wei distributable = scale_wei(amount, 1.0 - params.fee_rate);
        Wei remaining = distributable;
        Wei share = distributable / 2;
        int node = parent.back();
        while (parent[static_cast<size_t>(node)] >= 0) {
            const Wei portion = std::min(share, remaining);
            if (portion > 0)
                trace.pay(arrivals[i] + 1, investor_address(params, static_cast<size_t>(node)), portion,
                          is_contract_participant(static_cast<size_t>(node)));
            remaining -= portion;
            share /= 2;
            node = parent[static_cast<size_t>(node)];
        }
        if (remaining > 0)
            trace.pay(arrivals[i] + 1, investor_address(params, static_cast<size_t>(node)), remaining,
                      is_contract_participant(static_cast<size_t>(node)));
    }
    return trace.finish(Label::ponzi, PonziType::tree);
}

ApplicationRecord gen_handover(const SchemeParams& raw) {
    const SchemeParams params = with_address(raw);
    if (params.toll_growth <= 0.0) throw std::invalid_argument("handover toll growth must be positive");
    Rng rng(params.seed);
    TraceBuilder trace(params);

    Wei toll = draw_investment(params, rng);
    const auto arrivals = arrival_times(params, rng);
    for (size_t i = 0; i < arrivals.size(); ++i) {
        trace.invest(arrivals[i], investor_address(params, i), toll, is_contract_participant(i));
        if (i > 0)
            trace.pay(arrivals[i] + 1, investor_address(params, i - 1), toll,
                      is_contract_participant(i - 1));
        toll = scale_wei(toll, 1.0 + params.toll_growth);
    }
    return trace.finish(Label::ponzi, PonziType::handover);
}

ApplicationRecord gen_waterfall(const SchemeParams& raw) {
    const SchemeParams params = with_address(raw);
    Rng rng(params.seed);
    TraceBuilder trace(params);

    std::vector<Wei> investments;
    const auto arrivals = arrival_times(params, rng);
    for (size_t i = 0; i < arrivals.size(); ++i) {
        const Wei amount = draw_investment(params, rng);
        trace.invest(arrivals[i], investor_address(params, i), amount, is_contract_participant(i));
        Wei fund = scale_wei(amount, 1.0 - params.fee_rate);
        // cascade first-join-first-receive until the new fund runs out;
        // whatever is left stays in the contract
        for (size_t j = 0; j < investments.size() && fund > 0; ++j) {
            const Wei owed = scale_wei(investments[j], params.payout_fraction);
            const Wei pay = std::min(owed, fund);
            if (pay > 0)
                trace.pay(arrivals[i] + 1, investor_address(params, j), pay,
                          is_contract_participant(j));
            fund -= pay;
        }
        investments.push_back(amount);
    }
    return trace.finish(Label::ponzi, PonziType::waterfall);
}

ApplicationRecord gen_benign(const SchemeParams& raw) {
    const SchemeParams params = with_address(raw);
    if (params.n_investors == 0 || params.duration_days <= 0)
        throw std::invalid_argument("benign trace needs participants and a positive duration");
    Rng rng(params.seed);
    TraceBuilder trace(params);

    const int64_t end = params.start_time + static_cast<int64_t>(params.duration_days) * 86400;

    // founder deposit anchors the balance so routine outflow never cliffs
    const Wei founding = scale_wei(draw_investment(params, rng), 20.0);
    trace.invest(params.start_time, investor_address(params, 0), founding, false);

    // daily outflow is capped at 35% of the day's opening balance
    int64_t current_day = 0;
    WeiSigned day_open_balance = trace.balance;
    Wei withdrawn_today = 0;

    double t = static_cast<double>(params.start_time);
    while (true) {
        t += std::max(1.0, rng.exponential(params.arrival_mean_secs));
        const int64_t ts = static_cast<int64_t>(t);
        if (ts >= end) break;
        const int64_t day = (ts - params.start_time) / 86400;
        if (day != current_day) {
            current_day = day;
            day_open_balance = trace.balance;
            withdrawn_today = 0;
        }
        const size_t who = static_cast<size_t>(rng.uniform_index(params.n_investors));
        const bool deposit = rng.uniform() < 0.55;
        if (deposit) {
            trace.invest(ts, investor_address(params, who), draw_investment(params, rng),
                         is_contract_participant(who));
        } else {
            const Wei day_cap = scale_wei(static_cast<Wei>(std::max<WeiSigned>(0, day_open_balance)), 0.35);
            if (withdrawn_today >= day_cap) continue;
            Wei amount = std::min<Wei>(draw_investment(params, rng), day_cap - withdrawn_today);
            amount = std::min<Wei>(amount, static_cast<Wei>(std::max<WeiSigned>(0, trace.balance)));
            if (amount == 0) continue;
            trace.pay(ts, investor_address(params, who), amount, is_contract_participant(who));
            withdrawn_today += amount;
        }
    }
    return trace.finish(Label::non_ponzi, std::nullopt);
}

ApplicationRecord generate(const SchemeParams& params) {
    switch (params.scheme) {
        case Scheme::chain: return gen_chain(params);
        case Scheme::tree: return gen_tree(params);
        case Scheme::handover: return gen_handover(params);
        case Scheme::waterfall: return gen_waterfall(params);
        case Scheme::benign: return gen_benign(params);
    }
    throw std::invalid_argument("unknown scheme");
}

Dataset make_corpus(const CorpusSpec& spec) {
    struct Task {
        Scheme scheme;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    uint64_t trace_id = 0;
    auto add = [&](Scheme scheme, size_t count) {
        for (size_t i = 0; i < count; ++i) tasks.push_back({scheme, spec.seed * 1000003 + trace_id++});
    };
    add(Scheme::chain, spec.chain);
    add(Scheme::tree, spec.tree);
    add(Scheme::handover, spec.handover);
    add(Scheme::waterfall, spec.waterfall);
    add(Scheme::benign, spec.benign);

    Dataset dataset;
    dataset.apps.resize(tasks.size());
    parallel_for(tasks.size(), [&](size_t i) {
        Rng jitter(tasks[i].seed ^ 0xabcdef12345678ULL);
        SchemeParams params;
        params.scheme = tasks[i].scheme;
        params.seed = tasks[i].seed;
        params.invest_mu = jitter.uniform(-0.5, 0.5);
        params.invest_sigma = jitter.uniform(0.3, 0.8);
        params.fee_rate = jitter.uniform(0.0, 0.1);
        if (tasks[i].scheme == Scheme::benign) {
            // durations and activity levels overlap the scam range so the
            // classifier has to read behaviour, not just lifetime
            params.n_investors = 20 + static_cast<size_t>(jitter.uniform_index(60));
            params.duration_days = 25 + static_cast<int>(jitter.uniform_index(95));
            params.arrival_mean_secs = jitter.uniform(1800.0, 9600.0);
            params.arrival_decay = jitter.uniform(0.0, 0.02);
        } else {
            params.n_investors = 40 + static_cast<size_t>(jitter.uniform_index(80));
            params.duration_days = 20 + static_cast<int>(jitter.uniform_index(40));
            params.arrival_mean_secs = jitter.uniform(900.0, 3600.0);
            params.arrival_decay = jitter.uniform(0.05, 0.12);
            params.multiplier = jitter.uniform(1.5, 3.0);
            params.toll_growth = jitter.uniform(0.05, 0.2);
            params.payout_fraction = jitter.uniform(0.05, 0.2);
        }
        params.start_time = 1500000000 + static_cast<int64_t>(jitter.uniform_index(86400 * 365));
        dataset.apps[i] = generate(params);
    });
    std::sort(dataset.apps.begin(), dataset.apps.end(),
              [](const ApplicationRecord& a, const ApplicationRecord& b) { return a.address < b.address; });
    return dataset;
}

}  // namespace ponzi::synth
