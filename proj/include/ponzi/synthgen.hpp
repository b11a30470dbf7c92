#pragma once

#include <cstdint>
#include <string>

#include "ponzi/types.hpp"

namespace ponzi::synth {

enum class Scheme { chain, tree, handover, waterfall, benign };

Scheme scheme_from_string(const std::string& s);
const char* to_string(Scheme s);

struct SchemeParams {
    Scheme scheme = Scheme::chain;
    size_t n_investors = 60;
    double multiplier = 2.0;       // chain: promised payout multiple
    double fee_rate = 0.0;         // commission retained by the contract
    double toll_growth = 0.1;      // handover: toll escalation per joiner
    double payout_fraction = 0.1;  // waterfall: per-round share of own investment
    double arrival_mean_secs = 1800.0;
    double arrival_decay = 0.08;   // ponzi interest fades: gap grows per arrival
    double invest_mu = 0.0;        // lognormal ETH amount parameters
    double invest_sigma = 0.5;
    int duration_days = 30;
    uint64_t seed = 0;
    std::string address;           // derived from seed when empty
    int64_t start_time = 1500000000;
};

/// Deterministic trace generation per scheme; every generated record passes
/// dataset refinement (at least one transaction and a lifetime of one day or
/// more) or generation fails with an explanatory error.
ApplicationRecord generate(const SchemeParams& params);

ApplicationRecord gen_chain(const SchemeParams& params);
ApplicationRecord gen_tree(const SchemeParams& params);
ApplicationRecord gen_handover(const SchemeParams& params);
ApplicationRecord gen_waterfall(const SchemeParams& params);
ApplicationRecord gen_benign(const SchemeParams& params);

struct CorpusSpec {
    size_t chain = 48;
    size_t tree = 4;
    size_t handover = 4;
    size_t waterfall = 4;
    size_t benign = 940;
    uint64_t seed = 1;
};

/// Labeled corpus with per-trace parameter jitter; passes refinement as-is.
Dataset make_corpus(const CorpusSpec& spec);

}  // namespace ponzi::synth
