#pragma once

// Shared fixture builders for the unit tests.

#include <string>
#include <vector>

#include "ponzi/types.hpp"

namespace test_helpers {

using ponzi::ApplicationRecord;
using ponzi::Label;
using ponzi::Transaction;
using ponzi::TxKind;
using ponzi::TxStatus;
using ponzi::Wei;

inline Wei eth(double v) { return static_cast<Wei>(v * 1e18); }

struct TxSpec {
    int64_t ts = 0;
    bool incoming = true;
    double value_eth = 1.0;
    std::string counterpart = "0xa";
    TxKind kind = TxKind::normal;
    bool counterpart_is_contract = false;
    std::string selector;  // empty = none
};

inline ApplicationRecord make_app(const std::string& address, const std::vector<TxSpec>& specs,
                                  Label label = Label::non_ponzi) {
    ApplicationRecord app;
    app.address = address;
    app.label = label;
    int counter = 0;
    for (const auto& spec : specs) {
        Transaction tx;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "t%06d", counter++);
        tx.tx_hash = buf;
        tx.timestamp = spec.ts;
        tx.from_addr = spec.incoming ? spec.counterpart : address;
        tx.to_addr = spec.incoming ? address : spec.counterpart;
        tx.value_wei = eth(spec.value_eth);
        tx.kind = spec.kind;
        tx.status = TxStatus::success;
        tx.counterpart_is_contract = spec.counterpart_is_contract;
        if (!spec.selector.empty()) tx.input_selector = spec.selector;
        app.txs.push_back(std::move(tx));
    }
    std::sort(app.txs.begin(), app.txs.end(), [](const Transaction& a, const Transaction& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.tx_hash < b.tx_hash;
    });
    if (!app.txs.empty()) app.created_at = app.txs.front().timestamp;
    return app;
}

}  // namespace test_helpers
