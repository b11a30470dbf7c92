#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ponzi {

// Amounts are carried in integer wei end to end; conversion to ETH happens
// only when a feature value is emitted.
using Wei = unsigned __int128;
using WeiSigned = __int128;

constexpr double kWeiPerEth = 1e18;

inline double wei_to_eth(Wei w) { return static_cast<double>(w) / kWeiPerEth; }
inline double wei_to_eth(WeiSigned w) { return static_cast<double>(w) / kWeiPerEth; }

std::string wei_to_string(Wei w);
std::string wei_signed_to_string(WeiSigned w);
Wei wei_from_string(const std::string& s);

enum class TxKind { normal, internal };
enum class TxStatus { success, failed };
enum class Label { non_ponzi, ponzi };
enum class PonziType { chain, tree, handover, waterfall, other };

const char* to_string(TxKind k);
const char* to_string(TxStatus s);
const char* to_string(Label l);
const char* to_string(PonziType t);

TxKind tx_kind_from_string(const std::string& s);
TxStatus tx_status_from_string(const std::string& s);
Label label_from_string(const std::string& s);
PonziType ponzi_type_from_string(const std::string& s);

/// One transfer event (normal or internal) touching an application.
struct Transaction {
    std::string tx_hash;
    int64_t timestamp = 0;  // unix seconds, UTC
    std::string from_addr;
    std::string to_addr;
    Wei value_wei = 0;
    TxKind kind = TxKind::normal;
    TxStatus status = TxStatus::success;
    std::optional<std::string> input_selector;  // 8 hex chars when present
    bool counterpart_is_contract = false;

    bool operator==(const Transaction& other) const = default;
};

/// A labeled contract address with its full (successful) transaction history.
/// Transactions are sorted by (timestamp, tx_hash).
struct ApplicationRecord {
    std::string address;
    Label label = Label::non_ponzi;
    std::optional<PonziType> ponzi_type;
    int64_t created_at = 0;
    std::vector<Transaction> txs;

    int64_t lifetime_secs() const {
        return txs.empty() ? 0 : txs.back().timestamp - created_at;
    }
    bool is_incoming(const Transaction& tx) const { return tx.to_addr == address; }
    const std::string& counterpart(const Transaction& tx) const {
        return tx.to_addr == address ? tx.from_addr : tx.to_addr;
    }
};

struct Dataset {
    std::vector<ApplicationRecord> apps;
    size_t size() const { return apps.size(); }
};

}  // namespace ponzi
