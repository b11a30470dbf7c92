#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ponzi/types.hpp"

namespace ponzi::ingest {

enum class TxFileSchema { jsonl, csv };

struct LabelRow {
    std::string address;
    Label label = Label::non_ponzi;
    std::optional<PonziType> ponzi_type;
};

struct JoinResult {
    std::vector<ApplicationRecord> records;
    size_t unmatched_labels = 0;  // strict=false only
    size_t dropped_self_transfers = 0;
};

struct RefineStats {
    size_t retained_ponzi = 0;
    size_t retained_non_ponzi = 0;
    size_t dropped_no_txs = 0;
    size_t dropped_short_lifetime = 0;
    size_t dropped_ponzi = 0;
    size_t dropped_non_ponzi = 0;
};

struct RefineResult {
    Dataset dataset;
    RefineStats stats;
};

/// Reads every row of a transactions file, failed rows included. Malformed
/// rows raise with the offending line number.
std::vector<Transaction> parse_transactions(const std::string& path, TxFileSchema schema);
std::vector<Transaction> parse_transactions_stream(std::istream& in, TxFileSchema schema,
                                                   const std::string& origin);

/// Inverse of parse for the jsonl schema; parse(serialize(txs)) == txs.
void serialize_transactions_jsonl(const std::vector<Transaction>& txs, std::ostream& out);
void write_transactions_jsonl(const std::vector<Transaction>& txs, const std::string& path);

/// Keeps successful transactions only, order preserved.
std::vector<Transaction> filter_failed(const std::vector<Transaction>& txs);

std::vector<LabelRow> read_labels_csv(const std::string& path);
void write_labels_csv(const std::vector<LabelRow>& labels, const std::string& path);

/// address -> is_contract map used to override counterpart type flags.
std::unordered_map<std::string, bool> read_address_types_csv(const std::string& path);
void write_address_types_csv(const std::map<std::string, bool>& types, const std::string& path);

/// Groups transactions under each labeled address and assembles records:
/// txs sorted by (timestamp, tx_hash), created_at = first transaction.
/// Self-transfers (from == to == address) are dropped with a count. When an
/// address-type map is supplied it overrides counterpart_is_contract.
JoinResult join_labels(const std::vector<Transaction>& txs, const std::vector<LabelRow>& labels,
                       const std::unordered_map<std::string, bool>* address_types = nullptr,
                       bool strict = true);

/// Drops empty applications and applications shorter than one day; sorts the
/// survivors by address. Duplicate addresses are an error.
RefineResult refine_dataset(std::vector<ApplicationRecord> apps);

constexpr int64_t kMinLifetimeSecs = 86400;

/// Dataset file: one application per line with its embedded transactions.
void write_dataset_jsonl(const Dataset& dataset, const std::string& path);
Dataset read_dataset_jsonl(const std::string& path);

}  // namespace ponzi::ingest
