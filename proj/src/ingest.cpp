#include "ponzi/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ponzi::ingest {

namespace {

using nlohmann::json;

[[noreturn]] void row_error(const std::string& origin, size_t line, const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

bool is_hex_string(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    });
}

// input is "0x"-prefixed hex or empty; the selector is the first 4 bytes.
std::optional<std::string> selector_from_input(const std::string& input, const std::string& origin,
                                               size_t line) {
    if (input.empty()) return std::nullopt;
    if (input.size() < 2 || input[0] != '0' || input[1] != 'x')
        row_error(origin, line, "input must be empty or 0x-prefixed hex");
    const std::string hex = input.substr(2);
    if (!is_hex_string(hex)) row_error(origin, line, "input contains non-hex characters");
    if (hex.size() < 8) return std::nullopt;
    std::string sel = hex.substr(0, 8);
    std::transform(sel.begin(), sel.end(), sel.begin(), [](unsigned char c) { return std::tolower(c); });
    return sel;
}

Wei wei_from_json(const json& v, const std::string& origin, size_t line) {
    if (v.is_number_unsigned()) return static_cast<Wei>(v.get<uint64_t>());
    if (v.is_number_integer()) {
        const int64_t x = v.get<int64_t>();
        if (x < 0) row_error(origin, line, "value_wei must be non-negative");
        return static_cast<Wei>(x);
    }
    if (v.is_string()) {
        try {
            return wei_from_string(v.get<std::string>());
        } catch (const std::exception& e) {
            row_error(origin, line, e.what());
        }
    }
    row_error(origin, line, "value_wei must be an unsigned integer or a decimal string");
}

Transaction tx_from_json(const json& row, const std::string& origin, size_t line) {
    static const char* required[] = {"tx_hash", "timestamp", "from",  "to",
                                     "value_wei", "kind",    "status", "input",
                                     "counterpart_is_contract"};
    for (const char* key : required) {
        if (!row.contains(key)) row_error(origin, line, std::string("missing key '") + key + "'");
    }
    Transaction tx;
    try {
        tx.tx_hash = row.at("tx_hash").get<std::string>();
        tx.timestamp = row.at("timestamp").get<int64_t>();
        tx.from_addr = row.at("from").get<std::string>();
        tx.to_addr = row.at("to").get<std::string>();
        tx.value_wei = wei_from_json(row.at("value_wei"), origin, line);
        tx.kind = tx_kind_from_string(row.at("kind").get<std::string>());
        tx.status = tx_status_from_string(row.at("status").get<std::string>());
        tx.input_selector = selector_from_input(row.at("input").get<std::string>(), origin, line);
        tx.counterpart_is_contract = row.at("counterpart_is_contract").get<bool>();
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        row_error(origin, line, e.what());
    }
    return tx;
}

json tx_to_json(const Transaction& tx) {
    json row;
    row["tx_hash"] = tx.tx_hash;
    row["timestamp"] = tx.timestamp;
    row["from"] = tx.from_addr;
    row["to"] = tx.to_addr;
    if (tx.value_wei <= static_cast<Wei>(UINT64_MAX))
        row["value_wei"] = static_cast<uint64_t>(tx.value_wei);
    else
        row["value_wei"] = wei_to_string(tx.value_wei);
    row["kind"] = to_string(tx.kind);
    row["status"] = to_string(tx.status);
    row["input"] = tx.input_selector ? "0x" + *tx.input_selector : "";
    row["counterpart_is_contract"] = tx.counterpart_is_contract;
    return row;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ')) s.pop_back();
    size_t start = 0;
    while (start < s.size() && s[start] == ' ') ++start;
    return s.substr(start);
}

Transaction tx_from_csv(const std::string& line, const std::string& origin, size_t line_no) {
    const auto fields = split_csv_line(line);
    if (fields.size() != 9)
        row_error(origin, line_no, "expected 9 csv fields, got " + std::to_string(fields.size()));
    json row;
    row["tx_hash"] = fields[0];
    try {
        row["timestamp"] = std::stoll(fields[1]);
    } catch (const std::exception&) {
        row_error(origin, line_no, "bad timestamp '" + fields[1] + "'");
    }
    row["from"] = fields[2];
    row["to"] = fields[3];
    row["value_wei"] = fields[4];
    row["kind"] = fields[5];
    row["status"] = fields[6];
    row["input"] = fields[7];
    if (fields[8] != "0" && fields[8] != "1")
        row_error(origin, line_no, "counterpart_is_contract must be 0 or 1");
    row["counterpart_is_contract"] = fields[8] == "1";
    return tx_from_json(row, origin, line_no);
}

}  // namespace

std::vector<Transaction> parse_transactions_stream(std::istream& in, TxFileSchema schema,
                                                   const std::string& origin) {
    std::vector<Transaction> txs;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(line);
        if (line.empty()) continue;
        if (schema == TxFileSchema::csv && !header_seen) {
            if (line != "tx_hash,timestamp,from,to,value_wei,kind,status,input,counterpart_is_contract")
                row_error(origin, line_no,
                          "expected header tx_hash,timestamp,from,to,value_wei,kind,status,input,"
                          "counterpart_is_contract");
            header_seen = true;
            continue;
        }
        if (schema == TxFileSchema::jsonl) {
            json row = json::parse(line, nullptr, false);
            if (row.is_discarded()) row_error(origin, line_no, "invalid json");
            txs.push_back(tx_from_json(row, origin, line_no));
        } else {
            txs.push_back(tx_from_csv(line, origin, line_no));
        }
    }
    return txs;
}

std::vector<Transaction> parse_transactions(const std::string& path, TxFileSchema schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open transactions file: " + path);
    return parse_transactions_stream(in, schema, path);
}

void serialize_transactions_jsonl(const std::vector<Transaction>& txs, std::ostream& out) {
    for (const auto& tx : txs) out << tx_to_json(tx).dump() << '\n';
}

void write_transactions_jsonl(const std::vector<Transaction>& txs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write transactions file: " + path);
    serialize_transactions_jsonl(txs, out);
}

std::vector<Transaction> filter_failed(const std::vector<Transaction>& txs) {
    std::vector<Transaction> out;
    out.reserve(txs.size());
    for (const auto& tx : txs)
        if (tx.status == TxStatus::success) out.push_back(tx);
    return out;
}

std::vector<LabelRow> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labels file: " + path);
    std::vector<LabelRow> labels;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(line);
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "address,label,ponzi_type")
                throw std::runtime_error(path + ": expected header 'address,label,ponzi_type'");
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) row_error(path, line_no, "expected 3 csv fields");
        LabelRow row;
        row.address = fields[0];
        try {
            row.label = label_from_string(fields[1]);
            if (!fields[2].empty()) row.ponzi_type = ponzi_type_from_string(fields[2]);
        } catch (const std::exception& e) {
            row_error(path, line_no, e.what());
        }
        if (row.label == Label::non_ponzi && row.ponzi_type)
            row_error(path, line_no, "ponzi_type must be empty for non_ponzi");
        labels.push_back(std::move(row));
    }
    return labels;
}

void write_labels_csv(const std::vector<LabelRow>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write labels file: " + path);
    out << "address,label,ponzi_type\n";
    for (const auto& row : labels) {
        out << row.address << ',' << to_string(row.label) << ','
            << (row.ponzi_type ? to_string(*row.ponzi_type) : "") << '\n';
    }
}

std::unordered_map<std::string, bool> read_address_types_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open address-type file: " + path);
    std::unordered_map<std::string, bool> types;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(line);
        if (line.empty()) continue;
        if (line_no == 1 && line == "address,is_contract") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) row_error(path, line_no, "expected 2 csv fields");
        if (fields[1] != "0" && fields[1] != "1") row_error(path, line_no, "is_contract must be 0 or 1");
        types[fields[0]] = fields[1] == "1";
    }
    return types;
}

void write_address_types_csv(const std::map<std::string, bool>& types, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write address-type file: " + path);
    out << "address,is_contract\n";
    for (const auto& [addr, is_contract] : types) out << addr << ',' << (is_contract ? 1 : 0) << '\n';
}

JoinResult join_labels(const std::vector<Transaction>& txs, const std::vector<LabelRow>& labels,
                       const std::unordered_map<std::string, bool>* address_types, bool strict) {
    std::unordered_map<std::string, size_t> label_index;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (!label_index.emplace(labels[i].address, i).second)
            throw std::runtime_error("duplicate label for address " + labels[i].address);
    }

    std::unordered_map<std::string, std::vector<Transaction>> grouped;
    size_t dropped_self = 0;
    for (const auto& tx : txs) {
        const bool from_labeled = label_index.count(tx.from_addr) > 0;
        const bool to_labeled = label_index.count(tx.to_addr) > 0;
        if (tx.from_addr == tx.to_addr) {
            if (from_labeled) ++dropped_self;
            continue;
        }
        if (from_labeled) grouped[tx.from_addr].push_back(tx);
        if (to_labeled) grouped[tx.to_addr].push_back(tx);
    }

    JoinResult result;
    result.dropped_self_transfers = dropped_self;
    std::vector<std::string> missing;
    for (const auto& row : labels) {
        auto it = grouped.find(row.address);
        if (it == grouped.end()) {
            missing.push_back(row.address);
            continue;
        }
        ApplicationRecord rec;
        rec.address = row.address;
        rec.label = row.label;
        rec.ponzi_type = row.ponzi_type;
        rec.txs = std::move(it->second);
        std::sort(rec.txs.begin(), rec.txs.end(), [](const Transaction& a, const Transaction& b) {
            if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
            return a.tx_hash < b.tx_hash;
        });
        if (address_types) {
            for (auto& tx : rec.txs) {
                auto type_it = address_types->find(rec.counterpart(tx));
                if (type_it != address_types->end()) tx.counterpart_is_contract = type_it->second;
            }
        }
        rec.created_at = rec.txs.front().timestamp;
        result.records.push_back(std::move(rec));
    }
    if (!missing.empty()) {
        if (strict) {
            std::string msg = "labeled addresses without transactions:";
            for (const auto& a : missing) msg += " " + a;
            throw std::runtime_error(msg);
        }
        result.unmatched_labels = missing.size();
    }
    return result;
}

RefineResult refine_dataset(std::vector<ApplicationRecord> apps) {
    std::set<std::string> seen;
    for (const auto& app : apps) {
        if (!seen.insert(app.address).second)
            throw std::runtime_error("duplicate application address " + app.address);
    }
    RefineResult out;
    for (auto& app : apps) {
        if (app.txs.empty()) {
            ++out.stats.dropped_no_txs;
            (app.label == Label::ponzi ? out.stats.dropped_ponzi : out.stats.dropped_non_ponzi)++;
            continue;
        }
        if (app.lifetime_secs() < kMinLifetimeSecs) {
            ++out.stats.dropped_short_lifetime;
            (app.label == Label::ponzi ? out.stats.dropped_ponzi : out.stats.dropped_non_ponzi)++;
            continue;
        }
        (app.label == Label::ponzi ? out.stats.retained_ponzi : out.stats.retained_non_ponzi)++;
        out.dataset.apps.push_back(std::move(app));
    }
    std::sort(out.dataset.apps.begin(), out.dataset.apps.end(),
              [](const ApplicationRecord& a, const ApplicationRecord& b) { return a.address < b.address; });
    return out;
}

void write_dataset_jsonl(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path);
    for (const auto& app : dataset.apps) {
        json row;
        row["address"] = app.address;
        row["label"] = to_string(app.label);
        row["ponzi_type"] = app.ponzi_type ? json(to_string(*app.ponzi_type)) : json(nullptr);
        row["created_at"] = app.created_at;
        json txs = json::array();
        for (const auto& tx : app.txs) txs.push_back(tx_to_json(tx));
        row["txs"] = std::move(txs);
        out << row.dump() << '\n';
    }
}

Dataset read_dataset_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    Dataset dataset;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(line);
        if (line.empty()) continue;
        json row = json::parse(line, nullptr, false);
        if (row.is_discarded()) row_error(path, line_no, "invalid json");
        ApplicationRecord app;
        try {
            app.address = row.at("address").get<std::string>();
            app.label = label_from_string(row.at("label").get<std::string>());
            if (!row.at("ponzi_type").is_null())
                app.ponzi_type = ponzi_type_from_string(row.at("ponzi_type").get<std::string>());
            app.created_at = row.at("created_at").get<int64_t>();
            for (const auto& tx_row : row.at("txs")) app.txs.push_back(tx_from_json(tx_row, path, line_no));
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception& e) {
            row_error(path, line_no, e.what());
        }
        dataset.apps.push_back(std::move(app));
    }
    return dataset;
}

}  // namespace ponzi::ingest
