#include "ponzi/types.hpp"

namespace ponzi {

std::string wei_to_string(Wei w) {
    if (w == 0) return "0";
    std::string out;
    while (w > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(w % 10)));
        w /= 10;
    }
    return {out.rbegin(), out.rend()};
}

std::string wei_signed_to_string(WeiSigned w) {
    if (w < 0) return "-" + wei_to_string(static_cast<Wei>(-w));
    return wei_to_string(static_cast<Wei>(w));
}

Wei wei_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty wei value");
    Wei out = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("non-digit in wei value: " + s);
        Wei next = out * 10 + static_cast<Wei>(c - '0');
        if (next < out) throw std::invalid_argument("wei value overflow: " + s);
        out = next;
    }
    return out;
}

const char* to_string(TxKind k) { return k == TxKind::normal ? "normal" : "internal"; }
const char* to_string(TxStatus s) { return s == TxStatus::success ? "success" : "failed"; }
const char* to_string(Label l) { return l == Label::ponzi ? "ponzi" : "non_ponzi"; }

const char* to_string(PonziType t) {
    switch (t) {
        case PonziType::chain: return "chain";
        case PonziType::tree: return "tree";
        case PonziType::handover: return "handover";
        case PonziType::waterfall: return "waterfall";
        case PonziType::other: return "other";
    }
    return "other";
}

TxKind tx_kind_from_string(const std::string& s) {
    if (s == "normal") return TxKind::normal;
    if (s == "internal") return TxKind::internal;
    throw std::invalid_argument("unknown transaction kind: '" + s + "'");
}

TxStatus tx_status_from_string(const std::string& s) {
    if (s == "success") return TxStatus::success;
    if (s == "failed") return TxStatus::failed;
    throw std::invalid_argument("unknown transaction status: '" + s + "'");
}

Label label_from_string(const std::string& s) {
    if (s == "ponzi") return Label::ponzi;
    if (s == "non_ponzi") return Label::non_ponzi;
    throw std::invalid_argument("unknown label: '" + s + "'");
}

PonziType ponzi_type_from_string(const std::string& s) {
    if (s == "chain") return PonziType::chain;
    if (s == "tree") return PonziType::tree;
    if (s == "handover") return PonziType::handover;
    if (s == "waterfall") return PonziType::waterfall;
    if (s == "other") return PonziType::other;
    throw std::invalid_argument("unknown ponzi type: '" + s + "'");
}

}  // namespace ponzi
