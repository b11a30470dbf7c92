#include "ponzi/feature_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "ponzi/parallel.hpp"
#include "ponzi/ts_measures.hpp"

namespace ponzi::feat {

FeatureSet feature_set_from_string(const std::string& s) {
    if (s == "acc") return FeatureSet::acc;
    if (s == "ts") return FeatureSet::ts;
    if (s == "acc-ts" || s == "acc_ts") return FeatureSet::acc_ts;
    throw std::invalid_argument("unknown feature set: '" + s + "'");
}

const char* to_string(FeatureSet set) {
    switch (set) {
        case FeatureSet::acc: return "acc";
        case FeatureSet::ts: return "ts";
        case FeatureSet::acc_ts: return "acc-ts";
    }
    return "acc-ts";
}

FeatureRegistry registry_for(FeatureSet set) {
    FeatureRegistry reg;
    if (set == FeatureSet::acc || set == FeatureSet::acc_ts) reg.names = account_registry().names;
    if (set == FeatureSet::ts || set == FeatureSet::acc_ts) {
        const auto ts_names = ts::ts_feature_names();
        reg.names.insert(reg.names.end(), ts_names.begin(), ts_names.end());
    }
    return reg;
}

bool is_ts_feature(const std::string& name) { return name.find("__") != std::string::npos; }

size_t LabeledMatrix::count(Label l) const {
    size_t n = 0;
    for (Label row : labels)
        if (row == l) ++n;
    return n;
}

LabeledMatrix build_matrix(const Dataset& dataset, FeatureSet set, int t_hours) {
    LabeledMatrix m;
    m.registry = registry_for(set);
    const size_t n = dataset.apps.size();
    m.addresses.resize(n);
    m.rows.resize(n);
    m.labels.resize(n);
    m.types.resize(n);
    const int period = ts::period_for_interval(t_hours);
    parallel_for(n, [&](size_t i) {
        const auto& app = dataset.apps[i];
        std::vector<double> row;
        row.reserve(m.registry.arity());
        if (set == FeatureSet::acc || set == FeatureSet::acc_ts) {
            const auto acc = compute_account_features(app);
            row.insert(row.end(), acc.begin(), acc.end());
        }
        if (set == FeatureSet::ts || set == FeatureSet::acc_ts) {
            const auto panel = ts::build_panel(app, t_hours);
            const auto block = ts::compress_panel(panel, period);
            row.insert(row.end(), block.begin(), block.end());
        }
        m.addresses[i] = app.address;
        m.rows[i] = std::move(row);
        m.labels[i] = app.label;
        m.types[i] = app.ponzi_type;
    });
    return m;
}

LabeledMatrix select_features(const LabeledMatrix& m, const std::vector<std::string>& names) {
    std::vector<size_t> keep;
    for (size_t i = 0; i < m.registry.names.size(); ++i) {
        if (std::find(names.begin(), names.end(), m.registry.names[i]) != names.end())
            keep.push_back(i);
    }
    if (keep.size() != names.size())
        throw std::invalid_argument("select_features: unknown feature name in selection");
    LabeledMatrix out;
    for (size_t i : keep) out.registry.names.push_back(m.registry.names[i]);
    out.addresses = m.addresses;
    out.labels = m.labels;
    out.types = m.types;
    out.rows.resize(m.rows.size());
    for (size_t r = 0; r < m.rows.size(); ++r) {
        out.rows[r].reserve(keep.size());
        for (size_t i : keep) out.rows[r].push_back(m.rows[r][i]);
    }
    return out;
}

ZScaler ZScaler::fit(const std::vector<std::vector<double>>& rows) {
    ZScaler z;
    if (rows.empty()) return z;
    const size_t arity = rows[0].size();
    z.mean.assign(arity, 0.0);
    z.sd.assign(arity, 1.0);
    for (const auto& row : rows)
        for (size_t j = 0; j < arity; ++j) z.mean[j] += row[j];
    for (size_t j = 0; j < arity; ++j) z.mean[j] /= static_cast<double>(rows.size());
    std::vector<double> var(arity, 0.0);
    for (const auto& row : rows)
        for (size_t j = 0; j < arity; ++j) {
            const double d = row[j] - z.mean[j];
            var[j] += d * d;
        }
    for (size_t j = 0; j < arity; ++j) {
        var[j] /= static_cast<double>(rows.size());
        if (var[j] > 0.0) z.sd[j] = std::sqrt(var[j]);
    }
    return z;
}

std::vector<double> ZScaler::transform(const std::vector<double>& row) const {
    std::vector<double> out(row.size());
    for (size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / sd[j];
    return out;
}

void write_matrix_csv(const LabeledMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write feature matrix: " + path);
    out << "address";
    for (const auto& name : m.registry.names) out << ',' << name;
    out << ",label\n";
    char buf[64];
    for (size_t r = 0; r < m.rows.size(); ++r) {
        out << m.addresses[r];
        for (double v : m.rows[r]) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << ',' << to_string(m.labels[r]) << '\n';
    }
}

LabeledMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open feature matrix: " + path);
    LabeledMatrix m;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line_no == 1) {
            if (fields.size() < 3 || fields.front() != "address" || fields.back() != "label")
                throw std::runtime_error(path + ": expected header address,<features...>,label");
            m.registry.names.assign(fields.begin() + 1, fields.end() - 1);
            continue;
        }
        if (fields.size() != m.registry.arity() + 2)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": wrong column count");
        m.addresses.push_back(fields.front());
        std::vector<double> row(m.registry.arity());
        for (size_t j = 0; j < m.registry.arity(); ++j) {
            try {
                row[j] = std::stod(fields[j + 1]);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" +
                                         fields[j + 1] + "'");
            }
        }
        m.rows.push_back(std::move(row));
        m.labels.push_back(label_from_string(fields.back()));
        m.types.emplace_back();
    }
    return m;
}

}  // namespace ponzi::feat
