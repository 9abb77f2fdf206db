#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "anr/harness.hpp"

namespace anr {

using nlohmann::json;

namespace {

json real_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string csv_number(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, what + ": expected an array of rows");
    const auto n = Eigen::Index(j.size());
    const auto cols = n > 0 && j[0].is_array() ? Eigen::Index(j[0].size()) : Eigen::Index(0);
    CMat m(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || Eigen::Index(row.size()) != cols)
            throw Error(ErrorCode::InvalidInput, what + ": rows must be arrays of equal length");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& z = row[k];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw Error(ErrorCode::InvalidInput, what + ": entries must be [re, im] pairs");
            m(i, k) = {z[0].get<double>(), z[1].get<double>()};
        }
    }
    return m;
}

json instance_to_json(const Instance& inst) {
    json ops = json::object();
    for (const auto& [name, m] : inst.operators) ops[name] = matrix_to_json(m);
    return {{"dim", inst.dim}, {"A", matrix_to_json(inst.A)}, {"operators", ops}, {"seed", inst.seed},
            {"note", inst.note}};
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "instance must be a JSON object");
    Instance inst;
    try {
        inst.dim = j.at("dim").get<int>();
        inst.A = matrix_from_json(j.at("A"), "A");
        const auto& ops = j.at("operators");
        if (!ops.is_object()) throw Error(ErrorCode::InvalidInput, "operators must be an object");
        for (const auto& [name, m] : ops.items()) inst.operators[name] = matrix_from_json(m, name);
        if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("note")) inst.note = j.at("note").get<std::string>();
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed instance: ") + ex.what());
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::InvalidInput, path + ": " + ex.what());
    }
    return instance_from_json(j);
}

json report_to_json(const Report& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json o = {{"trial", row.trial},        {"seed", row.seed},   {"check_id", row.check_id},
                  {"lhs", real_or_null(row.lhs)}, {"rhs", real_or_null(row.rhs)},
                  {"slack", real_or_null(row.slack)}, {"pass", row.pass}, {"skipped", row.skipped}};
        if (!row.note.empty()) o["note"] = row.note;
        rows.push_back(std::move(o));
    }
    json summary = json::object();
    for (const auto& s : r.summary) {
        json o = {{"evaluated", s.evaluated}, {"violations", s.violations}, {"skipped", s.skipped},
                  {"errors", s.errors}};
        o["min_slack"] = s.min_slack ? real_or_null(*s.min_slack) : json(nullptr);
        o["min_rel_slack"] = s.min_rel_slack ? real_or_null(*s.min_rel_slack) : json(nullptr);
        o["sharpest_trial"] = s.sharpest_trial ? json(*s.sharpest_trial) : json(nullptr);
        o["sharpest_seed"] = s.sharpest_trial ? json(s.sharpest_seed) : json(nullptr);
        if (!s.top.empty()) {
            json top = json::array();
            for (const auto& [seed, rel] : s.top) top.push_back({{"seed", seed}, {"rel_slack", rel}});
            o["top"] = std::move(top);
        }
        summary[s.check_id] = std::move(o);
    }
    return {{"tool_version", r.tool_version}, {"master_seed", r.master_seed}, {"trials", r.trials},
            {"rows", rows},                   {"summary", summary}};
}

std::string report_to_csv(const Report& r) {
    std::ostringstream os;
    os << "trial,check_id,lhs,rhs,slack,pass,skipped\n";
    for (const auto& row : r.rows)
        os << row.trial << ',' << row.check_id << ',' << csv_number(row.lhs) << ',' << csv_number(row.rhs) << ','
           << csv_number(row.slack) << ',' << (row.pass ? "true" : "false") << ','
           << (row.skipped ? "true" : "false") << '\n';
    return os.str();
}

} // namespace anr
