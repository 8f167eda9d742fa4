#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "zmlab/common.hpp"
#include "zmlab/norms.hpp"

namespace zm {

// One row of a verification run.  pass <=> gap <= tol.
struct CheckReport {
    std::string id;
    int d = 0;
    std::map<std::string, std::string> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::int64_t runtime_ms = 0;
    nlohmann::ordered_json debug;  // attached only on failure

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["d"] = d;
        nlohmann::ordered_json in;
        for (const auto& [k, v] : inputs) in[k] = v;
        j["inputs"] = in;
        j["lhs"] = lhs;
        j["rhs"] = rhs;
        j["gap"] = gap;
        j["tol"] = tol;
        j["pass"] = pass;
        j["runtime_ms"] = runtime_ms;
        if (!pass && !debug.is_null()) j["debug"] = debug;
        return j;
    }
};

inline nlohmann::ordered_json reports_to_json(const std::vector<CheckReport>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(r.to_json());
    return arr;
}

inline void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file " + path);
    out << j.dump(2) << "\n";
}

inline void write_bounds_csv(const std::string& path, const std::vector<BoundReport>& rows) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file " + path);
    out << "theorem,family,d,lhs,bound,ratio,equality\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.12g,%.12g,%.12g,%d\n", r.theorem.c_str(),
                      r.family.c_str(), r.d, r.lhs, r.bound, r.ratio, r.equality ? 1 : 0);
        out << buf;
    }
}

inline std::string format_matrix_debug(const CMat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows.dump();
}

}  // namespace zm
