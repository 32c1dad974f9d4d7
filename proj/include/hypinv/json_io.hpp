#pragma once

// JSON serialization for scalars, series, matrices, sequences, and the
// queueing problem/solution pair. Exact scalars travel as {"rat": "p/q"};
// float scalars as {"re", "im"} (plain numbers in double mode, decimal
// strings in the extended tiers, so no precision is lost). Containers carry
// a "mode" tag checked on load — except the queue schemas, whose shapes are
// fixed by the external contract.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypinv/errors.hpp"
#include "hypinv/invpair.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/powerseries.hpp"
#include "hypinv/queueapp.hpp"

namespace hypinv {

using nlohmann::json;

template <class K>
json scalar_to_json(const K& v) {
    if constexpr (is_exact_v<K>) {
        return json{{"rat", v.to_text()}};
    } else if constexpr (std::is_same_v<K, C53>) {
        return json{{"re", v.real()}, {"im", v.imag()}};
    } else {
        return json{{"re", real_to_text(v.real())}, {"im", real_to_text(v.imag())}};
    }
}

template <class K>
K scalar_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("scalar must be a JSON object");
    if constexpr (is_exact_v<K>) {
        if (!j.contains("rat")) {
            if (j.contains("re")) throw ModeMismatch("float scalar given in exact mode");
            throw ParseError("exact scalar needs a \"rat\" field");
        }
        if (!j["rat"].is_string()) throw ParseError("\"rat\" must be a string");
        return Rat::from_text(j["rat"].get<std::string>());
    } else {
        if (j.contains("rat")) throw ModeMismatch("exact scalar given in float mode");
        if (!j.contains("re") || !j.contains("im"))
            throw ParseError("float scalar needs \"re\" and \"im\" fields");
        using R = real_of_t<K>;
        auto part = [](const json& f) -> R {
            if (f.is_string()) return real_from_text<R>(f.get<std::string>());
            if (f.is_number()) return R(f.get<double>());
            throw ParseError("scalar component must be a number or string");
        };
        return K(part(j["re"]), part(j["im"]));
    }
}

template <class K>
json sequence_to_json(const std::vector<K>& v) {
    json arr = json::array();
    for (const K& e : v) arr.push_back(scalar_to_json(e));
    return arr;
}

template <class K>
std::vector<K> sequence_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("sequence must be a JSON array");
    std::vector<K> v;
    v.reserve(j.size());
    for (const json& e : j) v.push_back(scalar_from_json<K>(e));
    return v;
}

namespace detail {

template <class K>
void check_mode(const json& j) {
    if (j.contains("mode")) {
        std::string m = j["mode"].get<std::string>();
        if (m != FieldTraits<K>::name())
            throw ModeMismatch("payload mode \"" + m + "\" but expected \"" +
                               FieldTraits<K>::name() + "\"");
    }
}

}  // namespace detail

template <class K>
json series_to_json(const Series<K>& s) {
    json coeffs = json::array();
    for (int i = 0; i <= s.order(); ++i) coeffs.push_back(scalar_to_json(s.coeff(i)));
    return json{{"mode", FieldTraits<K>::name()},
                {"order", s.order()},
                {"coeffs", coeffs}};
}

template <class K>
Series<K> series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw ParseError("series needs \"order\" and \"coeffs\"");
    detail::check_mode<K>(j);
    int order = j["order"].get<int>();
    if (order < 0) throw ParseError("series order must be >= 0");
    const json& coeffs = j["coeffs"];
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != order + 1)
        throw ParseError("series must carry exactly order + 1 coefficients");
    Series<K> s(order);
    for (int i = 0; i <= order; ++i) s.set(i, scalar_from_json<K>(coeffs[i]));
    return s;
}

template <class K>
json matrix_to_json(const TriMatrix<K>& m) {
    json rows = json::array();
    for (int n = 1; n <= m.n_max(); ++n) {
        json row = json::array();
        for (int k = 1; k <= n; ++k) row.push_back(scalar_to_json(m.get(n, k)));
        rows.push_back(row);
    }
    return json{{"mode", FieldTraits<K>::name()}, {"n_max", m.n_max()}, {"rows", rows}};
}

template <class K>
TriMatrix<K> matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n_max") || !j.contains("rows"))
        throw ParseError("matrix needs \"n_max\" and \"rows\"");
    detail::check_mode<K>(j);
    int n_max = j["n_max"].get<int>();
    if (n_max < 1) throw ParseError("matrix n_max must be >= 1");
    const json& rows = j["rows"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n_max)
        throw ParseError("matrix must carry exactly n_max rows");
    TriMatrix<K> m(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const json& row = rows[n - 1];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("row " + std::to_string(n) + " must carry " +
                             std::to_string(n) + " entries");
        for (int k = 1; k <= n; ++k) m.set(n, k, scalar_from_json<K>(row[k - 1]));
    }
    return m;
}

inline json problem_to_json(const QueueProblemData& p) {
    return json{{"x", p.x}, {"nu", p.nu}, {"b_max", p.b_max}, {"K", p.K}};
}

inline QueueProblemData problem_from_json(const json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("nu") ||
        !j.contains("b_max") || !j.contains("K"))
        throw ParseError("problem needs \"x\", \"nu\", \"b_max\", \"K\"");
    QueueProblemData p;
    if (!j["x"].is_number() || !j["nu"].is_number() ||
        !j["b_max"].is_number_integer() || !j["K"].is_array())
        throw ParseError("problem field has wrong type");
    p.x = j["x"].get<double>();
    p.nu = j["nu"].get<double>();
    p.b_max = j["b_max"].get<int>();
    for (const json& e : j["K"]) {
        if (!e.is_number()) throw ParseError("K entries must be numbers");
        p.K.push_back(e.get<double>());
    }
    return p;
}

template <class K>
json solution_to_json(const QueueSolution<K>& s) {
    return json{{"E", sequence_to_json(s.E)}, {"residual_max", s.residual_max}};
}

// --- files ------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

// Deterministic dump (keys sorted by the underlying ordered map), written to
// a sibling temp file and renamed into place.
inline void write_json_file(const std::string& path, const json& j) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw DomainError("cannot write " + tmp);
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw DomainError("cannot rename " + tmp + " to " + path);
}

}  // namespace hypinv
