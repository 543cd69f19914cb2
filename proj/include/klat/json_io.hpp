#pragma once

// JSON views of the library types, plus the lattice-argument parser that
// accepts either the symbolic grammar ("U+2E8(-1)") or an explicit Gram
// matrix as {"gram": [[...], ...]}.  Everything serialises deterministically:
// ordered_json keeps insertion order, rationals become reduced-fraction
// strings, and integers wider than 64 bits fall back to decimal strings.

#include <klat/discriminant.hpp>
#include <klat/kodaira.hpp>
#include <klat/lattice.hpp>
#include <klat/lattice_spec.hpp>
#include <klat/reidtai.hpp>
#include <klat/repnum.hpp>
#include <klat/roots.hpp>

#include <json.hpp>

#include <cctype>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace klat {

using Json = nlohmann::ordered_json;

inline Json json_integer(const Integer& v) {
    static const Integer lo = std::numeric_limits<long long>::min();
    static const Integer hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return Json(static_cast<long long>(v));
    return Json(v.str());
}

inline Json json_rational(const Rational& v) { return Json(to_string(v)); }

inline Json json_vector(const IVec& v) {
    Json a = Json::array();
    for (const Integer& x : v) a.push_back(json_integer(x));
    return a;
}

inline Json json_matrix(const IMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_integer(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const DiscriminantGroup& D) {
    Json j;
    j["order"] = json_integer(D.order());
    Json fs = Json::array();
    for (const Integer& f : D.invariant_factors()) fs.push_back(json_integer(f));
    j["invariant_factors"] = std::move(fs);
    Json gens = Json::array();
    for (const QVec& g : D.generators()) {
        Json row = Json::array();
        for (const Rational& x : g) row.push_back(json_rational(x));
        gens.push_back(std::move(row));
    }
    j["generators"] = std::move(gens);
    Json qs = Json::array();
    for (const Rational& q : D.qform_values()) qs.push_back(json_rational(q));
    j["qform_values"] = std::move(qs);
    return j;
}

inline Json to_json(const IntegralLattice& L, const LatticeInfo& info) {
    Json j;
    j["label"] = L.label();
    j["rank"] = info.rank;
    j["even"] = info.even;
    j["det"] = json_integer(info.det);
    j["signature"] = Json::array({info.signature.first, info.signature.second});
    j["discriminant_group"] = to_json(discriminant_group(L));
    return j;
}

inline Json to_json(const RootSubsystemDescriptor& d) {
    Json j;
    j["type"] = d.to_string();
    j["root_count"] = d.total_roots;
    return j;
}

inline Json to_json(const QpbReport& r) {
    Json j;
    j["root_count"] = r.root_count;
    j["weight"] = r.weight;
    j["is_cusp"] = r.is_cusp;
    j["domain_dim"] = r.domain_dim;
    j["low_weight"] = r.low_weight;
    j["canonical_weight"] = r.canonical_weight;
    return j;
}

inline Json to_json(const SearchWitness& w) {
    Json j;
    Json vs = Json::array();
    for (const LatticeVector& v : w.vectors) vs.push_back(json_vector(v.coords));
    j["vectors"] = std::move(vs);
    j["orthogonal_roots"] = to_json(w.orthogonal_roots);
    j["report"] = to_json(w.report);
    return j;
}

inline Json to_json(const Verdict& v) {
    Json j;
    j["verdict"] = to_string(v.kind);
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    return j;
}

inline Json to_json(const IneqCheck& c) {
    Json j;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["holds"] = c.holds;
    return j;
}

inline Json to_json(const RtVerdict& v) {
    Json j;
    j["sigma"] = json_rational(v.sigma);
    j["sigma_prime"] = json_rational(v.sigma_prime);
    j["is_quasi_reflection"] = v.is_quasi_reflection;
    j["is_reflection"] = v.is_reflection;
    j["passes"] = v.passes;
    return j;
}

// One output record per result: a stable envelope around a command-specific
// payload, emitted as a single line of JSON.
inline Json output_record(const std::string& command, Json payload) {
    Json j;
    j["schema_version"] = "1.0";
    j["command"] = command;
    j["payload"] = std::move(payload);
    return j;
}

// Lattice argument: symbolic spec, or a JSON object {"gram": [[...], ...]}.
inline std::shared_ptr<IntegralLattice> parse_lattice_arg(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const std::exception& e) {
            throw error(errc::parse_error, std::string("bad lattice JSON: ") + e.what());
        }
        check(j.is_object() && j.contains("gram") && j["gram"].is_array(), errc::parse_error,
              "lattice JSON must be an object with a \"gram\" array");
        const Json& g = j["gram"];
        std::size_t n = g.size();
        check(n > 0, errc::parse_error, "empty gram matrix");
        IMat gram(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            check(g[r].is_array() && g[r].size() == n, errc::parse_error,
                  "gram matrix must be square");
            for (std::size_t c = 0; c < n; ++c) {
                const Json& cell = g[r][c];
                if (cell.is_number_integer())
                    gram(r, c) = Integer(cell.get<long long>());
                else if (cell.is_string())
                    gram(r, c) = Integer(cell.get<std::string>());
                else
                    throw error(errc::parse_error, "gram entries must be integers");
            }
        }
        std::string label = j.contains("label") && j["label"].is_string()
                                ? j["label"].get<std::string>()
                                : std::string("custom");
        return std::make_shared<IntegralLattice>(gram, label);
    }
    return std::make_shared<IntegralLattice>(parse_lattice_spec(text));
}

// --- theta-table cache ------------------------------------------------

inline Json theta_table_to_json(const ThetaTable& t) {
    Json j;
    j["gram"] = json_matrix(t.gram);
    j["bound"] = json_integer(t.bound);
    Json cs = Json::array();
    for (long long c : t.counts) cs.push_back(c);
    j["counts"] = std::move(cs);
    return j;
}

inline ThetaTable theta_table_from_json(const Json& j) {
    check(j.is_object() && j.contains("gram") && j.contains("bound") && j.contains("counts"),
          errc::parse_error, "theta cache entry needs gram, bound and counts");
    const Json& g = j["gram"];
    std::size_t n = g.size();
    check(n > 0, errc::parse_error, "theta cache entry has an empty gram");
    ThetaTable t;
    t.gram = IMat(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        check(g[r].is_array() && g[r].size() == n, errc::parse_error,
              "theta cache gram must be square");
        for (std::size_t c = 0; c < n; ++c) t.gram(r, c) = Integer(g[r][c].get<long long>());
    }
    t.bound = j["bound"].get<long long>();
    check(t.bound >= 0, errc::parse_error, "theta cache bound must be nonnegative");
    t.counts.clear();
    for (const Json& c : j["counts"]) t.counts.push_back(c.get<long long>());
    check(static_cast<long long>(t.counts.size()) == t.bound + 1, errc::parse_error,
          "theta cache counts length disagrees with the bound");
    return t;
}

}  // namespace klat
