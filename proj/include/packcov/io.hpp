#pragma once

#include "packcov/bounds.hpp"
#include "packcov/greedy.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace packcov {

/// Field order is preserved on output, keeping serialized files byte-stable.
using json = nlohmann::ordered_json;

enum class Arith { rational, floating };

inline std::string arith_name(Arith a) { return a == Arith::rational ? "rational" : "float"; }

inline Arith arith_from_name(const std::string& name) {
    if (name == "rational") return Arith::rational;
    if (name == "float") return Arith::floating;
    throw ParseError("unknown arithmetic mode '" + name + "' (expected rational|float)");
}

template <class S>
constexpr Arith arith_of = ScalarTraits<S>::is_exact ? Arith::rational : Arith::floating;

// --- scalar <-> json ---------------------------------------------------------

inline json number_to_json(double v) { return v; }
inline json number_to_json(const Rational& v) { return rational_to_string(v); }

template <class S>
S number_from_json(const json& j) {
    if (j.is_string()) {
        Rational r = rational_from_string(j.get<std::string>());
        if constexpr (ScalarTraits<S>::is_exact)
            return r;
        else
            return to_double(r);
    }
    if (j.is_number()) return ScalarTraits<S>::from_double(j.get<double>());
    throw ParseError("expected a number or a \"p/q\" string, got: " + j.dump());
}

template <class S, int D>
json vec_to_json(const Vec<S, D>& v) {
    json arr = json::array();
    for (int i = 0; i < D; ++i) arr.push_back(number_to_json(v[i]));
    return arr;
}

template <class S, int D>
Vec<S, D> vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != D)
        throw ParseError("expected a coordinate array of length " + std::to_string(D));
    Vec<S, D> v;
    for (int i = 0; i < D; ++i) v[i] = number_from_json<S>(j.at(static_cast<std::size_t>(i)));
    return v;
}

// --- body / lattice / arrangement --------------------------------------------

template <class S, int D>
json body_to_json(const ConvexBody<S, D>& body) {
    json j;
    j["d"] = D;
    json verts = json::array();
    for (const auto& v : body.vertices()) verts.push_back(vec_to_json(v));
    j["vertices"] = std::move(verts);
    j["symmetric"] = body.symmetric();
    j["arithmetic"] = arith_name(arith_of<S>);
    return j;
}

template <class S, int D>
ConvexBody<S, D> body_from_json(const json& j) {
    if (!j.contains("vertices")) throw ParseError("body: missing field 'vertices'");
    std::vector<Vec<S, D>> verts;
    for (const auto& vj : j.at("vertices")) verts.push_back(vec_from_json<S, D>(vj));
    const bool symmetric = j.value("symmetric", false);
    return ConvexBody<S, D>::from_vertices(std::move(verts), symmetric);
}

template <class S, int D>
json lattice_to_json(const Lattice<S, D>& lattice) {
    json rows = json::array();
    for (int i = 0; i < D; ++i) rows.push_back(vec_to_json(lattice.basis().column(i)));
    return rows;
}

template <class S, int D>
Lattice<S, D> lattice_from_json(const json& j) {
    if (!j.is_array() || j.size() != D)
        throw ParseError("lattice: expected " + std::to_string(D) + " generator rows");
    Mat<S, D> basis;
    for (int i = 0; i < D; ++i) basis.column(i) = vec_from_json<S, D>(j.at(static_cast<std::size_t>(i)));
    return Lattice<S, D>(basis);
}

template <class S, int D>
json arrangement_to_json(const Arrangement<S, D>& arr) {
    json j;
    j["body"] = body_to_json(arr.body());
    j["lattice"] = lattice_to_json(arr.lattice());
    json pts = json::array();
    for (const auto& p : arr.points()) pts.push_back(vec_to_json(p));
    j["points"] = std::move(pts);
    return j;
}

template <class S, int D>
Arrangement<S, D> arrangement_from_json(const json& j) {
    for (const char* field : {"body", "lattice", "points"})
        if (!j.contains(field))
            throw ParseError(std::string("arrangement: missing field '") + field + "'");
    auto body = body_from_json<S, D>(j.at("body"));
    auto lattice = lattice_from_json<S, D>(j.at("lattice"));
    std::vector<Vec<S, D>> pts;
    for (const auto& pj : j.at("points")) pts.push_back(vec_from_json<S, D>(pj));
    return Arrangement<S, D>(std::move(body), std::move(lattice), std::move(pts));
}

// --- runtime-dispatch wrapper -------------------------------------------------

using ArrangementVariant =
    std::variant<Arrangement<double, 2>, Arrangement<Rational, 2>, Arrangement<double, 3>,
                 Arrangement<Rational, 3>>;

struct AnyArrangement {
    Arith mode = Arith::floating;
    int d = 2;
    ArrangementVariant value;
};

inline AnyArrangement load_arrangement(const json& j, std::optional<Arith> mode_override = {}) {
    if (!j.contains("body")) throw ParseError("arrangement: missing field 'body'");
    const json& body = j.at("body");
    if (!body.contains("d")) throw ParseError("body: missing field 'd'");
    const int d = body.at("d").get<int>();
    Arith mode = Arith::floating;
    if (body.contains("arithmetic")) mode = arith_from_name(body.at("arithmetic").get<std::string>());
    if (mode_override) mode = *mode_override;
    if (d == 2) {
        if (mode == Arith::rational)
            return {mode, d, arrangement_from_json<Rational, 2>(j)};
        return {mode, d, arrangement_from_json<double, 2>(j)};
    }
    if (d == 3) {
        if (mode == Arith::rational)
            return {mode, d, arrangement_from_json<Rational, 3>(j)};
        return {mode, d, arrangement_from_json<double, 3>(j)};
    }
    throw ParseError("geometry kernel supports d = 2 and d = 3 (got d = " + std::to_string(d) +
                     "); use the bounds command for higher dimensions");
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("JSON error in " + path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
}

// --- traces and reports --------------------------------------------------------

template <class S, int D>
json trace_to_json(const GreedyTrace<S, D>& trace) {
    json j;
    j["alpha"] = number_to_json(trace.alpha);
    j["epsilon"] = number_to_json(trace.epsilon_effective);
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json e;
        e["i"] = s.iteration;
        e["y"] = vec_to_json(s.witness);
        e["point"] = vec_to_json(s.point);
        e["S_before"] = number_to_json(s.potential_before);
        e["S_after"] = number_to_json(s.potential_after);
        steps.push_back(std::move(e));
    }
    j["steps"] = std::move(steps);
    j["l"] = trace.step_count;
    j["certified"] = trace.certified;
    return j;
}

template <class S, int D>
json transform_report_json(const PipelineResult<S, D>& pipe, Direction direction,
                           std::optional<double> fixed_alpha) {
    const auto& tr = pipe.transform;
    json j;
    j["direction"] = direction == Direction::pack_to_cover ? "pack-to-cover" : "cover-to-pack";
    j["alpha"] = number_to_json(tr.trace.alpha);
    j["alpha_fixed"] = fixed_alpha.has_value();
    j["epsilon_effective"] = number_to_json(tr.trace.epsilon_effective);
    j["density_before"] = to_double(tr.density_before);
    j["density_after"] = to_double(tr.density_after);
    j["steps"] = tr.trace.step_count;
    j["refinement_m"] = tr.refinement_m;
    j["bound_value"] = to_double(tr.bound_value);
    j["bound_satisfied"] = tr.bound_satisfied;
    j["bound_vacuous"] = tr.bound_vacuous;
    j["formula_bound"] = pipe.formula_bound;
    j["formula_branch"] = pipe.formula_branch;
    j["formula_satisfied"] = pipe.formula_satisfied;
    j["formula_vacuous"] = pipe.formula_vacuous;
    j["claim_checks"] = tr.trace.claim_checks;
    j["claim_failures"] = tr.trace.claim_failures;
    j["output_verified"] = tr.output_verified;
    j["certified"] = tr.trace.certified;
    return j;
}

inline json density_report_json(const DensityReport& rep) {
    json j;
    j["density"] = rep.density;
    j["kind"] = rep.kind == ArrangementKind::packing ? "packing" : "covering";
    j["epsilon_effective"] = rep.epsilon_effective;
    if (rep.theorem_bound) {
        j["theorem_bound"] = *rep.theorem_bound;
        j["bound_branch"] = rep.bound_branch;
    } else {
        j["theorem_bound"] = nullptr;
    }
    json comps = json::array();
    for (const auto& c : rep.comparisons) {
        json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["stronger"] = c.stronger;
        comps.push_back(std::move(e));
    }
    j["comparisons"] = std::move(comps);
    return j;
}

inline json crossover_report_json(const CrossoverReport& rep) {
    json j;
    j["d"] = rep.d;
    j["c"] = rep.c;
    j["W"] = rep.W;
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json je;
        je["name"] = e.name;
        je["value"] = e.value;
        je["applicable"] = e.applicable;
        entries.push_back(std::move(je));
    }
    j["thresholds"] = std::move(entries);
    return j;
}

}  // namespace packcov
