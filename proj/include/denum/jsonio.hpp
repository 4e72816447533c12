#pragma once

#include <json.hpp>

#include "denumerant.hpp"

namespace denum {

/// Serialization of quasi-polynomials and cone decompositions.  All rationals
/// and big integers travel as strings to avoid precision loss.

inline nlohmann::json monomial_to_json(const Monomial& mono, const Rat& c) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& [r, e] : mono) atoms.push_back({{"r", to_string(r)}, {"pow", e}});
    return {{"coeff", to_string(c)}, {"atoms", atoms}};
}

inline nlohmann::json steppoly_to_json(const StepPoly& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [mono, c] : p.terms()) out.push_back(monomial_to_json(mono, c));
    return out;
}

inline StepPoly steppoly_from_json(const nlohmann::json& j) {
    StepPoly p;
    for (const auto& mono : j) {
        StepPoly term = StepPoly::constant(parse_rat(mono.at("coeff").get<std::string>()));
        for (const auto& atom : mono.at("atoms")) {
            Rat r = parse_rat(atom.at("r").get<std::string>());
            int e = atom.at("pow").get<int>();
            if (e < 1) throw InputError("steppoly_from_json: atom power must be positive");
            term = term * StepPoly::atom(r).pow(e);
        }
        p += term;
    }
    return p;
}

inline nlohmann::json quasi_to_json(const QuasiPolynomial& q) {
    nlohmann::json ja = nlohmann::json::array();
    for (const Int& x : q.a()) ja.push_back(to_string(x));
    nlohmann::json coeffs = nlohmann::json::object();
    nlohmann::json periods = nlohmann::json::object();
    for (const auto& [m, p] : q.coefficients()) {
        coeffs[std::to_string(m)] = steppoly_to_json(p);
        periods[std::to_string(m)] = to_string(p.period());
    }
    return {{"a", ja},
            {"N", q.degree_bound()},
            {"coefficients", coeffs},
            {"lcm", to_string(q.lcm())},
            {"periods", periods}};
}

inline QuasiPolynomial quasi_from_json(const nlohmann::json& j) {
    IntVec a;
    for (const auto& x : j.at("a")) a.push_back(Int(x.get<std::string>()));
    std::map<int, StepPoly> coeffs;
    for (const auto& [key, val] : j.at("coefficients").items())
        coeffs[std::stoi(key)] = steppoly_from_json(val);
    return QuasiPolynomial(std::move(a), std::move(coeffs));
}

inline nlohmann::json decomposition_to_json(const std::vector<SignedUniCone>& cones) {
    nlohmann::json out = nlohmann::json::array();
    for (const SignedUniCone& c : cones) {
        nlohmann::json gens = nlohmann::json::array();
        for (int i = 0; i < c.gens.rows(); ++i)
            for (int j = 0; j < c.gens.cols(); ++j) gens.push_back(to_string(c.gens.at(i, j)));
        nlohmann::json ks = nlohmann::json::array();
        for (const Rat& k : c.k) ks.push_back(to_string(k));
        out.push_back({{"sign", c.sign},
                       {"rows", c.gens.rows()},
                       {"cols", c.gens.cols()},
                       {"generators", gens},
                       {"vertex_coords", ks}});
    }
    return out;
}

/// Multi-line rendering: one "E_m = ..." line per computed coefficient,
/// highest degree first.
inline std::string render_quasi_text(const QuasiPolynomial& q, const std::string& var = "t") {
    std::string out = "E(a; " + var + ") = sum of E_m * " + var + "^m for a = (";
    const IntVec& a = q.a();
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a[i]);
    }
    out += ")\n";
    const auto& cs = q.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it)
        out += "E_" + std::to_string(it->first) + " = " + it->second.text(var) + "\n";
    return out;
}

}  // namespace denum
