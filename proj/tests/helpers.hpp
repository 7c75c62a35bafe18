#pragma once

#include <random>
#include <string>
#include <vector>

#include "tc/closure.hpp"
#include "tc/poly_parse.hpp"
#include "tc/tower.hpp"

namespace tc::test {

inline Vars vars_xy() {
    static Vars v = make_vars({"X", "Y"});
    return v;
}

inline Poly P(const std::string& s, const Vars& v = vars_xy()) { return parse_poly(s, v); }

inline Poly random_poly(std::mt19937_64& rng, const Vars& v, unsigned max_deg, long max_coeff, unsigned terms) {
    std::uniform_int_distribution<long> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<unsigned> exp(0, max_deg);
    std::vector<Term> ts;
    for (unsigned i = 0; i < terms; ++i) {
        Monomial m(v->size());
        unsigned budget = max_deg;
        for (std::size_t j = 0; j < v->size(); ++j) {
            unsigned e = std::min(budget, exp(rng));
            m.set(j, e);
            budget -= e;
        }
        ts.push_back({m, Integer(coeff(rng))});
    }
    return Poly::from_terms(v, std::move(ts));
}

/// The rank-9 context over Z[X, Y] with f = X^3 + 9, g = Y^3 + 9.
inline Tower example_tower() {
    TowerSpec spec;
    spec.p = 3;
    spec.vars = vars_xy();
    spec.radicands = {{P("X^3 + 9"), std::nullopt, 1}, {P("Y^3 + 9"), std::nullopt, 1}};
    return make_tower(spec);
}

inline Tower single_tower(unsigned p, const std::string& f, const Vars& v = vars_xy()) {
    TowerSpec spec;
    spec.p = p;
    spec.vars = v;
    spec.radicands = {{P(f, v), std::nullopt, 1}};
    return make_tower(spec);
}

/// Radicands (h_i + p a_i)^p + p^2 g_i that pass every hypothesis; one
/// variable per radicand so pairwise coprimality holds. Retries on failure.
inline Tower random_tower(std::mt19937_64& rng, unsigned p, std::size_t r, const std::vector<unsigned>& d = {}) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < r; ++i) names.push_back("x" + std::to_string(i + 1));
    Vars v = make_vars(names);
    std::uniform_int_distribution<long> small(1, 3);
    std::uniform_int_distribution<unsigned> deg(1, 2);
    for (int attempt = 0; attempt < 200; ++attempt) {
        TowerSpec spec;
        spec.p = p;
        spec.vars = v;
        for (std::size_t i = 0; i < r; ++i) {
            Poly x = Poly::variable(v, i);
            Poly h = x.pow(deg(rng)) * Integer(small(rng));
            if (small(rng) == 1) h += Poly(v, small(rng));
            Poly g = Poly(v, small(rng)) + x * Integer(small(rng) - 2);
            Poly f = h.pow(p) + g * Integer(p * p);
            spec.radicands.push_back({f, std::nullopt, d.empty() ? 1u : d[i]});
        }
        try {
            return make_tower(spec);
        } catch (const HypothesisError&) {
        }
    }
    throw std::runtime_error("no random tower found");
}

}  // namespace tc::test
