#include "tc/poly_gcd.hpp"

#include <stdexcept>

namespace tc {

namespace {

using Univariate = std::vector<Poly>;

void trim(Univariate& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly from_coefficients(const Univariate& u, const Vars& vars, std::size_t var) {
    Poly r(vars);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        Monomial m(vars->size());
        m.set(var, static_cast<unsigned>(i));
        r += u[i].shifted(m);
    }
    return r;
}

bool involves(const Poly& f, std::size_t var) { return f.degree_in(var) > 0; }

Integer integer_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Poly content_in(const Univariate& u, const Vars& vars) {
    Poly g(vars);
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize_sign(c) : gcd(g, c);
        if (g.is_constant() && g.constant_term() == 1) break;
    }
    return g;
}

Univariate divide_all(const Univariate& u, const Poly& d) {
    Univariate r;
    r.reserve(u.size());
    for (const auto& c : u) {
        auto q = exact_divide(c, d);
        if (!q) throw std::logic_error("content does not divide coefficient");
        r.push_back(std::move(*q));
    }
    return r;
}

// Pseudo-remainder of a by b as polynomials in one variable.
Univariate pseudo_remainder(Univariate a, const Univariate& b) {
    const std::size_t db = b.size() - 1;
    const Poly& lcb = b.back();
    trim(a);
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        Poly lead = a.back();
        for (auto& c : a) c *= lcb;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= lead * b[i];
        trim(a);
    }
    return a;
}

}  // namespace

Poly normalize_sign(const Poly& f) {
    if (!f.is_zero() && f.leading().coeff < 0) return -f;
    return f;
}

Poly primitive_part(const Poly& f) {
    if (f.is_zero()) return f;
    return normalize_sign(f.divided_by(f.content()));
}

std::vector<Poly> coefficients_in(const Poly& f, std::size_t var) {
    Univariate u(f.degree_in(var) + 1, Poly(f.vars()));
    std::vector<std::vector<Term>> buckets(u.size());
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        unsigned e = m[var];
        m.set(var, 0);
        buckets[e].push_back({m, t.coeff});
    }
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = Poly::from_terms(f.vars(), std::move(buckets[i]));
    trim(u);
    return u;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (!same_vars(a.vars(), b.vars())) throw std::invalid_argument("mismatched ambient variables");
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);
    const Vars& vars = a.vars();
    if (a.is_constant() || b.is_constant()) return Poly(vars, integer_gcd(a.content(), b.content()));

    std::size_t var = 0;
    while (!involves(a, var) && !involves(b, var)) ++var;
    if (!involves(a, var)) return gcd(a, content_in(coefficients_in(b, var), vars));
    if (!involves(b, var)) return gcd(content_in(coefficients_in(a, var), vars), b);

    Univariate ua = coefficients_in(a, var);
    Univariate ub = coefficients_in(b, var);
    Poly ca = content_in(ua, vars);
    Poly cb = content_in(ub, vars);
    Poly common = gcd(ca, cb);
    ua = divide_all(ua, ca);
    ub = divide_all(ub, cb);
    if (ua.size() < ub.size()) std::swap(ua, ub);

    // Primitive remainder sequence.
    for (;;) {
        Univariate r = pseudo_remainder(ua, ub);
        if (r.empty()) break;
        if (r.size() == 1) {
            ub = {Poly(vars, 1)};
            break;
        }
        ua = std::move(ub);
        ub = divide_all(r, content_in(r, vars));
    }
    Poly g = from_coefficients(ub, vars, var);
    return normalize_sign(g * common);
}

}  // namespace tc
