#include "tc/oracle.hpp"

#include <algorithm>

namespace tc {

Scaled make_scaled(Poly num, unsigned k, unsigned p) {
    if (num.is_zero()) return {std::move(num), 0};
    const Integer P(p);
    while (k > 0 && num.divisible_by(P)) {
        num = num.divided_by(P);
        --k;
    }
    return {std::move(num), k};
}

MulMatrix multiplication_matrix(const ClosureElement& xi) {
    const Tower& ctx = xi.ctx();
    MulMatrix m;
    m.p = ctx->p();
    m.n = ctx->rank();
    m.entries.resize(m.n * m.n);
    TowerElement a = xi.num().to(Basis::Standard);
    for (std::size_t j = 0; j < m.n; ++j) {
        TowerElement col = mul_normal_form(a, TowerElement::basis_vector(ctx, j, Basis::Standard));
        for (std::size_t i = 0; i < m.n; ++i) m.entries[i * m.n + j] = make_scaled(col[i], xi.k(), m.p);
    }
    return m;
}

namespace {

void add_product(Poly& acc, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return;
    acc += a * b;
}

}  // namespace

std::vector<Poly> berkowitz(const std::vector<Poly>& a, std::size_t n) {
    if (n == 0) return {};
    const Vars& vars = a[0].vars();
    auto at = [&](std::size_t i, std::size_t j) -> const Poly& { return a[i * n + j]; };
    std::vector<Poly> vect{Poly(vars, 1), -at(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // Leading r×r block M, row R = a[r][0..r), column C = a[0..r)[r].
        std::vector<Poly> q(r + 2, Poly(vars));
        q[0] = Poly(vars, 1);
        q[1] = -at(r, r);
        std::vector<Poly> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = at(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            if (k > 0) {
                std::vector<Poly> w(r, Poly(vars));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t l = 0; l < r; ++l) add_product(w[i], at(i, l), v[l]);
                v = std::move(w);
            }
            Poly s(vars);
            for (std::size_t l = 0; l < r; ++l) add_product(s, at(r, l), v[l]);
            q[k + 2] = -s;
        }
        std::vector<Poly> next(r + 2, Poly(vars));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) add_product(next[i], q[i - j], vect[j]);
        vect = std::move(next);
    }
    return vect;
}

std::vector<Scaled> charpoly(const MulMatrix& m) {
    unsigned big = 0;
    for (const auto& e : m.entries) big = std::max(big, e.k);
    std::vector<Poly> b;
    b.reserve(m.entries.size());
    for (const auto& e : m.entries) b.push_back(e.num * ipow(Integer(m.p), big - e.k));
    std::vector<Poly> c = berkowitz(b, m.n);
    std::vector<Scaled> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(make_scaled(std::move(c[i]), big * i, m.p));
    return out;
}

bool is_integral(const ClosureElement& xi) {
    if (xi.k() == 0) return true;
    auto cp = charpoly(multiplication_matrix(xi));
    return std::all_of(cp.begin(), cp.end(), [](const Scaled& s) { return s.k == 0; });
}

ClosureElement evaluate_charpoly(const std::vector<Scaled>& cp, const ClosureElement& xi) {
    const Tower& ctx = xi.ctx();
    ClosureElement acc{TowerElement(ctx)};
    for (const auto& c : cp) acc = acc * xi + ClosureElement(TowerElement::constant(ctx, c.num), c.k);
    return acc;
}

namespace {

void monomials_up_to(std::size_t nvars, unsigned deg, std::vector<Monomial>& out) {
    Monomial m(nvars);
    std::vector<unsigned> e(nvars, 0);
    // Odometer over exponent vectors with total degree ≤ deg.
    while (true) {
        unsigned total = 0;
        for (unsigned x : e) total += x;
        if (total <= deg) {
            for (std::size_t i = 0; i < nvars; ++i) m.set(i, e[i]);
            out.push_back(m);
        }
        std::size_t i = 0;
        while (i < nvars && e[i] == deg) e[i++] = 0;
        if (i == nvars) break;
        ++e[i];
    }
}

Poly random_poly(const Vars& vars, std::mt19937_64& rng, long max_coeff, unsigned max_degree) {
    std::vector<Monomial> monos;
    monomials_up_to(vars->size(), max_degree, monos);
    std::uniform_int_distribution<long> coeff(-max_coeff, max_coeff);
    std::bernoulli_distribution keep(0.5);
    std::vector<Term> terms;
    for (const auto& m : monos)
        if (keep(rng)) terms.push_back({m, Integer(coeff(rng))});
    Poly out = Poly::from_terms(vars, std::move(terms));
    if (out.is_zero()) {
        long c = coeff(rng);
        out = Poly(vars, c == 0 ? 1 : c);
    }
    return out;
}

}  // namespace

TowerElement random_tower_element(const Tower& ctx, std::mt19937_64& rng, const RandomElementOptions& opts) {
    TowerElement x(ctx);
    std::uniform_int_distribution<std::size_t> pick(0, ctx->rank() - 1);
    std::uniform_int_distribution<unsigned> count(1, std::max(1u, opts.max_terms));
    for (unsigned t = count(rng); t > 0; --t) x.set(pick(rng), random_poly(ctx->vars(), rng, opts.max_coeff, opts.max_degree));
    return x;
}

CrosscheckReport membership_crosscheck(const VBasis& basis, std::size_t sample_count, std::uint64_t seed) {
    const Tower& ctx = basis.ctx();
    const unsigned p = ctx->p();
    std::mt19937_64 rng(seed);

    std::vector<ClosureElement> samples;
    for (std::size_t pos = 0; pos < basis.size() && samples.size() < sample_count; ++pos)
        samples.push_back(basis.element(pos));
    if (samples.size() < sample_count) samples.push_back(ClosureElement(TowerElement::constant(ctx, 1), 1));

    std::uniform_int_distribution<unsigned> kdist(0, static_cast<unsigned>(ctx->r()) + 1);
    std::uniform_int_distribution<std::size_t> posdist(0, basis.size() - 1);
    std::uniform_int_distribution<unsigned> nterm(1, 3);
    auto random_combination = [&]() {
        VCoords c{std::vector<Poly>(ctx->rank(), ctx->zero())};
        for (unsigned t = nterm(rng); t > 0; --t)
            c.coeff[basis.entries()[posdist(rng)].index] = random_poly(ctx->vars(), rng, 3, 1);
        return from_v(basis, c);
    };
    for (std::size_t i = 0; samples.size() < sample_count; ++i) {
        switch (i % 3) {
            case 0:
                samples.push_back(ClosureElement(random_tower_element(ctx, rng), kdist(rng)));
                break;
            case 1:
                samples.push_back(random_combination());
                break;
            default: {
                const VBasisEntry& e = basis.entries()[posdist(rng)];
                std::uniform_int_distribution<long> unit(1, static_cast<long>(p) - 1);
                TowerElement m = TowerElement::basis_vector(ctx, e.index, Basis::Shifted) * Integer(unit(rng));
                samples.push_back(random_combination() + ClosureElement(m, e.k + 1));
            }
        }
    }

    CrosscheckReport rep;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ClosureElement& xi = samples[i];
        Reduction red = reduce_to_v(basis, xi);
        bool reduces = reduced(red);
        bool integral = is_integral(xi);
        ++rep.samples;
        if (integral) ++rep.integral;
        if (reduces != integral) {
            Disagreement d{i, xi.to_string(), reduces, integral, ""};
            if (auto* w = std::get_if<NotInModule>(&red)) d.witness = w->to_string(basis);
            rep.disagreements.push_back(std::move(d));
        }
    }
    return rep;
}

std::vector<SharpnessCheck> sharpness_checks(const VBasis& basis) {
    const Tower& ctx = basis.ctx();
    std::vector<SharpnessCheck> out;
    for (std::size_t pos = 0; pos < basis.size(); ++pos) {
        const VBasisEntry& e = basis.entries()[pos];
        if (e.k >= ctx->r()) continue;
        ClosureElement x(TowerElement::basis_vector(ctx, e.index, Basis::Shifted), e.k + 1);
        out.push_back({pos, x, is_integral(x)});
    }
    return out;
}

}  // namespace tc
