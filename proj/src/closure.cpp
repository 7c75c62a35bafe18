#include "tc/closure.hpp"

#include <algorithm>
#include <sstream>

namespace tc {

namespace {

Integer p_power(unsigned p, unsigned e) { return ipow(Integer(p), e); }

Poly as_poly(const TowerElement& x) {
    const TowerCtx& ctx = *x.ctx();
    TowerElement s = x.to(Basis::Standard);
    Vars ev = element_ring(ctx);
    const std::size_t nbase = ctx.vars()->size();
    std::vector<Term> terms;
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        for (const auto& t : s[idx].terms()) {
            Monomial m(ev->size());
            for (std::size_t v = 0; v < nbase; ++v) m.set(v, t.mono[v]);
            for (std::size_t a = 0; a < ctx.axes(); ++a) m.set(nbase + a, ctx.exponent(idx, a));
            terms.push_back({m, t.coeff});
        }
    }
    return Poly::from_terms(ev, std::move(terms));
}

std::string paren_if_needed(const Poly& h) {
    std::string s = h.to_string();
    if (h.size() <= 1 && (h.is_zero() || h.leading().coeff > 0)) return s;
    return "(" + s + ")";
}

}  // namespace

Vars element_ring(const TowerCtx& ctx) {
    std::vector<std::string> names = ctx.vars()->names;
    for (std::size_t i = 0; i < ctx.r(); ++i) names.push_back("w" + std::to_string(i + 1));
    for (std::size_t j = 0; j < ctx.t(); ++j) names.push_back("z" + std::to_string(j + 1));
    return make_vars(std::move(names));
}

// ---------------------------------------------------------------- ClosureElement

ClosureElement::ClosureElement(TowerElement num, unsigned k) : num_(std::move(num)), k_(k) { normalize(); }

ClosureElement ClosureElement::constant(const Tower& ctx, long c) {
    return ClosureElement(TowerElement::constant(ctx, c));
}

ClosureElement ClosureElement::constant(const Tower& ctx, const Poly& c) {
    return ClosureElement(TowerElement::constant(ctx, c));
}

void ClosureElement::normalize() {
    if (num_.is_zero()) {
        k_ = 0;
        return;
    }
    const Integer p(ctx()->p());
    while (k_ > 0 && num_.divisible_by(p)) {
        num_ = num_.divided_by(p);
        --k_;
    }
}

bool ClosureElement::operator==(const ClosureElement& o) const { return k_ == o.k_ && num_ == o.num_; }

ClosureElement operator+(const ClosureElement& a, const ClosureElement& b) {
    const unsigned p = a.ctx()->p();
    if (a.k_ == b.k_) return ClosureElement(a.num_ + b.num_, a.k_);
    if (a.k_ > b.k_) return ClosureElement(a.num_ + b.num_ * p_power(p, a.k_ - b.k_), a.k_);
    return ClosureElement(a.num_ * p_power(p, b.k_ - a.k_) + b.num_, b.k_);
}

ClosureElement operator*(const ClosureElement& a, const ClosureElement& b) {
    return ClosureElement(a.num_ * b.num_, a.k_ + b.k_);
}

ClosureElement ClosureElement::pow(unsigned e) const { return ClosureElement(num_.pow(e), k_ * e); }

std::string ClosureElement::to_string() const {
    return "p^-" + std::to_string(k_) + " * (" + as_poly(num_).to_string() + ")";
}

// ---------------------------------------------------------------- C'

Poly CPrime::evaluate(const Poly& w) const {
    Poly acc(w.vars());
    for (std::size_t m = coeffs.size(); m-- > 0;) acc = acc * w + coeffs[m];
    return acc;
}

CPrime c_prime(const Tower& ctx, std::size_t i) {
    const unsigned p = ctx->p();
    if (p < 3) throw std::invalid_argument("c_prime requires p >= 3");
    const Poly& h = ctx->radicand(i).h;
    const Integer P(p);

    // N(W) = (W^p - h^p) - (W - h)^p = -Σ_{m=1}^{p-1} C(p,m) (-h)^{p-m} W^m.
    std::vector<Poly> hpow{ctx->constant(1)};
    for (unsigned e = 1; e <= p; ++e) hpow.push_back(hpow.back() * h);
    std::vector<Poly> numer(p + 1, ctx->zero());
    for (unsigned m = 1; m < p; ++m) {
        Integer c = binomial(p, m);
        if ((p - m) % 2 == 0) c = -c;
        numer[m] = hpow[p - m] * c;
    }

    // Synthetic division by (W - h).
    std::vector<Poly> quot(p, ctx->zero());
    Poly carry = ctx->zero();
    for (unsigned m = p; m-- > 1;) {
        carry = numer[m] + carry * h;
        quot[m - 1] = carry;
    }
    Poly rem = numer[0] + carry * h;
    if (!rem.is_zero()) throw VerificationError("C is not divisible by W - h");

    CPrime cp;
    cp.owner = i;
    for (unsigned m = 0; m + 1 < p; ++m) {
        if (!quot[m].divisible_by(P)) throw VerificationError("C / (W - h) is not divisible by p");
        cp.coeffs.push_back(quot[m].divided_by(P));
    }
    while (!cp.coeffs.empty() && cp.coeffs.back().is_zero()) cp.coeffs.pop_back();

    // p (W - h) C' must reproduce N exactly.
    for (unsigned m = 0; m <= p; ++m) {
        Poly lhs = ctx->zero();
        if (m >= 1 && m - 1 < cp.coeffs.size()) lhs += cp.coeffs[m - 1];
        if (m < cp.coeffs.size()) lhs -= cp.coeffs[m] * h;
        if (!(lhs * P == numer[m])) throw VerificationError("p (W - h) C' != (W^p - h^p) - (W - h)^p");
    }
    if (!(cp.evaluate(h) - hpow[p - 1]).divisible_by(P)) throw VerificationError("C'(h) is not h^{p-1} mod p");

    cp.image = TowerElement(ctx);
    for (unsigned m = 0; m < cp.coeffs.size(); ++m)
        if (!cp.coeffs[m].is_zero()) cp.image.set(m * ctx->stride(i), cp.coeffs[m]);
    return cp;
}

Poly universal_c_prime(unsigned p) {
    Vars v = make_vars({"W", "h"});
    Poly W = Poly::variable(v, 0);
    Poly h = Poly::variable(v, 1);
    Poly numer = (W.pow(p) - h.pow(p)) - (W - h).pow(p);
    auto q = exact_divide(numer, (W - h) * Integer(p));
    if (!q) throw VerificationError("universal C' division failed");
    return *q;
}

// ---------------------------------------------------------------- τ, η

ClosureElement tau(const Tower& ctx, std::size_t i) {
    const unsigned p = ctx->p();
    const Radicand& rad = ctx->radicand(i);
    TowerElement num(ctx);
    Poly hp = ctx->constant(1);
    for (unsigned j = p; j-- > 0;) {
        num.set(j * ctx->stride(i), hp);
        hp *= rad.h;
    }
    ClosureElement t(num, 1);
    ClosureElement lhs = ClosureElement(TowerElement::omega_shift(ctx, i)) * t;
    if (!(lhs == ClosureElement::constant(ctx, rad.g * Integer(p))))
        throw VerificationError("(w - h) * tau != p g");
    return t;
}

ClosureElement eta(const Tower& ctx, std::size_t i, std::size_t j) {
    const unsigned p = ctx->p();
    if (p < 3) throw std::invalid_argument("eta requires p >= 3");
    if (i >= j || j >= ctx->r()) throw std::invalid_argument("eta requires i < j < r");
    std::vector<unsigned> e(ctx->axes(), 0);
    e[i] = p - 2;
    e[j] += 1;
    return ClosureElement(TowerElement::basis_vector(ctx, ctx->index_of(e), Basis::Shifted), 1);
}

ClosureElement eta_relation(const Tower& ctx, std::size_t i, std::size_t j) {
    const unsigned p = ctx->p();
    ClosureElement e = eta(ctx, i, j);
    ClosureElement ui = tau(ctx, i) - ClosureElement(c_prime(ctx, i).image);
    ClosureElement uj = tau(ctx, j) - ClosureElement(c_prime(ctx, j).image);
    return e.pow(p - 1) - ui.pow(p - 2) * uj;
}

// ---------------------------------------------------------------- VBasis

std::vector<std::size_t> grlex_order(const TowerCtx& ctx) {
    std::vector<std::size_t> idx(ctx.rank());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    const std::size_t r = ctx.r();
    auto key = [&](std::size_t a, std::size_t lo, std::size_t hi) {
        std::vector<unsigned> v;
        unsigned deg = 0;
        for (std::size_t ax = lo; ax < hi; ++ax) deg += ctx.exponent(a, ax);
        v.push_back(deg);
        for (std::size_t ax = lo; ax < hi; ++ax) v.push_back(ctx.exponent(a, ax));
        return v;
    };
    auto cmp_part = [&](std::size_t a, std::size_t b, std::size_t lo, std::size_t hi) {
        auto ka = key(a, lo, hi), kb = key(b, lo, hi);
        if (ka[0] != kb[0]) return ka[0] < kb[0] ? -1 : 1;
        for (std::size_t n = 1; n < ka.size(); ++n)
            if (ka[n] != kb[n]) return ka[n] > kb[n] ? -1 : 1;
        return 0;
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        int c = cmp_part(a, b, 0, r);
        if (c != 0) return c < 0;
        return cmp_part(a, b, r, ctx.axes()) < 0;
    });
    return idx;
}

VBasis::VBasis(Tower ctx, std::vector<VBasisEntry> entries)
    : ctx_(std::move(ctx)), entries_(std::move(entries)), levels_(ctx_->rank()), order_(grlex_order(*ctx_)) {
    for (const auto& e : entries_) {
        if (levels_.at(e.index)) throw std::invalid_argument("duplicate basis entry");
        levels_[e.index] = e.k;
    }
}

std::vector<std::size_t> VBasis::layer_sizes() const {
    std::vector<std::size_t> sizes;
    for (const auto& e : entries_) {
        if (sizes.size() <= e.k) sizes.resize(e.k + 1, 0);
        ++sizes[e.k];
    }
    return sizes;
}

ClosureElement VBasis::element(const VBasisEntry& e) const {
    return ClosureElement(TowerElement::basis_vector(ctx_, e.index, Basis::Shifted), e.k);
}

VBasis VBasis::without(std::size_t pos) const {
    std::vector<VBasisEntry> es = entries_;
    es.erase(es.begin() + static_cast<std::ptrdiff_t>(pos));
    return VBasis(ctx_, std::move(es));
}

VBasis VBasis::with_level(std::size_t pos, unsigned k) const {
    std::vector<VBasisEntry> es = entries_;
    es.at(pos).k = k;
    return VBasis(ctx_, std::move(es));
}

std::string VBasis::entry_string(const VBasisEntry& e) const {
    std::ostringstream os;
    os << "p^-" << e.k;
    bool any = false;
    for (std::size_t a = 0; a < e.exps.size(); ++a) {
        if (e.exps[a] == 0) continue;
        os << " * ";
        if (a < ctx_->r())
            os << "(w" << a + 1 << " - " << paren_if_needed(ctx_->radicand(a).h) << ")^" << e.exps[a];
        else
            os << "z" << a - ctx_->r() + 1 << "^" << e.exps[a];
        any = true;
    }
    if (!any) os << " * 1";
    return os.str();
}

std::string VBasis::serialize() const {
    std::string out;
    for (const auto& e : entries_) out += entry_string(e) + "\n";
    return out;
}

VBasis build_v_basis(const Tower& ctx) {
    const unsigned p = ctx->p();
    std::vector<VBasisEntry> entries;
    for (std::size_t idx : grlex_order(*ctx)) {
        unsigned k = ctx->omega_degree(idx) / (p - 1);
        entries.push_back({k, idx, ctx->exponents_of(idx)});
    }
    return VBasis(ctx, std::move(entries));
}

// ---------------------------------------------------------------- reduction

std::string NotInModule::to_string(const VBasis& basis) const {
    std::ostringstream os;
    os << "coordinate " << basis.entry_string({0, index, exps}).substr(6) << " has coefficient " << residual;
    if (needed == 0)
        os << " but the basis has no entry there";
    else
        os << ", not divisible by p^" << needed;
    return os.str();
}

Reduction reduce_to_v(const VBasis& basis, const ClosureElement& x) {
    const Tower& ctx = basis.ctx();
    if (x.ctx() != ctx) throw std::invalid_argument("tower context mismatch");
    const unsigned p = ctx->p();
    TowerElement s = x.num().to(Basis::Shifted);
    VCoords out{std::vector<Poly>(ctx->rank(), ctx->zero())};
    for (std::size_t idx : basis.order()) {
        const Poly& c = s[idx];
        if (c.is_zero()) continue;
        auto lvl = basis.level(idx);
        if (!lvl) return NotInModule{idx, ctx->exponents_of(idx), c, 0};
        if (x.k() > *lvl) {
            Integer d = p_power(p, x.k() - *lvl);
            if (!c.divisible_by(d)) return NotInModule{idx, ctx->exponents_of(idx), c, x.k() - *lvl};
            out.coeff[idx] = c.divided_by(d);
        } else {
            out.coeff[idx] = c * p_power(p, *lvl - x.k());
        }
    }
    return out;
}

ClosureElement from_v(const VBasis& basis, const VCoords& c) {
    const Tower& ctx = basis.ctx();
    unsigned kmax = 0;
    for (std::size_t idx = 0; idx < c.coeff.size(); ++idx) {
        if (c.coeff[idx].is_zero()) continue;
        auto lvl = basis.level(idx);
        if (!lvl) throw std::invalid_argument("coordinate outside the basis");
        kmax = std::max(kmax, *lvl);
    }
    TowerElement num(ctx, Basis::Shifted);
    for (std::size_t idx = 0; idx < c.coeff.size(); ++idx)
        if (!c.coeff[idx].is_zero()) num.set(idx, c.coeff[idx] * p_power(ctx->p(), kmax - *basis.level(idx)));
    return ClosureElement(num, kmax);
}

VCoords unit_vector(const VBasis& basis, std::size_t pos) {
    VCoords c{std::vector<Poly>(basis.ctx()->rank(), basis.ctx()->zero())};
    c.coeff[basis.entries().at(pos).index] = basis.ctx()->constant(1);
    return c;
}

Reduction mul_in_R(const VBasis& basis, const VCoords& a, const VCoords& b) {
    return reduce_to_v(basis, from_v(basis, a) * from_v(basis, b));
}

ClosureReport verify_closure(const VBasis& basis) {
    const Tower& ctx = basis.ctx();
    ClosureReport rep;
    std::vector<ClosureElement> elems;
    for (const auto& e : basis.entries()) elems.push_back(basis.element(e));

    auto check = [&](const ClosureElement& x, std::string what) {
        Reduction r = reduce_to_v(basis, x);
        if (auto* w = std::get_if<NotInModule>(&r)) rep.failures.push_back({std::move(what), *w});
    };

    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a; b < elems.size(); ++b) {
            ++rep.products_checked;
            check(elems[a] * elems[b], "product of [" + basis.entry_string(basis.entries()[a]) + "] and [" +
                                           basis.entry_string(basis.entries()[b]) + "]");
        }

    std::vector<std::pair<std::string, ClosureElement>> gens;
    for (std::size_t i = 0; i < ctx->r(); ++i)
        gens.emplace_back("(w" + std::to_string(i + 1) + " - h" + std::to_string(i + 1) + ")",
                          ClosureElement(TowerElement::omega_shift(ctx, i)));
    for (std::size_t j = 0; j < ctx->t(); ++j)
        gens.emplace_back("z" + std::to_string(j + 1), ClosureElement(TowerElement::zeta(ctx, j)));
    for (const auto& [name, g] : gens)
        for (std::size_t a = 0; a < elems.size(); ++a) {
            ++rep.module_checks;
            check(g * elems[a], name + " times [" + basis.entry_string(basis.entries()[a]) + "]");
        }

    ++rep.containment_checks;
    check(ClosureElement::constant(ctx, 1), "1");
    for (std::size_t i = 0; i < ctx->r(); ++i) {
        ++rep.containment_checks;
        check(ClosureElement(TowerElement::omega(ctx, i)), "w" + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < ctx->t(); ++j) {
        ++rep.containment_checks;
        check(ClosureElement(TowerElement::zeta(ctx, j)), "z" + std::to_string(j + 1));
    }
    return rep;
}

// ---------------------------------------------------------------- witnesses

bool WitnessReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const WitnessCheck& c) { return c.passed; });
}

WitnessReport integrality_witnesses(const Tower& ctx) {
    const unsigned p = ctx->p();
    const Integer P(p);
    WitnessReport rep;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    std::vector<std::optional<ClosureElement>> taus(ctx->r());
    std::vector<std::optional<CPrime>> cps(ctx->r());
    for (std::size_t i = 0; i < ctx->r(); ++i) {
        const Radicand& rad = ctx->radicand(i);
        const std::string tag = "[" + std::to_string(i + 1) + "] ";
        const std::string w = "w" + std::to_string(i + 1);
        TowerElement shift = TowerElement::omega_shift(ctx, i);

        TowerElement sum(ctx);
        Poly hp = ctx->constant(1);
        for (unsigned j = p; j-- > 0;) {
            sum.set(j * ctx->stride(i), hp);
            hp *= rad.h;
        }
        ClosureElement t(sum, 1);
        bool n_ok = ClosureElement(shift) * t == ClosureElement::constant(ctx, rad.g * P);
        if (n_ok) taus[i] = t;
        add(tag + "n(tau) = (" + w + " - h)tau - p g = 0", n_ok, "tau = " + t.to_string());
        add(tag + "m(tau) = p tau - (" + w + "^{p-1} + ... + h^{p-1}) = 0",
            t * ctx->constant(p) - ClosureElement(sum) == ClosureElement(TowerElement(ctx)), "");

        if (p == 2) {
            ClosureElement l0 = t * t - t * rad.h - ClosureElement::constant(ctx, rad.g);
            add(tag + "l0(tau) = tau^2 - h tau - g = 0", l0.is_zero(), "h = " + rad.h.to_string());
            ClosureElement lhs = ClosureElement(shift.pow(2) + shift * rad.h * Integer(2));
            add(tag + "(" + w + " - h)^2 + 2h(" + w + " - h) = 4g",
                lhs == ClosureElement::constant(ctx, rad.g * Integer(4)), "");
            continue;
        }

        try {
            cps[i] = c_prime(ctx, i);
            add(tag + "p(W - h)C' = (W^p - h^p) - (W - h)^p", true,
                "c' = " + ClosureElement(cps[i]->image).to_string());
        } catch (const VerificationError& e) {
            add(tag + "p(W - h)C' = (W^p - h^p) - (W - h)^p", false, e.what());
            continue;
        }
        const CPrime& cp = *cps[i];
        Poly at_h = cp.evaluate(rad.h);
        add(tag + "C'(h) = h^{p-1} mod p", (at_h - rad.h.pow(p - 1)).divisible_by(P),
            "C'(h) = " + at_h.to_string());
        add(tag + "C'(h) not in pS", !at_h.divisible_by(P), "");
        ClosureElement l = t * t - t * ClosureElement(cp.image) -
                           ClosureElement(shift.pow(p - 2)) * rad.g;
        add(tag + "l(tau) = tau^2 - c' tau - g(" + w + " - h)^{p-2} = 0", l.is_zero(), "");
        ClosureElement eq = ClosureElement(shift.pow(p) + cp.image * shift * P);
        add(tag + "(" + w + " - h)^p + p c'(" + w + " - h) = p^2 g",
            eq == ClosureElement::constant(ctx, rad.g * (P * P)), "");
    }
    if (p > 2) {
        for (std::size_t i = 0; i < ctx->r(); ++i)
            for (std::size_t j = i + 1; j < ctx->r(); ++j) {
                std::string name = "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   "] v(eta) = eta^{p-1} - (tau_i - c'_i)^{p-2}(tau_j - c'_j) = 0";
                if (!taus[i] || !taus[j] || !cps[i] || !cps[j]) {
                    add(name, false, "prerequisite identity failed");
                    continue;
                }
                ClosureElement e = eta(ctx, i, j);
                ClosureElement ui = *taus[i] - ClosureElement(cps[i]->image);
                ClosureElement uj = *taus[j] - ClosureElement(cps[j]->image);
                add(name, (e.pow(p - 1) - ui.pow(p - 2) * uj).is_zero(), "eta = " + e.to_string());
            }
    }
    return rep;
}

}  // namespace tc
