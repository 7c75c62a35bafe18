#include "tc/tower.hpp"

#include <sstream>

#include "tc/transforms.hpp"

namespace tc {

std::string_view hypothesis_name(Hypothesis h) {
    switch (h) {
        case Hypothesis::InvalidPrime: return "p is not prime";
        case Hypothesis::NotPthPowerModP2: return "not a p-th power mod p^2";
        case Hypothesis::NotSquareFree: return "not square-free";
        case Hypothesis::PDividesF: return "p divides a radicand";
        case Hypothesis::PDividesD: return "p divides the unit degree d";
        case Hypothesis::NotCoprime: return "not pairwise coprime";
        case Hypothesis::DisjointBlock: return "disjoint block not linearly disjoint mod p";
        case Hypothesis::SharedVariableFactor: return "variable factor shared by two radicands";
        case Hypothesis::InvalidInput: return "invalid input";
    }
    return "unknown";
}

HypothesisError::HypothesisError(Hypothesis which, const std::string& detail)
    : std::runtime_error(std::string(hypothesis_name(which)) + (detail.empty() ? "" : ": " + detail)),
      which_(which) {}

// ---------------------------------------------------------------- TowerCtx

TowerCtx::TowerCtx(unsigned p, Vars vars, std::vector<Radicand> radicands, std::vector<Poly> block)
    : p_(p), vars_(std::move(vars)), radicands_(std::move(radicands)), block_(std::move(block)) {
    const std::size_t n_axes = axes();
    if (n_axes > 16) throw std::length_error("too many tower axes");
    stride_.resize(n_axes);
    for (std::size_t a = 0; a < n_axes; ++a) {
        stride_[a] = rank_;
        rank_ *= p_;
    }
    mask_products_.assign(std::size_t{1} << n_axes, Poly(vars_, 1));
    for (std::size_t mask = 1; mask < mask_products_.size(); ++mask) {
        std::size_t low = 0;
        while (!((mask >> low) & 1u)) ++low;
        mask_products_[mask] = mask_products_[mask & (mask - 1)] * reduction(low);
    }
    // Binomial change-of-basis tables on the ω axes.
    for (const auto& rad : radicands_) {
        std::vector<Poly> hpow{Poly(vars_, 1)};
        for (unsigned e = 1; e < p_; ++e) hpow.push_back(hpow.back() * rad.h);
        std::vector<Poly> fwd(p_ * p_, Poly(vars_)), back(p_ * p_, Poly(vars_));
        for (unsigned j = 0; j < p_; ++j)
            for (unsigned m = 0; m <= j; ++m) {
                Integer c = binomial(j, m);
                fwd[j * p_ + m] = hpow[j - m] * c;
                back[j * p_ + m] = hpow[j - m] * ((j - m) % 2 ? Integer(-c) : c);
            }
        to_shifted_.push_back(std::move(fwd));
        to_standard_.push_back(std::move(back));
    }
}

std::size_t TowerCtx::index_of(std::span<const unsigned> exps) const {
    if (exps.size() != axes()) throw std::invalid_argument("exponent vector length mismatch");
    std::size_t idx = 0;
    for (std::size_t a = 0; a < exps.size(); ++a) {
        if (exps[a] >= p_) throw std::out_of_range("exponent not below p");
        idx += exps[a] * stride_[a];
    }
    return idx;
}

std::vector<unsigned> TowerCtx::exponents_of(std::size_t idx) const {
    std::vector<unsigned> e(axes());
    for (std::size_t a = 0; a < e.size(); ++a) e[a] = exponent(idx, a);
    return e;
}

unsigned TowerCtx::omega_degree(std::size_t idx) const {
    unsigned s = 0;
    for (std::size_t a = 0; a < r(); ++a) s += exponent(idx, a);
    return s;
}

const Poly& TowerCtx::reduction(std::size_t axis) const {
    return axis < r() ? radicands_[axis].f : block_.at(axis - r());
}

// ---------------------------------------------------------------- make_tower

namespace {

void check_ring(const TowerSpec& spec) {
    if (!spec.vars) throw HypothesisError(Hypothesis::InvalidInput, "no ambient ring");
    for (const auto& rs : spec.radicands)
        if (!same_vars(rs.f.vars(), spec.vars))
            throw HypothesisError(Hypothesis::InvalidInput, "radicand outside the ambient ring");
    for (const auto& g : spec.disjoint_block)
        if (!same_vars(g.vars(), spec.vars))
            throw HypothesisError(Hypothesis::InvalidInput, "disjoint element outside the ambient ring");
}

std::string label(const char* what, std::size_t i, const Poly& f) {
    std::ostringstream os;
    os << what << (i + 1) << " = " << f;
    return os.str();
}

Radicand certify(const RadicandSpec& rs, std::size_t i, unsigned p) {
    if (rs.f.is_zero()) throw HypothesisError(Hypothesis::InvalidInput, label("f", i, rs.f) + " is zero");
    if (rs.cert) {
        if (!certifies(*rs.cert, rs.f, p))
            throw HypothesisError(Hypothesis::NotPthPowerModP2,
                                  label("f", i, rs.f) + ": supplied (h, g) does not satisfy f = h^p + p^2 g");
        return {rs.f, rs.cert->h, rs.cert->g, rs.d};
    }
    auto cert = is_pth_power_mod_p2(rs.f, p);
    if (!cert) throw HypothesisError(Hypothesis::NotPthPowerModP2, label("f", i, rs.f));
    return {rs.f, std::move(cert->h), std::move(cert->g), rs.d};
}

}  // namespace

Tower make_tower_unchecked(const TowerSpec& spec) {
    if (!is_prime(spec.p)) throw HypothesisError(Hypothesis::InvalidPrime, std::to_string(spec.p));
    check_ring(spec);
    std::vector<Radicand> rads;
    for (std::size_t i = 0; i < spec.radicands.size(); ++i) rads.push_back(certify(spec.radicands[i], i, spec.p));
    return std::make_shared<const TowerCtx>(spec.p, spec.vars, std::move(rads), spec.disjoint_block);
}

Tower make_tower(const TowerSpec& spec) {
    if (!is_prime(spec.p)) throw HypothesisError(Hypothesis::InvalidPrime, std::to_string(spec.p));
    check_ring(spec);
    const unsigned p = spec.p;
    std::vector<Radicand> rads;
    for (std::size_t i = 0; i < spec.radicands.size(); ++i) {
        const RadicandSpec& rs = spec.radicands[i];
        Radicand rad = certify(rs, i, p);
        if (!is_square_free(rs.f)) throw HypothesisError(Hypothesis::NotSquareFree, label("f", i, rs.f));
        if (rs.f.divisible_by(Integer(p))) throw HypothesisError(Hypothesis::PDividesF, label("f", i, rs.f));
        if (rs.d == 0 || rs.d % p == 0)
            throw HypothesisError(Hypothesis::PDividesD, label("f", i, rs.f) + ", d = " + std::to_string(rs.d));
        rads.push_back(std::move(rad));
    }
    for (std::size_t j = 0; j < spec.disjoint_block.size(); ++j) {
        const Poly& g = spec.disjoint_block[j];
        if (g.is_zero() || !is_square_free(g)) throw HypothesisError(Hypothesis::NotSquareFree, label("g", j, g));
    }
    std::vector<Poly> all;
    for (const auto& rs : spec.radicands) all.push_back(rs.f);
    for (const auto& g : spec.disjoint_block) all.push_back(g);
    if (auto pair = first_common_factor(all)) {
        std::ostringstream os;
        os << "entries " << pair->first + 1 << " and " << pair->second + 1 << " share a factor";
        throw HypothesisError(Hypothesis::NotCoprime, os.str());
    }
    if (!spec.disjoint_block.empty()) {
        DisjointnessResult res = check_linear_disjointness(spec.disjoint_block, p);
        if (!res.disjoint) {
            std::ostringstream os;
            os << "product with exponents (";
            for (std::size_t k = 0; k < res.witness.size(); ++k) os << (k ? "," : "") << res.witness[k];
            os << ") is a p-th power mod p";
            throw HypothesisError(Hypothesis::DisjointBlock, os.str());
        }
    }
    return std::make_shared<const TowerCtx>(p, spec.vars, std::move(rads), spec.disjoint_block);
}

// ---------------------------------------------------------------- TowerElement

TowerElement::TowerElement(Tower ctx, Basis basis)
    : ctx_(std::move(ctx)), basis_(basis), coords_(ctx_->rank(), ctx_->zero()) {}

TowerElement TowerElement::constant(const Tower& ctx, const Poly& c) {
    TowerElement e(ctx);
    e.coords_[0] = c;
    return e;
}

TowerElement TowerElement::omega(const Tower& ctx, std::size_t i) {
    TowerElement e(ctx);
    if (i >= ctx->r()) throw std::out_of_range("omega index");
    e.coords_[ctx->stride(i)] = ctx->constant(1);
    return e;
}

TowerElement TowerElement::zeta(const Tower& ctx, std::size_t j) {
    TowerElement e(ctx);
    if (j >= ctx->t()) throw std::out_of_range("zeta index");
    e.coords_[ctx->stride(ctx->r() + j)] = ctx->constant(1);
    return e;
}

TowerElement TowerElement::omega_shift(const Tower& ctx, std::size_t i) {
    TowerElement e = omega(ctx, i);
    e.coords_[0] = -ctx->radicand(i).h;
    return e;
}

TowerElement TowerElement::basis_vector(const Tower& ctx, std::size_t idx, Basis basis) {
    TowerElement e(ctx, basis);
    e.coords_.at(idx) = ctx->constant(1);
    return e;
}

void TowerElement::set(std::size_t idx, Poly c) {
    if (!same_vars(c.vars(), ctx_->vars())) throw std::invalid_argument("coefficient outside the base ring");
    coords_.at(idx) = std::move(c);
}

void TowerElement::check_ctx(const TowerElement& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("tower context mismatch");
}

TowerElement change_basis(const TowerElement& a, Basis target) {
    if (a.basis() == target) return a;
    const Tower& ctx = a.ctx();
    std::vector<Poly> cur = a.coords();
    for (std::size_t axis = 0; axis < ctx->r(); ++axis) {
        std::vector<Poly> next(cur.size(), ctx->zero());
        const std::size_t stride = ctx->stride(axis);
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            if (cur[idx].is_zero()) continue;
            const unsigned j = ctx->exponent(idx, axis);
            const std::size_t base = idx - j * stride;
            for (unsigned m = 0; m <= j; ++m) {
                const Poly& c = target == Basis::Shifted ? ctx->to_shifted(axis, j, m) : ctx->to_standard(axis, j, m);
                if (!c.is_zero()) next[base + m * stride] += cur[idx] * c;
            }
        }
        cur = std::move(next);
    }
    TowerElement out(ctx, target);
    for (std::size_t idx = 0; idx < cur.size(); ++idx) out.set(idx, std::move(cur[idx]));
    return out;
}

TowerElement TowerElement::to(Basis target) const { return change_basis(*this, target); }

bool TowerElement::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

bool TowerElement::operator==(const TowerElement& o) const {
    check_ctx(o);
    if (basis_ != o.basis_) return *this == o.to(basis_);
    return coords_ == o.coords_;
}

TowerElement TowerElement::operator-() const {
    TowerElement r(*this);
    for (auto& c : r.coords_) c = -c;
    return r;
}

TowerElement& TowerElement::operator+=(const TowerElement& o) {
    check_ctx(o);
    if (o.basis_ != basis_) return *this += o.to(basis_);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!o.coords_[i].is_zero()) coords_[i] += o.coords_[i];
    return *this;
}

TowerElement& TowerElement::operator-=(const TowerElement& o) { return *this += -o; }

TowerElement& TowerElement::operator*=(const Poly& c) {
    for (auto& x : coords_)
        if (!x.is_zero()) x *= c;
    return *this;
}

TowerElement& TowerElement::operator*=(const Integer& c) {
    for (auto& x : coords_) x *= c;
    return *this;
}

TowerElement mul_normal_form(const TowerElement& a, const TowerElement& b) {
    if (a.ctx() != b.ctx()) throw std::invalid_argument("tower context mismatch");
    if (a.basis() != Basis::Standard || b.basis() != Basis::Standard)
        throw std::invalid_argument("mul_normal_form expects standard coordinates");
    const Tower& ctx = a.ctx();
    const unsigned p = ctx->p();
    const std::size_t n_axes = ctx->axes();
    const std::size_t n_masks = std::size_t{1} << n_axes;
    // acc[target * n_masks + mask] collects products whose overflow set is `mask`.
    std::vector<Poly> acc;
    std::vector<std::size_t> nz_a, nz_b;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) nz_a.push_back(i);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (!b[j].is_zero()) nz_b.push_back(j);
    TowerElement out(ctx);
    if (nz_a.empty() || nz_b.empty()) return out;
    acc.assign(ctx->rank() * n_masks, ctx->zero());
    std::vector<bool> used(acc.size(), false);
    for (std::size_t i : nz_a)
        for (std::size_t j : nz_b) {
            std::size_t target = 0, mask = 0;
            for (std::size_t ax = 0; ax < n_axes; ++ax) {
                unsigned e = ctx->exponent(i, ax) + ctx->exponent(j, ax);
                if (e >= p) {
                    e -= p;
                    mask |= std::size_t{1} << ax;
                }
                target += e * ctx->stride(ax);
            }
            std::size_t slot = target * n_masks + mask;
            acc[slot] += a[i] * b[j];
            used[slot] = true;
        }
    std::vector<Poly> coords(ctx->rank(), ctx->zero());
    for (std::size_t slot = 0; slot < acc.size(); ++slot) {
        if (!used[slot] || acc[slot].is_zero()) continue;
        std::size_t mask = slot % n_masks;
        std::size_t target = slot / n_masks;
        coords[target] += mask ? acc[slot] * ctx->reduction_product(mask) : acc[slot];
    }
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero()) out.set(k, std::move(coords[k]));
    return out;
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    TowerElement prod = mul_normal_form(a.to(Basis::Standard), b.to(Basis::Standard));
    return prod.to(a.basis());
}

TowerElement TowerElement::pow(unsigned e) const {
    TowerElement result = constant(ctx_, 1).to(basis_);
    TowerElement base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

bool TowerElement::divisible_by(const Integer& d) const {
    for (const auto& c : coords_)
        if (!c.divisible_by(d)) return false;
    return true;
}

TowerElement TowerElement::divided_by(const Integer& d) const {
    TowerElement r(*this);
    for (auto& c : r.coords_) c = c.divided_by(d);
    return r;
}

}  // namespace tc
