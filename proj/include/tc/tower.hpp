#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tc/errors.hpp"
#include "tc/poly.hpp"
#include "tc/predicates.hpp"

namespace tc {

struct RadicandSpec {
    Poly f;
    /// Optional (h, g); computed when absent, validated when present.
    std::optional<RadicandCertificate> cert;
    /// Unit part of the root degree n = p·d.
    unsigned d = 1;
};

struct TowerSpec {
    unsigned p = 0;
    Vars vars;
    std::vector<RadicandSpec> radicands;
    /// Elements adjoined by p-th roots that are linearly disjoint modulo p.
    std::vector<Poly> disjoint_block;
};

struct Radicand {
    Poly f;
    Poly h;
    Poly g;
    unsigned d = 1;
};

/// Frozen, validated data of A = S[ω_1..ω_r, ζ_1..ζ_t] with ω_i^p = f_i and
/// ζ_j^p = g_j. Coordinates are indexed by a mixed-radix exponent vector:
/// axes 0..r-1 carry ω, axes r..r+t-1 carry ζ.
class TowerCtx {
public:
    TowerCtx(unsigned p, Vars vars, std::vector<Radicand> radicands, std::vector<Poly> block);

    unsigned p() const { return p_; }
    const Vars& vars() const { return vars_; }
    std::size_t r() const { return radicands_.size(); }
    std::size_t t() const { return block_.size(); }
    std::size_t axes() const { return r() + t(); }
    std::size_t rank() const { return rank_; }
    const std::vector<Radicand>& radicands() const { return radicands_; }
    const Radicand& radicand(std::size_t i) const { return radicands_.at(i); }
    const std::vector<Poly>& disjoint_block() const { return block_; }

    std::size_t index_of(std::span<const unsigned> exps) const;
    std::vector<unsigned> exponents_of(std::size_t idx) const;
    unsigned exponent(std::size_t idx, std::size_t axis) const { return (idx / stride_[axis]) % p_; }
    std::size_t stride(std::size_t axis) const { return stride_[axis]; }
    /// Sum of the ω exponents (the ζ axes are excluded).
    unsigned omega_degree(std::size_t idx) const;

    /// What x^p reduces to on an axis: f_i or g_j.
    const Poly& reduction(std::size_t axis) const;
    /// Product of reductions for every axis set in `mask`.
    const Poly& reduction_product(std::size_t mask) const { return mask_products_[mask]; }

    /// Coefficient of the target power in the binomial change of basis on ω axis i.
    const Poly& to_shifted(std::size_t i, unsigned from, unsigned to) const {
        return to_shifted_[i][from * p_ + to];
    }
    const Poly& to_standard(std::size_t i, unsigned from, unsigned to) const {
        return to_standard_[i][from * p_ + to];
    }

    Poly zero() const { return Poly(vars_); }
    Poly constant(long c) const { return Poly(vars_, c); }

private:
    unsigned p_;
    Vars vars_;
    std::vector<Radicand> radicands_;
    std::vector<Poly> block_;
    std::size_t rank_ = 1;
    std::vector<std::size_t> stride_;
    std::vector<Poly> mask_products_;
    std::vector<std::vector<Poly>> to_shifted_;
    std::vector<std::vector<Poly>> to_standard_;
};

using Tower = std::shared_ptr<const TowerCtx>;

/// Validates every hypothesis of a class-one tower (plus the disjoint block)
/// and freezes a context; throws HypothesisError naming the first failure.
Tower make_tower(const TowerSpec& spec);

/// Only checks that certificates are exact; no square-free or coprimality
/// checks. For degenerate instances in tests and for intermediate rings.
Tower make_tower_unchecked(const TowerSpec& spec);

enum class Basis { Standard, Shifted };

/// Element of A in normal form: one S-coefficient per exponent vector with
/// every exponent below p. Standard coordinates use powers of ω_i; shifted
/// coordinates use powers of (ω_i - h_i). ζ axes are never shifted.
class TowerElement {
public:
    TowerElement() = default;
    explicit TowerElement(Tower ctx, Basis basis = Basis::Standard);

    static TowerElement constant(const Tower& ctx, const Poly& c);
    static TowerElement constant(const Tower& ctx, long c) { return constant(ctx, ctx->constant(c)); }
    static TowerElement omega(const Tower& ctx, std::size_t i);
    static TowerElement zeta(const Tower& ctx, std::size_t j);
    /// ω_i - h_i, returned in the standard basis.
    static TowerElement omega_shift(const Tower& ctx, std::size_t i);
    /// The basis vector `idx` of the given basis, returned in that basis.
    static TowerElement basis_vector(const Tower& ctx, std::size_t idx, Basis basis);

    const Tower& ctx() const { return ctx_; }
    Basis basis() const { return basis_; }
    std::size_t size() const { return coords_.size(); }
    const Poly& operator[](std::size_t idx) const { return coords_[idx]; }
    void set(std::size_t idx, Poly c);
    const std::vector<Poly>& coords() const { return coords_; }

    TowerElement to(Basis target) const;

    bool is_zero() const;
    bool operator==(const TowerElement& o) const;

    TowerElement operator-() const;
    TowerElement& operator+=(const TowerElement& o);
    TowerElement& operator-=(const TowerElement& o);
    TowerElement& operator*=(const Poly& c);
    TowerElement& operator*=(const Integer& c);
    friend TowerElement operator+(TowerElement a, const TowerElement& b) { return a += b; }
    friend TowerElement operator-(TowerElement a, const TowerElement& b) { return a -= b; }
    friend TowerElement operator*(TowerElement a, const Poly& c) { return a *= c; }
    friend TowerElement operator*(TowerElement a, const Integer& c) { return a *= c; }
    /// Normal-form product; the result uses the basis of the left operand.
    friend TowerElement operator*(const TowerElement& a, const TowerElement& b);

    TowerElement pow(unsigned e) const;

    /// Divisibility by an integer is coordinate-wise since A is S-free.
    bool divisible_by(const Integer& d) const;
    TowerElement divided_by(const Integer& d) const;

private:
    void check_ctx(const TowerElement& o) const;
    Tower ctx_;
    Basis basis_ = Basis::Standard;
    std::vector<Poly> coords_;
};

/// Product of two standard-basis elements, reducing ω_i^p → f_i and ζ_j^p → g_j.
TowerElement mul_normal_form(const TowerElement& a, const TowerElement& b);

TowerElement change_basis(const TowerElement& a, Basis target);

}  // namespace tc
