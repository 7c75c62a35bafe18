#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tc/tower.hpp"

namespace tc {

/// An element of the fraction field written p^{-k} · num with num ∈ A.
/// Canonical form keeps k minimal: either k = 0 or p does not divide num.
class ClosureElement {
public:
    ClosureElement() = default;
    explicit ClosureElement(TowerElement num, unsigned k = 0);

    static ClosureElement constant(const Tower& ctx, long c);
    static ClosureElement constant(const Tower& ctx, const Poly& c);

    unsigned k() const { return k_; }
    const TowerElement& num() const { return num_; }
    const Tower& ctx() const { return num_.ctx(); }
    bool is_zero() const { return num_.is_zero(); }
    bool operator==(const ClosureElement& o) const;

    ClosureElement operator-() const { return ClosureElement(-num_, k_); }
    friend ClosureElement operator+(const ClosureElement& a, const ClosureElement& b);
    friend ClosureElement operator-(const ClosureElement& a, const ClosureElement& b) { return a + (-b); }
    friend ClosureElement operator*(const ClosureElement& a, const ClosureElement& b);
    friend ClosureElement operator*(const ClosureElement& a, const Poly& c) {
        return ClosureElement(a.num_ * c, a.k_);
    }
    ClosureElement pow(unsigned e) const;

    std::string to_string() const;

private:
    void normalize();
    TowerElement num_;
    unsigned k_ = 0;
};

/// Ring in which elements of A print: base variables, then w1..wr for ω and
/// z1..zt for ζ.
Vars element_ring(const TowerCtx& ctx);

/// C'(W) = ((W^p - h^p) - (W - h)^p) / (p (W - h)) for radicand `owner`.
struct CPrime {
    std::size_t owner = 0;
    /// coeffs[m] multiplies W^m; degree at most p - 2.
    std::vector<Poly> coeffs;
    /// c'_i, the image W ↦ ω_i in A.
    TowerElement image;

    Poly evaluate(const Poly& w) const;
};

/// Builds C' and verifies both defining identities exactly. Requires p ≥ 3.
/// Throws VerificationError if an identity fails.
CPrime c_prime(const Tower& ctx, std::size_t i);

/// C' in Z[W, h] with h kept symbolic; ring variables are {W, h}.
Poly universal_c_prime(unsigned p);

/// τ_i = p^{-1} Σ_j ω_i^j h_i^{p-1-j}. Throws VerificationError unless
/// (ω_i - h_i) τ_i = p g_i.
ClosureElement tau(const Tower& ctx, std::size_t i);

/// η_ij = p^{-1} (ω_i - h_i)^{p-2} (ω_j - h_j) for i < j, p ≥ 3.
ClosureElement eta(const Tower& ctx, std::size_t i, std::size_t j);

/// v_ij(η_ij) = η_ij^{p-1} - (τ_i - c'_i)^{p-2}(τ_j - c'_j), read with ψ = τ.
ClosureElement eta_relation(const Tower& ctx, std::size_t i, std::size_t j);

struct VBasisEntry {
    unsigned k = 0;
    std::size_t index = 0;          ///< coordinate index in the tower
    std::vector<unsigned> exps;     ///< ω exponents, then ζ exponents
};

/// Basis p^{-k(j)} Π (ω_i - h_i)^{j_i} (Π ζ^e) with k(j) = ⌊Σ j_i / (p-1)⌋.
class VBasis {
public:
    VBasis(Tower ctx, std::vector<VBasisEntry> entries);

    const Tower& ctx() const { return ctx_; }
    const std::vector<VBasisEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    /// Denominator exponent for a tower coordinate, or nullopt if the basis
    /// has no entry there.
    std::optional<unsigned> level(std::size_t index) const { return levels_[index]; }
    /// Coordinate indices in graded-lex order on the exponent vectors.
    const std::vector<std::size_t>& order() const { return order_; }
    /// Number of entries per k.
    std::vector<std::size_t> layer_sizes() const;

    ClosureElement element(const VBasisEntry& e) const;
    ClosureElement element(std::size_t pos) const { return element(entries_.at(pos)); }

    /// Copy with the entry at `pos` removed.
    VBasis without(std::size_t pos) const;
    /// Copy with the entry at `pos` moved to level k.
    VBasis with_level(std::size_t pos, unsigned k) const;

    /// One line per entry: `p^-<k> * (w<i> - <h_i>)^<j_i> * z<j>^<e_j>`.
    std::string serialize() const;
    std::string entry_string(const VBasisEntry& e) const;

private:
    Tower ctx_;
    std::vector<VBasisEntry> entries_;
    std::vector<std::optional<unsigned>> levels_;
    std::vector<std::size_t> order_;
};

/// Tower coordinates ordered graded-lex: ω part first, ζ part as tiebreak.
std::vector<std::size_t> grlex_order(const TowerCtx& ctx);

VBasis build_v_basis(const Tower& ctx);

/// Coefficients over a VBasis, indexed by tower coordinate. Always in S.
struct VCoords {
    std::vector<Poly> coeff;
    bool operator==(const VCoords& o) const = default;
};

/// Witness that an element is not in the S-span of the basis.
struct NotInModule {
    std::size_t index = 0;
    std::vector<unsigned> exps;
    /// Shifted-basis numerator coefficient that failed to divide.
    Poly residual;
    /// Power of p the residual needed to be divisible by (0 if the basis has
    /// no entry at this coordinate).
    unsigned needed = 0;

    std::string to_string(const VBasis& basis) const;
};

using Reduction = std::variant<VCoords, NotInModule>;

inline bool reduced(const Reduction& r) { return std::holds_alternative<VCoords>(r); }

Reduction reduce_to_v(const VBasis& basis, const ClosureElement& x);
ClosureElement from_v(const VBasis& basis, const VCoords& c);
VCoords unit_vector(const VBasis& basis, std::size_t pos);
Reduction mul_in_R(const VBasis& basis, const VCoords& a, const VCoords& b);

struct ClosureFailure {
    std::string what;
    NotInModule witness;
};

struct ClosureReport {
    std::size_t products_checked = 0;
    std::size_t module_checks = 0;
    std::size_t containment_checks = 0;
    std::vector<ClosureFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// (a) every unordered product of basis entries, (b) (ω_j - h_j)·v and ζ_j·v
/// for every entry v, (c) 1, ω_i and ζ_j lie in the span.
ClosureReport verify_closure(const VBasis& basis);

struct WitnessCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct WitnessReport {
    std::vector<WitnessCheck> checks;
    bool ok() const;
};

/// Exact integrality identities per radicand and per pair of radicands.
WitnessReport integrality_witnesses(const Tower& ctx);

}  // namespace tc
