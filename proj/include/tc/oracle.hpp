#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tc/closure.hpp"

namespace tc {

/// num / p^k with k minimal.
struct Scaled {
    Poly num;
    unsigned k = 0;

    bool operator==(const Scaled& o) const { return k == o.k && num == o.num; }
};

Scaled make_scaled(Poly num, unsigned k, unsigned p);

/// Matrix of y ↦ ξ·y on the standard normal-form basis; column j is ξ·e_j.
struct MulMatrix {
    unsigned p = 0;
    std::size_t n = 0;
    std::vector<Scaled> entries;   ///< row-major

    const Scaled& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

MulMatrix multiplication_matrix(const ClosureElement& xi);

/// det(T·I - M); entry i is the coefficient of T^{n-i}, entry 0 is 1.
/// Division-free Berkowitz over the integral numerators, then rescaled.
std::vector<Scaled> charpoly(const MulMatrix& m);

/// Integer-matrix Berkowitz; exposed for tests.
std::vector<Poly> berkowitz(const std::vector<Poly>& a, std::size_t n);

/// All charpoly coefficients of multiplication by ξ lie in S.
bool is_integral(const ClosureElement& xi);

/// Σ c_i ξ^{n-i}; zero by Cayley–Hamilton.
ClosureElement evaluate_charpoly(const std::vector<Scaled>& cp, const ClosureElement& xi);

struct RandomElementOptions {
    long max_coeff = 3;
    unsigned max_degree = 1;      ///< total degree of each S-coefficient
    unsigned max_terms = 2;       ///< nonzero coordinates per element
};

/// Random element of A with few small coordinates in standard coordinates.
TowerElement random_tower_element(const Tower& ctx, std::mt19937_64& rng, const RandomElementOptions& opts = {});

struct Disagreement {
    std::size_t sample = 0;
    std::string element;
    bool reduces = false;
    bool integral = false;
    std::string witness;
};

struct CrosscheckReport {
    std::size_t samples = 0;
    std::size_t integral = 0;
    std::vector<Disagreement> disagreements;

    bool ok() const { return disagreements.empty(); }
};

/// Basis elements and p^{-1} first, then random samples until `sample_count`
/// is reached: p^{-k}a, random S-combinations of the basis, and integral
/// elements perturbed by p^{-(k+1)}·m.
CrosscheckReport membership_crosscheck(const VBasis& basis, std::size_t sample_count, std::uint64_t seed);

struct SharpnessCheck {
    std::size_t position = 0;   ///< entry position in the basis
    ClosureElement element;     ///< p^{-(k+1)} times the entry's shifted monomial
    bool integral = false;
};

/// For every entry with k < r, scale by one more power of p.
std::vector<SharpnessCheck> sharpness_checks(const VBasis& basis);

}  // namespace tc
