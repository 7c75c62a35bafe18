#pragma once

#include <optional>
#include <vector>

#include "tc/poly.hpp"

namespace tc {

/// Witness that f = h^p + p^2 g holds exactly.
struct RadicandCertificate {
    Poly h;
    Poly g;
};

/// True iff p is a (positive) prime.
bool is_prime(unsigned long p);

/// The h with h^p ≡ f (mod p), coefficients in [0, p). Frobenius is the
/// identity on F_p, so a root exists iff every surviving exponent is a
/// multiple of p.
std::optional<Poly> pth_root_mod_p(const Poly& f, unsigned p);

/// f ∈ S^{p∧p}: congruent to a p-th power modulo p.
inline bool is_pth_power_mod_p(const Poly& f, unsigned p) { return pth_root_mod_p(f, p).has_value(); }

/// f ∈ S^{p∧p²}: returns (h, g) with f = h^p + p^2 g. The test does not depend
/// on how the root mod p is lifted.
std::optional<RadicandCertificate> is_pth_power_mod_p2(const Poly& f, unsigned p);

/// Checks f = h^p + p^2 g exactly.
bool certifies(const RadicandCertificate& cert, const Poly& f, unsigned p);

/// Square-free integer content and a primitive part coprime to all of its
/// partial derivatives. Throws std::domain_error on zero.
bool is_square_free(const Poly& f);

/// All pairwise gcds are ±1. Throws std::domain_error if an entry is zero.
bool pairwise_coprime(const std::vector<Poly>& fs);

/// Indices (i, j) of the first non-coprime pair, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_common_factor(const std::vector<Poly>& fs);

/// Unit in the localization at (p, x): the constant coefficient survives mod p.
/// Non-constant elements such as X + 2 qualify.
bool is_local_unit(const Poly& u, unsigned p);

}  // namespace tc
