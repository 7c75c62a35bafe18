#pragma once

#include <vector>

#include "tc/poly.hpp"

namespace tc {

/// Greatest common divisor over Z[x], normalized so the leading coefficient
/// is positive. Throws std::domain_error when both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);

/// Sign-normalize: flip so the leading coefficient is positive.
Poly normalize_sign(const Poly& f);

/// f divided by its integer content, sign-normalized.
Poly primitive_part(const Poly& f);

/// Coefficients of f viewed as a polynomial in `var`; entry i multiplies var^i.
std::vector<Poly> coefficients_in(const Poly& f, std::size_t var);

}  // namespace tc
