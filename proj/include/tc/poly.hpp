#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace tc {

using Integer = mpz_class;

/// Maximum number of ambient variables a polynomial ring may carry.
inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector over a fixed ambient variable list.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars);
    Monomial(std::initializer_list<unsigned> exps);
    static Monomial from_span(std::span<const unsigned> exps);

    std::size_t size() const { return n_; }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, unsigned v);
    unsigned degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const;
    /// True iff this divides o.
    bool divides(const Monomial& o) const;
    /// o / this; requires divides(o).
    Monomial quotient_of(const Monomial& o) const;

    bool operator==(const Monomial& o) const = default;

    /// Graded-lex comparison: -1, 0, 1.
    friend int grlex_compare(const Monomial& a, const Monomial& b);

private:
    std::array<std::uint16_t, kMaxVars> e_{};
    std::uint8_t n_ = 0;
    std::uint32_t deg_ = 0;
};

inline bool grlex_less(const Monomial& a, const Monomial& b) { return grlex_compare(a, b) < 0; }

/// Ordered list of variable names shared by every polynomial of one ring.
struct VarList {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    /// Index of `name`, or -1.
    int index_of(const std::string& name) const;
};

using Vars = std::shared_ptr<const VarList>;

Vars make_vars(std::vector<std::string> names);
bool same_vars(const Vars& a, const Vars& b);

struct Term {
    Monomial mono;
    Integer coeff;
};

/// Multivariate polynomial over the integers in canonical form: terms sorted
/// by strictly decreasing graded-lex order, no zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(Vars vars);
    Poly(Vars vars, const Integer& c);
    Poly(Vars vars, long c) : Poly(std::move(vars), Integer(c)) {}

    static Poly variable(const Vars& vars, std::size_t i);
    static Poly monomial(const Vars& vars, const Monomial& m, const Integer& c = 1);
    /// Builds from arbitrary terms; sorts, merges duplicates, drops zeros.
    static Poly from_terms(const Vars& vars, std::vector<Term> terms);

    const Vars& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant coefficient (coefficient of the unit monomial).
    Integer constant_term() const;
    const Term& leading() const { return terms_.front(); }
    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Integer& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Integer& c) { return a *= c; }
    friend Poly operator*(const Integer& c, Poly a) { return a *= c; }

    Poly pow(unsigned e) const;

    /// Multiply every term by a monomial.
    Poly shifted(const Monomial& m) const;

    bool operator==(const Poly& o) const;

    /// True iff every coefficient is divisible by d.
    bool divisible_by(const Integer& d) const;
    /// Exact division of every coefficient; requires divisible_by(d).
    Poly divided_by(const Integer& d) const;
    /// Coefficients reduced into [0, m).
    Poly mod(const Integer& m) const;

    /// Gcd of the integer coefficients (nonnegative; zero for the zero poly).
    Integer content() const;

    /// Same terms, reinterpreted over another ring of equal arity.
    Poly with_vars(const Vars& v) const;

    std::string to_string() const;

private:
    void check_same(const Poly& o) const;
    Vars vars_;
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Exact quotient a / b over Z[x], or nullopt when b does not divide a.
/// Throws std::domain_error when b is zero.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

/// Partial derivative with respect to variable `var`.
Poly derivative(const Poly& f, std::size_t var);

/// Substitute `value` for variable `var`; the result still lives in f's ring.
Poly substitute(const Poly& f, std::size_t var, const Poly& value);

Integer ipow(const Integer& b, unsigned e);
Integer binomial(unsigned n, unsigned k);

}  // namespace tc
