#include "tc/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tc {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t nvars) {
    if (nvars > kMaxVars) throw std::length_error("too many variables");
    n_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
}

Monomial Monomial::from_span(std::span<const unsigned> exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
}

void Monomial::set(std::size_t i, unsigned v) {
    if (v > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
    deg_ = deg_ - e_[i] + v;
    e_[i] = static_cast<std::uint16_t>(v);
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < n_; ++i) {
        unsigned s = unsigned(e_[i]) + o.e_[i];
        if (s > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
        r.e_[i] = static_cast<std::uint16_t>(s);
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < n_; ++i) r.e_[i] = static_cast<std::uint16_t>(o.e_[i] - e_[i]);
    r.deg_ = o.deg_ - deg_;
    return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
    for (std::size_t i = 0; i < a.n_; ++i)
        if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------- VarList

int VarList::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

Vars make_vars(std::vector<std::string> names) {
    if (names.size() > kMaxVars) throw std::length_error("too many variables");
    return std::make_shared<const VarList>(VarList{std::move(names)});
}

bool same_vars(const Vars& a, const Vars& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->names == b->names;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Vars vars) : vars_(std::move(vars)) {}

Poly::Poly(Vars vars, const Integer& c) : vars_(std::move(vars)) {
    if (c != 0) terms_.push_back({Monomial(nvars()), c});
}

Poly Poly::variable(const Vars& vars, std::size_t i) {
    Monomial m(vars->size());
    m.set(i, 1);
    return monomial(vars, m);
}

Poly Poly::monomial(const Vars& vars, const Monomial& m, const Integer& c) {
    Poly p(vars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

namespace {

// Sorts descending and merges equal monomials, dropping zeros.
void canonicalize(std::vector<Term>& ts) {
    std::sort(ts.begin(), ts.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < ts.size();) {
        std::size_t j = i + 1;
        Integer c = std::move(ts[i].coeff);
        while (j < ts.size() && ts[j].mono == ts[i].mono) c += ts[j++].coeff;
        if (c != 0) {
            ts[out].mono = ts[i].mono;
            ts[out].coeff = std::move(c);
            ++out;
        }
        i = j;
    }
    ts.resize(out);
}

}  // namespace

Poly Poly::from_terms(const Vars& vars, std::vector<Term> terms) {
    Poly p(vars);
    for (const auto& t : terms)
        if (t.mono.size() != p.nvars()) throw std::invalid_argument("monomial arity mismatch");
    canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
}

void Poly::check_same(const Poly& o) const {
    if (!same_vars(vars_, o.vars_)) throw std::invalid_argument("mismatched ambient variables");
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Integer Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned Poly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same(o);
    if (&o == this) return *this *= Integer(2);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = grlex_compare(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (c < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Integer s = terms_[i].coeff + o.terms_[j].coeff;
            if (s != 0) out.push_back({terms_[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1) return b.shifted(a.terms_[0].mono) * a.terms_[0].coeff;
    if (b.terms_.size() == 1) return a.shifted(b.terms_[0].mono) * b.terms_[0].coeff;
    std::vector<Term> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) ts.push_back({s.mono * t.mono, s.coeff * t.coeff});
    canonicalize(ts);
    r.terms_ = std::move(ts);
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Poly Poly::pow(unsigned e) const {
    Poly result(vars_, 1);
    Poly base(*this);
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

Poly Poly::shifted(const Monomial& m) const {
    Poly r(*this);
    if (m.is_one()) return r;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (!same_vars(vars_, o.vars_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

bool Poly::divisible_by(const Integer& d) const {
    for (const auto& t : terms_)
        if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t())) return false;
    return true;
}

Poly Poly::divided_by(const Integer& d) const {
    Poly r(*this);
    for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
    return r;
}

Poly Poly::mod(const Integer& m) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        Integer c;
        mpz_fdiv_r(c.get_mpz_t(), t.coeff.get_mpz_t(), m.get_mpz_t());
        if (c != 0) ts.push_back({t.mono, std::move(c)});
    }
    Poly r(vars_);
    r.terms_ = std::move(ts);
    return r;
}

Integer Poly::content() const {
    Integer g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::with_vars(const Vars& v) const {
    if (v->size() != nvars()) throw std::invalid_argument("ring arity mismatch");
    Poly r(v);
    r.terms_ = terms_;
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Integer c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (c != 1 || t.mono.is_one()) {
            os << c.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            if (wrote) os << "*";
            os << vars_->names[i];
            if (e > 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (!same_vars(a.vars(), b.vars())) throw std::invalid_argument("mismatched ambient variables");
    const Term& lb = b.leading();
    std::vector<Term> q;
    Poly rem = a;
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!lb.mono.divides(lr.mono)) return std::nullopt;
        if (!mpz_divisible_p(lr.coeff.get_mpz_t(), lb.coeff.get_mpz_t())) return std::nullopt;
        Integer c;
        mpz_divexact(c.get_mpz_t(), lr.coeff.get_mpz_t(), lb.coeff.get_mpz_t());
        Monomial m = lb.mono.quotient_of(lr.mono);
        rem -= b.shifted(m) * c;
        q.push_back({m, std::move(c)});
    }
    return Poly::from_terms(a.vars(), std::move(q));
}

Poly derivative(const Poly& f, std::size_t var) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        unsigned e = t.mono[var];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        ts.push_back({m, t.coeff * e});
    }
    return Poly::from_terms(f.vars(), std::move(ts));
}

Poly substitute(const Poly& f, std::size_t var, const Poly& value) {
    unsigned d = f.degree_in(var);
    std::vector<Poly> powers{Poly(f.vars(), 1)};
    for (unsigned i = 1; i <= d; ++i) powers.push_back(powers.back() * value);
    Poly r(f.vars());
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        unsigned e = m[var];
        m.set(var, 0);
        r += powers[e].shifted(m) * t.coeff;
    }
    return r;
}

Integer ipow(const Integer& b, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace tc
