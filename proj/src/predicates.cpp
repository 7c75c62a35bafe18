#include "tc/predicates.hpp"

#include <stdexcept>

#include "tc/poly_gcd.hpp"

namespace tc {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::optional<Poly> pth_root_mod_p(const Poly& f, unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    Poly reduced = f.mod(Integer(p));
    std::vector<Term> root;
    root.reserve(reduced.size());
    for (const auto& t : reduced.terms()) {
        Monomial m(t.mono.size());
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] % p != 0) return std::nullopt;
            m.set(i, t.mono[i] / p);
        }
        root.push_back({m, t.coeff});
    }
    return Poly::from_terms(f.vars(), std::move(root));
}

std::optional<RadicandCertificate> is_pth_power_mod_p2(const Poly& f, unsigned p) {
    auto h = pth_root_mod_p(f, p);
    if (!h) return std::nullopt;
    Integer p2 = Integer(p) * p;
    Poly diff = f - h->pow(p);
    if (!diff.divisible_by(p2)) return std::nullopt;
    return RadicandCertificate{std::move(*h), diff.divided_by(p2)};
}

bool certifies(const RadicandCertificate& cert, const Poly& f, unsigned p) {
    Integer p2 = Integer(p) * p;
    return cert.h.pow(p) + cert.g * p2 == f;
}

namespace {

bool integer_square_free(Integer n) {
    if (n < 0) n = -n;
    for (Integer d = 2; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
        }
    }
    return true;
}

}  // namespace

bool is_square_free(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("square-freeness of zero");
    if (!integer_square_free(f.content())) return false;
    Poly g = primitive_part(f);
    for (std::size_t v = 0; v < f.nvars() && !g.is_constant(); ++v) {
        Poly d = derivative(f, v);
        if (!d.is_zero()) g = gcd(g, d);
    }
    return g.is_constant();
}

std::optional<std::pair<std::size_t, std::size_t>> first_common_factor(const std::vector<Poly>& fs) {
    for (const auto& f : fs)
        if (f.is_zero()) throw std::domain_error("coprimality of zero");
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            Poly g = gcd(fs[i], fs[j]);
            if (!(g.is_constant() && g.constant_term() == 1)) return std::pair{i, j};
        }
    return std::nullopt;
}

bool pairwise_coprime(const std::vector<Poly>& fs) { return !first_common_factor(fs).has_value(); }

bool is_local_unit(const Poly& u, unsigned p) {
    return !mpz_divisible_ui_p(u.constant_term().get_mpz_t(), p);
}

}  // namespace tc
