#include "tc/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tc/predicates.hpp"

namespace tc {

// ---------------------------------------------------------------- disjointness

DisjointnessResult check_linear_disjointness(const std::vector<Poly>& gs, unsigned p) {
    const Integer P(p);
    const std::size_t t = gs.size();
    std::vector<std::vector<Poly>> powers(t);
    for (std::size_t j = 0; j < t; ++j) {
        Poly gbar = gs[j].mod(P);
        if (gbar.is_zero())
            throw HypothesisError(Hypothesis::DisjointBlock,
                                  "g" + std::to_string(j + 1) + " = " + gs[j].to_string() + " vanishes mod p");
        powers[j].push_back(Poly(gbar.vars(), 1));
        for (unsigned e = 1; e < p; ++e) powers[j].push_back((powers[j].back() * gbar).mod(P));
    }

    std::vector<std::vector<unsigned>> vecs;
    std::vector<unsigned> e(t, 0);
    while (true) {
        std::size_t i = 0;
        while (i < t && e[i] == p - 1) e[i++] = 0;
        if (i == t) break;
        ++e[i];
        vecs.push_back(e);
    }
    auto degree = [](const std::vector<unsigned>& v) { return std::accumulate(v.begin(), v.end(), 0u); };
    std::sort(vecs.begin(), vecs.end(), [&](const auto& a, const auto& b) {
        unsigned da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return a > b;
    });

    for (const auto& v : vecs) {
        Poly prod = powers[0][0];
        for (std::size_t j = 0; j < t; ++j)
            if (v[j] > 0) prod = (prod * powers[j][v[j]]).mod(P);
        if (pth_root_mod_p(prod, p)) return {false, v};
    }
    return {true, {}};
}

// ---------------------------------------------------------------- substitution

SubstitutionMap make_substitution(const Vars& source, unsigned k, const std::vector<std::string>& names) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    std::vector<std::string> out;
    if (names.empty()) {
        for (const auto& n : source->names) out.push_back(k == 1 ? n : n + "_" + std::to_string(k));
    } else {
        if (names.size() != source->size()) throw std::invalid_argument("one root name per variable expected");
        out = names;
    }
    return {k, source, make_vars(std::move(out))};
}

Poly substitute_kth_roots(const Poly& f, const SubstitutionMap& map) {
    if (!same_vars(f.vars(), map.source)) throw std::invalid_argument("mismatched ambient variables");
    std::vector<Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial m(map.target->size());
        for (std::size_t i = 0; i < m.size(); ++i) m.set(i, t.mono[i] * map.k);
        terms.push_back({m, t.coeff});
    }
    return Poly::from_terms(map.target, std::move(terms));
}

std::optional<WMembership> w_membership(const Poly& f, unsigned p, const std::vector<unsigned>& k_candidates,
                                        const std::vector<std::string>& root_names) {
    std::vector<unsigned> ks = k_candidates.empty() ? std::vector<unsigned>{p} : k_candidates;
    for (unsigned k : ks) {
        SubstitutionMap map = make_substitution(f.vars(), k, root_names);
        Poly image = substitute_kth_roots(f, map);
        if (auto cert = is_pth_power_mod_p2(image, p)) return WMembership{k, map, image, *cert};
    }
    return std::nullopt;
}

std::string pth_power_obstruction(const Poly& f, unsigned p) {
    const Integer P(p);
    auto root = pth_root_mod_p(f, p);
    if (!root) {
        for (const auto& t : f.mod(P).terms())
            for (std::size_t i = 0; i < t.mono.size(); ++i)
                if (t.mono[i] % p != 0) {
                    Poly term = Poly::monomial(f.vars(), t.mono, t.coeff);
                    return "term " + term.to_string() + " of f mod p has an exponent not divisible by p";
                }
        return "no p-th root mod p";
    }
    Poly diff = f - root->pow(p);
    if (diff.divisible_by(P * P)) return "";
    return "f - h^p = " + diff.to_string() + " is not divisible by p^2 (h = " + root->to_string() + ")";
}

StrippedFactor strip_monomial_factors(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("cannot strip the zero polynomial");
    const std::size_t n = f.nvars();
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) {
        unsigned lo = f.terms().front().mono[i];
        for (const auto& t : f.terms()) lo = std::min(lo, t.mono[i]);
        m.set(i, lo);
    }
    std::vector<Term> terms;
    for (const auto& t : f.terms()) terms.push_back({m.quotient_of(t.mono), t.coeff});
    return {m, Poly::from_terms(f.vars(), std::move(terms))};
}

// ---------------------------------------------------------------- exponents

ExponentReduction reduce_exponents(const std::vector<FactorPower>& factors, unsigned n, const std::optional<Poly>& g) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (factors.empty()) throw HypothesisError(Hypothesis::InvalidInput, "empty factorization");
    std::vector<Poly> qs;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& fp = factors[i];
        if (fp.c == 0) throw HypothesisError(Hypothesis::InvalidInput, "factor " + std::to_string(i + 1) + " has exponent 0");
        if (fp.q.is_zero() || !is_square_free(fp.q))
            throw HypothesisError(Hypothesis::NotSquareFree, "factor " + std::to_string(i + 1) + " = " + fp.q.to_string());
        qs.push_back(fp.q);
    }
    if (auto pair = first_common_factor(qs))
        throw HypothesisError(Hypothesis::NotCoprime, "factors " + std::to_string(pair->first + 1) + " and " +
                                                          std::to_string(pair->second + 1) + " share a factor");
    if (g) {
        Poly prod(g->vars(), 1);
        for (const auto& fp : factors) prod *= fp.q.pow(fp.c);
        if (!(prod == *g))
            throw HypothesisError(Hypothesis::InvalidInput,
                                  "product of factors " + prod.to_string() + " differs from " + g->to_string());
    }
    ExponentReduction out;
    for (const auto& fp : factors) {
        ExponentSplit s{fp.q, fp.c, fp.c / n, fp.c % n};
        if (s.remainder != 0) out.radicands.push_back(fp.q);
        out.splits.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------- mixed tower

MixedTower mixed_tower(const TowerSpec& spec) {
    Tower ctx = make_tower(spec);
    VBasis basis = build_v_basis(ctx);
    ClosureReport rep = verify_closure(basis);
    return {ctx, std::move(basis), std::move(rep)};
}

// ---------------------------------------------------------------- pipeline

PipelineError::PipelineError(std::string stage, const std::string& detail, std::optional<Hypothesis> hyp)
    : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)), hyp_(hyp) {}

PipelineReport small_cm_pipeline(unsigned p, const Vars& vars, const std::vector<PipelineInput>& inputs,
                                 const PipelineOptions& opts) {
    if (!is_prime(p)) throw PipelineError("degrees", "p = " + std::to_string(p) + " is not prime", Hypothesis::InvalidPrime);
    PipelineReport rep;
    rep.p = p;

    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const unsigned n = inputs[i].n;
        if (n == 0 || n % p != 0)
            throw PipelineError("degrees", "input " + std::to_string(i + 1) + ": p does not divide n = " + std::to_string(n),
                                Hypothesis::InvalidInput);
        if ((n / p) % p == 0)
            throw PipelineError("degrees", "input " + std::to_string(i + 1) + ": p^2 divides n = " + std::to_string(n),
                                Hypothesis::PDividesD);
    }

    struct Pending {
        std::size_t input;
        Poly q;
        unsigned n;
    };
    std::vector<Pending> pending;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& in = inputs[i];
        if (!same_vars(in.f.vars(), vars))
            throw PipelineError("exponents", "input " + std::to_string(i + 1) + " is outside the ambient ring",
                                Hypothesis::InvalidInput);
        ExponentReduction red;
        if (in.factors) {
            try {
                red = reduce_exponents(*in.factors, in.n, in.f);
            } catch (const HypothesisError& e) {
                throw PipelineError("exponents", "input " + std::to_string(i + 1) + ": " + e.what(), e.which());
            }
        } else {
            red.radicands.push_back(in.f);
        }
        for (const auto& q : red.radicands) pending.push_back({i, q, in.n});
        rep.reductions.push_back(std::move(red));
    }

    for (const auto& pd : pending) rep.stripped.push_back(strip_monomial_factors(pd.q));
    for (std::size_t a = 0; a < pending.size(); ++a)
        for (std::size_t b = a + 1; b < pending.size(); ++b)
            for (std::size_t v = 0; v < vars->size(); ++v)
                if (rep.stripped[a].monomial[v] > 0 && rep.stripped[b].monomial[v] > 0)
                    throw PipelineError("strip",
                                        "radicands " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                            " are both divisible by " + vars->names[v],
                                        Hypothesis::SharedVariableFactor);

    std::vector<unsigned> ks = opts.k_candidates.empty() ? std::vector<unsigned>{p} : opts.k_candidates;
    unsigned k = 1;
    for (std::size_t a = 0; a < pending.size(); ++a) {
        const StrippedFactor& sf = rep.stripped[a];
        for (std::size_t v = 0; v < vars->size(); ++v)
            if (sf.monomial[v] > 0) k = std::lcm(k, pending[a].n / std::gcd(pending[a].n, sf.monomial[v]));
        if (sf.core == Poly(vars, 1)) continue;
        auto wm = w_membership(sf.core, p, ks, opts.root_names);
        if (!wm) {
            std::ostringstream os;
            os << "radicand " << a + 1 << " core " << sf.core.to_string() << ":";
            for (unsigned kk : ks) {
                SubstitutionMap m = make_substitution(vars, kk, opts.root_names);
                os << " k = " << kk << ": " << pth_power_obstruction(substitute_kth_roots(sf.core, m), p) << ";";
            }
            throw PipelineError("w_membership", os.str(), Hypothesis::NotPthPowerModP2);
        }
        k = std::lcm(k, wm->k);
        PipelineRadicand pr;
        pr.input = pending[a].input;
        pr.q = pending[a].q;
        pr.n = pending[a].n;
        pr.monomial = sf.monomial;
        pr.core = sf.core;
        pr.k = wm->k;
        rep.radicands.push_back(std::move(pr));
    }

    rep.k = k;
    rep.map = make_substitution(vars, k, opts.root_names);
    TowerSpec spec;
    spec.p = p;
    spec.vars = rep.map.target;
    for (auto& pr : rep.radicands) {
        pr.image = substitute_kth_roots(pr.core, rep.map);
        auto cert = is_pth_power_mod_p2(pr.image, p);
        if (!cert)
            throw PipelineError("substitute", pr.image.to_string() + " lost its certificate after substitution",
                                Hypothesis::NotPthPowerModP2);
        pr.cert = *cert;
        spec.radicands.push_back({pr.image, pr.cert, pr.n / p});
    }

    try {
        rep.ctx = make_tower(spec);
    } catch (const HypothesisError& e) {
        throw PipelineError("validate", e.what(), e.which());
    }
    rep.basis = build_v_basis(rep.ctx);
    rep.closure = verify_closure(*rep.basis);
    rep.witnesses = integrality_witnesses(rep.ctx);

    std::vector<unsigned> d;
    for (const auto& pr : rep.radicands) d.push_back(pr.n / p);
    rep.extended = extend_by_unit_degrees(*rep.basis, d);
    if (std::any_of(d.begin(), d.end(), [](unsigned x) { return x > 1; }))
        rep.extended_closure = verify_extended(*rep.extended);
    return rep;
}

}  // namespace tc
