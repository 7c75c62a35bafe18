#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tc/closure.hpp"
#include "tc/extended.hpp"
#include "tc/tower.hpp"

namespace tc {

struct DisjointnessResult {
    bool disjoint = true;
    /// Exponent vector whose product is a p-th power mod p; empty when disjoint.
    std::vector<unsigned> witness;
};

/// Scans nonzero e in [0,p)^t in graded-lex order for a product Π g_j^{e_j}
/// that is a p-th power in F_p[x]. Throws HypothesisError(DisjointBlock) if
/// some g_j vanishes mod p.
DisjointnessResult check_linear_disjointness(const std::vector<Poly>& gs, unsigned p);

/// x_i ↦ y_i^k from `source` into `target`.
struct SubstitutionMap {
    unsigned k = 1;
    Vars source;
    Vars target;
};

/// Root variables are named `names` when given, else `<x>_<k>`.
SubstitutionMap make_substitution(const Vars& source, unsigned k, const std::vector<std::string>& names = {});

Poly substitute_kth_roots(const Poly& f, const SubstitutionMap& map);

struct WMembership {
    unsigned k = 0;
    SubstitutionMap map;
    Poly image;                 ///< f(y^k)
    RadicandCertificate cert;   ///< certificate of `image` over T_k
};

/// First candidate k with f(y^k) ∈ T_k^{p∧p²}.
std::optional<WMembership> w_membership(const Poly& f, unsigned p, const std::vector<unsigned>& k_candidates,
                                        const std::vector<std::string>& root_names = {});

/// Human-readable reason f is not in S^{p∧p²}, or empty if it is.
std::string pth_power_obstruction(const Poly& f, unsigned p);

struct StrippedFactor {
    Monomial monomial;
    Poly core;
};

/// f = monomial · core with no variable dividing core. Throws std::domain_error on zero.
StrippedFactor strip_monomial_factors(const Poly& f);

struct FactorPower {
    Poly q;
    unsigned c = 1;
};

struct ExponentSplit {
    Poly q;
    unsigned c = 0;
    unsigned quotient = 0;   ///< c = quotient·n + remainder
    unsigned remainder = 0;
};

struct ExponentReduction {
    std::vector<Poly> radicands;
    std::vector<ExponentSplit> splits;
};

/// Checks Π q^c = g (when g is given), that every q is square-free and that
/// the q are pairwise coprime; keeps the q whose exponent is not a multiple of n.
ExponentReduction reduce_exponents(const std::vector<FactorPower>& factors, unsigned n,
                                   const std::optional<Poly>& g = std::nullopt);

struct MixedTower {
    Tower ctx;
    VBasis basis;
    ClosureReport closure;
};

/// Validates the joint hypotheses, then builds and verifies the basis over
/// S[ζ_1..ζ_t]; rank p^{r+t}.
MixedTower mixed_tower(const TowerSpec& spec);

/// Failure of a named pipeline stage.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, const std::string& detail, std::optional<Hypothesis> hyp = std::nullopt);
    const std::string& stage() const { return stage_; }
    std::optional<Hypothesis> hypothesis() const { return hyp_; }

private:
    std::string stage_;
    std::optional<Hypothesis> hyp_;
};

struct PipelineInput {
    Poly f;
    unsigned n = 0;
    /// Optional user-asserted factorization of f.
    std::optional<std::vector<FactorPower>> factors;
};

struct PipelineOptions {
    /// Defaults to {p} when empty.
    std::vector<unsigned> k_candidates;
    std::vector<std::string> root_names;
};

struct PipelineRadicand {
    std::size_t input = 0;     ///< index of the input it came from
    Poly q;                    ///< radicand before stripping
    unsigned n = 0;
    Monomial monomial;
    Poly core;
    unsigned k = 0;            ///< k found by w_membership
    Poly image;                ///< core over T_k for the common k
    RadicandCertificate cert;  ///< certificate of image
};

struct PipelineReport {
    unsigned p = 0;
    std::vector<ExponentReduction> reductions;   ///< per input; empty splits if not factored
    std::vector<StrippedFactor> stripped;        ///< per radicand before dropping unit cores
    std::vector<PipelineRadicand> radicands;
    unsigned k = 1;
    SubstitutionMap map;
    Tower ctx;
    std::optional<VBasis> basis;
    ClosureReport closure;
    WitnessReport witnesses;
    std::optional<ExtendedBasis> extended;
    ClosureReport extended_closure;

    bool ok() const { return closure.ok() && witnesses.ok() && extended_closure.ok(); }
};

PipelineReport small_cm_pipeline(unsigned p, const Vars& vars, const std::vector<PipelineInput>& inputs,
                                 const PipelineOptions& opts = {});

}  // namespace tc
