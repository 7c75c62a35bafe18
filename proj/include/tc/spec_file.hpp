#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tc/poly_parse.hpp"
#include "tc/tower.hpp"
#include "tc/transforms.hpp"

namespace tc {

struct SpecRadicand {
    Poly f;
    unsigned n = 0;
    std::size_t line = 0;
};

struct SpecFactored {
    unsigned n = 0;
    std::vector<FactorPower> factors;
    std::optional<Poly> g;
    std::size_t line = 0;
};

/// Parsed spec file. Grammar:
///
///     p = 3
///     vars = [X, Y]
///     radicand { f = "X^3 + 9", n = 3 }
///     factored { n = 3, factors = ["x*y^4 + 9", "x^4*y + 9"], exponents = [1, 2] }
///     disjoint { g = "Y" }
///     k_candidates = [3]
///     seed = 7
///     samples = 100
///     root_vars = [u, v]
///
/// `#` starts a comment; newlines are not significant.
struct SpecFile {
    unsigned p = 0;
    Vars vars;
    std::vector<SpecRadicand> radicands;
    std::vector<SpecFactored> factored;
    std::vector<Poly> disjoint;
    std::vector<unsigned> k_candidates;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::vector<std::string> root_vars;

    /// The radicand blocks plus the exponent-reduced factored blocks.
    TowerSpec tower_spec() const;
    std::vector<PipelineInput> pipeline_inputs() const;
};

/// Throws ParseError with the line and column of the offending token.
SpecFile parse_spec(std::string_view text);

/// `p^-<k> * <poly>` or `<poly>`, with w<i> for ω_i and z<j> for ζ_j; any
/// exponent is accepted and reduced to normal form.
ClosureElement parse_element(std::string_view text, const Tower& ctx);

}  // namespace tc
