#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tc {

/// The standing hypotheses a radical tower must satisfy.
enum class Hypothesis {
    InvalidPrime,
    NotPthPowerModP2,
    NotSquareFree,
    PDividesF,
    PDividesD,
    NotCoprime,
    DisjointBlock,
    SharedVariableFactor,
    InvalidInput,
};

std::string_view hypothesis_name(Hypothesis h);

/// Thrown when input data violates a hypothesis; the message names it.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(Hypothesis which, const std::string& detail);
    Hypothesis which() const { return which_; }

private:
    Hypothesis which_;
};

/// Thrown when an identity that must hold for validated input fails.
class VerificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace tc
