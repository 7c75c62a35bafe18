#pragma once

#include <string>
#include <vector>

#include "tc/closure.hpp"

namespace tc {

struct ExtendedEntry {
    std::size_t v = 0;              ///< position in the underlying VBasis
    std::vector<unsigned> e;        ///< exponents of ρ_i, e_i < d_i
};

/// {v · Π ρ_i^{e_i}} with ρ_i^{d_i} = ω_i, for p ∤ d_i.
class ExtendedBasis {
public:
    ExtendedBasis(VBasis base, std::vector<unsigned> d);

    const VBasis& base() const { return base_; }
    const std::vector<unsigned>& degrees() const { return d_; }
    const std::vector<ExtendedEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::string entry_string(const ExtendedEntry& e) const;
    std::string serialize() const;

private:
    VBasis base_;
    std::vector<unsigned> d_;
    std::vector<ExtendedEntry> entries_;
};

/// Throws HypothesisError(PDividesD) if some d_i is zero or divisible by p.
ExtendedBasis extend_by_unit_degrees(const VBasis& basis, const std::vector<unsigned>& d);

/// Element Σ_e x_e Π ρ^e with x_e in the fraction field of A.
class ExtendedElement {
public:
    ExtendedElement(Tower ctx, std::vector<unsigned> d);

    static ExtendedElement from_entry(const ExtendedBasis& basis, const ExtendedEntry& e);
    /// ρ_i itself.
    static ExtendedElement root(const ExtendedBasis& basis, std::size_t i);

    const std::vector<ClosureElement>& parts() const { return parts_; }
    friend ExtendedElement operator*(const ExtendedElement& a, const ExtendedElement& b);

private:
    Tower ctx_;
    std::vector<unsigned> d_;
    std::vector<ClosureElement> parts_;   ///< indexed by mixed-radix ρ exponent
};

/// Every unordered product of extended entries, and ρ_i times every entry,
/// lies in the S-span of the extended basis.
ClosureReport verify_extended(const ExtendedBasis& basis);

}  // namespace tc
