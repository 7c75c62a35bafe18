#include "tc/extended.hpp"

#include <sstream>

namespace tc {

namespace {

std::size_t radix_size(const std::vector<unsigned>& d) {
    std::size_t n = 1;
    for (unsigned di : d) n *= di;
    return n;
}

std::vector<unsigned> radix_digits(std::size_t idx, const std::vector<unsigned>& d) {
    std::vector<unsigned> e(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        e[i] = static_cast<unsigned>(idx % d[i]);
        idx /= d[i];
    }
    return e;
}

std::size_t radix_index(const std::vector<unsigned>& e, const std::vector<unsigned>& d) {
    std::size_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * d[i] + e[i];
    return idx;
}

}  // namespace

ExtendedBasis::ExtendedBasis(VBasis base, std::vector<unsigned> d) : base_(std::move(base)), d_(std::move(d)) {
    if (d_.size() != base_.ctx()->r()) throw std::invalid_argument("one unit degree per radicand expected");
    const std::size_t n = radix_size(d_);
    for (std::size_t pos = 0; pos < base_.size(); ++pos)
        for (std::size_t idx = 0; idx < n; ++idx) entries_.push_back({pos, radix_digits(idx, d_)});
}

std::string ExtendedBasis::entry_string(const ExtendedEntry& e) const {
    std::string s = base_.entry_string(base_.entries().at(e.v));
    for (std::size_t i = 0; i < e.e.size(); ++i)
        if (e.e[i] > 0) s += " * rt" + std::to_string(i + 1) + "^" + std::to_string(e.e[i]);
    return s;
}

std::string ExtendedBasis::serialize() const {
    std::string out;
    for (const auto& e : entries_) out += entry_string(e) + "\n";
    return out;
}

ExtendedBasis extend_by_unit_degrees(const VBasis& basis, const std::vector<unsigned>& d) {
    const unsigned p = basis.ctx()->p();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == 0 || d[i] % p == 0)
            throw HypothesisError(Hypothesis::PDividesD,
                                  "radicand " + std::to_string(i + 1) + ", d = " + std::to_string(d[i]));
    return ExtendedBasis(basis, d);
}

ExtendedElement::ExtendedElement(Tower ctx, std::vector<unsigned> d) : ctx_(std::move(ctx)), d_(std::move(d)) {
    parts_.assign(radix_size(d_), ClosureElement(TowerElement(ctx_)));
}

ExtendedElement ExtendedElement::from_entry(const ExtendedBasis& basis, const ExtendedEntry& e) {
    ExtendedElement x(basis.base().ctx(), basis.degrees());
    x.parts_[radix_index(e.e, x.d_)] = basis.base().element(e.v);
    return x;
}

ExtendedElement ExtendedElement::root(const ExtendedBasis& basis, std::size_t i) {
    const Tower& ctx = basis.base().ctx();
    ExtendedElement x(ctx, basis.degrees());
    std::vector<unsigned> e(x.d_.size(), 0);
    if (x.d_.at(i) == 1) {
        x.parts_[0] = ClosureElement(TowerElement::omega(ctx, i));
    } else {
        e[i] = 1;
        x.parts_[radix_index(e, x.d_)] = ClosureElement::constant(ctx, 1);
    }
    return x;
}

ExtendedElement operator*(const ExtendedElement& a, const ExtendedElement& b) {
    if (a.ctx_ != b.ctx_ || a.d_ != b.d_) throw std::invalid_argument("extended context mismatch");
    ExtendedElement out(a.ctx_, a.d_);
    for (std::size_t ia = 0; ia < a.parts_.size(); ++ia) {
        if (a.parts_[ia].is_zero()) continue;
        const auto ea = radix_digits(ia, a.d_);
        for (std::size_t ib = 0; ib < b.parts_.size(); ++ib) {
            if (b.parts_[ib].is_zero()) continue;
            auto e = radix_digits(ib, a.d_);
            ClosureElement prod = a.parts_[ia] * b.parts_[ib];
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] += ea[i];
                if (e[i] >= a.d_[i]) {
                    e[i] -= a.d_[i];
                    prod = prod * ClosureElement(TowerElement::omega(a.ctx_, i));
                }
            }
            auto& slot = out.parts_[radix_index(e, a.d_)];
            slot = slot + prod;
        }
    }
    return out;
}

ClosureReport verify_extended(const ExtendedBasis& basis) {
    const VBasis& base = basis.base();
    ClosureReport rep;
    auto check = [&](const ExtendedElement& x, const std::string& what) {
        for (const auto& part : x.parts()) {
            Reduction r = reduce_to_v(base, part);
            if (auto* w = std::get_if<NotInModule>(&r)) {
                rep.failures.push_back({what, *w});
                return;
            }
        }
    };
    std::vector<ExtendedElement> elems;
    for (const auto& e : basis.entries()) elems.push_back(ExtendedElement::from_entry(basis, e));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a; b < elems.size(); ++b) {
            ++rep.products_checked;
            check(elems[a] * elems[b], "product of [" + basis.entry_string(basis.entries()[a]) + "] and [" +
                                           basis.entry_string(basis.entries()[b]) + "]");
        }
    for (std::size_t i = 0; i < basis.degrees().size(); ++i) {
        ExtendedElement rt = ExtendedElement::root(basis, i);
        ++rep.containment_checks;
        check(rt, "rt" + std::to_string(i + 1));
        for (std::size_t a = 0; a < elems.size(); ++a) {
            ++rep.module_checks;
            check(rt * elems[a], "rt" + std::to_string(i + 1) + " times [" + basis.entry_string(basis.entries()[a]) + "]");
        }
    }
    return rep;
}

}  // namespace tc
