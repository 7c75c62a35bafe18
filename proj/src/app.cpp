#include "tc/app.hpp"

#include <sstream>

#include "tc/closure.hpp"
#include "tc/extended.hpp"
#include "tc/oracle.hpp"
#include "tc/spec_file.hpp"
#include "tc/transforms.hpp"

namespace tc {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::size_t kDefaultSamples = 100;

std::string join_names(const Vars& v) {
    std::string s;
    for (std::size_t i = 0; i < v->size(); ++i) s += (i ? ", " : "") + v->names[i];
    return s;
}

std::string vec_string(const std::vector<unsigned>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + ")";
}

void print_radicands(std::ostream& out, const TowerCtx& ctx) {
    for (std::size_t i = 0; i < ctx.r(); ++i) {
        const Radicand& r = ctx.radicand(i);
        out << "f" << i + 1 << " = " << r.f << "  (n = " << ctx.p() * r.d << ", h = " << r.h << ", g = " << r.g
            << ")\n";
    }
    for (std::size_t j = 0; j < ctx.t(); ++j) out << "g" << j + 1 << " = " << ctx.disjoint_block()[j] << "  (disjoint)\n";
}

void print_hypotheses(std::ostream& out, const TowerCtx& ctx) {
    out << "== hypotheses\n";
    out << "p = " << ctx.p() << "\n";
    out << "vars = " << join_names(ctx.vars()) << "\n";
    print_radicands(out, ctx);
    out << "checked: p prime; f = h^p + p^2 g; square-free; p does not divide f; p does not divide d; "
           "pairwise coprime";
    if (ctx.t() > 0) out << "; linearly disjoint mod p";
    out << "\nresult: accepted\n";
}

std::vector<unsigned> unit_degrees(const TowerCtx& ctx) {
    std::vector<unsigned> d;
    for (const auto& r : ctx.radicands()) d.push_back(r.d);
    return d;
}

bool has_unit_degrees(const TowerCtx& ctx) {
    for (const auto& r : ctx.radicands())
        if (r.d > 1) return true;
    return false;
}

void print_basis(std::ostream& out, const VBasis& basis, const std::optional<ExtendedBasis>& ext) {
    out << "== basis\n";
    out << "rank " << (ext ? ext->size() : basis.size()) << " (layers";
    for (std::size_t n : basis.layer_sizes()) out << " " << n;
    out << ")\n";
    out << (ext ? ext->serialize() : basis.serialize());
}

void print_closure(std::ostream& out, const ClosureReport& rep, const char* label) {
    out << label << "products " << rep.products_checked << ", module " << rep.module_checks << ", containment "
        << rep.containment_checks << ", failures " << rep.failures.size() << "\n";
}

void print_failures(std::ostream& out, const ClosureReport& rep, const VBasis& basis) {
    for (const auto& f : rep.failures) out << "FAIL " << f.what << ": " << f.witness.to_string(basis) << "\n";
}

void print_witnesses(std::ostream& out, const WitnessReport& wit) {
    out << "== witnesses\n";
    for (const auto& c : wit.checks) {
        out << (c.passed ? "ok   " : "FAIL ") << c.name << "\n";
        if (!c.detail.empty()) out << "     " << c.detail << "\n";
    }
}

int reject(std::ostream& out, std::ostream& err, const std::string& msg) {
    out << "result: rejected (" << msg << ")\n";
    err << "rejected: " << msg << "\n";
    return kRejected;
}

int cmd_check(const SpecFile& spec, std::ostream& out, std::ostream& err) {
    Tower ctx;
    try {
        ctx = make_tower(spec.tower_spec());
    } catch (const HypothesisError& e) {
        out << "== hypotheses\n";
        return reject(out, err, e.what());
    }
    print_hypotheses(out, *ctx);
    return kVerified;
}

int cmd_basis(const SpecFile& spec, std::ostream& out, std::ostream& err) {
    Tower ctx;
    try {
        ctx = make_tower(spec.tower_spec());
    } catch (const HypothesisError& e) {
        err << "rejected: " << e.what() << "\n";
        return kRejected;
    }
    VBasis basis = build_v_basis(ctx);
    if (has_unit_degrees(*ctx))
        out << extend_by_unit_degrees(basis, unit_degrees(*ctx)).serialize();
    else
        out << basis.serialize();
    return kVerified;
}

int cmd_verify(const SpecFile& spec, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    Tower ctx;
    try {
        ctx = make_tower(spec.tower_spec());
    } catch (const HypothesisError& e) {
        out << "== hypotheses\n";
        return reject(out, err, e.what());
    }
    print_hypotheses(out, *ctx);

    VBasis basis = build_v_basis(ctx);
    std::optional<ExtendedBasis> ext;
    if (has_unit_degrees(*ctx)) ext = extend_by_unit_degrees(basis, unit_degrees(*ctx));
    print_basis(out, basis, ext);

    bool ok = true;
    out << "== closure\n";
    ClosureReport rep = verify_closure(basis);
    print_closure(out, rep, "basis: ");
    print_failures(out, rep, basis);
    ok = ok && rep.ok();
    if (ext) {
        ClosureReport xrep = verify_extended(*ext);
        print_closure(out, xrep, "extended: ");
        print_failures(out, xrep, basis);
        ok = ok && xrep.ok();
    }

    WitnessReport wit = integrality_witnesses(ctx);
    print_witnesses(out, wit);
    ok = ok && wit.ok();

    out << "== oracle\n";
    const std::uint64_t seed = opts.seed.value_or(spec.seed.value_or(kDefaultSeed));
    const std::size_t samples = opts.samples.value_or(spec.samples.value_or(kDefaultSamples));
    CrosscheckReport cross = membership_crosscheck(basis, samples, seed);
    out << "seed " << seed << ", samples " << cross.samples << ", integral " << cross.integral << ", disagreements "
        << cross.disagreements.size() << "\n";
    for (const auto& d : cross.disagreements)
        out << "FAIL sample " << d.sample << ": " << d.element << " reduces=" << d.reduces
            << " integral=" << d.integral << (d.witness.empty() ? "" : "; " + d.witness) << "\n";
    ok = ok && cross.ok();
    auto sharp = sharpness_checks(basis);
    std::size_t sharp_bad = 0;
    for (const auto& s : sharp)
        if (s.integral) {
            ++sharp_bad;
            out << "FAIL sharpness: " << s.element.to_string() << " is integral\n";
        }
    out << "sharpness: " << sharp.size() << " scaled entries, " << sharp.size() - sharp_bad << " non-integral\n";
    ok = ok && sharp_bad == 0;

    out << "result: " << (ok ? "verified" : "verification failed") << "\n";
    if (!ok) {
        err << "verification failed\n";
        return kContradiction;
    }
    return kVerified;
}

int cmd_reduce(const SpecFile& spec, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    Tower ctx;
    try {
        ctx = make_tower(spec.tower_spec());
    } catch (const HypothesisError& e) {
        err << "rejected: " << e.what() << "\n";
        return kRejected;
    }
    if (opts.element.empty()) {
        err << "reduce needs an element\n";
        return kRejected;
    }
    ClosureElement x = parse_element(opts.element, ctx);
    VBasis basis = build_v_basis(ctx);
    out << "element: " << x.to_string() << "\n";
    Reduction r = reduce_to_v(basis, x);
    if (auto* w = std::get_if<NotInModule>(&r)) {
        out << "in module: no\n";
        out << "witness: " << w->to_string(basis) << "\n";
        return kVerified;
    }
    const VCoords& c = std::get<VCoords>(r);
    out << "in module: yes\n";
    for (const auto& e : basis.entries())
        if (!c.coeff[e.index].is_zero()) out << "  " << c.coeff[e.index] << "  [" << basis.entry_string(e) << "]\n";
    if (!(from_v(basis, c) == x)) {
        err << "coordinates do not reproduce the element\n";
        return kContradiction;
    }
    return kVerified;
}

int cmd_disjoint(const SpecFile& spec, std::ostream& out, std::ostream& err) {
    out << "== disjointness\n";
    for (std::size_t j = 0; j < spec.disjoint.size(); ++j) out << "g" << j + 1 << " = " << spec.disjoint[j] << "\n";
    DisjointnessResult res;
    try {
        res = check_linear_disjointness(spec.disjoint, spec.p);
    } catch (const HypothesisError& e) {
        return reject(out, err, e.what());
    }
    if (!res.disjoint) {
        out << "witness " << vec_string(res.witness) << "\n";
        return reject(out, err, std::string(hypothesis_name(Hypothesis::DisjointBlock)) + ": witness " +
                                    vec_string(res.witness));
    }
    out << "result: linearly disjoint mod p\n";
    return kVerified;
}

int cmd_pipeline(const SpecFile& spec, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    PipelineOptions po;
    po.k_candidates = opts.k_candidates.value_or(spec.k_candidates);
    po.root_names = spec.root_vars;
    const auto inputs = spec.pipeline_inputs();
    out << "== pipeline\n";
    out << "p = " << spec.p << ", vars = " << join_names(spec.vars) << ", k candidates";
    if (po.k_candidates.empty()) out << " " << spec.p;
    for (unsigned k : po.k_candidates) out << " " << k;
    out << "\n";
    PipelineReport rep;
    try {
        rep = small_cm_pipeline(spec.p, spec.vars, inputs, po);
    } catch (const PipelineError& e) {
        out << "stage: " << e.stage() << "\n";
        return reject(out, err, e.what());
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        out << "input " << i + 1 << ": f = " << inputs[i].f << ", n = " << inputs[i].n << "\n";
        for (const auto& s : rep.reductions[i].splits)
            out << "  factor " << s.q << " ^ " << s.c << ": " << s.c << " = " << s.quotient << "*" << inputs[i].n
                << " + " << s.remainder << (s.remainder == 0 ? " (dropped)" : "") << "\n";
    }
    for (std::size_t i = 0; i < rep.stripped.size(); ++i)
        out << "strip " << i + 1 << ": monomial " << Poly::monomial(spec.vars, rep.stripped[i].monomial)
            << ", core " << rep.stripped[i].core << "\n";
    out << "k = " << rep.k << "; ";
    for (std::size_t v = 0; v < spec.vars->size(); ++v)
        out << (v ? ", " : "") << spec.vars->names[v] << " = " << rep.map.target->names[v] << "^" << rep.k;
    out << "\n";
    for (std::size_t i = 0; i < rep.radicands.size(); ++i) {
        const auto& pr = rep.radicands[i];
        out << "radicand " << i + 1 << ": " << pr.core << " in W at k = " << pr.k << "; over T_" << rep.k << ": "
            << pr.image << " with h = " << pr.cert.h << ", g = " << pr.cert.g << "\n";
    }
    print_hypotheses(out, *rep.ctx);
    print_basis(out, *rep.basis, rep.extended && rep.extended->size() != rep.basis->size()
                                     ? rep.extended
                                     : std::optional<ExtendedBasis>());
    out << "== closure\n";
    print_closure(out, rep.closure, "basis: ");
    print_failures(out, rep.closure, *rep.basis);
    if (rep.extended && rep.extended->size() != rep.basis->size()) {
        print_closure(out, rep.extended_closure, "extended: ");
        print_failures(out, rep.extended_closure, *rep.basis);
    }
    print_witnesses(out, rep.witnesses);
    out << "result: " << (rep.ok() ? "verified" : "verification failed") << "\n";
    if (!rep.ok()) {
        err << "verification failed\n";
        return kContradiction;
    }
    return kVerified;
}

}  // namespace

int run(const RunOptions& opts, const std::string& spec_text, std::ostream& out, std::ostream& err) {
    SpecFile spec;
    try {
        spec = parse_spec(spec_text);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kRejected;
    }
    try {
        if (opts.command == "check") return cmd_check(spec, out, err);
        if (opts.command == "basis") return cmd_basis(spec, out, err);
        if (opts.command == "verify") return cmd_verify(spec, opts, out, err);
        if (opts.command == "reduce") return cmd_reduce(spec, opts, out, err);
        if (opts.command == "pipeline") return cmd_pipeline(spec, opts, out, err);
        if (opts.command == "disjoint") return cmd_disjoint(spec, out, err);
        err << "unknown command '" << opts.command << "'\n";
        return kRejected;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kRejected;
    } catch (const HypothesisError& e) {
        return reject(out, err, e.what());
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kContradiction;
    }
}

}  // namespace tc
