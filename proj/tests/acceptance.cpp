// Acceptance run: one PASS/FAIL line per criterion. Exact arithmetic throughout,
// so every comparison has zero tolerance; only the runtime limits are numeric.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tc/app.hpp"
#include "tc/extended.hpp"
#include "tc/oracle.hpp"
#include "tc/predicates.hpp"
#include "tc/transforms.hpp"

namespace {

using namespace tc;
using test::P;
using Clock = std::chrono::steady_clock;

constexpr double kLimitExample = 10.0;
constexpr double kLimitCPrime = 1.0;
constexpr double kLimitWitness = 30.0;
constexpr double kLimitOracle = 300.0;
constexpr double kLimitRank = 120.0;
constexpr double kLimitNegative = 10.0;
constexpr double kLimitPipeline = 60.0;
constexpr double kLimitDisjoint = 30.0;
constexpr double kLimitQuadratic = 30.0;

constexpr std::size_t kOracleSamples = 100;

struct Outcome {
    bool ok = true;
    std::string note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note = what;
        ok = ok && cond;
    }
};

bool has_check(const WitnessReport& w, const std::string& needle) {
    for (const auto& c : w.checks)
        if (c.name.find(needle) != std::string::npos && !c.passed) return false;
    for (const auto& c : w.checks)
        if (c.name.find(needle) != std::string::npos) return true;
    return false;
}

Outcome example_reproduction() {
    Outcome o;
    const std::string expected =
        "p^-0 * 1\n"
        "p^-0 * (w1 - X)^1\n"
        "p^-0 * (w2 - Y)^1\n"
        "p^-1 * (w1 - X)^2\n"
        "p^-1 * (w1 - X)^1 * (w2 - Y)^1\n"
        "p^-1 * (w2 - Y)^2\n"
        "p^-1 * (w1 - X)^2 * (w2 - Y)^1\n"
        "p^-1 * (w1 - X)^1 * (w2 - Y)^2\n"
        "p^-2 * (w1 - X)^2 * (w2 - Y)^2\n";
    VBasis b = build_v_basis(test::example_tower());
    o.expect(b.serialize() == expected, "basis lines differ");
    o.expect(b.layer_sizes() == std::vector<std::size_t>{3, 5, 1}, "layer sizes");
    ClosureReport rep = verify_closure(b);
    o.expect(rep.products_checked == 45, "product count " + std::to_string(rep.products_checked));
    o.expect(rep.ok(), "closure failures");
    o.note = o.ok ? "9 entries, 45 products reduce over Z[X,Y]" : o.note;
    return o;
}

Outcome cprime_identities() {
    Outcome o;
    for (unsigned p : {3u, 5u, 7u}) {
        Poly c = universal_c_prime(p);
        const Vars& v = c.vars();
        Poly W = Poly::variable(v, 0), h = Poly::variable(v, 1);
        Poly lhs = (W - h) * c * Integer(p);
        Poly rhs = (W.pow(p) - h.pow(p)) - (W - h).pow(p);
        o.expect(lhs == rhs, "p(W-h)C' identity at p=" + std::to_string(p));
        Poly at_h = substitute(c, 0, h);
        o.expect((at_h - h.pow(p - 1)).divisible_by(Integer(p)), "C'(h) mod p at p=" + std::to_string(p));
        if (p == 3) o.expect(c == W * h, "C' != Wh at p=3");
    }
    o.note = o.ok ? "p in {3,5,7}; C' = Wh at p=3" : o.note;
    return o;
}

Outcome witness_identities() {
    Outcome o;
    std::mt19937_64 rng(3001);
    std::size_t instances = 0;
    for (unsigned p : {2u, 3u, 5u}) {
        for (int i = 0; i < 20; ++i) {
            Tower t = test::random_tower(rng, p, 1 + i % 2);
            WitnessReport w = integrality_witnesses(t);
            o.expect(w.ok(), "witness failure at p=" + std::to_string(p));
            o.expect(has_check(w, "n(tau)") && has_check(w, "m(tau)"), "n/m(tau) missing");
            o.expect(has_check(w, p == 2 ? "l0(tau)" : "l(tau)"), "l(tau) missing");
            for (std::size_t j = 0; j < t->r(); ++j) {
                ClosureElement lhs = ClosureElement(TowerElement::omega_shift(t, j)) * tau(t, j);
                o.expect(lhs == ClosureElement::constant(t, t->radicand(j).g * Integer(p)), "(w-h)tau != pg");
            }
            ++instances;
        }
    }
    for (int i = 0; i < 10; ++i) {
        Tower t = test::random_tower(rng, 3, 2);
        o.expect(eta_relation(t, 0, 1).is_zero(), "v_12(eta) != 0");
        o.expect(has_check(integrality_witnesses(t), "v(eta)"), "v(eta) check");
        ++instances;
    }
    o.note = o.ok ? std::to_string(instances) + " instances" : o.note;
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    std::mt19937_64 rng(4001);
    std::vector<Tower> contexts{test::example_tower()};
    for (int i = 0; i < 5; ++i) contexts.push_back(test::random_tower(rng, 3, 2));
    std::size_t total = 0, sharp = 0;
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        VBasis b = build_v_basis(contexts[c]);
        CrosscheckReport rep = membership_crosscheck(b, kOracleSamples, 17 + c);
        total += rep.samples;
        o.expect(rep.samples == kOracleSamples, "sample count");
        o.expect(rep.ok(), std::to_string(rep.disagreements.size()) + " disagreements in context " +
                               std::to_string(c));
        auto checks = sharpness_checks(b);
        o.expect(checks.size() == 8, "sharpness count");
        for (const auto& s : checks) {
            o.expect(!s.integral, "sharpness: " + s.element.to_string());
            ++sharp;
        }
    }
    o.note = o.ok ? std::to_string(total) + " samples, 0 disagreements, " + std::to_string(sharp) + " sharpness checks"
                  : o.note;
    return o;
}

unsigned ipow_u(unsigned b, unsigned e) {
    unsigned r = 1;
    while (e--) r *= b;
    return r;
}

Outcome rank_law() {
    Outcome o;
    std::mt19937_64 rng(5001);
    std::size_t cases = 0;
    for (unsigned p : {2u, 3u, 5u})
        for (unsigned r : {1u, 2u, 3u}) {
            Tower t = test::random_tower(rng, p, r);
            VBasis b = build_v_basis(t);
            o.expect(b.size() == ipow_u(p, r), "rank at p=" + std::to_string(p) + " r=" + std::to_string(r));
            ++cases;
            for (int trial = 0; trial < 2; ++trial) {
                std::vector<unsigned> d(r);
                unsigned prod = 1;
                for (auto& di : d) {
                    di = (p == 2) ? 1 : 1 + rng() % 2;
                    prod *= di;
                }
                ExtendedBasis e = extend_by_unit_degrees(b, d);
                o.expect(e.size() == ipow_u(p, r) * prod, "extended rank");
                ++cases;
            }
        }
    try {
        extend_by_unit_degrees(build_v_basis(test::random_tower(rng, 2, 1)), {2});
        o.expect(false, "d=2 accepted at p=2");
    } catch (const HypothesisError&) {
    }
    o.expect(build_v_basis(test::example_tower()).layer_sizes() == std::vector<std::size_t>{3, 5, 1}, "layers");
    o.note = o.ok ? std::to_string(cases) + " cases; layers (3,5,1)" : o.note;
    return o;
}

Outcome negative_control() {
    Outcome o;
    for (const char* f : {"X^6 - 3*X^6 + 9", "(X*Y)^3 + 3*(X*Y)^3 + 9"}) {
        Poly q = P(f);
        o.expect(is_pth_power_mod_p(q, 3), std::string("p^p test rejected ") + f);
        o.expect(!is_pth_power_mod_p2(q, 3), std::string("mod p^2 test accepted ") + f);
        std::ostringstream out, err;
        RunOptions opts;
        opts.command = "check";
        int code = run(opts, std::string("p = 3 vars = [X, Y] radicand { f = \"") + f + "\" }", out, err);
        o.expect(code == kRejected, "check exit code " + std::to_string(code));
        o.expect((out.str() + err.str()).find(hypothesis_name(Hypothesis::NotPthPowerModP2)) != std::string::npos,
                 "hypothesis not named");
    }
    o.note = o.ok ? "both radicands rejected, check exits 1" : o.note;
    return o;
}

Outcome pipeline() {
    Outcome o;
    Vars xy = make_vars({"x", "y"}), uv = make_vars({"u", "v"});
    Poly a = P("x*y^4 + 9", xy), b = P("x^4*y + 9", xy);
    PipelineReport rep =
        small_cm_pipeline(3, xy, {{a * b.pow(2), 3, std::vector<FactorPower>{{a, 1}, {b, 2}}}}, {{}, {"u", "v"}});
    o.expect(rep.reductions.size() == 1 && rep.reductions[0].radicands == std::vector<Poly>{a, b}, "reduction");
    o.expect(rep.radicands.size() == 2, "radicand count");
    if (rep.radicands.size() == 2) {
        o.expect(rep.radicands[0].k == 3 && rep.radicands[1].k == 3, "k");
        o.expect(rep.radicands[0].cert.h == P("u*v^4", uv), "h_a");
        o.expect(rep.radicands[1].cert.h == P("u^4*v", uv), "h_b");
        o.expect(rep.radicands[0].cert.g == P("1", uv) && rep.radicands[1].cert.g == P("1", uv), "g");
    }
    o.expect(rep.k == 3, "tower over T_" + std::to_string(rep.k));
    o.expect(rep.basis && rep.basis->size() == 9, "basis size");
    o.expect(rep.ok(), "verification");
    o.note = o.ok ? "{a, b} at k = 3, rank 9 verified over T_3" : o.note;
    return o;
}

Outcome disjointness() {
    Outcome o;
    Vars xy = make_vars({"x", "y"});
    o.expect(check_linear_disjointness({P("x", xy), P("y", xy)}, 3).disjoint, "{x, y} rejected");
    auto bad = check_linear_disjointness({P("x", xy), P("x^2*y^3", xy)}, 3);
    o.expect(!bad.disjoint && bad.witness == std::vector<unsigned>{1, 1}, "{x, x^2y^3} witness");
    TowerSpec spec;
    spec.p = 3;
    spec.vars = test::vars_xy();
    spec.radicands = {{P("X^3+9"), std::nullopt, 1}};
    spec.disjoint_block = {P("Y")};
    MixedTower m = mixed_tower(spec);
    o.expect(m.basis.size() == 9, "mixed rank");
    o.expect(m.closure.ok(), "mixed closure");
    o.note = o.ok ? "witness (1, 1); mixed rank 9 verified" : o.note;
    return o;
}

Outcome quadratic() {
    Outcome o;
    std::mt19937_64 rng(9001);
    Tower t = test::random_tower(rng, 2, 2);
    VBasis b = build_v_basis(t);
    o.expect(b.size() == 4, "rank");
    // Entry (j1, j2) is Π (τ_i - h_i)^{j_i}.
    for (const auto& e : b.entries()) {
        ClosureElement m = ClosureElement::constant(t, 1);
        for (std::size_t i = 0; i < 2; ++i)
            if (e.exps[i]) m = m * (tau(t, i) - ClosureElement::constant(t, t->radicand(i).h));
        o.expect(m == b.element(e), "entry is not a tau monomial");
    }
    for (unsigned j1 = 0; j1 < 2; ++j1)
        for (unsigned j2 = 0; j2 < 2; ++j2) {
            ClosureElement m = ClosureElement::constant(t, 1);
            if (j1) m = m * tau(t, 0);
            if (j2) m = m * tau(t, 1);
            o.expect(reduced(reduce_to_v(b, m)), "tau monomial outside span");
        }
    ClosureReport rep = verify_closure(b);
    o.expect(rep.ok(), "closure");
    o.expect(integrality_witnesses(t).ok(), "witnesses");
    o.note = o.ok ? "S[tau_1, tau_2] basis, " + std::to_string(rep.products_checked) + " products verified" : o.note;
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "example basis", kLimitExample, example_reproduction},
        {2, "C' identities", kLimitCPrime, cprime_identities},
        {3, "witness identities", kLimitWitness, witness_identities},
        {4, "oracle equivalence", kLimitOracle, oracle_equivalence},
        {5, "rank law", kLimitRank, rank_law},
        {6, "negative control", kLimitNegative, negative_control},
        {7, "pipeline", kLimitPipeline, pipeline},
        {8, "disjointness", kLimitDisjoint, disjointness},
        {9, "p = 2 branch", kLimitQuadratic, quadratic},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        bool in_time = secs < c.limit;
        bool pass = o.ok && in_time;
        if (!pass) ++failed;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << secs << " s, limit "
             << c.limit << " s)";
        if (!in_time) line << " over time limit;";
        line << " " << o.note;
        std::cout << line.str() << std::endl;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failed" : std::string("acceptance: all passed"))
              << std::endl;
    return failed ? 1 : 0;
}
