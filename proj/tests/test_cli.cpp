#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "tc/app.hpp"
#include "tc/spec_file.hpp"

namespace tc {
namespace {

const char* kExample = R"(
# rank 9
p = 3
vars = [X, Y]
radicand { f = "X^3 + 9", n = 3 }
radicand { f = "Y^3 + 9" }
)";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cmd(const std::string& cmd, const std::string& text, RunOptions opts = {}) {
    opts.command = cmd;
    std::ostringstream out, err;
    int code = run(opts, text, out, err);
    return {code, out.str(), err.str()};
}

TEST(ParseSpec, Example) {
    SpecFile s = parse_spec(kExample);
    EXPECT_EQ(s.p, 3u);
    EXPECT_EQ(s.vars->names, (std::vector<std::string>{"X", "Y"}));
    ASSERT_EQ(s.radicands.size(), 2u);
    EXPECT_EQ(s.radicands[0].f, test::P("X^3+9"));
    EXPECT_EQ(s.radicands[1].n, 3u);
}

TEST(ParseSpec, Rejections) {
    EXPECT_THROW(parse_spec("p = 4\nvars = [X]\n"), ParseError);
    EXPECT_THROW(parse_spec("p = 3\nvars = [X]\nradicand { f = \"X^3+9\", n = 9 }"), ParseError);
    EXPECT_THROW(parse_spec("p = 3\nvars = [X]\ncolour = 2\n"), ParseError);
    EXPECT_THROW(parse_spec("p = 3\nvars = [X]\nradicand { f = \"X^3+9\", m = 3 }"), ParseError);
    EXPECT_THROW(parse_spec("p = 3\nvars = [w1]\n"), ParseError);
    EXPECT_THROW(parse_spec("vars = [X]\n"), ParseError);
}

TEST(ParseSpec, Positions) {
    try {
        parse_spec("p = 3\nvars = [X]\nradicand { f = \"X^3 + Q\" }\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 23u);
        EXPECT_NE(std::string(e.what()).find("unknown variable 'Q'"), std::string::npos);
    }
    try {
        parse_spec("p = 3\nvars = [X]\n  p = 5\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 3u);
    }
}

TEST(ParseSpec, AllKeys) {
    SpecFile s = parse_spec(read_file(std::string(TC_SPEC_DIR) + "/pipeline_ab2.spec"));
    ASSERT_EQ(s.factored.size(), 1u);
    EXPECT_EQ(s.factored[0].factors[1].c, 2u);
    EXPECT_EQ(s.root_vars, (std::vector<std::string>{"u", "v"}));
    SpecFile m = parse_spec("p = 3 vars = [X, Y] disjoint { g = \"Y\" } k_candidates = [1, 3] seed = 9 samples = 12");
    EXPECT_EQ(m.disjoint.size(), 1u);
    EXPECT_EQ(m.k_candidates, (std::vector<unsigned>{1, 3}));
    EXPECT_EQ(m.seed, 9u);
    EXPECT_EQ(m.samples, 12u);
}

TEST(ParseElement, NormalFormsExponents) {
    Tower t = test::example_tower();
    ClosureElement x = parse_element("p^-2 * (w1 - X)^4", t);
    EXPECT_EQ(x, ClosureElement(TowerElement::omega_shift(t, 0).pow(4), 2));
    EXPECT_EQ(parse_element("w1^3", t), ClosureElement::constant(t, test::P("X^3+9")));
    EXPECT_THROW(parse_element("w3", t), ParseError);
}

TEST(Run, BasisLines) {
    Result r = run_cmd("basis", kExample);
    EXPECT_EQ(r.code, kVerified);
    EXPECT_EQ(r.out, build_v_basis(test::example_tower()).serialize());
}

TEST(Run, BasisLinesParseBack) {
    Tower t = test::example_tower();
    VBasis b = build_v_basis(t);
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(parse_element(b.entry_string(b.entries()[i]), t), b.element(i));
}

TEST(Run, CheckRejects) {
    Result r = run_cmd("check", "p = 3 vars = [X] radicand { f = \"X^3 + 3\" }");
    EXPECT_EQ(r.code, kRejected);
    EXPECT_NE(r.out.find("not a p-th power mod p^2"), std::string::npos);
    EXPECT_EQ(run_cmd("check", "p = 4 vars = [X]").code, kRejected);
}

TEST(Run, VerifyExample) {
    RunOptions o;
    o.samples = 30;
    Result r = run_cmd("verify", kExample, o);
    EXPECT_EQ(r.code, kVerified) << r.out;
    const std::vector<std::string> order{"== hypotheses", "== basis", "== closure", "== witnesses", "== oracle",
                                         "result: verified"};
    std::size_t pos = 0;
    for (const auto& s : order) {
        std::size_t at = r.out.find(s, pos);
        ASSERT_NE(at, std::string::npos) << s;
        pos = at;
    }
    EXPECT_EQ(run_cmd("verify", kExample, o).out, r.out);
}

TEST(Run, Reduce) {
    RunOptions o;
    o.element = "p^-2 * (w1 - X)^4";
    Result r = run_cmd("reduce", "p = 3 vars = [X] radicand { f = \"X^3 + 9\" }", o);
    EXPECT_EQ(r.code, kVerified);
    EXPECT_NE(r.out.find("in module: yes"), std::string::npos);
    EXPECT_NE(r.out.find("-3*X  [p^-0 * 1]"), std::string::npos);
    EXPECT_NE(r.out.find("X^3 + 1  [p^-0 * (w1 - X)^1]"), std::string::npos);
    EXPECT_NE(r.out.find("2*X^2  [p^-1 * (w1 - X)^2]"), std::string::npos);

    o.element = "p^-1 * 1";
    r = run_cmd("reduce", "p = 3 vars = [X] radicand { f = \"X^3 + 9\" }", o);
    EXPECT_EQ(r.code, kVerified);
    EXPECT_NE(r.out.find("in module: no"), std::string::npos);
}

TEST(Run, DisjointAndPipeline) {
    EXPECT_EQ(run_cmd("disjoint", "p = 3 vars = [x, y] disjoint { g = \"x\" } disjoint { g = \"y\" }").code, kVerified);
    Result bad = run_cmd("disjoint", read_file(std::string(TC_SPEC_DIR) + "/not_disjoint.spec"));
    EXPECT_EQ(bad.code, kRejected);
    EXPECT_NE(bad.out.find("witness (1, 1)"), std::string::npos);

    Result pipe = run_cmd("pipeline", read_file(std::string(TC_SPEC_DIR) + "/pipeline_ab2.spec"));
    EXPECT_EQ(pipe.code, kVerified) << pipe.out;
    EXPECT_NE(pipe.out.find("k = 3"), std::string::npos);

    Result fail = run_cmd("pipeline", "p = 3 vars = [x] radicand { f = \"x + 3\" }");
    EXPECT_EQ(fail.code, kRejected);
    EXPECT_NE(fail.out.find("stage: w_membership"), std::string::npos);
}

int exit_status(const std::string& args) {
    std::string cmd = std::string(TC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

TEST(Binary, ExitCodes) {
    const std::string dir = TC_SPEC_DIR;
    EXPECT_EQ(exit_status("check --spec " + dir + "/example_rank9.spec"), 0);
    EXPECT_EQ(exit_status("check --spec " + dir + "/negative.spec"), 1);
    EXPECT_EQ(exit_status("disjoint --spec " + dir + "/not_disjoint.spec"), 1);
    EXPECT_EQ(exit_status("verify --samples 10 --spec " + dir + "/mixed.spec"), 0);
    EXPECT_EQ(exit_status("reduce --spec " + dir + "/example_rank9.spec 'p^-1 * (w1 - X)^2'"), 0);
}

TEST(Binary, OutputFileIsStable) {
    const std::string dir = TC_SPEC_DIR;
    const std::string a = testing::TempDir() + "/tc_a.txt", b = testing::TempDir() + "/tc_b.txt";
    ASSERT_EQ(exit_status("verify --samples 20 --seed 5 --spec " + dir + "/example_rank9.spec --output " + a), 0);
    ASSERT_EQ(exit_status("verify --samples 20 --seed 5 --spec " + dir + "/example_rank9.spec --output " + b), 0);
    std::string ta = read_file(a);
    EXPECT_FALSE(ta.empty());
    EXPECT_EQ(ta, read_file(b));
    EXPECT_NE(ta.find("seed 5, samples 20"), std::string::npos);
}

}  // namespace
}  // namespace tc
