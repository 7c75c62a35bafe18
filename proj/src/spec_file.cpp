#include "tc/spec_file.hpp"

#include <cctype>
#include <map>
#include <regex>
#include <set>

#include "tc/predicates.hpp"

namespace tc {

namespace {

enum class Tok { Ident, Int, String, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, std::string(s.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
            if (j >= s.size() || s[j] != '"') throw ParseError("unterminated string", line, col);
            // Column of the first character inside the quotes.
            out.push_back({Tok::String, std::string(s.substr(i + 1, j - i - 1)), line, col + 1});
            advance(j - i + 1);
        } else if (std::string_view("={}[],").find(c) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, c), line, col});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct Value {
    Token tok;                  ///< scalar token, or the opening bracket of a list
    bool is_list = false;
    std::vector<Token> items;
};

struct Entry {
    Token key;
    Value value;
};

struct Block {
    Token name;
    std::vector<Entry> entries;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    void parse(std::vector<Entry>& top, std::vector<Block>& blocks) {
        while (peek().kind != Tok::End) {
            Token key = expect(Tok::Ident, "a key or block name");
            if (is_sym("{")) {
                next();
                Block b{key, {}};
                while (!is_sym("}")) {
                    if (peek().kind == Tok::End) fail(peek(), "missing '}'");
                    Token k = expect(Tok::Ident, "a key");
                    expect_sym("=");
                    b.entries.push_back({k, value()});
                    if (is_sym(",")) next();
                }
                next();
                blocks.push_back(std::move(b));
            } else {
                expect_sym("=");
                top.push_back({key, value()});
            }
        }
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }

    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.col); }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
        return next();
    }
    void expect_sym(const char* s) {
        if (!is_sym(s)) fail(peek(), std::string("expected '") + s + "'");
        next();
    }

    Value value() {
        if (is_sym("[")) {
            Value v{next(), true, {}};
            while (!is_sym("]")) {
                const Token& t = peek();
                if (t.kind == Tok::Sym || t.kind == Tok::End) fail(t, "expected a list item or ']'");
                v.items.push_back(next());
                if (is_sym(",")) next();
                else if (!is_sym("]")) fail(peek(), "expected ',' or ']'");
            }
            next();
            return v;
        }
        const Token& t = peek();
        if (t.kind == Tok::Sym || t.kind == Tok::End) fail(t, "expected a value");
        return Value{next(), false, {}};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.col); }

const Token& scalar(const Value& v, Tok kind, const char* what) {
    if (v.is_list || v.tok.kind != kind) fail(v.tok, std::string("expected ") + what);
    return v.tok;
}

std::uint64_t to_uint(const Token& t) {
    try {
        std::size_t used = 0;
        unsigned long long x = std::stoull(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        fail(t, "integer out of range");
    }
}

unsigned small_uint(const Value& v, const char* what) {
    const Token& t = scalar(v, Tok::Int, what);
    std::uint64_t x = to_uint(t);
    if (x > 1u << 20) fail(t, "integer too large");
    return static_cast<unsigned>(x);
}

std::vector<const Token*> list_of(const Value& v, Tok kind, const char* what) {
    if (!v.is_list) fail(v.tok, std::string("expected a list of ") + what);
    std::vector<const Token*> out;
    for (const auto& t : v.items) {
        if (t.kind != kind) fail(t, std::string("expected ") + what);
        out.push_back(&t);
    }
    return out;
}

Poly poly_at(const Token& t, const Vars& vars) { return parse_poly(t.text, vars, t.line, t.col - 1); }

bool reserved_name(const std::string& s) {
    static const std::regex re("(w|z|rt)[0-9]+|p");
    return std::regex_match(s, re);
}

void check_degree(const Value& v, unsigned n, unsigned p) {
    if (n == 0 || n % p != 0) fail(v.tok, "n = " + std::to_string(n) + " is not a multiple of p");
    if ((n / p) % p == 0) fail(v.tok, "n = " + std::to_string(n) + ": p^2 divides n");
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
    std::vector<Entry> top;
    std::vector<Block> blocks;
    Parser(tokenize(text)).parse(top, blocks);

    std::map<std::string, const Entry*> keys;
    for (const auto& e : top) {
        static const std::set<std::string> known{"p", "vars", "k_candidates", "seed", "samples", "root_vars"};
        if (!known.count(e.key.text)) fail(e.key, "unknown key '" + e.key.text + "'");
        if (keys.count(e.key.text)) fail(e.key, "duplicate key '" + e.key.text + "'");
        keys[e.key.text] = &e;
    }

    SpecFile spec;
    if (!keys.count("p")) throw ParseError("missing 'p'", 1, 1);
    const Value& pv = keys["p"]->value;
    spec.p = small_uint(pv, "an integer");
    if (!is_prime(spec.p)) fail(pv.tok, "p = " + std::to_string(spec.p) + " is not prime");

    if (!keys.count("vars")) throw ParseError("missing 'vars'", 1, 1);
    std::vector<std::string> names;
    for (const Token* t : list_of(keys["vars"]->value, Tok::Ident, "variable names")) {
        if (reserved_name(t->text)) fail(*t, "variable name '" + t->text + "' is reserved");
        for (const auto& n : names)
            if (n == t->text) fail(*t, "duplicate variable '" + t->text + "'");
        names.push_back(t->text);
    }
    if (names.size() > kMaxVars) fail(keys["vars"]->value.tok, "too many variables");
    spec.vars = make_vars(names);

    if (keys.count("k_candidates"))
        for (const Token* t : list_of(keys["k_candidates"]->value, Tok::Int, "integers")) {
            std::uint64_t k = to_uint(*t);
            if (k == 0 || k > 1000) fail(*t, "k must lie in [1, 1000]");
            spec.k_candidates.push_back(static_cast<unsigned>(k));
        }
    if (keys.count("seed")) spec.seed = to_uint(scalar(keys["seed"]->value, Tok::Int, "an integer"));
    if (keys.count("samples")) spec.samples = small_uint(keys["samples"]->value, "an integer");
    if (keys.count("root_vars")) {
        const Value& rv = keys["root_vars"]->value;
        for (const Token* t : list_of(rv, Tok::Ident, "variable names")) {
            if (reserved_name(t->text)) fail(*t, "variable name '" + t->text + "' is reserved");
            spec.root_vars.push_back(t->text);
        }
        if (spec.root_vars.size() != names.size()) fail(rv.tok, "root_vars must name one root per variable");
    }

    for (const auto& b : blocks) {
        std::map<std::string, const Value*> fields;
        std::set<std::string> allowed;
        if (b.name.text == "radicand")
            allowed = {"f", "n"};
        else if (b.name.text == "factored")
            allowed = {"n", "factors", "exponents", "g"};
        else if (b.name.text == "disjoint")
            allowed = {"g"};
        else
            fail(b.name, "unknown block '" + b.name.text + "'");
        for (const auto& e : b.entries) {
            if (!allowed.count(e.key.text)) fail(e.key, "unknown key '" + e.key.text + "' in " + b.name.text);
            if (fields.count(e.key.text)) fail(e.key, "duplicate key '" + e.key.text + "'");
            fields[e.key.text] = &e.value;
        }
        auto need = [&](const char* k) -> const Value& {
            if (!fields.count(k)) fail(b.name, std::string("missing '") + k + "' in " + b.name.text);
            return *fields[k];
        };

        if (b.name.text == "radicand") {
            SpecRadicand r;
            r.f = poly_at(scalar(need("f"), Tok::String, "a quoted polynomial"), spec.vars);
            r.n = spec.p;
            if (fields.count("n")) {
                r.n = small_uint(*fields["n"], "an integer");
                check_degree(*fields["n"], r.n, spec.p);
            }
            r.line = b.name.line;
            spec.radicands.push_back(std::move(r));
        } else if (b.name.text == "factored") {
            SpecFactored fb;
            fb.n = spec.p;
            if (fields.count("n")) {
                fb.n = small_uint(*fields["n"], "an integer");
                check_degree(*fields["n"], fb.n, spec.p);
            }
            auto qs = list_of(need("factors"), Tok::String, "quoted polynomials");
            std::vector<unsigned> cs(qs.size(), 1);
            if (fields.count("exponents")) {
                auto es = list_of(*fields["exponents"], Tok::Int, "integers");
                if (es.size() != qs.size()) fail(fields["exponents"]->tok, "one exponent per factor expected");
                for (std::size_t i = 0; i < es.size(); ++i) {
                    std::uint64_t c = to_uint(*es[i]);
                    if (c == 0 || c > 1000) fail(*es[i], "exponent must lie in [1, 1000]");
                    cs[i] = static_cast<unsigned>(c);
                }
            }
            for (std::size_t i = 0; i < qs.size(); ++i) fb.factors.push_back({poly_at(*qs[i], spec.vars), cs[i]});
            if (fb.factors.empty()) fail(need("factors").tok, "empty factor list");
            if (fields.count("g")) fb.g = poly_at(scalar(*fields["g"], Tok::String, "a quoted polynomial"), spec.vars);
            fb.line = b.name.line;
            spec.factored.push_back(std::move(fb));
        } else {
            spec.disjoint.push_back(poly_at(scalar(need("g"), Tok::String, "a quoted polynomial"), spec.vars));
        }
    }
    return spec;
}

namespace {

Poly factored_product(const SpecFactored& fb, const Vars& vars) {
    if (fb.g) return *fb.g;
    Poly prod(vars, 1);
    for (const auto& fp : fb.factors) prod *= fp.q.pow(fp.c);
    return prod;
}

}  // namespace

TowerSpec SpecFile::tower_spec() const {
    TowerSpec ts;
    ts.p = p;
    ts.vars = vars;
    for (const auto& r : radicands) ts.radicands.push_back({r.f, std::nullopt, r.n / p});
    for (const auto& fb : factored) {
        ExponentReduction red = reduce_exponents(fb.factors, fb.n, factored_product(fb, vars));
        for (const auto& q : red.radicands) ts.radicands.push_back({q, std::nullopt, fb.n / p});
    }
    ts.disjoint_block = disjoint;
    return ts;
}

std::vector<PipelineInput> SpecFile::pipeline_inputs() const {
    std::vector<PipelineInput> out;
    for (const auto& r : radicands) out.push_back({r.f, r.n, std::nullopt});
    for (const auto& fb : factored) out.push_back({factored_product(fb, vars), fb.n, fb.factors});
    return out;
}

ClosureElement parse_element(std::string_view text, const Tower& ctx) {
    static const std::regex prefix(R"(^\s*p\s*\^\s*-\s*([0-9]+)\s*\*)");
    std::string s(text);
    unsigned k = 0;
    std::size_t offset = 0;
    std::smatch m;
    if (std::regex_search(s, m, prefix)) {
        k = static_cast<unsigned>(std::stoul(m[1].str()));
        offset = static_cast<std::size_t>(m.length(0));
    }
    Vars ev = element_ring(*ctx);
    Poly poly = parse_poly(std::string_view(s).substr(offset), ev, 1, offset);
    const std::size_t nbase = ctx->vars()->size();
    const unsigned p = ctx->p();

    TowerElement out(ctx);
    for (const auto& t : poly.terms()) {
        Monomial base(nbase);
        for (std::size_t v = 0; v < nbase; ++v) base.set(v, t.mono[v]);
        Poly c = Poly::monomial(ctx->vars(), base, t.coeff);
        std::vector<unsigned> e(ctx->axes());
        for (std::size_t a = 0; a < ctx->axes(); ++a) {
            unsigned x = t.mono[nbase + a];
            e[a] = x % p;
            if (x >= p) c *= ctx->reduction(a).pow(x / p);
        }
        std::size_t idx = ctx->index_of(e);
        out.set(idx, out[idx] + c);
    }
    return ClosureElement(out, k);
}

}  // namespace tc
