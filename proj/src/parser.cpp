#include "qlh/parser.hpp"

#include <cctype>
#include <set>

#include <json.hpp>

namespace qlh {

bool Scope::allows(AtomId a) const {
    if (std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end()) return true;
    const Atom& at = reg().atom(a);
    if (at.kind == AtomKind::AbstractFunc && at.name != at.base) {
        auto base = reg().find(at.base);
        return base && allows(*base);
    }
    return false;
}

std::optional<AtomId> Scope::resolve(const std::string& name) const {
    if (auto id = reg().find(name)) return id;
    // partial of an abstract function: base_xu style or F'' style
    std::string base;
    std::string suffix;
    if (auto apos = name.find('\''); apos != std::string::npos) {
        base = name.substr(0, apos);
        suffix = name.substr(apos);
        if (suffix.find_first_not_of('\'') != std::string::npos) return std::nullopt;
    } else if (auto upos = name.rfind('_'); upos != std::string::npos && upos > 0) {
        base = name.substr(0, upos);
        suffix = name.substr(upos + 1);
        if (suffix.empty()) return std::nullopt;
    } else {
        return std::nullopt;
    }
    auto bid = reg().find(base);
    if (!bid || reg().atom(*bid).kind != AtomKind::AbstractFunc) return std::nullopt;
    AtomId cur = *bid;
    const bool primes = reg().atom(*bid).prime_names;
    for (char c : suffix) {
        AtomId dir;
        if (primes) {
            dir = reg().atom(cur).deps.at(0);
        } else {
            auto d = reg().find(std::string(1, c));
            if (!d) return std::nullopt;
            dir = *d;
        }
        const auto& deps = reg().atom(cur).deps;
        if (std::find(deps.begin(), deps.end(), dir) == deps.end()) return std::nullopt;
        cur = reg().partial(cur, dir);
    }
    return cur;
}

namespace {

struct Token {
    enum Type { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } type;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) return {Token::End, "", line, col};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string t;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                t += advance();
            return {Token::Num, t, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string t;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                t += advance();
            while (pos_ < s_.size() && s_[pos_] == '\'') t += advance();
            return {Token::Ident, t, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Token::Plus, "+", line, col};
            case '-': return {Token::Minus, "-", line, col};
            case '*': return {Token::Star, "*", line, col};
            case '/': return {Token::Slash, "/", line, col};
            case '^': return {Token::Caret, "^", line, col};
            case '(': return {Token::LParen, "(", line, col};
            case ')': return {Token::RParen, ")", line, col};
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
    }
    char advance() {
        char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, const Scope& scope) : lex_(text), scope_(scope) {
        bump();
    }

    Expression parse() {
        Expression e = expr();
        expect(Token::End, "end of input");
        return e;
    }

private:
    void bump() { cur_ = lex_.next(); }
    void expect(Token::Type t, const char* what) {
        if (cur_.type != t)
            throw ParseError(std::string("expected ") + what + ", found '" +
                                 (cur_.type == Token::End ? "<end>" : cur_.text) + "'",
                             cur_.line, cur_.col);
        bump();
    }

    Expression expr() {
        Expression e = term();
        while (cur_.type == Token::Plus || cur_.type == Token::Minus) {
            bool minus = cur_.type == Token::Minus;
            bump();
            Expression r = term();
            e = minus ? e - r : e + r;
        }
        return e;
    }

    Expression term() {
        Expression e = unary();
        while (cur_.type == Token::Star || cur_.type == Token::Slash) {
            bool div = cur_.type == Token::Slash;
            Token op = cur_;
            bump();
            Expression r = unary();
            if (div && r.is_zero()) throw ParseError("division by zero", op.line, op.col);
            e = div ? e / r : e * r;
        }
        return e;
    }

    Expression unary() {
        if (cur_.type == Token::Minus) {
            bump();
            return -factor();
        }
        return factor();
    }

    Expression factor() {
        Expression b = base();
        if (cur_.type == Token::Caret) {
            Token op = cur_;
            bump();
            int sign = 1;
            if (cur_.type == Token::Minus) {
                sign = -1;
                bump();
            } else if (cur_.type == Token::Plus) {
                bump();
            }
            if (cur_.type != Token::Num)
                throw ParseError("expected integer exponent", cur_.line, cur_.col);
            if (cur_.text.size() > 3)
                throw ParseError("exponent too large", cur_.line, cur_.col);
            int e = sign * std::stoi(cur_.text);
            bump();
            if (e < 0 && b.is_zero())
                throw ParseError("zero raised to a negative power", op.line, op.col);
            return b.pow(e);
        }
        return b;
    }

    Expression base() {
        switch (cur_.type) {
            case Token::Num: {
                mpq_class q(cur_.text);
                bump();
                return Expression(GaussRat(std::move(q), mpq_class(0)));
            }
            case Token::LParen: {
                bump();
                Expression e = expr();
                expect(Token::RParen, "')'");
                return e;
            }
            case Token::Ident: {
                Token id = cur_;
                bump();
                if (id.text == "i") return Expression::imaginary();
                if (id.text == "exp") {
                    expect(Token::LParen, "'(' after exp");
                    Expression inner = expr();
                    expect(Token::RParen, "')'");
                    return Expression::atom(reg().exp_of(inner));
                }
                auto atom = scope_.resolve(id.text);
                if (!atom)
                    throw ParseError("unknown identifier '" + id.text + "'", id.line, id.col);
                if (!scope_.allows(*atom))
                    throw ParseError("identifier '" + id.text + "' not allowed in this context",
                                     id.line, id.col);
                return Expression::atom(*atom);
            }
            default:
                throw ParseError("expected a number, identifier or '('", cur_.line, cur_.col);
        }
    }

    Lexer lex_;
    Token cur_{Token::End, "", 0, 0};
    const Scope& scope_;
};

} // namespace

Expression parse_expr(const std::string& text, const Scope& scope) {
    if (text.empty()) throw ParseError("empty expression");
    return Parser(text, scope).parse();
}

// ---- JSON documents ----

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const char* doc) {
    if (!j.is_object()) throw ParseError(std::string(doc) + ": expected a JSON object");
    for (auto& [k, v] : j.items())
        if (!allowed.count(k))
            throw ParseError(std::string(doc) + ": unknown field '" + k + "'");
}

std::string get_string(const json& j, const char* field, const char* doc) {
    if (!j.contains(field))
        throw ParseError(std::string(doc) + ": missing field '" + field + "'");
    if (!j[field].is_string())
        throw ParseError(std::string(doc) + ": field '" + field + "' must be a string");
    return j[field].get<std::string>();
}

} // namespace

Scope scope_fgh(const PdeSpec& spec, bool with_u) {
    const auto& s = reg().std_ids();
    Scope sc({s.x});
    if (with_u) sc.add(s.u);
    sc.add_all(spec.params);
    if (spec.abstract_f) sc.add(s.f);
    if (spec.abstract_g) sc.add(s.g);
    if (spec.abstract_h) sc.add(s.h);
    return sc;
}

Scope scope_generator(const PdeSpec& spec) {
    const auto& s = reg().std_ids();
    Scope sc({s.x, s.t, s.u, s.v});
    sc.add_all(spec.params);
    if (spec.abstract_f) sc.add(s.f);
    if (spec.abstract_g) sc.add(s.g);
    if (spec.abstract_h) sc.add(s.h);
    return sc;
}

Scope scope_solution_rhs(const PdeSpec& spec) {
    const auto& s = reg().std_ids();
    Scope sc({s.x, s.t});
    sc.add_all(spec.params);
    return sc;
}

Scope scope_relation(const PdeSpec& spec) {
    const auto& s = reg().std_ids();
    Scope sc({s.x, s.t, s.u});
    sc.add_all(spec.params);
    return sc;
}

Scope scope_jet(const PdeSpec& spec) {
    const auto& s = reg().std_ids();
    Scope sc({s.x, s.t, s.u, s.v, s.u_x, s.u_t, s.u_xx, s.u_xt, s.u_tt, s.v_x, s.v_t});
    sc.add_all(spec.params);
    if (spec.abstract_f) sc.add(s.f);
    if (spec.abstract_g) sc.add(s.g);
    if (spec.abstract_h) sc.add(s.h);
    return sc;
}

PdeSpec parse_problem(const std::string& json_text) {
    json j = parse_json(json_text);
    check_keys(j, {"params", "f", "g", "h", "abstract"}, "ProblemDoc");

    PdeSpec spec;
    if (j.contains("params")) {
        if (!j["params"].is_array()) throw ParseError("ProblemDoc: 'params' must be an array");
        for (auto& p : j["params"]) {
            if (!p.is_string()) throw ParseError("ProblemDoc: parameter names must be strings");
            try {
                spec.params.push_back(reg().param(p.get<std::string>()));
            } catch (const DomainError& e) {
                throw ParseError(std::string("ProblemDoc: ") + e.what());
            }
        }
    }
    if (j.contains("abstract")) {
        if (!j["abstract"].is_array())
            throw ParseError("ProblemDoc: 'abstract' must be an array");
        for (auto& a : j["abstract"]) {
            std::string n = a.is_string() ? a.get<std::string>() : "";
            if (n == "f")
                spec.abstract_f = true;
            else if (n == "g")
                spec.abstract_g = true;
            else if (n == "h")
                spec.abstract_h = true;
            else
                throw ParseError("ProblemDoc: 'abstract' entries must be \"f\", \"g\" or \"h\"");
        }
    }
    spec.f = parse_expr(get_string(j, "f", "ProblemDoc"), scope_fgh(spec, false));
    spec.g = parse_expr(get_string(j, "g", "ProblemDoc"), scope_fgh(spec, true));
    spec.h = parse_expr(get_string(j, "h", "ProblemDoc"), scope_fgh(spec, true));
    if (spec.f.is_zero()) throw ParseError("ProblemDoc: f must be a nonzero function");
    return spec;
}

VectorField parse_generator(const std::string& json_text, const PdeSpec& spec) {
    json j = parse_json(json_text);
    check_keys(j, {"xi", "tau", "phi", "eta"}, "GeneratorDoc");
    Scope sc = scope_generator(spec);
    VectorField vf;
    vf.xi = parse_expr(get_string(j, "xi", "GeneratorDoc"), sc);
    vf.tau = parse_expr(get_string(j, "tau", "GeneratorDoc"), sc);
    vf.phi = parse_expr(get_string(j, "phi", "GeneratorDoc"), sc);
    vf.eta = parse_expr(get_string(j, "eta", "GeneratorDoc"), sc);
    return vf;
}

Candidate parse_solution(const std::string& json_text, const PdeSpec& spec) {
    json j = parse_json(json_text);
    check_keys(j, {"u", "relation_u", "v"}, "SolutionDoc");
    if (j.contains("u") == j.contains("relation_u"))
        throw ParseError("SolutionDoc: exactly one of 'u' and 'relation_u' is required");
    Candidate c;
    if (j.contains("u")) {
        c.u = parse_expr(get_string(j, "u", "SolutionDoc"), scope_solution_rhs(spec));
    } else {
        Expression r = parse_expr(get_string(j, "relation_u", "SolutionDoc"),
                                  scope_relation(spec));
        if (r.num().degree_of(reg().std_ids().u) < 1 || r.den().contains(reg().std_ids().u))
            throw ParseError("SolutionDoc: 'relation_u' must be polynomial in u with positive "
                             "degree");
        c.relation_u = r;
    }
    c.v = parse_expr(get_string(j, "v", "SolutionDoc"), scope_solution_rhs(spec));
    return c;
}

ConservedVector parse_conserved(const std::string& json_text, const PdeSpec& spec) {
    json j = parse_json(json_text);
    check_keys(j, {"T1", "T2"}, "ConservedDoc");
    Scope sc = scope_jet(spec);
    ConservedVector cv;
    cv.T1 = parse_expr(get_string(j, "T1", "ConservedDoc"), sc);
    cv.T2 = parse_expr(get_string(j, "T2", "ConservedDoc"), sc);
    return cv;
}

} // namespace qlh
