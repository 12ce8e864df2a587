#ifndef QLH_PARSER_HPP
#define QLH_PARSER_HPP

#include <string>
#include <vector>

#include "qlh/domain.hpp"

namespace qlh {

struct ParseError : Error {
    ParseError(const std::string& msg, int line = 0, int col = 0)
        : Error(line > 0 ? msg + " at line " + std::to_string(line) + ", column " +
                               std::to_string(col)
                         : msg),
          line(line),
          col(col) {}
    int line, col;
};

// Set of atoms an expression may mention. Partial-derivative atoms of an
// allowed abstract function are allowed implicitly (g in scope => g_xu ok).
class Scope {
public:
    Scope() = default;
    explicit Scope(std::vector<AtomId> atoms) : atoms_(std::move(atoms)) {}

    void add(AtomId a) { atoms_.push_back(a); }
    void add_all(const std::vector<AtomId>& as) {
        atoms_.insert(atoms_.end(), as.begin(), as.end());
    }
    bool allows(AtomId a) const;

    // Resolve an identifier, spawning partial atoms (g_xu, F'') on demand.
    // Returns nullopt for names that are not registered and not spawnable.
    std::optional<AtomId> resolve(const std::string& name) const;

    // Every allowed base atom (used by fuzz tests).
    const std::vector<AtomId>& atoms() const { return atoms_; }

private:
    std::vector<AtomId> atoms_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-'? factor
//   factor := base ('^' signed-integer)?
//   base   := rational | 'i' | identifier | 'exp' '(' expr ')' | '(' expr ')'
// '^' binds tighter than unary minus: -x^2 is -(x^2). 1/2*u is (1/2)*u by
// left associativity. Integer exponents only. Whitespace insignificant.
Expression parse_expr(const std::string& text, const Scope& scope);

// JSON document parsing (schemas in the README). All validation errors
// throw ParseError; no parse aborts the process.
PdeSpec parse_problem(const std::string& json_text);
VectorField parse_generator(const std::string& json_text, const PdeSpec& spec);
Candidate parse_solution(const std::string& json_text, const PdeSpec& spec);
ConservedVector parse_conserved(const std::string& json_text, const PdeSpec& spec);

// Scopes used by the document parsers (exposed for tests and the CLI).
Scope scope_fgh(const PdeSpec& spec, bool with_u);    // f: no u; g,h: with u
Scope scope_generator(const PdeSpec& spec);           // x,t,u,v,params(+abstract)
Scope scope_solution_rhs(const PdeSpec& spec);        // x,t,params
Scope scope_relation(const PdeSpec& spec);            // x,t,u,params
Scope scope_jet(const PdeSpec& spec);                 // full jet alphabet

} // namespace qlh

#endif
