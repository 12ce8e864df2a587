#ifndef QLH_ATOM_HPP
#define QLH_ATOM_HPP

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlh {

class Expression;

using AtomId = std::uint32_t;

enum class AtomKind {
    Independent,   // x, t
    Dependent,     // u, v
    Jet,           // u_x, u_t, u_xx, u_xt, u_tt, v_x, v_t
    AbstractFunc,  // f, g, h, xi..eta, alpha..gamma, F and their partials
    Transcendental,// exp(<inner expression>)
    Parameter,     // a, c, user-declared constants
};

struct Atom {
    std::string name;
    AtomKind kind = AtomKind::Parameter;
    // Abstract functions: base family name, directions it depends on,
    // and the derivative multi-index relative to the base symbol.
    std::string base;
    std::vector<AtomId> deps;              // ordered by direction id
    std::vector<std::uint8_t> multi_index; // parallel to deps
    bool prime_names = false;              // F -> F' -> F'' instead of F_x
    // Transcendental: index into the registry's inner-expression table.
    std::int32_t inner = -1;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};

// Append-only atom registry. The standard alphabet is pre-registered in a
// fixed order so atom ids (and hence the monomial order and printed term
// order) do not depend on call history. Registration is mutex-guarded;
// lookups of already-registered atoms are immutable-after-publish.
class Registry {
public:
    static Registry& instance();

    AtomId param(const std::string& name);
    AtomId abstract_func(const std::string& base, const std::vector<AtomId>& deps,
                         bool prime_names = false);
    AtomId exp_of(const Expression& inner);

    // Partial-derivative atom of an abstract function; spawns on demand.
    // Multi-indices commute: the spawned name sorts directions by id.
    AtomId partial(AtomId fn, AtomId dir);

    const Atom& atom(AtomId id) const;
    std::optional<AtomId> find(const std::string& name) const;
    AtomId named(const std::string& name) const; // throws if absent

    // d(atom)/d(dir) as an expression: 1, 0, a table entry, or a spawned
    // partial atom. `dir` may be any registered atom.
    Expression derivative(AtomId a, AtomId dir);

    const Expression& inner_of(AtomId transcendental) const;

    std::size_t size() const;

    // Fixed ids of the pre-registered alphabet.
    struct Std {
        AtomId x, t, u, v;
        AtomId u_x, u_t, u_xx, u_xt, u_tt, v_x, v_t;
        AtomId exp_x;
        AtomId f, g, h;
        AtomId xi, tau, phi, eta;
        AtomId alpha, beta, gamma;
        AtomId F, F1, F2; // F, F', F''
    };
    const Std& std_ids() const { return std_; }

private:
    Registry();
    AtomId add(Atom a);
    AtomId add_locked(Atom a);

    // deques: stable references under append-only growth
    mutable std::mutex mu_;
    std::deque<Atom> atoms_;
    std::unordered_map<std::string, AtomId> by_name_;
    std::deque<Expression> inners_;
    Std std_{};
};

inline Registry& reg() { return Registry::instance(); }

} // namespace qlh

#endif
