#ifndef QLH_EXPR_HPP
#define QLH_EXPR_HPP

#include <complex>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlh/poly.hpp"

namespace qlh {

struct EvalError : Error {
    using Error::Error;
};

// Exact multivariate rational function over the atom alphabet with
// Gaussian-rational coefficients. Always canonical: numerator and
// denominator coprime, denominator monic and nonzero, zero is 0/1.
// Equality is representation identity. Immutable value type.
class Expression {
public:
    Expression() : num_(), den_(Poly::one()) {}
    Expression(long n) : num_(GaussRat(n)), den_(Poly::one()) {}
    explicit Expression(GaussRat c) : num_(std::move(c)), den_(Poly::one()) {}
    explicit Expression(Poly p) : num_(std::move(p)), den_(Poly::one()) {}
    Expression(Poly num, Poly den); // normalizes; throws on zero denominator

    static Expression atom(AtomId a) { return Expression(Poly(a)); }
    static Expression rational(long num, long den) { return Expression(GaussRat(num, den)); }
    static Expression imaginary() { return Expression(GaussRat::i()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == Poly::one(); }

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    Expression operator-() const;
    Expression& operator+=(const Expression& o) { return *this = *this + o; }
    Expression& operator-=(const Expression& o) { return *this = *this - o; }
    Expression& operator*=(const Expression& o) { return *this = *this * o; }
    Expression& operator/=(const Expression& o) { return *this = *this / o; }
    Expression pow(int e) const; // negative exponents invert

    friend bool operator==(const Expression& a, const Expression& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

    // Re-canonicalization entry point; idempotent (verified by property test).
    Expression normalized() const { return Expression(num_, den_); }

    std::vector<AtomId> atoms() const;
    bool contains(AtomId a) const;
    bool contains_any(const std::vector<AtomId>& as) const;

    std::string str() const; // parseable by the expression grammar

private:
    Poly num_, den_;
};

// Formal partial derivative: every atom other than `dir` is constant except
// through its registered derivation table (e.g. d/dx exp(x) = exp(x),
// d/du g = g_u). Linear, Leibniz; quotient rule on the rational structure.
Expression diff_partial(const Expression& e, AtomId dir);

// Simultaneous substitution; unbound atoms unchanged; result canonical.
using Bindings = std::unordered_map<AtomId, Expression>;
Expression substitute(const Expression& e, const Bindings& b);

// Coefficients of monomials in the split atoms: e = sum(mono * coeff),
// coefficients free of split atoms, empty map iff e == 0.
// Throws DomainError if the denominator involves a split atom.
std::map<Monomial, Expression, MonoLess> collect(const Expression& e,
                                                 const std::vector<AtomId>& split);

// Floating evaluation. Transcendental atoms are evaluated through their
// inner expression; all other atoms must be bound. Throws EvalError on an
// unbound atom or a denominator with magnitude below 1e-12.
using NumericPoint = std::unordered_map<AtomId, std::complex<double>>;
std::complex<double> eval_numeric(const Expression& e, const NumericPoint& point);

} // namespace qlh

#endif
