#ifndef QLH_POLY_HPP
#define QLH_POLY_HPP

#include <functional>
#include <map>
#include <vector>

#include "qlh/atom.hpp"
#include "qlh/rational.hpp"

namespace qlh {

// Sparse exponent vector, sorted ascending by atom id, exponents > 0.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(AtomId a, int e = 1) {
        if (e != 0) factors_.push_back({a, e});
    }

    const std::vector<std::pair<AtomId, int>>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int total_degree() const;
    int degree_of(AtomId a) const;
    bool contains(AtomId a) const { return degree_of(a) > 0; }

    Monomial operator*(const Monomial& o) const;
    // Exact division; throws DomainError if o does not divide *this.
    Monomial operator/(const Monomial& o) const;
    bool divisible_by(const Monomial& o) const;

    // Split into (factors over `pick`, remaining factors).
    std::pair<Monomial, Monomial> split(const std::vector<AtomId>& pick) const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors_ == b.factors_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    static Monomial from_sorted(std::vector<std::pair<AtomId, int>> f) {
        Monomial m;
        m.factors_ = std::move(f);
        return m;
    }

private:
    std::vector<std::pair<AtomId, int>> factors_;
};

// Graded reverse lexicographic order over the atom registration order
// (documented choice; any fixed total order would do). Returns <0, 0, >0
// like a three-way comparison, with the *larger* monomial first in a
// polynomial's term list.
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return mono_cmp(a, b) < 0;
    }
};

// Multivariate polynomial over GaussRat, terms sorted descending.
class Poly {
public:
    struct Term {
        Monomial mono;
        GaussRat coef;
    };

    Poly() = default;
    explicit Poly(GaussRat c) {
        if (!c.is_zero()) terms_.push_back({Monomial{}, std::move(c)});
    }
    explicit Poly(AtomId a) { terms_.push_back({Monomial(a), GaussRat(1)}); }
    Poly(Monomial m, GaussRat c) {
        if (!c.is_zero()) terms_.push_back({std::move(m), std::move(c)});
    }

    static Poly zero() { return Poly{}; }
    static Poly one() { return Poly(GaussRat(1)); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
    }
    const GaussRat& lead_coef() const { return terms_.front().coef; }
    const Monomial& lead_mono() const { return terms_.front().mono; }
    GaussRat constant_value() const; // throws unless is_constant()

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const GaussRat& c) const;
    Poly mul_term(const Monomial& m, const GaussRat& c) const;
    Poly pow(int e) const; // e >= 0

    int degree_of(AtomId a) const;
    bool contains(AtomId a) const { return degree_of(a) > 0; }
    void collect_atoms(std::vector<AtomId>& out) const;

    // Leading coefficient made 1 (monic in the monomial order).
    Poly monic() const;

    // Coefficients of powers of `a`: result[k] has degree k in `a` removed.
    std::vector<Poly> coeffs_in(AtomId a) const;
    static Poly from_coeffs_in(AtomId a, const std::vector<Poly>& cs);

    static Poly from_map(std::map<Monomial, GaussRat, MonoLess>&& m);

private:
    std::vector<Term> terms_; // descending, no zero coefficients
};

// Exact multivariate division; throws DomainError if b does not divide a.
Poly div_exact(const Poly& a, const Poly& b);

// GCD over the Gaussian rationals, monic; gcd(0,0) = 0.
Poly poly_gcd(Poly a, Poly b);

} // namespace qlh

#endif
