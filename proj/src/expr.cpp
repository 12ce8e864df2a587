#include "qlh/expr.hpp"

#include <algorithm>
#include <sstream>

namespace qlh {

Expression::Expression(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("division by the zero polynomial");
    if (num_.is_zero()) {
        den_ = Poly::one();
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!(g == Poly::one())) {
        num_ = div_exact(num_, g);
        den_ = div_exact(den_, g);
    }
    GaussRat lc = den_.lead_coef();
    if (!lc.is_one()) {
        num_ = num_.scaled(lc.inverse());
        den_ = den_.scaled(lc.inverse());
    }
}

Expression operator+(const Expression& a, const Expression& b) {
    if (a.den_ == b.den_) return Expression(a.num_ + b.num_, a.den_);
    return Expression(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
    // cross-cancel before multiplying to keep the gcd in the ctor trivial
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    Poly n1 = g1 == Poly::one() ? a.num_ : div_exact(a.num_, g1);
    Poly d2 = g1 == Poly::one() ? b.den_ : div_exact(b.den_, g1);
    Poly n2 = g2 == Poly::one() ? b.num_ : div_exact(b.num_, g2);
    Poly d1 = g2 == Poly::one() ? a.den_ : div_exact(a.den_, g2);
    return Expression(n1 * n2, d1 * d2);
}

Expression operator/(const Expression& a, const Expression& b) {
    return Expression(a.num_ * b.den_, a.den_ * b.num_);
}

Expression Expression::operator-() const {
    Expression e = *this;
    e.num_ = -e.num_;
    return e;
}

Expression Expression::pow(int e) const {
    if (e < 0) return Expression(den_, num_).pow(-e);
    return Expression(num_.pow(e), den_.pow(e));
}

std::vector<AtomId> Expression::atoms() const {
    std::vector<AtomId> out;
    num_.collect_atoms(out);
    den_.collect_atoms(out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Expression::contains(AtomId a) const { return num_.contains(a) || den_.contains(a); }

bool Expression::contains_any(const std::vector<AtomId>& as) const {
    return std::any_of(as.begin(), as.end(), [&](AtomId a) { return contains(a); });
}

// ---- differentiation ----

namespace {

bool is_direction(AtomId d) {
    switch (reg().atom(d).kind) {
        case AtomKind::Independent:
        case AtomKind::Dependent:
        case AtomKind::Jet:
            return true;
        default:
            return false;
    }
}

Expression diff_poly(const Poly& p, AtomId dir) {
    Expression acc;
    for (auto& t : p.terms()) {
        const auto& factors = t.mono.factors();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            auto [a, e] = factors[i];
            Expression da = reg().derivative(a, dir);
            if (da.is_zero()) continue;
            std::vector<std::pair<AtomId, int>> rest;
            rest.reserve(factors.size());
            for (std::size_t j = 0; j < factors.size(); ++j) {
                if (j == i) {
                    if (e - 1 > 0) rest.push_back({a, e - 1});
                } else {
                    rest.push_back(factors[j]);
                }
            }
            Poly part(Monomial::from_sorted(std::move(rest)), t.coef * GaussRat(e));
            acc += Expression(std::move(part)) * da;
        }
    }
    return acc;
}

} // namespace

Expression diff_partial(const Expression& e, AtomId dir) {
    if (!is_direction(dir))
        throw DomainError("differentiation direction not registered: '" + reg().atom(dir).name +
                          "'");
    Expression dn = diff_poly(e.num(), dir);
    if (e.is_polynomial()) return dn;
    Expression dd = diff_poly(e.den(), dir);
    Expression den(e.den());
    return (dn * den - Expression(e.num()) * dd) / (den * den);
}

// ---- substitution ----

namespace {

Expression subst_poly(const Poly& p, const Bindings& b) {
    Expression acc;
    for (auto& t : p.terms()) {
        Expression term(Poly(Monomial{}, t.coef));
        std::vector<std::pair<AtomId, int>> untouched;
        for (auto& [a, e] : t.mono.factors()) {
            auto it = b.find(a);
            if (it == b.end())
                untouched.push_back({a, e});
            else
                term *= it->second.pow(e);
        }
        if (!untouched.empty())
            term *= Expression(Poly(Monomial::from_sorted(std::move(untouched)), GaussRat(1)));
        acc += term;
    }
    return acc;
}

} // namespace

Expression substitute(const Expression& e, const Bindings& b) {
    if (b.empty()) return e;
    Expression n = subst_poly(e.num(), b);
    if (e.is_polynomial()) return n;
    return n / subst_poly(e.den(), b);
}

// ---- collect ----

std::map<Monomial, Expression, MonoLess> collect(const Expression& e,
                                                 const std::vector<AtomId>& split) {
    for (AtomId a : split)
        if (e.den().contains(a))
            throw DomainError("collect: denominator involves split atom '" + reg().atom(a).name +
                              "'");
    std::map<Monomial, Poly, MonoLess> buckets;
    for (auto& t : e.num().terms()) {
        auto [key, rest] = t.mono.split(split);
        buckets[key] += Poly(rest, t.coef);
    }
    std::map<Monomial, Expression, MonoLess> out;
    for (auto& [key, p] : buckets)
        if (!p.is_zero()) out.emplace(key, Expression(p, e.den()));
    return out;
}

// ---- numeric evaluation ----

namespace {

std::complex<double> ipow(std::complex<double> b, int e) {
    std::complex<double> r{1.0, 0.0};
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

std::complex<double> atom_value(AtomId a, const NumericPoint& point) {
    auto it = point.find(a);
    if (it != point.end()) return it->second;
    const Atom& at = reg().atom(a);
    if (at.kind == AtomKind::Transcendental)
        return std::exp(eval_numeric(reg().inner_of(a), point));
    throw EvalError("unbound atom '" + at.name + "'");
}

std::complex<double> eval_poly(const Poly& p, const NumericPoint& point) {
    std::complex<double> acc{0.0, 0.0};
    for (auto& t : p.terms()) {
        std::complex<double> v = t.coef.to_complex();
        for (auto& [a, e] : t.mono.factors()) v *= ipow(atom_value(a, point), e);
        acc += v;
    }
    return acc;
}

} // namespace

std::complex<double> eval_numeric(const Expression& e, const NumericPoint& point) {
    std::complex<double> n = eval_poly(e.num(), point);
    if (e.is_polynomial()) return n;
    std::complex<double> d = eval_poly(e.den(), point);
    if (std::abs(d) < 1e-12) throw EvalError("denominator magnitude below 1e-12");
    return n / d;
}

// ---- printing ----

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

std::string mono_str(const Monomial& m) {
    std::string out;
    for (auto& [a, e] : m.factors()) {
        if (!out.empty()) out += "*";
        out += reg().atom(a).name;
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

// (coefficient text without sign, is-negative) for +/- joining
std::pair<std::string, bool> coef_str(const GaussRat& c, bool with_mono) {
    if (c.im() == 0) {
        bool neg = c.re() < 0;
        mpq_class mag = neg ? mpq_class(-c.re()) : c.re();
        if (!with_mono) return {rat_str(mag), neg};
        if (mag == 1) return {"", neg};
        return {rat_str(mag) + "*", neg};
    }
    if (c.re() == 0) {
        bool neg = c.im() < 0;
        mpq_class mag = neg ? mpq_class(-c.im()) : c.im();
        std::string s = (mag == 1) ? "i" : rat_str(mag) + "*i";
        if (with_mono) s += "*";
        return {s, neg};
    }
    std::string s = "(" + rat_str(c.re());
    if (c.im() < 0)
        s += " - " + (c.im() == -1 ? std::string("i") : rat_str(mpq_class(-c.im())) + "*i");
    else
        s += " + " + (c.im() == 1 ? std::string("i") : rat_str(c.im()) + "*i");
    s += ")";
    if (with_mono) s += "*";
    return {s, false};
}

std::string poly_str(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& t : p.terms()) {
        bool with_mono = !t.mono.is_unit();
        auto [ctext, neg] = coef_str(t.coef, with_mono);
        std::string body = ctext + (with_mono ? mono_str(t.mono) : "");
        if (first) {
            out += (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

// true when d prints as a single power like x^2 or exp(x): safe after '/'
bool den_needs_parens(const Poly& d) {
    if (d.terms().size() != 1) return true;
    const auto& t = d.terms()[0];
    return !(t.coef.is_one() && t.mono.factors().size() == 1);
}

} // namespace

std::string Expression::str() const {
    if (is_polynomial()) return poly_str(num_);
    std::string n = poly_str(num_);
    if (num_.terms().size() > 1) n = "(" + n + ")";
    std::string d = poly_str(den_);
    if (den_needs_parens(den_)) d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace qlh
