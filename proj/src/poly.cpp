#include "qlh/poly.hpp"

#include <algorithm>

namespace qlh {

int Monomial::total_degree() const {
    int d = 0;
    for (auto& [a, e] : factors_) d += e;
    return d;
}

int Monomial::degree_of(AtomId a) const {
    for (auto& [b, e] : factors_)
        if (b == a) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<std::pair<AtomId, int>> out;
    out.reserve(factors_.size() + o.factors_.size());
    auto i = factors_.begin();
    auto j = o.factors_.begin();
    while (i != factors_.end() || j != o.factors_.end()) {
        if (j == o.factors_.end() || (i != factors_.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == factors_.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            out.push_back({i->first, i->second + j->second});
            ++i, ++j;
        }
    }
    return from_sorted(std::move(out));
}

bool Monomial::divisible_by(const Monomial& o) const {
    for (auto& [a, e] : o.factors_)
        if (degree_of(a) < e) return false;
    return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
    std::vector<std::pair<AtomId, int>> out;
    auto j = o.factors_.begin();
    for (auto& [a, e] : factors_) {
        int sub = 0;
        if (j != o.factors_.end() && j->first < a)
            throw DomainError("monomial division: missing factor");
        if (j != o.factors_.end() && j->first == a) {
            sub = j->second;
            ++j;
        }
        if (e - sub < 0) throw DomainError("monomial division: negative exponent");
        if (e - sub > 0) out.push_back({a, e - sub});
    }
    if (j != o.factors_.end()) throw DomainError("monomial division: missing factor");
    return from_sorted(std::move(out));
}

std::pair<Monomial, Monomial> Monomial::split(const std::vector<AtomId>& pick) const {
    std::vector<std::pair<AtomId, int>> in, out;
    for (auto& fe : factors_) {
        if (std::find(pick.begin(), pick.end(), fe.first) != pick.end())
            in.push_back(fe);
        else
            out.push_back(fe);
    }
    return {from_sorted(std::move(in)), from_sorted(std::move(out))};
}

// Graded reverse lex: higher total degree wins; on ties the monomial whose
// exponent is *smaller* at the largest differing atom id is the larger one.
int mono_cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    auto& fa = a.factors();
    auto& fb = b.factors();
    auto i = fa.rbegin();
    auto j = fb.rbegin();
    while (i != fa.rend() || j != fb.rend()) {
        AtomId ia = (i != fa.rend()) ? i->first : 0;
        AtomId ib = (j != fb.rend()) ? j->first : 0;
        if (i == fa.rend() || (j != fb.rend() && ib > ia)) {
            // b has the largest remaining id; a's exponent there is 0
            return 1;
        }
        if (j == fb.rend() || ia > ib) {
            return -1;
        }
        if (i->second != j->second) return i->second > j->second ? -1 : 1;
        ++i, ++j;
    }
    return 0;
}

GaussRat Poly::constant_value() const {
    if (terms_.empty()) return GaussRat(0);
    if (terms_.size() == 1 && terms_[0].mono.is_unit()) return terms_[0].coef;
    throw DomainError("polynomial is not constant");
}

Poly Poly::from_map(std::map<Monomial, GaussRat, MonoLess>&& m) {
    Poly p;
    p.terms_.reserve(m.size());
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        if (!it->second.is_zero()) p.terms_.push_back({it->first, std::move(it->second)});
    return p;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
}

Poly operator+(const Poly& a, const Poly& b) {
    // merge two descending term lists
    Poly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        int c;
        if (i == a.terms_.end())
            c = -1;
        else if (j == b.terms_.end())
            c = 1;
        else
            c = mono_cmp(i->mono, j->mono);
        if (c > 0) {
            out.terms_.push_back(*i++);
        } else if (c < 0) {
            out.terms_.push_back(*j++);
        } else {
            GaussRat s = i->coef + j->coef;
            if (!s.is_zero()) out.terms_.push_back({i->mono, std::move(s)});
            ++i, ++j;
        }
    }
    return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::map<Monomial, GaussRat, MonoLess> acc;
    for (auto& ta : a.terms_)
        for (auto& tb : b.terms_) {
            Monomial m = ta.mono * tb.mono;
            GaussRat c = ta.coef * tb.coef;
            auto [it, fresh] = acc.emplace(std::move(m), c);
            if (!fresh) it->second += c;
        }
    return Poly::from_map(std::move(acc));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (a.terms_[k].mono != b.terms_[k].mono || a.terms_[k].coef != b.terms_[k].coef)
            return false;
    return true;
}

Poly Poly::scaled(const GaussRat& c) const {
    if (c.is_zero()) return Poly{};
    Poly p = *this;
    for (auto& t : p.terms_) t.coef *= c;
    return p;
}

Poly Poly::mul_term(const Monomial& m, const GaussRat& c) const {
    if (c.is_zero()) return Poly{};
    Poly p;
    p.terms_.reserve(terms_.size());
    for (auto& t : terms_) p.terms_.push_back({t.mono * m, t.coef * c});
    return p;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw DomainError("Poly::pow: negative exponent");
    Poly r = Poly::one();
    Poly b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

int Poly::degree_of(AtomId a) const {
    int d = 0;
    for (auto& t : terms_) d = std::max(d, t.mono.degree_of(a));
    return d;
}

void Poly::collect_atoms(std::vector<AtomId>& out) const {
    for (auto& t : terms_)
        for (auto& [a, e] : t.mono.factors()) out.push_back(a);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(lead_coef().inverse());
}

std::vector<Poly> Poly::coeffs_in(AtomId a) const {
    std::vector<Poly> cs(static_cast<std::size_t>(degree_of(a)) + 1);
    for (auto& t : terms_) {
        int k = t.mono.degree_of(a);
        Monomial rest = t.mono / Monomial(a, k);
        cs[static_cast<std::size_t>(k)] += Poly(rest, t.coef);
    }
    return cs;
}

Poly Poly::from_coeffs_in(AtomId a, const std::vector<Poly>& cs) {
    Poly out;
    for (std::size_t k = 0; k < cs.size(); ++k)
        out += cs[k].mul_term(Monomial(a, static_cast<int>(k)), GaussRat(1));
    return out;
}

Poly div_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    Poly r = a;
    Poly q;
    while (!r.is_zero()) {
        if (!r.lead_mono().divisible_by(b.lead_mono()))
            throw DomainError("div_exact: not exactly divisible");
        Monomial m = r.lead_mono() / b.lead_mono();
        GaussRat c = r.lead_coef() / b.lead_coef();
        q += Poly(m, c);
        r -= b.mul_term(m, c);
    }
    return q;
}

namespace {

int deg_in(const Poly& p, AtomId x) { return p.degree_of(x); }

// Leading coefficient of p viewed as univariate in x.
Poly lead_coef_in(const Poly& p, AtomId x) {
    auto cs = p.coeffs_in(x);
    return cs.back();
}

Poly content_in(const Poly& p, AtomId x) {
    Poly c;
    for (auto& coef : p.coeffs_in(x)) {
        if (coef.is_zero()) continue;
        c = poly_gcd(c, coef);
        if (c.is_constant() && !c.is_zero()) return Poly::one();
    }
    return c;
}

Poly primitive_part_in(const Poly& p, AtomId x) {
    if (p.is_zero()) return p;
    return div_exact(p, content_in(p, x));
}

// Pseudo-remainder of a by b in x (deg_x b >= 1).
Poly prem(Poly a, const Poly& b, AtomId x) {
    const int db = deg_in(b, x);
    const Poly lb = lead_coef_in(b, x);
    while (!a.is_zero() && deg_in(a, x) >= db) {
        const int da = deg_in(a, x);
        const Poly la = lead_coef_in(a, x);
        a = a * lb - b * la.mul_term(Monomial(x, da - db), GaussRat(1));
    }
    return a;
}

} // namespace

namespace {

// largest monomial dividing every term
Monomial monomial_content(const Poly& p) {
    std::vector<std::pair<AtomId, int>> mins = p.terms().front().mono.factors();
    for (auto& t : p.terms()) {
        if (mins.empty()) break;
        std::vector<std::pair<AtomId, int>> next;
        for (auto& [a, e] : mins) {
            int d = t.mono.degree_of(a);
            if (d > 0) next.push_back({a, std::min(e, d)});
        }
        mins = std::move(next);
    }
    return Monomial::from_sorted(std::move(mins));
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    std::vector<std::pair<AtomId, int>> out;
    for (auto& [at, e] : a.factors()) {
        int d = b.degree_of(at);
        if (d > 0) out.push_back({at, std::min(e, d)});
    }
    return Monomial::from_sorted(std::move(out));
}

} // namespace

Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly::one();
    if (a == b) return a.monic();

    const Monomial ma = monomial_content(a);
    const Monomial mb = monomial_content(b);
    const Monomial shared = monomial_gcd(ma, mb);
    if (!ma.is_unit()) a = div_exact(a, Poly(ma, GaussRat(1)));
    if (!mb.is_unit()) b = div_exact(b, Poly(mb, GaussRat(1)));
    const Poly m(shared, GaussRat(1));

    // after stripping the monomial content a single term is a unit
    if (a.terms().size() == 1 || b.terms().size() == 1) return m.monic();

    std::vector<AtomId> aa, bb, common;
    a.collect_atoms(aa);
    b.collect_atoms(bb);
    std::set_intersection(aa.begin(), aa.end(), bb.begin(), bb.end(),
                          std::back_inserter(common));
    if (common.empty()) return m.monic();
    if (common.size() != aa.size() || common.size() != bb.size()) {
        // a variable private to one side cannot appear in the gcd: replace
        // that side by its content with respect to it
        for (AtomId x : aa)
            if (!std::binary_search(bb.begin(), bb.end(), x)) return (m * poly_gcd(content_in(a, x), b)).monic();
        for (AtomId x : bb)
            if (!std::binary_search(aa.begin(), aa.end(), x)) return (m * poly_gcd(a, content_in(b, x))).monic();
    }

    AtomId x = common.front();
    int best = std::max(deg_in(a, x), deg_in(b, x));
    for (AtomId cand : common) {
        int d = std::max(deg_in(a, cand), deg_in(b, cand));
        if (d < best) {
            best = d;
            x = cand;
        }
    }

    Poly ca = content_in(a, x);
    Poly cb = content_in(b, x);
    Poly c = poly_gcd(ca, cb);
    Poly A = div_exact(a, ca);
    Poly B = div_exact(b, cb);
    if (deg_in(A, x) < deg_in(B, x)) std::swap(A, B);
    if (deg_in(B, x) == 0) return (m * c).monic();

    // subresultant PRS: pseudo-remainders shrunk by the known factor
    // g*h^delta, no content gcds inside the loop
    Poly g = Poly::one(), h = Poly::one();
    while (true) {
        int delta = deg_in(A, x) - deg_in(B, x);
        Poly R = prem(A, B, x);
        if (R.is_zero()) break;
        A = std::move(B);
        B = div_exact(R, g * h.pow(delta));
        g = lead_coef_in(A, x);
        if (delta > 0) h = div_exact(g.pow(delta), h.pow(delta - 1));
        if (deg_in(B, x) == 0) return (m * c).monic();
    }
    return (m * c * primitive_part_in(B, x)).monic();
}

} // namespace qlh
