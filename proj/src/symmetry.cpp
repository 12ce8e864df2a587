#include "qlh/symmetry.hpp"

#include <algorithm>
#include <array>

namespace qlh {

namespace {

struct Parts {
    Expression x, t, u, v; // partials of one component
};

Parts partials(const Expression& e) {
    const auto& s = reg().std_ids();
    return {diff_partial(e, s.x), diff_partial(e, s.t), diff_partial(e, s.u),
            diff_partial(e, s.v)};
}

void require_point_field(const VectorField& vf) {
    const auto& s = reg().std_ids();
    const std::vector<AtomId> jets{s.u_x, s.u_t, s.u_xx, s.u_xt, s.u_tt, s.v_x, s.v_t};
    for (const Expression* c : {&vf.xi, &vf.tau, &vf.phi, &vf.eta})
        if (c->contains_any(jets))
            throw DomainError("vector field components must not contain jet atoms");
}

} // namespace

ProlongedField prolong1(const VectorField& vf) {
    require_point_field(vf);
    const auto& s = reg().std_ids();
    const Expression ux = Expression::atom(s.u_x);
    const Expression ut = Expression::atom(s.u_t);
    const Expression vx = Expression::atom(s.v_x);
    const Expression vt = Expression::atom(s.v_t);

    Parts xi = partials(vf.xi), tau = partials(vf.tau), phi = partials(vf.phi),
          eta = partials(vf.eta);

    ProlongedField p;
    p.phi1 = phi.x + (phi.u - xi.x) * ux - tau.x * ut - tau.u * ux * ut - xi.u * ux * ux +
             phi.v * vx - tau.v * ut * vx - xi.v * ux * vx;
    p.phi2 = phi.t + (phi.u - tau.t) * ut - tau.u * ut * ut - xi.t * ux - xi.u * ut * ux +
             phi.v * vt - tau.v * ut * vt - xi.v * ux * vt;
    p.eta1 = eta.x + (eta.v - xi.x) * vx - xi.v * vx * vx + eta.u * ux - tau.x * vt -
             tau.u * ux * vt - tau.v * vx * vt - xi.u * ux * vx;
    p.eta2 = eta.t + (eta.v - tau.t) * vt - tau.v * vt * vt + eta.u * ut - tau.u * ut * vt -
             xi.t * vx - xi.u * ut * vx - xi.v * vt * vx;
    return p;
}

ProlongedField prolong1_generic(const VectorField& vf) {
    require_point_field(vf);
    const auto& s = reg().std_ids();
    JetContext ctx{};
    const Expression ux = Expression::atom(s.u_x);
    const Expression ut = Expression::atom(s.u_t);
    const Expression vx = Expression::atom(s.v_x);
    const Expression vt = Expression::atom(s.v_t);

    Expression dx_xi = total_derivative(vf.xi, s.x, ctx);
    Expression dx_tau = total_derivative(vf.tau, s.x, ctx);
    Expression dt_xi = total_derivative(vf.xi, s.t, ctx);
    Expression dt_tau = total_derivative(vf.tau, s.t, ctx);

    ProlongedField p;
    p.phi1 = total_derivative(vf.phi, s.x, ctx) - ux * dx_xi - ut * dx_tau;
    p.phi2 = total_derivative(vf.phi, s.t, ctx) - ux * dt_xi - ut * dt_tau;
    p.eta1 = total_derivative(vf.eta, s.x, ctx) - vx * dx_xi - vt * dx_tau;
    p.eta2 = total_derivative(vf.eta, s.t, ctx) - vx * dt_xi - vt * dt_tau;
    return p;
}

Expression apply_prolonged(const VectorField& vf, const ProlongedField& pf,
                           const Expression& e) {
    const auto& s = reg().std_ids();
    Expression out = vf.xi * diff_partial(e, s.x) + vf.tau * diff_partial(e, s.t) +
                     vf.phi * diff_partial(e, s.u) + vf.eta * diff_partial(e, s.v);
    out += pf.phi1 * diff_partial(e, s.u_x) + pf.phi2 * diff_partial(e, s.u_t);
    out += pf.eta1 * diff_partial(e, s.v_x) + pf.eta2 * diff_partial(e, s.v_t);
    return out;
}

std::pair<Expression, Expression> determining_residuals(const PdeSpec& spec,
                                                        const VectorField& vf) {
    const auto& s = reg().std_ids();
    JetContext ctx{spec};
    ProlongedField pf = prolong1(vf);
    Expression e1 = Expression::atom(s.v_x) - spec.f * Expression::atom(s.u_t);
    Expression e2 =
        Expression::atom(s.v_t) - spec.g * Expression::atom(s.u_x) - spec.h;
    Expression r1 = on_shell(apply_prolonged(vf, pf, e1), ctx, OnShellLevel::Potential);
    Expression r2 = on_shell(apply_prolonged(vf, pf, e2), ctx, OnShellLevel::Potential);
    return {r1, r2};
}

VectorField abstract_field() {
    const auto& s = reg().std_ids();
    return {Expression::atom(s.xi), Expression::atom(s.tau), Expression::atom(s.phi),
            Expression::atom(s.eta)};
}

bool infinitesimal_free(const Expression& e) {
    for (AtomId a : e.atoms()) {
        const Atom& at = reg().atom(a);
        if (at.kind != AtomKind::AbstractFunc) continue;
        if (at.base == "xi" || at.base == "tau" || at.base == "phi" || at.base == "eta")
            return false;
    }
    return true;
}

DeterminingSystem determining_system(const PdeSpec& spec) {
    if (!spec.all_abstract())
        throw DomainError("determining_system requires abstract f, g and h");
    const auto& s = reg().std_ids();
    auto [r1, r2] = determining_residuals(spec, abstract_field());

    DeterminingSystem sys;
    const std::vector<AtomId> split{s.u_x, s.u_t};
    for (int which = 1; which <= 2; ++which) {
        const Expression& r = which == 1 ? r1 : r2;
        // ascending monomial order puts each leading equation (e.g. the
        // u_t^2 coefficient) before the u_x^2 multiple it makes redundant
        for (auto& [mono, coeff] : collect(r, split)) {
            DetEquation eq;
            eq.lhs = coeff;
            eq.constraint = which;
            eq.mono = mono;
            sys.equations.push_back(std::move(eq));
        }
    }
    // flag equations that are expression multiples of an earlier one
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Expression q = sys.equations[i].lhs / sys.equations[j].lhs;
            if (!q.is_zero() && infinitesimal_free(q)) {
                sys.equations[i].redundant_of = j;
                break;
            }
        }
    }
    return sys;
}

namespace {

// e1 == q * e2 with q free of the unknown infinitesimals?
bool matches_up_to_factor(const Expression& e1, const Expression& e2) {
    if (e1.is_zero() || e2.is_zero()) return e1.is_zero() && e2.is_zero();
    return infinitesimal_free(e1 / e2);
}

Bindings lead_substitutions() {
    const auto& s = reg().std_ids();
    Bindings b;
    b.emplace(reg().partial(s.tau, s.u),
              Expression::atom(s.f) * Expression::atom(reg().partial(s.xi, s.v)));
    b.emplace(reg().partial(s.xi, s.u),
              Expression::atom(s.g) * Expression::atom(reg().partial(s.tau, s.v)));
    return b;
}

} // namespace

std::vector<ListedEqMatch> compare_with_listed(const DeterminingSystem& sys) {
    const auto& s = reg().std_ids();
    auto P = [&](AtomId fn, AtomId d) { return Expression::atom(reg().partial(fn, d)); };
    const Expression f = Expression::atom(s.f), g = Expression::atom(s.g),
                     h = Expression::atom(s.h);
    const Expression f_x = P(s.f, s.x), g_x = P(s.g, s.x), g_u = P(s.g, s.u),
                     h_x = P(s.h, s.x), h_u = P(s.h, s.u);
    const Expression xi = Expression::atom(s.xi), tau = Expression::atom(s.tau),
                     phi = Expression::atom(s.phi), eta = Expression::atom(s.eta);

    std::vector<ListedEqMatch> out;
    auto add = [&](const char* label, Expression e) {
        ListedEqMatch m;
        m.label = label;
        m.listed = std::move(e);
        out.push_back(std::move(m));
    };
    add("eq21", P(s.tau, s.u) - f * P(s.xi, s.v));
    add("eq22", P(s.xi, s.u) - g * P(s.tau, s.v));
    add("eq23", P(s.eta, s.u) - g * f * P(s.phi, s.v) + h * P(s.tau, s.u));
    add("eq24", P(s.eta, s.x) - f * P(s.phi, s.t) - f * h * P(s.phi, s.v) - h * P(s.tau, s.x));
    add("eq25",
        f * (P(s.eta, s.v) + P(s.tau, s.t) - P(s.phi, s.u) - P(s.xi, s.x)) - f_x * xi);
    add("eq26", h_x * xi - P(s.eta, s.t) + h * P(s.tau, s.t) - h * P(s.eta, s.v) + h_u * phi +
                    g * P(s.phi, s.x) + h * h * P(s.tau, s.v));
    add("eq27", g * (P(s.xi, s.x) - P(s.tau, s.t) - P(s.phi, s.u) + P(s.eta, s.v)) - g_u * phi -
                    g_x * xi - 2 * P(s.xi, s.u) * h);

    Bindings subs = lead_substitutions();
    for (auto& m : out) {
        for (const auto& eq : sys.equations) {
            if (matches_up_to_factor(eq.lhs, m.listed)) {
                m.matched = true;
                m.mode = "direct";
                break;
            }
        }
        if (m.matched) continue;
        Expression target = substitute(m.listed, subs);
        if (!target.is_zero()) {
            for (const auto& eq : sys.equations) {
                Expression e = substitute(eq.lhs, subs);
                if (e.is_zero()) continue;
                if (matches_up_to_factor(e, target)) {
                    m.matched = true;
                    m.mode = "mod-subs";
                    break;
                }
            }
        }
        if (!m.matched) {
            m.mode = "none";
            // nearest analogues: the first-degree coefficient equations
            std::string note = "no derived equation matches; first-degree coefficients are";
            for (const auto& eq : sys.equations) {
                if (eq.mono.total_degree() == 1 && !eq.redundant_of)
                    note += " [" + eq.lhs.str() + " = 0]";
            }
            m.note = note;
        }
    }
    return out;
}

Verdict check_symmetry(const PdeSpec& spec, const VectorField& vf, const std::string& name,
                       const std::string& anchor) {
    auto [r1, r2] = determining_residuals(spec, vf);
    return Verdict::make(name, anchor, {r1, r2});
}

SymmetryClass classify_potential(const VectorField& vf) {
    const auto& s = reg().std_ids();
    for (const Expression* c : {&vf.xi, &vf.tau, &vf.phi})
        if (!diff_partial(*c, s.v).is_zero()) return SymmetryClass::Potential;
    return SymmetryClass::Point;
}

// ---- finite-ansatz solving ----

namespace {

// earliest maximal linearly independent subset, exact over the coefficients
std::vector<VectorField> independent_subset(const std::vector<VectorField>& fields) {
    if (fields.size() < 2) return fields;
    // clear denominators per component slot so coordinates are polynomial
    std::array<Expression, 4> denom{Expression(1), Expression(1), Expression(1),
                                    Expression(1)};
    auto slot = [](const VectorField& vf, std::size_t k) -> const Expression& {
        switch (k) {
            case 0: return vf.xi;
            case 1: return vf.tau;
            case 2: return vf.phi;
            default: return vf.eta;
        }
    };
    for (auto& vf : fields)
        for (std::size_t k = 0; k < 4; ++k)
            denom[k] = denom[k] * Expression(slot(vf, k).den());

    std::map<std::pair<std::size_t, Monomial>,
             std::size_t,
             decltype([](const auto& a, const auto& b) {
                 if (a.first != b.first) return a.first < b.first;
                 return mono_cmp(a.second, b.second) < 0;
             })>
        columns;
    std::vector<std::vector<GaussRat>> rows;
    for (auto& vf : fields) {
        std::vector<GaussRat> row;
        for (std::size_t k = 0; k < 4; ++k) {
            Expression cleared = slot(vf, k) * denom[k];
            for (auto& t : cleared.num().terms()) {
                auto [it, fresh] = columns.emplace(std::make_pair(k, t.mono), columns.size());
                if (it->second >= row.size()) row.resize(it->second + 1, GaussRat(0));
                row[it->second] += t.coef;
            }
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::vector<GaussRat>> echelon;
    std::vector<VectorField> out;
    const std::size_t width = columns.size();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::vector<GaussRat> r = rows[i];
        r.resize(width, GaussRat(0));
        for (auto& e : echelon) {
            std::size_t lead = 0;
            while (lead < width && e[lead].is_zero()) ++lead;
            if (lead < width && !r[lead].is_zero()) {
                GaussRat factor = r[lead] / e[lead];
                for (std::size_t j = lead; j < width; ++j) r[j] -= factor * e[j];
            }
        }
        bool nonzero = false;
        for (auto& c : r)
            if (!c.is_zero()) nonzero = true;
        if (nonzero) {
            echelon.push_back(std::move(r));
            out.push_back(fields[i]);
        }
    }
    return out;
}

} // namespace

namespace {

// Fraction-free (Bareiss) forward elimination; returns pivot column per row.
// Pivots chosen at the lowest row/column index with a nonzero entry.
std::vector<int> bareiss(std::vector<std::vector<GaussRat>>& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<int> pivot_col;
    GaussRat prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
            m[i][c] = GaussRat(0);
        }
        prev = m[r][c];
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    return pivot_col;
}

} // namespace

std::vector<VectorField> solve_ansatz(const PdeSpec& spec,
                                      const std::vector<VectorField>& basis) {
    if (basis.empty()) return {};
    const std::size_t n = basis.size();
    std::vector<AtomId> cs;
    for (std::size_t k = 0; k < n; ++k)
        cs.push_back(reg().param("_c" + std::to_string(k + 1)));

    VectorField sum;
    for (std::size_t k = 0; k < n; ++k) {
        Expression c = Expression::atom(cs[k]);
        sum.xi += c * basis[k].xi;
        sum.tau += c * basis[k].tau;
        sum.phi += c * basis[k].phi;
        sum.eta += c * basis[k].eta;
    }

    auto [r1, r2] = determining_residuals(spec, sum);

    // Each monomial in the non-c atoms gives one homogeneous linear equation.
    std::map<Monomial, std::vector<GaussRat>, MonoLess> rows;
    auto add_rows = [&](const Expression& r) {
        for (const auto& term : r.num().terms()) {
            auto [cpart, rest] = term.mono.split(cs);
            if (cpart.total_degree() != 1)
                throw DomainError("solve_ansatz: residual not linear in the coefficients");
            std::size_t k = 0;
            while (cs[k] != cpart.factors()[0].first) ++k;
            auto [it, fresh] = rows.emplace(rest, std::vector<GaussRat>(n, GaussRat(0)));
            it->second[k] += term.coef;
        }
    };
    add_rows(r1);
    add_rows(r2);

    std::vector<std::vector<GaussRat>> m;
    m.reserve(rows.size());
    for (auto& [mono, row] : rows) m.push_back(row);

    std::vector<int> pivots;
    if (!m.empty()) pivots = bareiss(m);

    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    // back-substitution for each free column
    std::vector<VectorField> out;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<GaussRat> sol(n, GaussRat(0));
        sol[free] = GaussRat(1);
        for (std::size_t rr = pivots.size(); rr-- > 0;) {
            std::size_t pc = static_cast<std::size_t>(pivots[rr]);
            GaussRat acc(0);
            for (std::size_t j = pc + 1; j < n; ++j) acc += m[rr][j] * sol[j];
            sol[pc] = -acc / m[rr][pc];
        }
        VectorField vf;
        for (std::size_t k = 0; k < n; ++k) {
            Expression c(GaussRat(sol[k]));
            vf.xi += c * basis[k].xi;
            vf.tau += c * basis[k].tau;
            vf.phi += c * basis[k].phi;
            vf.eta += c * basis[k].eta;
        }
        out.push_back(std::move(vf));
    }
    return independent_subset(out);
}

} // namespace qlh
