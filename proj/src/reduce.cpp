#include "qlh/reduce.hpp"

#include <cmath>

namespace qlh {

InvariantSurface invariant_surface(const VectorField& vf) {
    const auto& s = reg().std_ids();
    InvariantSurface q;
    q.Q1 = vf.xi * Expression::atom(s.u_x) + vf.tau * Expression::atom(s.u_t) - vf.phi;
    q.Q2 = vf.xi * Expression::atom(s.v_x) + vf.tau * Expression::atom(s.v_t) - vf.eta;
    return q;
}

namespace {

// univariate-in-u remainder with expression coefficients
Expression remainder_mod(const Expression& n, const Expression& rel) {
    const auto& s = reg().std_ids();
    const Expression u = Expression::atom(s.u);
    auto coeffs_of = [&](const Expression& e) {
        std::vector<Expression> cs;
        for (auto& [mono, c] : collect(e, {s.u})) {
            std::size_t k = static_cast<std::size_t>(mono.degree_of(s.u));
            if (cs.size() <= k) cs.resize(k + 1);
            cs[k] = c;
        }
        while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
        return cs;
    };
    std::vector<Expression> r = coeffs_of(n);
    const std::vector<Expression> d = coeffs_of(rel);
    while (r.size() >= d.size() && !d.empty()) {
        Expression q = r.back() / d.back();
        std::size_t shift = r.size() - d.size();
        for (std::size_t k = 0; k < d.size(); ++k) r[k + shift] -= q * d[k];
        while (!r.empty() && r.back().is_zero()) r.pop_back();
    }
    Expression out;
    for (std::size_t k = 0; k < r.size(); ++k) out += r[k] * u.pow(static_cast<int>(k));
    return out;
}

} // namespace

namespace {

// jet bindings realizing a candidate; implicit candidates keep u symbolic
// and return the relation to reduce by
std::pair<Bindings, std::optional<Expression>> candidate_bindings(const Candidate& c) {
    const auto& s = reg().std_ids();
    const std::vector<AtomId> uv_jets{s.u,    s.v,    s.u_x, s.u_t, s.u_xx,
                                      s.u_xt, s.u_tt, s.v_x, s.v_t};
    if (c.v.contains(s.u) || c.v.contains(s.v))
        throw DomainError("check_solution: v must be explicit in x, t");

    Bindings b;
    b.emplace(s.v, c.v);
    b.emplace(s.v_x, diff_partial(c.v, s.x));
    b.emplace(s.v_t, diff_partial(c.v, s.t));

    if (c.is_implicit()) {
        const Expression& rel = *c.relation_u;
        Expression ru = diff_partial(rel, s.u);
        if (ru.is_zero())
            throw DomainError("check_solution: relation has zero derivative in u");
        Expression ux = -diff_partial(rel, s.x) / ru;
        Expression ut = -diff_partial(rel, s.t) / ru;
        auto d_along = [&](const Expression& e, AtomId dir, const Expression& u_dir) {
            return diff_partial(e, dir) + u_dir * diff_partial(e, s.u);
        };
        b.emplace(s.u_x, ux);
        b.emplace(s.u_t, ut);
        b.emplace(s.u_xx, d_along(ux, s.x, ux));
        b.emplace(s.u_xt, d_along(ux, s.t, ut));
        b.emplace(s.u_tt, d_along(ut, s.t, ut));
        return {std::move(b), rel};
    }

    const Expression& u = *c.u;
    if (u.contains_any(uv_jets))
        throw DomainError("check_solution: explicit u must depend on x, t only");
    Expression ux = diff_partial(u, s.x);
    Expression ut = diff_partial(u, s.t);
    b.emplace(s.u, u);
    b.emplace(s.u_x, ux);
    b.emplace(s.u_t, ut);
    b.emplace(s.u_xx, diff_partial(ux, s.x));
    b.emplace(s.u_xt, diff_partial(ux, s.t));
    b.emplace(s.u_tt, diff_partial(ut, s.t));
    return {std::move(b), std::nullopt};
}

} // namespace

Verdict check_solution(const PdeSpec& spec, const Candidate& c, const std::string& name,
                       const std::string& anchor) {
    const auto& s = reg().std_ids();
    JetContext ctx{spec};
    auto [b, relation] = candidate_bindings(c);
    const bool implicit = relation.has_value();
    const Expression rel = relation.value_or(Expression(0));

    Expression pde = integrability_residual(ctx);
    Expression pot1 = Expression::atom(s.v_x) - spec.f * Expression::atom(s.u_t);
    Expression pot2 =
        Expression::atom(s.v_t) - spec.g * Expression::atom(s.u_x) - spec.h;

    std::vector<Expression> residuals;
    for (const Expression* e : {&pde, &pot1, &pot2}) {
        Expression r = substitute(*e, b);
        if (implicit) {
            if (!remainder_mod(Expression(r.den()), rel).is_zero()) {
                r = remainder_mod(Expression(r.num()), rel);
            } else {
                throw DomainError("check_solution: denominator vanishes on the relation");
            }
        }
        residuals.push_back(std::move(r));
    }
    return Verdict::make(name, anchor, std::move(residuals));
}

std::pair<Expression, Expression> surface_residuals(const PdeSpec&, const VectorField& vf,
                                                    const Candidate& c) {
    InvariantSurface q = invariant_surface(vf);
    auto [b, relation] = candidate_bindings(c);
    Expression q1 = substitute(q.Q1, b);
    Expression q2 = substitute(q.Q2, b);
    if (relation) {
        q1 = remainder_mod(Expression(q1.num()), *relation);
        q2 = remainder_mod(Expression(q2.num()), *relation);
    }
    return {q1, q2};
}

ReducedOde reduced_ode(const PdeSpec& spec) {
    const auto& s = reg().std_ids();
    JetContext ctx{spec};
    Bindings b;
    b.emplace(s.u, Expression::atom(s.F));
    b.emplace(s.u_x, Expression::atom(s.F1));
    b.emplace(s.u_xx, Expression::atom(s.F2));
    b.emplace(s.u_t, Expression(0));
    b.emplace(s.u_xt, Expression(0));
    b.emplace(s.u_tt, Expression(0));
    return {-substitute(integrability_residual(ctx), b)};
}

IntegrationReport integrate_ode(const ReducedOde& ode, double F0, double Fp0, double x0,
                                double x1, double step, const NumericPoint& extra) {
    if (step <= 0) throw DomainError("integrate_ode: step must be positive");
    const auto& s = reg().std_ids();
    const Expression& e = ode.residual;
    if (e.den().contains(s.F2) || e.num().degree_of(s.F2) > 1)
        throw DomainError("integrate_ode: equation is not affine in F''");

    // split residual as A*F'' + B
    Expression A, B;
    for (auto& [mono, coeff] : collect(e, {s.F2})) {
        if (mono.is_unit())
            B = coeff;
        else
            A = coeff;
    }
    if (A.is_zero()) throw DomainError("integrate_ode: coefficient of F'' is zero");

    auto rhs = [&](double x, double F, double Fp) {
        NumericPoint p = extra;
        p[s.x] = x;
        p[s.F] = F;
        p[s.F1] = Fp;
        std::complex<double> a = eval_numeric(A, p);
        if (std::abs(a) < 1e-10)
            throw DomainError("integrate_ode: coefficient of F'' vanished at x = " +
                              std::to_string(x));
        std::complex<double> v = -eval_numeric(B, p) / a;
        return v.real();
    };

    const long n = std::lround((x1 - x0) / step);
    if (n < 1) throw DomainError("integrate_ode: empty grid");

    IntegrationReport rep;
    rep.samples.reserve(static_cast<std::size_t>(n) + 1);
    double F = F0, Fp = Fp0;
    rep.samples.push_back({x0, F, Fp, std::nullopt});
    for (long i = 0; i < n; ++i) {
        const double x = x0 + static_cast<double>(i) * step;
        const double k1F = Fp, k1P = rhs(x, F, Fp);
        const double k2F = Fp + 0.5 * step * k1P,
                     k2P = rhs(x + 0.5 * step, F + 0.5 * step * k1F, Fp + 0.5 * step * k1P);
        const double k3F = Fp + 0.5 * step * k2P,
                     k3P = rhs(x + 0.5 * step, F + 0.5 * step * k2F, Fp + 0.5 * step * k2P);
        const double k4F = Fp + step * k3P,
                     k4P = rhs(x + step, F + step * k3F, Fp + step * k3P);
        F += step / 6.0 * (k1F + 2 * k2F + 2 * k3F + k4F);
        Fp += step / 6.0 * (k1P + 2 * k2P + 2 * k3P + k4P);
        if (!std::isfinite(F) || !std::isfinite(Fp))
            throw DomainError("integrate_ode: non-finite value during integration");
        rep.samples.push_back({x0 + static_cast<double>(i + 1) * step, F, Fp, std::nullopt});
    }

    // centered finite differences for F'' at interior samples
    for (std::size_t i = 1; i + 1 < rep.samples.size(); ++i) {
        const auto& a = rep.samples[i - 1];
        auto& m = rep.samples[i];
        const auto& z = rep.samples[i + 1];
        double fdd = (z.F - 2 * m.F + a.F) / (step * step);
        NumericPoint p = extra;
        p[s.x] = m.x;
        p[s.F] = m.F;
        p[s.F1] = m.Fp;
        p[s.F2] = fdd;
        double r = std::abs(eval_numeric(e, p));
        m.residual = r;
        rep.max_residual = std::max(rep.max_residual, r);
    }
    return rep;
}

} // namespace qlh
