#include "qlh/noether.hpp"

namespace qlh {

namespace {

void require_gauge_scope(const NoetherAnsatz& a) {
    const auto& s = reg().std_ids();
    const std::vector<AtomId> banned{s.u,    s.v,    s.u_x, s.u_t, s.u_xx,
                                     s.u_xt, s.u_tt, s.v_x, s.v_t};
    for (const Expression* e : {&a.alpha, &a.beta, &a.gamma})
        if (e->contains_any(banned))
            throw DomainError("Noether ansatz components must depend on x, t only");
}

} // namespace

Expression partial_lagrangian(const PdeSpec& spec) {
    const auto& s = reg().std_ids();
    Expression ux = Expression::atom(s.u_x), ut = Expression::atom(s.u_t);
    return Expression::rational(1, 2) * (spec.g * ux * ux - spec.f * ut * ut);
}

Expression euler_lagrange(const Expression& L) {
    const auto& s = reg().std_ids();
    if (L.contains(s.u_xx) || L.contains(s.u_xt) || L.contains(s.u_tt))
        throw DomainError("euler_lagrange: Lagrangian must be first order");
    JetContext ctx{};
    Expression out = diff_partial(L, s.u);
    out -= total_derivative(diff_partial(L, s.u_x), s.x, ctx);
    out -= total_derivative(diff_partial(L, s.u_t), s.t, ctx);
    return out;
}

Expression delta_l_onshell(const PdeSpec& spec) {
    JetContext ctx{spec};
    return on_shell(euler_lagrange(partial_lagrangian(spec)), ctx, OnShellLevel::Pde);
}

Expression antiderivative_u(const Expression& e) {
    const auto& s = reg().std_ids();
    if (e.den().contains(s.u))
        throw DomainError("antiderivative: expression is not polynomial in u");
    Expression out;
    Expression u = Expression::atom(s.u);
    for (auto& [mono, coeff] : collect(e, {s.u})) {
        int k = mono.degree_of(s.u);
        out += coeff * u.pow(k + 1) / Expression(k + 1);
    }
    return out;
}

namespace {

struct NoetherParts {
    Expression rho;
    ConservedVector T;
};

NoetherParts assemble(const PdeSpec& spec, const NoetherAnsatz& a) {
    require_gauge_scope(a);
    const auto& s = reg().std_ids();
    JetContext ctx{spec};
    const Expression u = Expression::atom(s.u);
    const Expression ux = Expression::atom(s.u_x), ut = Expression::atom(s.u_t);

    Expression L = partial_lagrangian(spec);
    Expression alpha_x = diff_partial(a.alpha, s.x);
    Expression alpha_t = diff_partial(a.alpha, s.t);

    // X = alpha d/du prolonged: zeta_x = alpha_x, zeta_t = alpha_t
    Expression XL = a.alpha * diff_partial(L, s.u) + alpha_x * diff_partial(L, s.u_x) +
                    alpha_t * diff_partial(L, s.u_t);

    Expression G = antiderivative_u(spec.g);
    Expression B1 = -spec.f * alpha_t * u + a.beta;
    Expression B2 = alpha_x * G - a.alpha * spec.h + a.gamma;

    Expression rho = XL - a.alpha * delta_l_onshell(spec) -
                     total_derivative(B1, s.t, ctx) - total_derivative(B2, s.x, ctx);

    ConservedVector T;
    T.T1 = -spec.f * alpha_t * u + spec.f * a.alpha * ut + a.beta;
    T.T2 = alpha_x * G - a.alpha * spec.h - a.alpha * spec.g * ux + a.gamma;
    T.W = a.alpha;
    T.B1 = B1;
    T.B2 = B2;
    return {rho, T};
}

std::vector<Expression> split_in_u(const Expression& rho) {
    const auto& s = reg().std_ids();
    std::vector<Expression> out;
    auto parts = collect(rho, {s.u});
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) out.push_back(it->second);
    return out;
}

} // namespace

Expression partial_noether_residual(const PdeSpec& spec, const NoetherAnsatz& ansatz) {
    return assemble(spec, ansatz).rho;
}

std::vector<Expression> noether_constraints(const PdeSpec& spec) {
    if (spec.abstract_g || spec.abstract_h)
        throw DomainError("noether_constraints requires concrete g and h");
    return split_in_u(partial_noether_residual(spec, abstract_ansatz()));
}

NoetherAnsatz abstract_ansatz() {
    const auto& s = reg().std_ids();
    return {Expression::atom(s.alpha), Expression::atom(s.beta), Expression::atom(s.gamma)};
}

ConservedVector conserved_components(const PdeSpec& spec, const NoetherAnsatz& ansatz) {
    return assemble(spec, ansatz).T;
}

ConservedVector build_conserved(const PdeSpec& spec, const NoetherAnsatz& ansatz) {
    NoetherParts parts = assemble(spec, ansatz);
    if (!parts.rho.is_zero())
        throw ConstraintViolation("partial-Noether constraints violated",
                                  split_in_u(parts.rho));
    return parts.T;
}

namespace {

bool jet_free(const Expression& e) {
    const auto& s = reg().std_ids();
    return !e.contains_any({s.u_x, s.u_t, s.u_xx, s.u_xt, s.u_tt, s.v_x, s.v_t});
}

} // namespace

Verdict divergence_check(const PdeSpec& spec, const Expression& T1, const Expression& T2,
                         const std::optional<Expression>& W, const std::string& name,
                         const std::string& anchor) {
    const auto& s = reg().std_ids();
    JetContext ctx{spec};
    Expression t1 = on_shell(T1, ctx, OnShellLevel::Potential);
    Expression t2 = on_shell(T2, ctx, OnShellLevel::Potential);
    Expression div = total_derivative(t1, s.t, ctx) + total_derivative(t2, s.x, ctx);
    Expression div_on = on_shell(div, ctx, OnShellLevel::Both);

    Expression equation = integrability_residual(ctx);
    std::vector<Expression> residuals{div_on};
    std::string note;
    if (W) {
        residuals.push_back(div - *W * equation);
        note = "characteristic supplied: " + W->str();
    } else if (!div.is_zero()) {
        Expression q = div / equation;
        if (jet_free(q)) note = "characteristic: " + q.str();
    } else {
        note = "characteristic: 0";
    }
    return Verdict::make(name, anchor, std::move(residuals), std::move(note));
}

std::pair<Verdict, Verdict> eq30_variants(const PdeSpec& spec, const NoetherAnsatz& ansatz,
                                          const std::string& name_prefix,
                                          const std::string& anchor) {
    const auto& s = reg().std_ids();
    const Expression u = Expression::atom(s.u), ut = Expression::atom(s.u_t);
    Expression alpha_t = diff_partial(ansatz.alpha, s.t);

    ConservedVector corrected = conserved_components(spec, ansatz);
    Expression printed_T1 = -spec.f * alpha_t * u + ansatz.alpha * ut + ansatz.beta;

    Verdict as_printed =
        divergence_check(spec, printed_T1, corrected.T2, std::nullopt,
                         name_prefix + "/as-printed", anchor);
    Verdict fixed = divergence_check(spec, corrected.T1, corrected.T2, corrected.W,
                                     name_prefix + "/f-corrected", anchor);
    return {as_printed, fixed};
}

} // namespace qlh
