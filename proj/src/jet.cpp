#include "qlh/jet.hpp"

namespace qlh {

namespace {

struct LadderStep {
    AtomId from;
    AtomId to_x;   // successor under D_x, or npos
    AtomId to_t;   // successor under D_t, or npos
    const char* beyond_x; // name of the out-of-alphabet atom, if any
    const char* beyond_t;
};

constexpr AtomId kNone = static_cast<AtomId>(-1);

std::vector<LadderStep> ladder() {
    const auto& s = reg().std_ids();
    return {
        {s.u, s.u_x, s.u_t, nullptr, nullptr},
        {s.v, s.v_x, s.v_t, nullptr, nullptr},
        {s.u_x, s.u_xx, s.u_xt, nullptr, nullptr},
        {s.u_t, s.u_xt, s.u_tt, nullptr, nullptr},
        {s.u_xx, kNone, kNone, "u_xxx", "u_xxt"},
        {s.u_xt, kNone, kNone, "u_xxt", "u_xtt"},
        {s.u_tt, kNone, kNone, "u_xtt", "u_ttt"},
        {s.v_x, kNone, kNone, "v_xx", "v_xt"},
        {s.v_t, kNone, kNone, "v_xt", "v_tt"},
    };
}

} // namespace

Expression total_derivative(const Expression& e, AtomId dir, const JetContext&) {
    const auto& s = reg().std_ids();
    if (dir != s.x && dir != s.t)
        throw DomainError("total derivative direction must be x or t");
    const bool along_x = dir == s.x;

    Expression out = diff_partial(e, dir);
    for (const auto& step : ladder()) {
        Expression c = diff_partial(e, step.from);
        if (c.is_zero()) continue;
        AtomId succ = along_x ? step.to_x : step.to_t;
        if (succ == kNone) {
            const char* beyond = along_x ? step.beyond_x : step.beyond_t;
            throw DomainError(std::string("total derivative requires jet atom '") + beyond +
                              "' beyond the alphabet");
        }
        out += Expression::atom(succ) * c;
    }
    return out;
}

Expression on_shell(const Expression& e, const JetContext& ctx, OnShellLevel level) {
    const auto& s = reg().std_ids();
    Expression out = e;
    if (level == OnShellLevel::Potential || level == OnShellLevel::Both) {
        Bindings b;
        b.emplace(s.v_x, ctx.spec.f * Expression::atom(s.u_t));
        b.emplace(s.v_t, ctx.spec.g * Expression::atom(s.u_x) + ctx.spec.h);
        out = substitute(out, b);
    }
    if (level == OnShellLevel::Pde || level == OnShellLevel::Both) {
        Expression flux = ctx.spec.g * Expression::atom(s.u_x) + ctx.spec.h;
        Expression rhs = total_derivative(flux, s.x, ctx) / ctx.spec.f;
        Bindings b;
        b.emplace(s.u_tt, rhs);
        out = substitute(out, b);
    }
    return out;
}

Expression integrability_residual(const JetContext& ctx) {
    const auto& s = reg().std_ids();
    Expression lhs = total_derivative(ctx.spec.f * Expression::atom(s.u_t), s.t, ctx);
    Expression flux = ctx.spec.g * Expression::atom(s.u_x) + ctx.spec.h;
    return lhs - total_derivative(flux, s.x, ctx);
}

} // namespace qlh
