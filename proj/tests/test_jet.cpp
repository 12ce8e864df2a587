#include <doctest.h>

#include "qlh/jet.hpp"

#include "helpers.hpp"

using namespace qlh;
using namespace qlh::test;

namespace {

JetContext ctx31() {
    return {parse_problem(R"js({"params":["a"],"f":"a","g":"u","h":"exp(x)"})js")};
}

JetContext ctx_abstract() {
    return {parse_problem(R"js({"abstract":["f","g","h"],"f":"f","g":"g","h":"h"})js")};
}

} // namespace

TEST_CASE("total derivatives") {
    auto ctx = ctx_abstract();
    AtomId x = id("x"), t = id("t");

    CHECK(total_derivative(E("u"), x, ctx) == E("u_x"));
    CHECK(total_derivative(E("f*u_t"), t, ctx) == E("f*u_tt"));
    CHECK(total_derivative(E("g*u_x + h"), x, ctx) ==
          E("g_x*u_x + g_u*u_x^2 + g*u_xx + h_x + h_u*u_x"));
    CHECK(total_derivative(E("g"), x, ctx) == E("g_x + g_u*u_x"));
    CHECK(total_derivative(E("v"), t, ctx) == E("v_t"));
    CHECK(total_derivative(E("x*t"), x, ctx) == E("t"));

    // alphabet cap: order 2 in u, order 1 in v
    CHECK_THROWS_AS(total_derivative(E("u_xx"), x, ctx), DomainError);
    CHECK_THROWS_AS(total_derivative(E("v_x"), t, ctx), DomainError);
    CHECK_THROWS_AS(total_derivative(E("v_t"), x, ctx), DomainError);
    CHECK_THROWS_AS(total_derivative(E("u"), id("u"), ctx), DomainError);
}

TEST_CASE("on-shell substitution") {
    auto ctx = ctx31();
    CHECK(on_shell(E("v_x - a*u_t"), ctx, OnShellLevel::Potential).is_zero());
    CHECK(on_shell(E("v_t*v_x"), ctx, OnShellLevel::Potential) ==
          E("(u*u_x + exp(x))*a*u_t"));
    CHECK(on_shell(E("a*u_tt - u*u_xx"), ctx, OnShellLevel::Pde) ==
          E("u_x^2 + exp(x)"));

    auto ab = ctx_abstract();
    CHECK(on_shell(E("f*u_tt - g*u_xx"), ab, OnShellLevel::Pde) ==
          E("g_x*u_x + g_u*u_x^2 + h_x + h_u*u_x"));

    // idempotence at each level
    Rng rng(5150);
    std::vector<AtomId> atoms{id("x"), id("u"), id("v"), id("u_x"), id("u_t"),
                              id("v_x"), id("v_t"), id("u_tt"), id("u_xx")};
    for (int trial = 0; trial < 60; ++trial) {
        Expression e = random_poly(rng, atoms, 4, 2);
        for (auto level : {OnShellLevel::Potential, OnShellLevel::Pde, OnShellLevel::Both}) {
            Expression once = on_shell(e, ctx, level);
            CHECK(on_shell(once, ctx, level) == once);
        }
    }
}

TEST_CASE("integrability residual") {
    auto ab = ctx_abstract();
    CHECK(integrability_residual(ab) ==
          E("f*u_tt - g_x*u_x - g_u*u_x^2 - g*u_xx - h_x - h_u*u_x"));

    auto ctx = ctx31();
    CHECK(integrability_residual(ctx) == E("a*u_tt - u_x^2 - u*u_xx - exp(x)"));

    CHECK(on_shell(integrability_residual(ab), ab, OnShellLevel::Pde).is_zero());
    CHECK(on_shell(integrability_residual(ctx), ctx, OnShellLevel::Pde).is_zero());
}

TEST_CASE("total derivatives commute (randomized)") {
    auto ctx = ctx31();
    AtomId x = id("x"), t = id("t");
    Rng rng(31337);
    // e restricted so both second total derivatives stay in the alphabet
    std::vector<AtomId> atoms{id("x"), id("t"), id("u"), id("exp(x)"), id("a")};
    for (int trial = 0; trial < 120; ++trial) {
        Expression e = random_rational(rng, atoms);
        Expression xt = total_derivative(total_derivative(e, x, ctx), t, ctx);
        Expression tx = total_derivative(total_derivative(e, t, ctx), x, ctx);
        CHECK(xt == tx);
    }
}

TEST_CASE("total derivative is linear and Leibniz (randomized)") {
    auto ctx = ctx_abstract();
    Rng rng(808);
    std::vector<AtomId> atoms{id("x"), id("t"), id("u"), id("v"), id("u_x"),
                              id("u_t"), id("g"), id("a")};
    std::uniform_int_distribution<int> dir(0, 1);
    for (int trial = 0; trial < 120; ++trial) {
        AtomId d = dir(rng) ? id("x") : id("t");
        Expression a = random_poly(rng, atoms, 3, 2);
        Expression b = random_poly(rng, atoms, 3, 2);
        CHECK(total_derivative(a * b, d, ctx) ==
              total_derivative(a, d, ctx) * b + a * total_derivative(b, d, ctx));
        CHECK(total_derivative(a + b, d, ctx) ==
              total_derivative(a, d, ctx) + total_derivative(b, d, ctx));
    }
}
