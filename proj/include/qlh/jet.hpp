#ifndef QLH_JET_HPP
#define QLH_JET_HPP

#include "qlh/domain.hpp"

namespace qlh {

// Jet alphabet capped at order 2 in u and order 1 in v; asking for a total
// derivative that would leave the alphabet is an error, not an extension.
struct JetContext {
    PdeSpec spec;
};

enum class OnShellLevel { Potential, Pde, Both };

// D_dir(e) = d_dir(e) + sum over jet ladder of (next jet)*(de/d jet), with
// the abstract-function chain rule (D_x g = g_x + g_u*u_x) via derivation
// tables. dir must be x or t.
Expression total_derivative(const Expression& e, AtomId dir, const JetContext& ctx);

// Potential: v_x -> f*u_t, v_t -> g*u_x + h (simultaneous).
// Pde: u_tt -> D_x(g*u_x + h)/f. Both: potential then pde. Idempotent.
Expression on_shell(const Expression& e, const JetContext& ctx, OnShellLevel level);

// D_t(f*u_t) - D_x(g*u_x + h): the equation residual in conservative form.
// Its on_shell(Pde) image is zero.
Expression integrability_residual(const JetContext& ctx);

} // namespace qlh

#endif
