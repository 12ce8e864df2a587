#ifndef QLH_REDUCE_HPP
#define QLH_REDUCE_HPP

#include "qlh/jet.hpp"

namespace qlh {

struct InvariantSurface {
    Expression Q1; // xi*u_x + tau*u_t - phi
    Expression Q2; // xi*v_x + tau*v_t - eta
};

InvariantSurface invariant_surface(const VectorField& vf);

// Q1, Q2 of the generator evaluated on a candidate solution (implicit
// candidates are reduced modulo their relation). Reported as data: they
// vanish only for solutions invariant under the generator.
std::pair<Expression, Expression> surface_residuals(const PdeSpec& spec,
                                                    const VectorField& vf,
                                                    const Candidate& c);

// Residual checks for a candidate solution: the equation itself plus both
// potential relations. Implicit candidates are differentiated implicitly
// and residuals reduced modulo the relation (univariate remainder in u)
// before the zero test.
Verdict check_solution(const PdeSpec& spec, const Candidate& c,
                       const std::string& name = "check-solution",
                       const std::string& anchor = "");

// The static reduction u = F(x), v = 0: the equation becomes
// [g(x,F)F' + h(x,F)]_x = 0; returns that expression over {F, F', F'', x}.
// It equals minus the equation residual under the substitution map.
struct ReducedOde {
    Expression residual;
};
ReducedOde reduced_ode(const PdeSpec& spec);

struct OdeSample {
    double x, F, Fp;
    std::optional<double> residual; // centered-difference check, interior only
};

struct IntegrationReport {
    std::vector<OdeSample> samples;
    double max_residual = 0.0; // over interior points
};

// Classical RK4 on (F, F') after solving the ODE for F''; the coefficient
// of F'' must stay away from zero (|.| >= 1e-10) along the trajectory.
// `extra` binds parameter atoms appearing in the ODE.
IntegrationReport integrate_ode(const ReducedOde& ode, double F0, double Fp0, double x0,
                                double x1, double step, const NumericPoint& extra = {});

} // namespace qlh

#endif
