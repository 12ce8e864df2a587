#ifndef QLH_DOMAIN_HPP
#define QLH_DOMAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "qlh/expr.hpp"

namespace qlh {

// The equation family f(x)*u_tt = [g(x,u)*u_x + h(x,u)]_x together with its
// potential system v_x = f*u_t, v_t = g*u_x + h. f, g, h are expressions;
// an "abstract" function is just the corresponding opaque atom.
struct PdeSpec {
    Expression f, g, h;
    std::vector<AtomId> params;
    bool abstract_f = false, abstract_g = false, abstract_h = false;

    bool all_abstract() const { return abstract_f && abstract_g && abstract_h; }
};

// Point vector field xi*d/dx + tau*d/dt + phi*d/du + eta*d/dv with
// components over {x, t, u, v, params}; no jet atoms.
struct VectorField {
    Expression xi, tau, phi, eta;
};

// First-prolongation coefficients of d/du_x, d/du_t, d/dv_x, d/dv_t.
struct ProlongedField {
    Expression phi1, phi2, eta1, eta2;
};

// alpha*d/du with gauge seeds beta, gamma; all over {x, t, params}.
struct NoetherAnsatz {
    Expression alpha, beta, gamma;
};

struct ConservedVector {
    Expression T1, T2;
    std::optional<Expression> W; // characteristic, when known
    Expression B1, B2;
};

// Candidate solution: explicit u(x,t) or an implicit relation R(x,t,u) = 0
// polynomial in u; v(x,t) always explicit.
struct Candidate {
    std::optional<Expression> u;
    std::optional<Expression> relation_u;
    Expression v;

    bool is_implicit() const { return relation_u.has_value(); }
};

// Check result. pass is true iff every residual is the zero expression.
struct Verdict {
    std::string name;
    std::string paper_ref;
    bool pass = false;
    std::vector<Expression> residuals;
    std::optional<double> numeric_max_abs;
    std::string note;

    static Verdict make(std::string name, std::string paper_ref,
                        std::vector<Expression> residuals, std::string note = {}) {
        Verdict v;
        v.name = std::move(name);
        v.paper_ref = std::move(paper_ref);
        v.residuals = std::move(residuals);
        v.pass = true;
        for (auto& r : v.residuals)
            if (!r.is_zero()) v.pass = false;
        v.note = std::move(note);
        return v;
    }
};

} // namespace qlh

#endif
