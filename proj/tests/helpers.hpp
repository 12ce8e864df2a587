#ifndef QLH_TEST_HELPERS_HPP
#define QLH_TEST_HELPERS_HPP

#include <random>

#include "qlh/parser.hpp"

namespace qlh::test {

// one scope with everything the fixtures mention
inline const Scope& full_scope() {
    static const Scope sc = [] {
        auto& r = reg();
        const auto& s = r.std_ids();
        Scope out({s.x, s.t, s.u, s.v, s.u_x, s.u_t, s.u_xx, s.u_xt, s.u_tt, s.v_x, s.v_t,
                   s.f, s.g, s.h, s.xi, s.tau, s.phi, s.eta, s.alpha, s.beta, s.gamma, s.F,
                   s.F1, s.F2});
        out.add(r.param("a"));
        out.add(r.param("c"));
        return out;
    }();
    return sc;
}

inline Expression E(const std::string& text) { return parse_expr(text, full_scope()); }

inline AtomId id(const std::string& name) { return *full_scope().resolve(name); }

using Rng = std::mt19937_64;

inline GaussRat random_coeff(Rng& rng, bool allow_imag = true) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4), pick(0, 5);
    mpq_class re(num(rng), den(rng));
    re.canonicalize();
    mpq_class im(0);
    if (allow_imag && pick(rng) == 0) {
        im = mpq_class(num(rng), den(rng));
        im.canonicalize();
    }
    return GaussRat(re, im);
}

inline Expression random_poly(Rng& rng, const std::vector<AtomId>& atoms, int max_terms = 4,
                              int max_factors = 2, int max_exp = 2, bool allow_imag = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms), nfac(0, max_factors),
        expd(1, max_exp);
    std::uniform_int_distribution<std::size_t> apick(0, atoms.size() - 1);
    Expression out;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Expression term(random_coeff(rng, allow_imag));
        int f = nfac(rng);
        for (int k = 0; k < f; ++k)
            term *= Expression::atom(atoms[apick(rng)]).pow(expd(rng));
        out += term;
    }
    return out;
}

inline Expression random_rational(Rng& rng, const std::vector<AtomId>& atoms) {
    Expression num = random_poly(rng, atoms);
    Expression den;
    do {
        den = random_poly(rng, atoms, 2, 1, 1);
    } while (den.is_zero());
    return num / den;
}

inline std::complex<double> random_value(Rng& rng) {
    std::uniform_int_distribution<int> num(1, 16), sign(0, 1);
    double re = (sign(rng) ? 1 : -1) * (0.5 + num(rng) / 8.0);
    double im = (sign(rng) ? 1 : -1) * num(rng) / 16.0;
    return {re, im};
}

inline bool close(std::complex<double> a, std::complex<double> b, double rel = 1e-9) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel * scale;
}

} // namespace qlh::test

#endif
