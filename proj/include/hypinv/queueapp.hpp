#pragma once

// Queueing application: the lower-triangular system
//   sum_{l=1}^{b} (-1)^l binom(b,l) Q_{b,l} E_l = K_b,  b >= 1,
// solved in closed form by rescaling the right-hand side and applying the
// explicit triangular inverse. Float-only: the Q entries need Gamma at
// non-integer arguments.

#include <string>
#include <vector>

#include "hypinv/errors.hpp"
#include "hypinv/gamma.hpp"
#include "hypinv/hyperfun.hpp"
#include "hypinv/invpair.hpp"
#include "hypinv/numfield.hpp"

namespace hypinv {

struct QueueProblemData {
    double x = 0.0;
    double nu = 0.0;
    int b_max = 0;
    std::vector<double> K;
};

inline void validate(const QueueProblemData& p) {
    if (!(p.x > 0.0 && p.x < 1.0)) throw DomainError("x must lie in (0, 1)");
    if (!(p.nu < 0.0)) throw DomainError("nu must be negative");
    if (p.b_max < 1) throw DomainError("b_max must be >= 1");
    if (static_cast<int>(p.K.size()) < p.b_max)
        throw DomainError("K must supply at least b_max entries");
}

namespace detail {

// -(Gamma(b) Gamma(1-b nu) / Gamma(b-b nu)) x^{1-b} / (1-x)
template <class K>
K q_prefactor(const K& x, const K& nu, int b) {
    using std::exp;
    K bb = k_int<K>(b);
    K lg = log_gamma(bb) + log_gamma(k_int<K>(1) - bb * nu) -
           log_gamma(bb - bb * nu);
    K xpow = k_int<K>(1);  // x^{b-1}
    for (int i = 1; i < b; ++i) xpow *= x;
    return -exp(lg) / (xpow * (k_int<K>(1) - x));
}

}  // namespace detail

// Q_{b,l} = q_prefactor(b) * F(l-b, -b nu; -b; x).
template <class K>
TriMatrix<K> build_Q(const K& x, const K& nu, int b_max) {
    static_assert(!is_exact_v<K>, "build_Q is a float operation");
    TriMatrix<K> q(b_max);
    for (int b = 1; b <= b_max; ++b) {
        K pref = detail::q_prefactor(x, nu, b);
        K bnu = -k_int<K>(b) * nu;
        K c = -k_int<K>(b);
        for (int l = 1; l <= b; ++l)
            q.set(b, l, pref * gauss_poly<K>(b - l, bnu, c, x));
    }
    return q;
}

// The actual system matrix M_{b,l} = (-1)^l binom(b,l) Q_{b,l}; row b equals
// q_prefactor(b) times row b of the alpha=beta=gamma=0 triangular matrix A.
template <class K>
TriMatrix<K> t0_matrix(const K& x, const K& nu, int b_max) {
    static_assert(!is_exact_v<K>, "t0_matrix is a float operation");
    TriMatrix<K> q = build_Q(x, nu, b_max);
    TriMatrix<K> m(b_max);
    K zero = k_int<K>(0);
    for (int b = 1; b <= b_max; ++b)
        for (int l = 1; l <= b; ++l) {
            K sign = k_int<K>((l % 2 == 0) ? 1 : -1);
            m.set(b, l, sign * genbinom(b, l, zero) * q.get(b, l));
        }
    return m;
}

// Reduced right-hand side: Ktilde_b = -(Gamma(b-b nu)/(Gamma(b) Gamma(1-b nu)))
// (1-x) x^{b-1} K_b   (equivalently K_b / q_prefactor(b)).
template <class K>
std::vector<K> reduce_rhs(const std::vector<K>& rhs, const K& x, const K& nu) {
    static_assert(!is_exact_v<K>, "reduce_rhs is a float operation");
    std::vector<K> out(rhs.size());
    for (int b = 1; b <= static_cast<int>(rhs.size()); ++b)
        out[b - 1] = rhs[b - 1] / detail::q_prefactor(x, nu, b);
    return out;
}

template <class K>
struct QueueSolution {
    std::vector<K> E;
    double residual_max = 0.0;
};

// Max-abs residual of the original system M E - K over the first b_max rows.
template <class K>
double t0_residual(const QueueProblemData& p, const std::vector<K>& E) {
    K x = k_real<K>(p.x), nu = k_real<K>(p.nu);
    TriMatrix<K> m = t0_matrix(x, nu, p.b_max);
    std::vector<K> lhs = hypinv::apply(m, E);
    double worst = 0.0;
    for (int b = 1; b <= p.b_max; ++b) {
        double d = abs_approx(lhs[b - 1] - k_real<K>(p.K[b - 1]));
        if (d > worst) worst = d;
    }
    return worst;
}

// Closed-form solve: E = B(x, nu; 0, 0, 0) applied to the reduced right-hand
// side, with the residual of the original system always reported.
template <class K>
QueueSolution<K> solve_E(const QueueProblemData& p) {
    static_assert(!is_exact_v<K>, "solve_E is a float operation");
    validate(p);
    K x = k_real<K>(p.x), nu = k_real<K>(p.nu);
    std::vector<K> rhs(p.K.size());
    for (std::size_t i = 0; i < p.K.size(); ++i) rhs[i] = k_real<K>(p.K[i]);
    rhs.resize(static_cast<std::size_t>(p.b_max));
    std::vector<K> ktil = reduce_rhs(rhs, x, nu);
    Params<K> prm{x, nu, k_int<K>(0), k_int<K>(0), k_int<K>(0)};
    TriMatrix<K> B = build_B(prm, p.b_max);
    QueueSolution<K> sol;
    sol.E = hypinv::apply(B, ktil);
    sol.residual_max = t0_residual(p, sol.E);
    return sol;
}

// Independent oracle: solve the original system directly by forward
// substitution on the full matrix.
template <class K>
std::vector<K> solve_forward(const QueueProblemData& p) {
    static_assert(!is_exact_v<K>, "solve_forward is a float operation");
    validate(p);
    K x = k_real<K>(p.x), nu = k_real<K>(p.nu);
    TriMatrix<K> m = t0_matrix(x, nu, p.b_max);
    std::vector<K> rhs(static_cast<std::size_t>(p.b_max));
    for (int b = 1; b <= p.b_max; ++b) rhs[b - 1] = k_real<K>(p.K[b - 1]);
    return forward_solve(m, rhs);
}

}  // namespace hypinv
