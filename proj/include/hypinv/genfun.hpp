#pragma once

// Generating-function layer: the mapping Xi and its inverse Omega, the
// implicit function Theta (series and scalar Newton forms), the Sigma series
// with its convergence radius R(nu), the kernel U, and the OGF/EGF transforms
// that realize the triangular pair as functional identities.

#include <cmath>
#include <string>
#include <vector>

#include "hypinv/errors.hpp"
#include "hypinv/hyperfun.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/powerseries.hpp"

namespace hypinv {

namespace detail {

// 1/(1 - c z) = sum c^i z^i.
template <class K>
Series<K> geometric(const K& c, int order) {
    Series<K> s(order);
    K t = k_int<K>(1);
    s.set(0, t);
    for (int i = 1; i <= order; ++i) {
        t *= c;
        s.set(i, t);
    }
    return s;
}

template <class K>
Series<K> one_minus_z(int order) {
    Series<K> s(order);
    s.set(0, k_int<K>(1));
    if (order >= 1) s.set(1, k_int<K>(-1));
    return s;
}

}  // namespace detail

// Series of Xi(z) = z/(z-1) * ((1-z)/(1-(1-x)z))^nu.
template <class K>
Series<K> xi_series(const K& x, const K& nu, int order) {
    if (order < 1) throw DomainError("xi_series needs order >= 1");
    Series<K> g1 = detail::geometric(k_int<K>(1), order);
    Series<K> inner = detail::one_minus_z<K>(order) *
                      detail::geometric(k_int<K>(1) - x, order);
    Series<K> f = g1 * binom_pow(inner, nu);
    return -(f.shifted_up());  // z/(z-1) = -z * 1/(1-z)
}

// Scalar evaluation of Xi on the principal branch.
template <class K>
K xi_eval(const K& x, const K& nu, const K& z) {
    static_assert(!is_exact_v<K>, "scalar Xi evaluation is a float operation");
    using std::exp;
    using std::log;
    K one = k_int<K>(1);
    K ratio = (one - z) / (one - (one - x) * z);
    return z / (z - one) * exp(nu * log(ratio));
}

// The three-branch auxiliary exponent psi(nu) and the radius R(nu) = |e^{-psi}|.
template <class K>
struct RadiusInfo {
    K nu;
    K psi_value;
    double radius = 0.0;
    int branch = 0;  // 1: C minus [0,inf); 2: 0 <= nu < 1; 3: nu >= 1
};

template <class K>
RadiusInfo<K> psi_nu(const K& nu) {
    static_assert(!is_exact_v<K>, "psi_nu is a float operation");
    using std::exp;
    using std::log;
    using R = real_of_t<K>;
    K one = k_int<K>(1);
    // c * log(w) with the continuous convention 0 * log 0 := 0
    auto term = [&](const K& c, const K& w) -> K {
        if (FieldTraits<K>::is_zero(c)) return k_int<K>(0);
        return c * log(w);
    };
    RadiusInfo<K> info;
    info.nu = nu;
    R re = nu.real(), im = nu.imag();
    if (im == R(0) && re >= R(0) && re < R(1)) {
        info.branch = 2;
        info.psi_value = term(one - nu, one - nu) + term(nu, nu);
    } else if (im == R(0) && re >= R(1)) {
        info.branch = 3;
        info.psi_value = term(one - nu, nu - one) + term(nu, nu);
    } else {
        info.branch = 1;
        info.psi_value = term(one - nu, one - nu) + term(nu, -nu);
    }
    info.radius = abs_approx(exp(-info.psi_value));
    return info;
}

// Series solution of 1 - Theta + w Theta^{1-nu} = 0 with Theta(0) = 1,
// by Newton iteration on series, verified two ways: the defining equation
// must vanish to the truncation order, and the coefficients of
// Theta/(nu Theta + 1 - nu) must match their Pochhammer closed form.
template <class K>
Series<K> theta_series(const K& nu, int order) {
    if (order < 0) throw DomainError("theta_series needs order >= 0");
    int N = order;
    Series<K> one = Series<K>::one(N);
    Series<K> th = one;
    K om_nu = k_int<K>(1) - nu;
    int steps = 2;
    for (int m = 1; m < N + 1; m *= 2) ++steps;
    for (int s = 0; s < steps; ++s) {
        Series<K> f = one - th + binom_pow(th, om_nu).shifted_up();
        Series<K> fp = -one + om_nu * binom_pow(th, -nu).shifted_up();
        th = th - f / fp;
    }
    // residual of the defining equation
    Series<K> resid = one - th + binom_pow(th, om_nu).shifted_up();
    double scale = 1.0;
    for (int b = 0; b <= N; ++b) scale = std::max(scale, abs_approx(th.coeff(b)));
    for (int b = 0; b <= N; ++b) {
        if constexpr (is_exact_v<K>) {
            if (!FieldTraits<K>::is_zero(resid.coeff(b)))
                throw NoConvergence("series Newton residual nonzero at order " +
                                    std::to_string(b));
        } else {
            if (abs_approx(resid.coeff(b)) > 1e-9 * scale)
                throw NoConvergence("series Newton residual too large at order " +
                                    std::to_string(b));
        }
    }
    // coefficient cross-check: [w^b] Theta/(nu Theta + 1 - nu) = (1-b nu)_b / b!
    Series<K> q = th / (nu * th + (k_int<K>(1) - nu) * one);
    K fact = k_int<K>(1);
    for (int b = 1; b <= N; ++b) {
        fact *= k_int<K>(b);
        K target = pochhammer<K>(k_int<K>(1) - k_int<K>(b) * nu, b) / fact;
        if constexpr (is_exact_v<K>) {
            if (!(q.coeff(b) == target))
                throw NoConvergence("coefficient cross-check failed at order " +
                                    std::to_string(b));
        } else {
            if (abs_approx(q.coeff(b) - target) > 1e-9 * (1.0 + abs_approx(target)))
                throw NoConvergence("coefficient cross-check failed at order " +
                                    std::to_string(b));
        }
    }
    return th;
}

// Series with coefficients sigma_b = -(1/nu) prod_{j=1}^{b} (b(1-nu) - j) / b!
// for b >= 1 (sigma_0 = 0); at nu = 0 the limit gives sigma_b = 1.
template <class K>
Series<K> sigma_series(const K& nu, int order) {
    Series<K> s(order);
    if (FieldTraits<K>::is_zero(nu)) {
        for (int b = 1; b <= order; ++b) s.set(b, k_int<K>(1));
        return s;
    }
    for (int b = 1; b <= order; ++b) {
        // Interleave the division by b! so floating-point magnitudes stay
        // near the final coefficient size instead of overflowing.
        K t = k_int<K>(1);
        K base = k_int<K>(b) * (k_int<K>(1) - nu);
        for (int j = 1; j <= b; ++j) t *= (base - k_int<K>(j)) / k_int<K>(j);
        s.set(b, -t / nu);
    }
    return s;
}

namespace detail {

template <class K>
void require_in_radius(double mag, const K& nu, const char* what) {
    double R = psi_nu(nu).radius;
    if (!(mag < 0.95 * R))
        throw OutsideRadius(std::string(what) + ": |argument| = " + std::to_string(mag) +
                            " not within 0.95 * R = " + std::to_string(0.95 * R));
}

}  // namespace detail

// Scalar root of 1 - Theta + w Theta^{1-nu} = 0 on the branch with
// Theta(0) = 1, found by Newton continuation from w = 0 along the ray to w.
template <class K>
K theta_newton(const K& nu, const K& w) {
    static_assert(!is_exact_v<K>, "theta_newton is a float operation");
    using std::exp;
    using std::log;
    double mag = abs_approx(w);
    detail::require_in_radius(mag, nu, "theta_newton");
    if (mag == 0.0) return k_int<K>(1);

    K one = k_int<K>(1);
    K om_nu = one - nu;
    auto attempt = [&](int steps, K& out) -> bool {
        K th = one;
        for (int i = 1; i <= steps; ++i) {
            K wi = w * k_ratio<K>(i, steps);
            bool settled = false;
            for (int it = 0; it < 50; ++it) {
                if (abs_approx(th) < 1e-8) return false;  // branch sliding toward 0
                K pw = exp(om_nu * log(th));
                K f = one - th + wi * pw;
                double fmag = abs_approx(f);
                if (fmag < 1e-15 * (1.0 + abs_approx(th))) {
                    settled = true;
                    break;
                }
                K fp = -one + wi * om_nu * pw / th;
                if (abs_approx(fp) < 1e-14) return false;
                th = th - f / fp;
                if (!(abs_approx(th) < 1e8)) return false;
            }
            if (!settled) {
                K pw = exp(om_nu * log(th));
                if (abs_approx(one - th + wi * pw) > 1e-13) return false;
            }
        }
        out = th;
        return true;
    };
    for (int steps = 16; steps <= 1024; steps *= 2) {
        K th;
        if (attempt(steps, th)) return th;
    }
    throw BranchLost("Newton continuation from Theta(0) = 1 failed");
}

// Sigma(w) = (Theta(w) - 1) / (nu Theta(w) + 1 - nu), |w| < R(nu).
template <class K>
K sigma_closed(const K& nu, const K& w) {
    static_assert(!is_exact_v<K>, "sigma_closed is a float operation");
    K th = theta_newton(nu, w);
    K den = nu * th + k_int<K>(1) - nu;
    if (FieldTraits<K>::is_zero(den))
        throw DomainError("sigma_closed denominator vanished");
    return (th - k_int<K>(1)) / den;
}

// Omega(xi) = Sigma(x xi) / ((1 - x(1-nu)) Sigma(x xi) - x), the scalar
// inverse of Xi, |xi| < R(nu)/|x|.
template <class K>
K omega_closed(const K& x, const K& nu, const K& xi) {
    static_assert(!is_exact_v<K>, "omega_closed is a float operation");
    if (FieldTraits<K>::is_zero(x)) throw XZero("omega_closed requires x != 0");
    K sig = sigma_closed(nu, x * xi);  // enforces |x xi| < 0.95 R
    K den = (k_int<K>(1) - x * (k_int<K>(1) - nu)) * sig - x;
    if (FieldTraits<K>::is_zero(den))
        throw DomainError("omega_closed denominator vanished");
    return sig / den;
}

// Series inverse of xi_series (compositional reversion).
template <class K>
Series<K> omega_series(const K& x, const K& nu, int order) {
    return revert(xi_series(x, nu, order));
}

// Series expansion of the closed form: Sx(xi) = Sigma(x xi) termwise, then
// Omega = Sx / ((1 - x(1-nu)) Sx - x).
template <class K>
Series<K> omega_closed_series(const K& x, const K& nu, int order) {
    if (FieldTraits<K>::is_zero(x)) throw XZero("omega_closed_series requires x != 0");
    Series<K> sig = sigma_series(nu, order);
    Series<K> sx(order);
    K xp = k_int<K>(1);
    for (int b = 1; b <= order; ++b) {
        xp *= x;
        sx.set(b, sig.coeff(b) * xp);
    }
    Series<K> den = (k_int<K>(1) - x * (k_int<K>(1) - nu)) * sx -
                    Series<K>::constant(x, order);
    return sx / den;
}

// Kernel series sum_{n>=0} ((1+a1)_n / n!) z^n F(-n, a2; a3; x): the direct
// double sum, coefficient by coefficient.
template <class K>
Series<K> u_kernel(const K& a1, const K& a2, const K& a3, int order, const K& x) {
    Series<K> s(order);
    K t = k_int<K>(1);  // (1+a1)_n / n!
    s.set(0, k_int<K>(1));
    for (int n = 1; n <= order; ++n) {
        t *= (a1 + k_int<K>(n)) / k_int<K>(n);
        s.set(n, t * gauss_poly<K>(n, a2, a3, x));
    }
    return s;
}

// The same kernel in closed form: (1-z)^{-1-a1} F(1+a1, a2; a3; u(z)) with
// u = x z/(z-1), the Gauss factor expanded termwise in the series u.
template <class K>
Series<K> u_kernel_closed(const K& a1, const K& a2, const K& a3, int order,
                          const K& x) {
    for (int j = 0; j < order; ++j)
        if (FieldTraits<K>::is_zero(a3 + k_int<K>(j)))
            throw DenominatorPole("a3 + j vanishes for j = " + std::to_string(j));
    // coefficients of F(1+a1, a2; a3; u) as a series in u
    Series<K> f(order);
    K c = k_int<K>(1);
    f.set(0, c);
    for (int m = 1; m <= order; ++m) {
        int j = m - 1;
        c *= (a1 + k_int<K>(1 + j)) * (a2 + k_int<K>(j)) /
             ((a3 + k_int<K>(j)) * k_int<K>(m));
        f.set(m, c);
    }
    Series<K> u = -(x * detail::geometric(k_int<K>(1), order)).shifted_up();
    Series<K> pref = binom_pow(detail::one_minus_z<K>(order), -(a1 + k_int<K>(1)));
    return pref * compose(f, u);
}

namespace detail {

// OGF of a 1-based sequence: sum_{k>=1} t_k z^k, truncated.
template <class K>
Series<K> sequence_ogf(const std::vector<K>& t, int order) {
    Series<K> s(order);
    for (int k = 1; k <= order && k <= static_cast<int>(t.size()); ++k)
        s.set(k, t[k - 1]);
    return s;
}

}  // namespace detail

// OGF transform: G_S(z) = [(1-nu)/(1-z) + nu/(1-(1-x)z)] (-Xi(z)/z)^beta
//                         (1-z)^{beta-gamma} G_T(Xi(z)).
template <class K>
Series<K> ogf_S_from_T(const std::vector<K>& T, const K& x, const K& nu,
                       const K& beta, const K& gamma, int order) {
    Series<K> xi = xi_series(x, nu, order + 1);
    Series<K> mxi_over_z = (-xi).shifted_down();  // constant term +1
    Series<K> pref = (k_int<K>(1) - nu) * detail::geometric(k_int<K>(1), order) +
                     nu * detail::geometric(k_int<K>(1) - x, order);
    Series<K> p_beta = binom_pow(mxi_over_z, beta);
    Series<K> p_bg = binom_pow(detail::one_minus_z<K>(order), beta - gamma);
    Series<K> gt = compose(detail::sequence_ogf(T, order), xi.truncated(order));
    return pref * p_beta * p_bg * gt;
}

// Inverse OGF transform: G_T(xi) = [(1-nu)/(1-Omega) + nu/(1-(1-x)Omega)]^{-1}
//                                  (-Omega/xi)^beta (1-Omega)^{gamma-beta}
//                                  G_S(Omega(xi)).
template <class K>
Series<K> ogf_T_from_S(const std::vector<K>& S, const K& x, const K& nu,
                       const K& beta, const K& gamma, int order) {
    Series<K> om = omega_series(x, nu, order + 1);
    Series<K> om_t = om.truncated(order);
    Series<K> mom_over_xi = (-om).shifted_down();  // constant term +1
    Series<K> one = Series<K>::one(order);
    Series<K> p = (k_int<K>(1) - nu) * (one - om_t).inverse() +
                  nu * (one - (k_int<K>(1) - x) * om_t).inverse();
    Series<K> p_beta = binom_pow(mom_over_xi, beta);
    Series<K> p_gb = binom_pow(one - om_t, gamma - beta);
    Series<K> gs = compose(detail::sequence_ogf(S, order), om_t);
    return p.inverse() * p_beta * p_gb * gs;
}

// EGF evaluation: exp(z) sum_k (-1)^k T_k z^k/k! [ (gamma+k)/(beta+k)
// Phi((beta+k)nu; gamma+k; -xz) + (beta-gamma)/(beta+k) Phi(...; 1+gamma+k; -xz) ].
template <class K>
K egf_S(const std::vector<K>& T, const K& x, const K& nu, const K& beta,
        const K& gamma, const K& z, int order = -1) {
    static_assert(!is_exact_v<K>, "EGF evaluation is a float operation");
    using std::exp;
    K acc = k_int<K>(0);
    K zk = k_int<K>(1);  // z^k / k!
    for (int k = 1; k <= static_cast<int>(T.size()); ++k) {
        zk *= z / k_int<K>(k);
        if (FieldTraits<K>::is_zero(T[k - 1])) continue;
        K bk = beta + k_int<K>(k);
        if (FieldTraits<K>::is_zero(bk))
            throw BetaPole("beta + k vanishes for k = " + std::to_string(k));
        K gk = gamma + k_int<K>(k);
        K lam = bk * nu;
        K phi1 = confluent_phi<K>(lam, gk, -x * z, order).value;
        K phi2 = confluent_phi<K>(lam, k_int<K>(1) + gk, -x * z, order).value;
        K bracket = (gk / bk) * phi1 + ((beta - gamma) / bk) * phi2;
        K sign = k_int<K>((k % 2 == 0) ? 1 : -1);
        acc += sign * T[k - 1] * zk * bracket;
    }
    return exp(z) * acc;
}

// Root test on the sigma coefficients: the window maximum of |sigma_b|^{1/b}
// over b in [b_top - window + 1, b_top], compared with 1/R(nu).
struct RootTestResult {
    double estimate = 0.0;
    double target = 0.0;
    double rel_dev = 0.0;
    int b_top = 0;
    int window = 0;
};

inline RootTestResult sigma_root_test(double nu, int b_top = 400, int window = 10) {
    if (b_top < 1 || window < 1 || window > b_top)
        throw DomainError("bad root-test window");
    RootTestResult r;
    r.b_top = b_top;
    r.window = window;
    r.target = 1.0 / psi_nu(C53(nu, 0.0)).radius;
    for (int b = b_top - window + 1; b <= b_top; ++b) {
        double logsig;
        if (nu == 0.0) {
            logsig = 0.0;  // sigma_b = 1
        } else {
            bool zero = false;
            double acc = -std::log(std::abs(nu)) - std::lgamma(b + 1.0);
            for (int j = 1; j <= b; ++j) {
                double term = b * (1.0 - nu) - j;
                if (term == 0.0) {
                    zero = true;
                    break;
                }
                acc += std::log(std::abs(term));
            }
            if (zero) continue;
            logsig = acc;
        }
        double est = std::exp(logsig / b);
        if (est > r.estimate) r.estimate = est;
    }
    r.rel_dev = std::abs(r.estimate - r.target) / r.target;
    return r;
}

}  // namespace hypinv
