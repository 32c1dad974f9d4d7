#pragma once

// Hypergeometric building blocks: Pochhammer symbols, terminating Gauss
// polynomials F(-n, b; c; x), the truncated confluent function Phi, the
// finite reciprocal-gamma sum D_N with its closed form, and the Gauss
// unit-argument evaluation.

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hypinv/errors.hpp"
#include "hypinv/gamma.hpp"
#include "hypinv/numfield.hpp"

namespace hypinv {

// (c)_m = c (c+1) ... (c+m-1), with (c)_0 = 1.
template <class K>
K pochhammer(const K& c, int m) {
    K acc = k_int<K>(1);
    for (int i = 0; i < m; ++i) acc *= c + k_int<K>(i);
    return acc;
}

// Terminating Gauss polynomial F(-n, b; c; x) = sum_{m<=n} (-n)_m (b)_m / ((c)_m m!) x^m,
// evaluated by the term-ratio recurrence; when b and c coincide the ratio
// (b+m)/(c+m) is cancelled algebraically, so F(-n, b; b; x) = (1-x)^n holds
// even when b is a non-positive integer.
template <class K>
K gauss_poly(int n, const K& b, const K& c, const K& x) {
    if (n < 0) throw DomainError("gauss_poly: negative degree");
    const bool cancel = (b == c);
    K term = k_int<K>(1);
    K sum = k_int<K>(1);
    for (int m = 0; m < n; ++m) {
        K num = cancel ? k_int<K>(m - n) * x : k_int<K>(m - n) * (b + k_int<K>(m)) * x;
        if (FieldTraits<K>::is_zero(num)) break;  // all later terms vanish too
        K den = cancel ? k_int<K>(m + 1) : (c + k_int<K>(m)) * k_int<K>(m + 1);
        if (FieldTraits<K>::is_zero(den))
            throw DenominatorPole("gauss_poly: Pochhammer denominator vanished");
        term *= num / den;
        sum += term;
    }
    return sum;
}

// Truncated confluent hypergeometric Phi(lambda; mu; z) = sum (lambda)_j / ((mu)_j j!) z^j,
// summed through `order`; the magnitude of the last included term is
// reported as the tail bound rather than hidden.
template <class K>
struct PhiResult {
    K value;
    double tail;
};

template <class K>
int confluent_default_order(const K& z) {
    return std::max(40, static_cast<int>(std::ceil(4.0 * abs_approx(z))));
}

template <class K>
PhiResult<K> confluent_phi(const K& lambda, const K& mu, const K& z, int order = -1) {
    if (order < 0) order = confluent_default_order(z);
    K term = k_int<K>(1);
    K sum = k_int<K>(1);
    double tail = 0.0;
    for (int j = 0; j < order; ++j) {
        K num = (lambda + k_int<K>(j)) * z;
        if (FieldTraits<K>::is_zero(num)) {
            tail = 0.0;
            break;
        }
        K den = (mu + k_int<K>(j)) * k_int<K>(j + 1);
        if (FieldTraits<K>::is_zero(den))
            throw DenominatorPole("confluent_phi: mu is a non-positive integer");
        term *= num / den;
        sum += term;
        tail = abs_approx(term);
    }
    return {sum, tail};
}

// D_N(lambda, mu) = sum_{r=0}^{N-1} (-1)^r / (Gamma(1+r-lambda) Gamma(1-r+mu)),
// the defining finite sum. Entire in both arguments.
template <class K>
K d_sum_direct(int N, const K& lambda, const K& mu) {
    static_assert(!is_exact_v<K>, "d_sum_direct requires a float mode");
    K acc = k_int<K>(0);
    K sign = k_int<K>(1);
    for (int r = 0; r < N; ++r) {
        acc += sign * gamma_recip(k_int<K>(1 + r) - lambda) * gamma_recip(k_int<K>(1 - r) + mu);
        sign = -sign;
    }
    return acc;
}

// Closed form of D_N. Three regimes on the relative gap
// |mu - lambda| / (1 + max(|mu|, |lambda|)):
//   * at (numerical) coincidence, relative gap <= 1e-13: the analytic limit
//     at the midpoint m = (lambda+mu)/2, using d/dz(1/Gamma). The limit
//     formula itself carries an O(gap) error away from exact coincidence,
//     so its use is confined to where that error is below roundoff;
//   * relative gap below 1e-3: the quotient form, evaluated in the widened
//     scratch field and rounded back — in native precision this band loses
//     up to half the digits to cancellation;
//   * otherwise: the quotient form natively.
template <class K>
K d_closed(int N, const K& lambda, const K& mu) {
    static_assert(!is_exact_v<K>, "d_closed requires a float mode");
    const double coincide_tol = 1e-13;
    const double wide_tol = 1e-3;
    const double gap = abs_approx(mu - lambda) /
                       (1.0 + std::max(abs_approx(mu), abs_approx(lambda)));
    const K sign = k_int<K>((N % 2 == 0) ? 1 : -1);

    if (gap <= coincide_tol) {
        K m = (lambda + mu) * k_ratio<K>(1, 2);
        return gamma_recip(-m) * digamma_recip_derivative(k_int<K>(1) + m) -
               sign * gamma_recip(k_int<K>(N) - m) *
                   digamma_recip_derivative(k_int<K>(1 - N) + m);
    }
    if (gap < wide_tol) {
        using E = typename Escalate<K>::type;
        E l2 = complex_cast<E>(lambda);
        E m2 = complex_cast<E>(mu);
        E v = (gamma_recip(-l2) * gamma_recip(k_int<E>(1) + m2) -
               complex_cast<E>(sign) * gamma_recip(k_int<E>(N) - l2) *
                   gamma_recip(k_int<E>(1 - N) + m2)) /
              (m2 - l2);
        return complex_cast<K>(v);
    }
    return (gamma_recip(-lambda) * gamma_recip(k_int<K>(1) + mu) -
            sign * gamma_recip(k_int<K>(N) - lambda) * gamma_recip(k_int<K>(1 - N) + mu)) /
           (mu - lambda);
}

// F(alpha, beta; gamma; 1) = Gamma(gamma) Gamma(gamma-alpha-beta) /
// (Gamma(gamma-alpha) Gamma(gamma-beta)), valid for Re(gamma-alpha-beta) > 0.
template <class K>
K gauss_at_one(const K& alpha, const K& beta, const K& gamma) {
    static_assert(!is_exact_v<K>, "gauss_at_one requires a float mode");
    using std::exp;
    K gab = gamma - alpha - beta;
    if (!(to_dbl(gab.real()) > 0.0))
        throw DomainError("gauss_at_one: requires Re(gamma - alpha - beta) > 0");
    return exp(log_gamma(gamma) + log_gamma(gab) - log_gamma(gamma - alpha) -
               log_gamma(gamma - beta));
}

}  // namespace hypinv
