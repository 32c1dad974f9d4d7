#pragma once

// Gamma-family special functions on complex scalars at any supported
// precision: log-gamma (Stirling series with exact Bernoulli coefficients),
// the entire reciprocal 1/Gamma, digamma, and d/dz (1/Gamma).
//
// Pole handling: everything that can hit a Gamma pole is routed through the
// reciprocal, which returns an exact 0 there, so "1/Gamma(-m) = 0" cases in
// finite sums come out exactly zero rather than as NaN.

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hypinv/errors.hpp"
#include "hypinv/numfield.hpp"

namespace hypinv {

namespace detail {

// Even-index Bernoulli numbers B_2, B_4, ..., exact, by the defining
// recurrence sum_{j<=m} C(m+1, j) B_j = 0. Computed once per process.
inline const std::vector<Rat>& bernoulli_even_table() {
    static const std::vector<Rat> table = [] {
        constexpr int kMax = 130;  // B_0 .. B_130 covers 512-bit Stirling
        std::vector<mpq_class> b(kMax + 1);
        b[0] = 1;
        for (int m = 1; m <= kMax; ++m) {
            mpq_class acc = 0;
            for (int j = 0; j < m; ++j) {
                if (j > 1 && (j % 2) == 1) continue;  // odd B_j vanish (j>1)
                mpz_class binom;
                mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1),
                             static_cast<unsigned long>(j));
                acc += binom * b[j];
            }
            b[m] = -acc / (m + 1);
        }
        std::vector<Rat> evens;
        for (int m = 2; m <= kMax; m += 2) evens.push_back(Rat(b[m]));
        return evens;
    }();
    return table;
}

// Bernoulli coefficients rounded once into the target real precision.
template <class R>
const std::vector<R>& bernoulli_even_real() {
    static const std::vector<R> table = [] {
        std::vector<R> out;
        for (const Rat& q : bernoulli_even_table()) {
            const mpq_class& v = q.raw();
            out.push_back(real_from_text<R>(v.get_num().get_str()) /
                          real_from_text<R>(v.get_den().get_str()));
        }
        return out;
    }();
    return table;
}

// Distance from z to the nearest non-positive integer pole, with the pole
// index; dist < 0 when Re z is too large (or not finite) for any pole.
template <class K>
struct PoleInfo {
    long j = -1;       // pole is at -j, j >= 0
    double dist = -1;  // |z + j|
};

template <class K>
PoleInfo<K> nearest_pole(const K& z) {
    PoleInfo<K> info;
    double re = to_dbl(z.real());
    double im = to_dbl(z.imag());
    if (!(re < 0.5) || re < -1e15) return info;
    long j = std::llround(-re);
    if (j < 0) j = 0;
    double dre = re + static_cast<double>(j);
    info.j = j;
    info.dist = std::hypot(dre, im);
    return info;
}

// Pole snap tolerance: within this distance of a non-positive integer, z is
// treated as the pole itself.
template <class K>
double pole_snap_tol(const K& z) {
    return 100.0 * FieldTraits<K>::eps() * (1.0 + abs_approx(z));
}

template <class K>
bool at_pole(const K& z) {
    auto info = nearest_pole(z);
    return info.j >= 0 && info.dist <= pole_snap_tol(z);
}

template <class R>
int stirling_bits() {
    return std::numeric_limits<R>::digits;
}
template <>
inline int stirling_bits<double>() {
    return 53;
}

}  // namespace detail

// Principal-branch log Gamma for Re z >= 1/2; for Re z < 1/2 the reflection
// formula is used, which preserves exp(log_gamma) exactly but may offset the
// imaginary part by a multiple of 2*pi (harmless in every ratio/exp use).
template <class K>
K log_gamma(K z) {
    static_assert(!is_exact_v<K>, "log_gamma requires a float mode");
    using R = typename FieldTraits<K>::real_type;
    using std::abs;
    using std::log;
    using std::sin;

    if (detail::at_pole(z)) throw PoleError("log_gamma at non-positive integer");

    const R pi = boost::math::constants::pi<R>();
    if (to_dbl(z.real()) < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        K one = k_int<K>(1);
        return log(K(pi, R(0)) / sin(K(pi, R(0)) * z)) - log_gamma(one - z);
    }

    const int bits = detail::stirling_bits<R>();
    const double shift_to = std::max(16.0, 0.36 * bits);
    K acc = k_int<K>(0);
    while (to_dbl(abs(z)) < shift_to) {
        acc -= log(z);
        z += k_int<K>(1);
    }
    // Stirling: (z - 1/2) log z - z + log(2 pi)/2 + sum B_{2k} / (2k(2k-1) z^{2k-1})
    K half = k_ratio<K>(1, 2);
    acc += (z - half) * log(z) - z + half * log(K(R(2) * pi, R(0)));
    const auto& bern = detail::bernoulli_even_real<R>();
    K z2 = z * z;
    K zpow = z;  // z^{2k-1}
    const double target = 0.25 * FieldTraits<K>::eps();
    for (std::size_t i = 0; i < bern.size(); ++i) {
        long two_k = 2 * static_cast<long>(i) + 2;
        K term = K(bern[i], R(0)) / (k_int<K>(two_k * (two_k - 1)) * zpow);
        acc += term;
        if (abs_approx(term) < target * (1.0 + abs_approx(acc))) break;
        zpow *= z2;
    }
    return acc;
}

// 1/Gamma(z): entire; exactly 0 at (snapped) non-positive integers.
template <class K>
K gamma_recip(const K& z) {
    static_assert(!is_exact_v<K>, "gamma_recip requires a float mode");
    using R = typename FieldTraits<K>::real_type;
    using std::exp;
    using std::sin;

    if (detail::at_pole(z)) return k_int<K>(0);
    if (to_dbl(z.real()) < 0.5) {
        // 1/Gamma(z) = sin(pi z)/pi * Gamma(1 - z)
        const R pi = boost::math::constants::pi<R>();
        K one = k_int<K>(1);
        return sin(K(pi, R(0)) * z) / K(pi, R(0)) * exp(log_gamma(one - z));
    }
    return exp(-log_gamma(z));
}

// Digamma psi(z) = Gamma'(z)/Gamma(z).
template <class K>
K digamma(K z) {
    static_assert(!is_exact_v<K>, "digamma requires a float mode");
    using R = typename FieldTraits<K>::real_type;
    using std::abs;
    using std::cos;
    using std::log;
    using std::sin;

    if (detail::at_pole(z)) throw PoleError("digamma at non-positive integer");

    const R pi = boost::math::constants::pi<R>();
    if (to_dbl(z.real()) < 0.5) {
        // psi(z) = psi(1-z) - pi cot(pi z)
        K pz = K(pi, R(0)) * z;
        return digamma(k_int<K>(1) - z) - K(pi, R(0)) * cos(pz) / sin(pz);
    }

    const int bits = detail::stirling_bits<R>();
    const double shift_to = std::max(16.0, 0.36 * bits);
    K acc = k_int<K>(0);
    while (to_dbl(abs(z)) < shift_to) {
        acc -= k_int<K>(1) / z;
        z += k_int<K>(1);
    }
    // psi(z) ~ log z - 1/(2z) - sum B_{2k} / (2k z^{2k})
    acc += log(z) - k_ratio<K>(1, 2) / z;
    const auto& bern = detail::bernoulli_even_real<R>();
    K z2 = z * z;
    K zpow = z2;  // z^{2k}
    const double target = 0.25 * FieldTraits<K>::eps();
    for (std::size_t i = 0; i < bern.size(); ++i) {
        long two_k = 2 * static_cast<long>(i) + 2;
        K term = K(bern[i], R(0)) / (k_int<K>(two_k) * zpow);
        acc -= term;
        if (abs_approx(term) < target * (1.0 + abs_approx(acc))) break;
        zpow *= z2;
    }
    return acc;
}

// d/dz [1/Gamma(z)]. Regular everywhere; near the poles of Gamma the direct
// product -psi(z)/Gamma(z) is 0*inf, so a factored form is used there:
// with w = z + j,  1/Gamma(z) = w * prod_{i=1..j} (w - i) / Gamma(1 + w),
// whose derivative is evaluated stably for |w| <= 0.3.
template <class K>
K digamma_recip_derivative(const K& z) {
    static_assert(!is_exact_v<K>, "digamma_recip_derivative requires a float mode");
    auto info = detail::nearest_pole(z);
    if (info.j >= 0 && info.dist <= 0.3) {
        long j = info.j;
        K w = z + k_int<K>(j);
        K prod = k_int<K>(1);     // prod (w - i)
        K logdsum = k_int<K>(0);  // sum 1/(w - i)
        for (long i = 1; i <= j; ++i) {
            K f = w - k_int<K>(i);
            prod *= f;
            logdsum += k_int<K>(1) / f;
        }
        K p = w * prod;                          // P(w)
        K pprime = prod * (k_int<K>(1) + w * logdsum);  // P'(w)
        K onepw = k_int<K>(1) + w;
        return (pprime - p * digamma(onepw)) * gamma_recip(onepw);
    }
    return -digamma(z) * gamma_recip(z);
}

}  // namespace hypinv
