#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hypinv/hyperfun.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/powerseries.hpp"

using namespace hypinv;

namespace {
double dist(const C53& a, const C53& b) { return abs_approx(a - b); }

Rat rr(std::mt19937_64& gen, int lo = -6, int hi = 6, int dhi = 6) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, dhi);
    return Rat(num(gen), den(gen));
}
}  // namespace

TEST_CASE("pochhammer products in exact and float modes") {
    CHECK(pochhammer(Rat(1, 2), 3) == Rat(1, 2) * Rat(3, 2) * Rat(5, 2));
    CHECK(pochhammer(Rat(-3), 5) == Rat(0));  // crosses zero
    CHECK(pochhammer(Rat(7), 0) == Rat(1));
    CHECK(dist(pochhammer(C53(2, 1), 2), C53(2, 1) * C53(3, 1)) == 0.0);
}

TEST_CASE("terminating Gauss polynomial: hand values and b = c collapse") {
    // F(-1, b; c; x) = 1 - (b/c) x
    CHECK(gauss_poly(1, Rat(3), Rat(5), Rat(1, 2)) == Rat(1) - Rat(3, 10));
    // F(-d, b; b; x) = (1 - x)^d even though (b)_m / (b)_m looks singular later
    std::mt19937_64 gen(7);
    for (int d = 0; d <= 6; ++d) {
        Rat b = rr(gen), x = rr(gen);
        Rat expect(1);
        for (int i = 0; i < d; ++i) expect *= (Rat(1) - x);
        CHECK(gauss_poly(d, b, b, x) == expect);
    }
    // denominator pole: c = -j with j < d and b != c is rejected
    CHECK_THROWS_AS(gauss_poly(4, Rat(1, 3), Rat(-2), Rat(1, 2)), DenominatorPole);
    // ...but a pole at or beyond the truncation index is harmless
    CHECK_NOTHROW(gauss_poly(2, Rat(1, 3), Rat(-2), Rat(1, 2)));
}

TEST_CASE("contiguous-parameter evaluation matches its binomial closed form") {
    // sum_m (1+a)_m (b)_m / ((a)_m m!) x^m  =  (1-x)^{-b} + (b x / a)(1-x)^{-1-b}
    std::mt19937_64 gen(20260819);
    const int order = 12;
    for (int t = 0; t < 50; ++t) {
        Rat a = rr(gen), b = rr(gen);
        bool bad = a == Rat(0);
        for (int j = 0; j <= order && !bad; ++j)
            if (a + Rat(j) == Rat(0)) bad = true;
        if (bad) { --t; continue; }
        Series<Rat> lhs(order);
        lhs.set(0, Rat(1));
        for (int m = 1; m <= order; ++m)
            lhs.set(m, pochhammer(Rat(1) + a, m) * pochhammer(b, m) /
                           (pochhammer(a, m) * pochhammer(Rat(1), m)));
        Series<Rat> one_minus_x(order);
        one_minus_x.set(0, Rat(1));
        one_minus_x.set(1, Rat(-1));
        Series<Rat> rhs = binom_pow(one_minus_x, -b) +
                          (b / a) * binom_pow(one_minus_x, Rat(-1) - b).shifted_up();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Gauss value at unit argument matches reference values") {
    CHECK(dist(gauss_at_one(C53(0.3, 0), C53(0.4, 0), C53(2.1, 0)),
               C53(1.097150533427668766651519, 0)) < 1e-14);
    CHECK(dist(gauss_at_one(C53(0.2, 0.1), C53(0.3, 0), C53(1.5, 0.4)),
               C53(1.078812498111172319476004, 0.007004674286223527980494864)) < 1e-14);
    // negative-parameter case with a rational value: F(1, -3/2; 4/5; 1) = -2/13
    CHECK(dist(gauss_at_one(C53(1, 0), C53(-1.5, 0), C53(0.8, 0)),
               C53(-0.153846153846153846153846, 0)) < 1e-14);
    // divergence guard: Re(c - a - b) <= 0
    CHECK_THROWS_AS(gauss_at_one(C53(1, 0), C53(1, 0), C53(1.5, 0)), DomainError);
}

TEST_CASE("confluent series matches reference values and reports its tail") {
    PhiResult<C53> a = confluent_phi(C53(0.5, 0), C53(2.5, 0), C53(-1.2, 0));
    CHECK(dist(a.value, C53(0.8102394930947440163699976, 0)) < 1e-14);
    CHECK(a.tail < 1e-13);
    PhiResult<C53> b = confluent_phi(C53(1.1, 0.3), C53(2, 0), C53(0, 0.7));
    CHECK(dist(b.value, C53(0.8149826872800650329363793, 0.3317290017197814106525882)) <
          1e-14);
    PhiResult<C53> z0 = confluent_phi(C53(1.7, 0), C53(3.2, 0), C53(0, 0));
    CHECK(dist(z0.value, C53(1, 0)) == 0.0);
}

TEST_CASE("difference quotient: reference values incl. the coincident limit") {
    C53 got = d_closed(4, C53(1.3, 0.2), C53(-0.7, 0));
    CHECK(dist(got, C53(1.230084963081126111423814, 0.05206706003044415449279602)) < 1e-13);
    C53 lam(1.3, 0.2);
    C53 coincident = d_closed(1, lam, lam);
    CHECK(dist(coincident,
               C53(-0.2474839432163579768696873, -0.05842256186085861858535416)) < 1e-13);
}

TEST_CASE("difference quotient agrees with its defining sum across regimes") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    std::uniform_int_distribution<int> UN(1, 12);
    for (double off : {1.0 /*random*/, 0.0, 1e-12, 1e-9, 1e-7, 1e-5, 3e-4, 1e-3}) {
        for (int i = 0; i < 30; ++i) {
            int N = UN(gen);
            C53 lam(U(gen), U(gen));
            C53 mu = (off == 1.0) ? C53(U(gen), U(gen)) : lam + C53(off, off / 3);
            C53 c = d_closed(N, lam, mu);
            C53 s = d_sum_direct(N, lam, mu);
            CHECK(abs_approx(c - s) < 1e-10 * std::max(1.0, abs_approx(s)));
        }
    }
}

TEST_CASE("difference quotient: integer coincidences give zeros and signed units") {
    for (int d = 1; d <= 6; ++d) {
        int N = d + 1;
        for (int m = 0; m <= d; ++m)
            for (int mp = 0; mp <= d - m; ++mp) {
                C53 v = d_closed(N, C53(double(m), 0), C53(double(d - mp), 0));
                if (m + mp < d) {
                    CHECK(abs_approx(v) == 0.0);
                } else {
                    double sgn = (m % 2 == 0) ? 1.0 : -1.0;
                    CHECK(abs_approx(v - C53(sgn, 0)) < 1e-12);
                }
            }
    }
}
