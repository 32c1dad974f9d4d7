#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "hypinv/invpair.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/queueapp.hpp"

using namespace hypinv;

TEST_CASE("first system entry is -1/(1-x)") {
    for (double x : {0.1, 0.4, 0.75}) {
        TriMatrix<C53> Q = build_Q<C53>(x, -0.7, 3);
        CHECK(abs_approx(Q.get(1, 1) - C53(-1.0 / (1.0 - x), 0)) < 1e-14);
        TriMatrix<C53> M = t0_matrix<C53>(x, -0.7, 3);
        // row 1 of the assembled system: (-1)^1 binom(1,1) Q_{1,1}
        CHECK(abs_approx(M.get(1, 1) - C53(1.0 / (1.0 - x), 0)) < 1e-14);
    }
}

TEST_CASE("assembled rows are proportional to the zero-parameter matrix") {
    const double x = 0.35, nu = -0.8;
    const int N = 10;
    TriMatrix<C53> M = t0_matrix<C53>(x, nu, N);
    Params<C53> p{C53(x, 0), C53(nu, 0), C53(0, 0), C53(0, 0), C53(0, 0)};
    TriMatrix<C53> A = build_A(p, N);
    for (int b = 1; b <= N; ++b) {
        // the row-b prefactor is M / A on the diagonal
        C53 pref = M.get(b, b) / A.get(b, b);
        for (int l = 1; l <= b; ++l) {
            C53 want = pref * A.get(b, l);
            CHECK(abs_approx(M.get(b, l) - want) <
                  1e-10 * std::max(1.0, abs_approx(want)));
        }
    }
}

TEST_CASE("right-hand-side reduction at b = 1 divides by -1/(1-x)") {
    const double x = 0.6, nu = -1.3;
    std::vector<C53> K{C53(2.5, 0)};
    std::vector<C53> kt = reduce_rhs(K, C53(x, 0), C53(nu, 0));
    CHECK(abs_approx(kt[0] - C53(-(1.0 - x) * 2.5, 0)) < 1e-14);
}

TEST_CASE("problem validation rejects out-of-domain inputs") {
    QueueProblemData good{0.4, -0.7, 3, {1.0, 2.0, 3.0}};
    CHECK_NOTHROW(validate(good));
    QueueProblemData bad = good;
    bad.x = 1.5;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = good;
    bad.x = 0.0;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = good;
    bad.nu = 0.2;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = good;
    bad.b_max = 0;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = good;
    bad.K.pop_back();
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("unit right-hand side K = M e_1 returns E = e_1") {
    const double x = 0.45, nu = -0.6;
    const int N = 8;
    TriMatrix<C53> M = t0_matrix<C53>(x, nu, N);
    QueueProblemData p{x, nu, N, {}};
    for (int b = 1; b <= N; ++b) p.K.push_back(M.get(b, 1).real());
    QueueSolution<C53> sol = solve_E<C53>(p);
    CHECK(abs_approx(sol.E[0] - C53(1, 0)) < 1e-10);
    for (int i = 1; i < N; ++i) CHECK(abs_approx(sol.E[i]) < 1e-10);
    CHECK(sol.residual_max < 1e-10);
}

TEST_CASE("inverse-matrix solve agrees with forward substitution at high precision") {
    std::mt19937_64 gen(20260819);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    QueueProblemData p{0.3, -0.9, 25, {}};
    for (int b = 0; b < p.b_max; ++b) p.K.push_back(U(gen));
    QueueSolution<C256> inv = solve_E<C256>(p);
    std::vector<C256> fwd = solve_forward<C256>(p);
    for (int i = 0; i < p.b_max; ++i)
        CHECK(abs_approx(inv.E[i] - fwd[i]) <
              1e-9 * std::max(1.0, abs_approx(fwd[i])));
    CHECK(inv.residual_max < 1e-9);
    CHECK(t0_residual<C256>(p, fwd) < 1e-30);  // forward substitution is near-exact
}

TEST_CASE("independent residual check at moderate size") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    QueueProblemData p{0.55, -1.4, 20, {}};
    for (int b = 0; b < p.b_max; ++b) p.K.push_back(U(gen));
    QueueSolution<C256> sol = solve_E<C256>(p);
    double resid = t0_residual<C256>(p, sol.E);
    CHECK(resid < 1e-9);
    CHECK(std::abs(resid - sol.residual_max) < 1e-12 * std::max(1.0, resid));
}

TEST_CASE("double precision carries small systems but not b_max = 30") {
    // the reduced right-hand side spans ~20 decades at b_max = 30, so the
    // 53-bit tier cannot reach 1e-8 residuals; the 256-bit tier can
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    QueueProblemData small{0.4, -0.5, 8, {}};
    for (int b = 0; b < small.b_max; ++b) small.K.push_back(U(gen));
    CHECK(solve_E<C53>(small).residual_max < 1e-8);
    QueueProblemData large{0.4, -0.5, 30, {}};
    for (int b = 0; b < large.b_max; ++b) large.K.push_back(U(gen));
    CHECK(solve_E<C256>(large).residual_max < 1e-8);
}
