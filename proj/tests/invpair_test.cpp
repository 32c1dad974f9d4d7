#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "hypinv/hyperfun.hpp"
#include "hypinv/invpair.hpp"
#include "hypinv/numfield.hpp"

using namespace hypinv;

namespace {
Rat rr(std::mt19937_64& gen, int lo = -5, int hi = 5, int dhi = 5) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, dhi);
    return Rat(num(gen), den(gen));
}

Rat rr_regular(std::mt19937_64& gen, int n_max) {
    for (;;) {
        Rat r = rr(gen);
        bool ok = true;
        for (int j = 1; j <= n_max && ok; ++j)
            if (r + Rat(j) == Rat(0)) ok = false;
        if (ok) return r;
    }
}

Params<Rat> random_params(std::mt19937_64& gen, int n_max) {
    return {rr(gen), rr(gen), rr(gen), rr_regular(gen, n_max), rr_regular(gen, n_max)};
}
}  // namespace

TEST_CASE("triangular storage: bounds, zero fill, identity") {
    TriMatrix<Rat> m(3);
    CHECK(m.n_max() == 3);
    CHECK(m.get(3, 1) == Rat(0));
    CHECK(m.get(1, 3) == Rat(0));  // above the diagonal reads as zero
    m.set(2, 1, Rat(7));
    CHECK(m.get(2, 1) == Rat(7));
    CHECK_THROWS_AS(m.get(4, 1), DomainError);
    CHECK_THROWS_AS(m.get(0, 1), DomainError);
    CHECK_THROWS_AS(m.set(1, 2, Rat(1)), DomainError);
    TriMatrix<Rat> id = TriMatrix<Rat>::identity(4);
    CHECK(is_identity(id));
    CHECK(identity_deviation(id) == 0.0);
}

TEST_CASE("generalized binomial prefactor") {
    // alpha = 0 reduces to the ordinary binomial coefficient
    CHECK(genbinom(5, 2, Rat(0)) == Rat(10));
    CHECK(genbinom(4, 4, Rat(0)) == Rat(1));
    // product form: (alpha+k+1)...(alpha+n) / (n-k)!
    CHECK(genbinom(3, 1, Rat(1, 2)) == (Rat(1, 2) + 2) * (Rat(1, 2) + 3) / Rat(2));
}

TEST_CASE("hand-computed entries at alpha = beta = gamma = 0") {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 10; ++t) {
        Rat x = rr(gen), nu = rr(gen);
        Params<Rat> p{x, nu, Rat(0), Rat(0), Rat(0)};
        TriMatrix<Rat> A = build_A(p, 3);
        CHECK(A.get(1, 1) == Rat(-1));
        // A_{2,1} = -2 (1 - nu x)
        CHECK(A.get(2, 1) == Rat(-2) * (Rat(1) - nu * x));
        TriMatrix<Rat> B = build_B(p, 3);
        for (int k = 1; k <= 3; ++k)
            CHECK(B.get(k, k) == ((k % 2 == 1) ? Rat(-1) : Rat(1)));
    }
}

TEST_CASE("nu = 0 collapses both matrices to the signed Pascal triangle") {
    Params<Rat> p{Rat(2, 7), Rat(0), Rat(0), Rat(1, 3), Rat(1, 5)};
    TriMatrix<Rat> A = build_A(p, 8);
    TriMatrix<Rat> B = build_B(p, 8);
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k <= n; ++k) {
            Rat sign((k % 2 == 1) ? -1 : 1);
            Rat binom = genbinom(n, k, Rat(0));
            CHECK(A.get(n, k) == sign * binom);
            CHECK(B.get(n, k) == sign * binom);
        }
    CHECK(is_identity(mat_mul(A, B)));
}

TEST_CASE("diagonals are (-1)^k for any admissible parameters") {
    std::mt19937_64 gen(17);
    for (int t = 0; t < 10; ++t) {
        Params<Rat> p = random_params(gen, 6);
        TriMatrix<Rat> A = build_A(p, 6);
        TriMatrix<Rat> B = build_B(p, 6);
        for (int k = 1; k <= 6; ++k) {
            Rat sign((k % 2 == 1) ? -1 : 1);
            CHECK(A.get(k, k) == sign);
            CHECK(B.get(k, k) == sign);
        }
    }
}

TEST_CASE("pole preconditions are rejected") {
    Params<Rat> gamma_pole{Rat(1, 2), Rat(1, 3), Rat(0), Rat(0), Rat(-3)};
    CHECK_THROWS_AS(build_A(gamma_pole, 5), DenominatorPole);
    CHECK_THROWS_AS(build_B(gamma_pole, 5), DenominatorPole);
    Params<Rat> beta_pole{Rat(1, 2), Rat(1, 3), Rat(0), Rat(-2), Rat(1, 7)};
    CHECK_THROWS_AS(build_B(beta_pole, 5), BetaPole);
    CHECK_NOTHROW(build_A(beta_pole, 5));  // A never divides by beta + k
    // gamma pole beyond n_max is harmless
    Params<Rat> far_pole{Rat(1, 2), Rat(1, 3), Rat(0), Rat(0), Rat(-9)};
    CHECK_NOTHROW(build_A(far_pole, 5));
}

TEST_CASE("exact inverse pair on random rational tuples") {
    std::mt19937_64 gen(20260819);
    for (int t = 0; t < 8; ++t) {
        Params<Rat> p = random_params(gen, 9);
        TriMatrix<Rat> A = build_A(p, 9);
        TriMatrix<Rat> B = build_B(p, 9);
        CHECK(is_identity(mat_mul(A, B)));
        CHECK(is_identity(mat_mul(B, A)));
    }
}

TEST_CASE("generic builder reproduces the five-parameter matrices bit-exactly") {
    std::mt19937_64 gen(23);
    for (int t = 0; t < 5; ++t) {
        Params<Rat> p = random_params(gen, 7);
        auto specs = pair_sequences(p);
        auto built = build_generic(specs.first, specs.second, p.alpha, p.x, 7);
        TriMatrix<Rat> A = build_A(p, 7);
        TriMatrix<Rat> B = build_B(p, 7);
        for (int n = 1; n <= 7; ++n)
            for (int k = 1; k <= n; ++k) {
                CHECK(built.first.get(n, k) == A.get(n, k));
                CHECK(built.second.get(n, k) == B.get(n, k));
            }
    }
}

TEST_CASE("swapped orientation: a per column, b per row still inverts") {
    // draw EGF coefficient tables f (per k) and solve g (per n) so that the
    // mirrored criterion [u^{n-k}] f_k(-u) g_n(u) = delta holds; the builder
    // must then produce an exact inverse pair.
    const int N = 8;
    std::mt19937_64 gen(1234);
    std::vector<std::vector<Rat>> f(N + 1), g(N + 1);
    for (int j = 1; j <= N; ++j) {
        f[j].assign(N + 1, Rat(0));
        f[j][0] = Rat(1);
        for (int m = 1; m <= N; ++m) f[j][m] = rr(gen, -4, 4, 4);
    }
    for (int n = 1; n <= N; ++n) {
        g[n].assign(N + 1, Rat(0));
        g[n][0] = Rat(1);
        for (int d = 1; d < n; ++d) {
            Rat acc(0);
            for (int m = 1; m <= d; ++m)
                acc += Rat(m % 2 == 1 ? -1 : 1) * f[n - d][m] * g[n][d - m];
            g[n][d] = -acc;
        }
    }
    auto fact = [](int m) {
        Rat v(1);
        for (int i = 2; i <= m; ++i) v *= Rat(i);
        return v;
    };
    SequenceSpec<Rat> a{[&](int m, int, int k) { return f[k][m] * fact(m); },
                        IndexDep::K};
    SequenceSpec<Rat> b{[&](int m, int n, int) { return g[n][m] * fact(m); },
                        IndexDep::N};
    auto built = build_generic(a, b, Rat(1, 3), Rat(2, 5), N);
    CHECK(is_identity(mat_mul(built.first, built.second)));
    CHECK(is_identity(mat_mul(built.second, built.first)));
}

TEST_CASE("criterion cells mirror product deviation cells") {
    // with x != 0 and alpha + k + 1 .. alpha + n nonzero, a product cell
    // deviates from the identity exactly when the criterion cell does
    std::mt19937_64 gen(29);
    const int N = 7;
    for (int t = 0; t < 20; ++t) {
        Rat x = rr(gen);
        while (x == Rat(0)) x = rr(gen);
        Rat alpha = rr_regular(gen, N + 1);
        auto draw_rows = [&](IndexDep dep) {
            auto rows = std::make_shared<std::vector<std::vector<Rat>>>(N + 1);
            for (int j = 1; j <= N; ++j) {
                (*rows)[j].assign(N + 1, Rat(0));
                (*rows)[j][0] = Rat(1);
                for (int m = 1; m <= N; ++m) (*rows)[j][m] = rr(gen, -3, 3, 3);
            }
            return SequenceSpec<Rat>{
                [rows, dep](int m, int n, int k) {
                    return (*rows)[dep == IndexDep::N ? n : k][m];
                },
                dep};
        };
        SequenceSpec<Rat> a = draw_rows(IndexDep::N);
        SequenceSpec<Rat> b = draw_rows(IndexDep::K);
        CriterionReport cr = criterion_check(a, b, N);
        auto built = build_generic(a, b, alpha, x, N);
        TriMatrix<Rat> prod = mat_mul(built.first, built.second);
        std::vector<std::pair<int, int>> prod_bad;
        for (int n = 1; n <= N; ++n)
            for (int k = 1; k <= n; ++k) {
                Rat expect = (n == k) ? Rat(1) : Rat(0);
                if (!(prod.get(n, k) == expect)) prod_bad.push_back({n, k});
            }
        CHECK(cr.pass == prod_bad.empty());
        REQUIRE(cr.failures.size() == prod_bad.size());
        for (std::size_t i = 0; i < prod_bad.size(); ++i) {
            CHECK(cr.failures[i].n == prod_bad[i].first);
            CHECK(cr.failures[i].k == prod_bad[i].second);
        }
    }
}

TEST_CASE("criterion verdict on the five-parameter sequences") {
    std::mt19937_64 gen(41);
    Params<Rat> p = random_params(gen, 10);
    auto specs = pair_sequences(p);
    CriterionReport cr = criterion_check(specs.first, specs.second, 10);
    CHECK(cr.pass);
    CHECK(cr.failures.empty());
    CHECK(cr.n_max == 10);
}

TEST_CASE("matrix-vector action, forward substitution, and round trips") {
    std::mt19937_64 gen(43);
    Params<Rat> p = random_params(gen, 8);
    TriMatrix<Rat> A = build_A(p, 8);
    TriMatrix<Rat> B = build_B(p, 8);
    std::vector<Rat> v(8);
    for (auto& e : v) e = rr(gen);
    std::vector<Rat> Av = hypinv::apply(A, v);
    // B undoes A's action
    std::vector<Rat> back = hypinv::apply(B, Av);
    for (int i = 0; i < 8; ++i) CHECK(back[i] == v[i]);
    // forward substitution solves A y = Av
    std::vector<Rat> y = forward_solve(A, Av);
    for (int i = 0; i < 8; ++i) CHECK(y[i] == v[i]);
    std::vector<Rat> short_rhs(3);
    CHECK_THROWS_AS(hypinv::apply(A, short_rhs), LengthMismatch);
    CHECK_THROWS_AS(forward_solve(A, short_rhs), LengthMismatch);
    TriMatrix<Rat> singular(2);
    singular.set(1, 1, Rat(0));
    std::vector<Rat> rhs2(2, Rat(1));
    CHECK_THROWS_AS(forward_solve(singular, rhs2), SingularDiagonal);
    TriMatrix<Rat> other(5);
    CHECK_THROWS_AS(mat_mul(A, other), SizeMismatch);
}

TEST_CASE("proof-kernel convolution cell equals (beta + n) delta") {
    std::mt19937_64 gen(47);
    for (int t = 0; t < 5; ++t) {
        Rat beta = rr(gen), nu = rr(gen), x = rr(gen);
        for (int n = 1; n <= 6; ++n)
            for (int k = 1; k <= n; ++k) {
                Rat cell = convolution_cell(beta, nu, n, k);
                CHECK(cell == (n == k ? beta + Rat(n) : Rat(0)));
            }
    }
}
