#pragma once

// Lower-triangular inverse pairs built from terminating hypergeometric sums:
// the five-parameter (x, nu, alpha, beta, gamma) pair, the generic builder for
// arbitrary coefficient sequences, the coefficient-extraction inversion
// criterion, and triangular linear algebra (products, solves, apply).

#include <functional>
#include <utility>
#include <vector>

#include "hypinv/errors.hpp"
#include "hypinv/hyperfun.hpp"
#include "hypinv/numfield.hpp"
#include "hypinv/powerseries.hpp"

namespace hypinv {

template <class K>
struct Params {
    K x;
    K nu;
    K alpha;
    K beta;
    K gamma;
};

// Dense storage of a lower-triangular matrix with 1-based indices
// 1 <= k <= n <= n_max; reads above the diagonal return 0.
template <class K>
class TriMatrix {
  public:
    explicit TriMatrix(int n_max) : n_(n_max) {
        if (n_max < 1) throw DomainError("TriMatrix needs n_max >= 1");
        rows_.resize(static_cast<std::size_t>(n_max));
        for (int n = 1; n <= n_max; ++n)
            rows_[n - 1].assign(static_cast<std::size_t>(n), k_int<K>(0));
    }

    static TriMatrix identity(int n_max) {
        TriMatrix m(n_max);
        for (int n = 1; n <= n_max; ++n) m.set(n, n, k_int<K>(1));
        return m;
    }

    int n_max() const { return n_; }

    K get(int n, int k) const {
        check_row(n);
        if (k < 1 || k > n_) throw DomainError("column index out of range");
        if (k > n) return k_int<K>(0);
        return rows_[n - 1][k - 1];
    }
    void set(int n, int k, const K& v) {
        check_row(n);
        if (k < 1 || k > n) throw DomainError("column index out of range");
        rows_[n - 1][k - 1] = v;
    }

  private:
    void check_row(int n) const {
        if (n < 1 || n > n_) throw DomainError("row index out of range");
    }
    int n_;
    std::vector<std::vector<K>> rows_;
};

// prod_{j=k+1}^{n} (alpha + j) / (n-k)!  — the generalized binomial weight,
// computed as the explicit product (exact for rational alpha, defined for
// all complex alpha).
template <class K>
K genbinom(int n, int k, const K& alpha) {
    K num = k_int<K>(1);
    for (int j = k + 1; j <= n; ++j) num *= alpha + k_int<K>(j);
    K den = k_int<K>(1);
    for (int i = 2; i <= n - k; ++i) den *= k_int<K>(i);
    return num / den;
}

namespace detail {

template <class K>
inline K sign_pm(int k) { return k_int<K>((k % 2 == 0) ? 1 : -1); }

template <class K>
void require_gamma_regular(const K& gamma, int n_max) {
    for (int j = 1; j <= n_max; ++j)
        if (FieldTraits<K>::is_zero(gamma + k_int<K>(j)))
            throw DenominatorPole("gamma + j vanishes for j = " + std::to_string(j));
}

}  // namespace detail

// A_{n,k} = (-1)^k genbinom(n,k,alpha) F(k-n, -(beta+n)nu; -(gamma+n); x).
template <class K>
TriMatrix<K> build_A(const Params<K>& p, int n_max) {
    detail::require_gamma_regular(p.gamma, n_max);
    TriMatrix<K> m(n_max);
    for (int n = 1; n <= n_max; ++n) {
        K b = -(p.beta + k_int<K>(n)) * p.nu;
        K c = -(p.gamma + k_int<K>(n));
        for (int k = 1; k <= n; ++k) {
            K f = gauss_poly<K>(n - k, b, c, p.x);
            m.set(n, k, detail::sign_pm<K>(k) * genbinom(n, k, p.alpha) * f);
        }
    }
    return m;
}

// B_{n,k} = (-1)^k genbinom(n,k,alpha) [ (gamma+k)/(beta+k) F(k-n,(beta+k)nu;gamma+k;x)
//                                      + (beta-gamma)/(beta+k) F(k-n,(beta+k)nu;1+gamma+k;x) ].
template <class K>
TriMatrix<K> build_B(const Params<K>& p, int n_max) {
    detail::require_gamma_regular(p.gamma, n_max);
    for (int k = 1; k <= n_max; ++k)
        if (FieldTraits<K>::is_zero(p.beta + k_int<K>(k)))
            throw BetaPole("beta + k vanishes for k = " + std::to_string(k));
    TriMatrix<K> m(n_max);
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 1; k <= n; ++k) {
            K bk = p.beta + k_int<K>(k);
            K gk = p.gamma + k_int<K>(k);
            K b = bk * p.nu;
            K w1 = gk / bk;
            K w2 = (p.beta - p.gamma) / bk;
            K f1 = gauss_poly<K>(n - k, b, gk, p.x);
            K f2 = gauss_poly<K>(n - k, b, k_int<K>(1) + gk, p.x);
            m.set(n, k, detail::sign_pm<K>(k) * genbinom(n, k, p.alpha) * (w1 * f1 + w2 * f2));
        }
    }
    return m;
}

// A coefficient family c_m(n, k) together with a declaration of which matrix
// index it actually depends on (the generator still receives both).
enum class IndexDep { N, K };

template <class K>
struct SequenceSpec {
    std::function<K(int m, int n, int k)> generator;
    IndexDep depends_on = IndexDep::N;
};

// Matrices with entries (-1)^k genbinom(n,k,alpha) sum_{m=0}^{n-k}
// (k-n)_m c_m(n,k) x^m / m!, for c = a and c = b respectively.
template <class K>
std::pair<TriMatrix<K>, TriMatrix<K>> build_generic(const SequenceSpec<K>& a,
                                                    const SequenceSpec<K>& b,
                                                    const K& alpha, const K& x,
                                                    int n_max) {
    auto build = [&](const SequenceSpec<K>& s) {
        TriMatrix<K> m(n_max);
        for (int n = 1; n <= n_max; ++n) {
            for (int k = 1; k <= n; ++k) {
                K sum = s.generator(0, n, k);
                K t = k_int<K>(1);  // (k-n)_m x^m / m!
                for (int mm = 1; mm <= n - k; ++mm) {
                    t *= k_int<K>(k - n + mm - 1) * x / k_int<K>(mm);
                    sum += t * s.generator(mm, n, k);
                }
                m.set(n, k, detail::sign_pm<K>(k) * genbinom(n, k, alpha) * sum);
            }
        }
        return m;
    };
    return {build(a), build(b)};
}

// The five-parameter pair expressed as coefficient sequences: feeding these
// to build_generic reproduces build_A / build_B entry for entry.
template <class K>
std::pair<SequenceSpec<K>, SequenceSpec<K>> pair_sequences(const Params<K>& p) {
    K beta = p.beta, gamma = p.gamma, nu = p.nu;
    SequenceSpec<K> a;
    a.depends_on = IndexDep::N;
    a.generator = [beta, gamma, nu](int m, int n, int) {
        K bn = -(beta + k_int<K>(n)) * nu;
        K cn = -(gamma + k_int<K>(n));
        return pochhammer<K>(bn, m) / pochhammer<K>(cn, m);
    };
    SequenceSpec<K> b;
    b.depends_on = IndexDep::K;
    b.generator = [beta, gamma, nu](int m, int, int k) {
        K bk = beta + k_int<K>(k);
        K gk = gamma + k_int<K>(k);
        if (FieldTraits<K>::is_zero(bk))
            throw BetaPole("beta + k vanishes for k = " + std::to_string(k));
        K lam = bk * nu;
        K t1 = (gk / bk) * pochhammer<K>(lam, m) / pochhammer<K>(gk, m);
        K t2 = ((beta - gamma) / bk) * pochhammer<K>(lam, m) /
               pochhammer<K>(k_int<K>(1) + gk, m);
        return t1 + t2;
    };
    return {a, b};
}

struct CriterionCell {
    int n = 0;
    int k = 0;
    double deviation = 0.0;  // |value - delta| (0 in exact mode when failing bit-wise)
};

struct CriterionReport {
    bool pass = true;
    int n_max = 0;
    std::vector<CriterionCell> failures;
};

// The inversion criterion: for every 1 <= k <= n <= n_max the coefficient
// [x^{n-k}] f(-x) g(x) must equal delta_{n,k}, where f and g are the
// exponential generating functions of a(.; n, k) and b(.; n, k).
template <class K>
CriterionReport criterion_check(const SequenceSpec<K>& a, const SequenceSpec<K>& b,
                                int n_max, double tol = 1e-10) {
    CriterionReport rep;
    rep.n_max = n_max;
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 1; k <= n; ++k) {
            int d = n - k;
            Series<K> f(d), g(d);
            K fact = k_int<K>(1);
            for (int m = 0; m <= d; ++m) {
                if (m > 0) fact *= k_int<K>(m);
                K inv_f = k_int<K>(1) / fact;
                f.set(m, detail::sign_pm<K>(m) * a.generator(m, n, k) * inv_f);
                g.set(m, b.generator(m, n, k) * inv_f);
            }
            K value = (f * g).coeff(d);
            K want = k_int<K>(d == 0 ? 1 : 0);
            bool ok;
            if constexpr (is_exact_v<K>) {
                ok = (value == want);
            } else {
                ok = abs_approx(value - want) < tol;
            }
            if (!ok) {
                rep.pass = false;
                rep.failures.push_back({n, k, abs_approx(value - want)});
            }
        }
    }
    return rep;
}

template <class K>
TriMatrix<K> mat_mul(const TriMatrix<K>& A, const TriMatrix<K>& B) {
    if (A.n_max() != B.n_max()) throw SizeMismatch("matrix sizes differ");
    int N = A.n_max();
    TriMatrix<K> C(N);
    for (int n = 1; n <= N; ++n)
        for (int k = 1; k <= n; ++k) {
            K acc = k_int<K>(0);
            for (int l = k; l <= n; ++l) acc += A.get(n, l) * B.get(l, k);
            C.set(n, k, acc);
        }
    return C;
}

// Largest |C_{n,k} - delta_{n,k}| over the triangle, as a double.
template <class K>
double identity_deviation(const TriMatrix<K>& C) {
    double worst = 0.0;
    for (int n = 1; n <= C.n_max(); ++n)
        for (int k = 1; k <= n; ++k) {
            K want = k_int<K>(n == k ? 1 : 0);
            double d = abs_approx(C.get(n, k) - want);
            if (d > worst) worst = d;
        }
    return worst;
}

template <class K>
bool is_identity(const TriMatrix<K>& C, double tol = 0.0) {
    if constexpr (is_exact_v<K>) {
        for (int n = 1; n <= C.n_max(); ++n)
            for (int k = 1; k <= n; ++k)
                if (!(C.get(n, k) == k_int<K>(n == k ? 1 : 0))) return false;
        return true;
    } else {
        return identity_deviation(C) <= tol;
    }
}

// Solve L s = rhs by forward substitution.
template <class K>
std::vector<K> forward_solve(const TriMatrix<K>& L, const std::vector<K>& rhs) {
    int N = L.n_max();
    if (static_cast<int>(rhs.size()) < N)
        throw LengthMismatch("right-hand side shorter than n_max");
    std::vector<K> s(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        K diag = L.get(n, n);
        if (FieldTraits<K>::is_zero(diag))
            throw SingularDiagonal("zero diagonal entry at n = " + std::to_string(n));
        K acc = rhs[n - 1];
        for (int k = 1; k < n; ++k) acc -= L.get(n, k) * s[k - 1];
        s[n - 1] = acc / diag;
    }
    return s;
}

// t_n = sum_{k=1}^{n} M_{n,k} s_k.
template <class K>
std::vector<K> apply(const TriMatrix<K>& M, const std::vector<K>& s) {
    int N = M.n_max();
    if (static_cast<int>(s.size()) < N)
        throw LengthMismatch("input sequence shorter than n_max");
    std::vector<K> t(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        K acc = k_int<K>(0);
        for (int k = 1; k <= n; ++k) acc += M.get(n, k) * s[k - 1];
        t[n - 1] = acc;
    }
    return t;
}

// Coefficient [x^{n-k}] of (beta+n) h(x) g(x) - x h'(x) g(x) with
// h = (1-x)^{(beta+n) nu} and g = (1-x)^{-(beta+k) nu}; evaluates to
// (beta+n) delta_{n,k}.
template <class K>
K convolution_cell(const K& beta, const K& nu, int n, int k) {
    int d = n - k;
    Series<K> one_minus_x(d + 1);
    one_minus_x.set(0, k_int<K>(1));
    one_minus_x.set(1, k_int<K>(-1));
    K lam1 = (beta + k_int<K>(n)) * nu;
    K lam2 = -(beta + k_int<K>(k)) * nu;
    Series<K> h = binom_pow(one_minus_x, lam1);        // order d+1
    Series<K> g = binom_pow(one_minus_x, lam2);        // order d+1
    Series<K> xhp = h.derivative().shifted_up();       // x h', order d
    Series<K> expr = (beta + k_int<K>(n)) * (h.truncated(d) * g.truncated(d)) -
                     xhp * g.truncated(d);
    return expr.coeff(d);
}

}  // namespace hypinv
