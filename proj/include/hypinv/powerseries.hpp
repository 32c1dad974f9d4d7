#pragma once

// Truncated formal power series over a scalar field K. The truncation order
// is explicit and carried by the value; binary operations truncate to the
// smaller operand order — silent zero-padding would fabricate coefficients
// and corrupt coefficient-extraction checks.

#include <algorithm>
#include <vector>

#include "hypinv/errors.hpp"
#include "hypinv/numfield.hpp"

namespace hypinv {

template <class K>
class Series {
  public:
    explicit Series(int order) {
        if (order < 0) throw DomainError("series order must be >= 0");
        c_.assign(static_cast<std::size_t>(order) + 1, k_int<K>(0));
    }

    static Series constant(const K& v, int order) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }
    static Series one(int order) { return constant(k_int<K>(1), order); }
    // the series "x"
    static Series variable(int order) {
        if (order < 1) throw DomainError("variable series needs order >= 1");
        Series s(order);
        s.c_[1] = k_int<K>(1);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const K& coeff(int n) const {
        if (n < 0) throw DomainError("negative coefficient index");
        if (n > order()) throw OrderExceeded("coefficient index beyond truncation order");
        return c_[static_cast<std::size_t>(n)];
    }
    void set(int n, const K& v) {
        if (n < 0) throw DomainError("negative coefficient index");
        if (n > order()) throw OrderExceeded("coefficient index beyond truncation order");
        c_[static_cast<std::size_t>(n)] = v;
    }

    Series truncated(int new_order) const {
        if (new_order > order()) throw OrderExceeded("cannot extend a truncated series");
        Series s(new_order);
        for (int i = 0; i <= new_order; ++i) s.c_[i] = c_[i];
        return s;
    }

    // x * f, truncated back to the same order (top coefficient drops).
    Series shifted_up() const {
        Series s(order());
        for (int i = order(); i >= 1; --i) s.c_[i] = c_[i - 1];
        return s;
    }
    // f / x for f with zero constant term; order drops by one.
    Series shifted_down() const {
        if (!FieldTraits<K>::is_zero(c_[0]))
            throw DomainError("shifted_down requires zero constant term");
        if (order() < 1) throw DomainError("shifted_down needs order >= 1");
        Series s(order() - 1);
        for (int i = 1; i <= order(); ++i) s.c_[i - 1] = c_[i];
        return s;
    }

    // d/dx; order drops by one (the top derivative coefficient is unknown).
    Series derivative() const {
        if (order() == 0) return Series(0);
        Series s(order() - 1);
        for (int i = 1; i <= order(); ++i) s.c_[i - 1] = k_int<K>(i) * c_[i];
        return s;
    }

    Series operator-() const {
        Series s(order());
        for (int i = 0; i <= order(); ++i) s.c_[i] = -c_[i];
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series s(n);
        for (int i = 0; i <= n; ++i) s.c_[i] = a.c_[i] + b.c_[i];
        return s;
    }
    friend Series operator-(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series s(n);
        for (int i = 0; i <= n; ++i) s.c_[i] = a.c_[i] - b.c_[i];
        return s;
    }
    friend Series operator*(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series s(n);
        for (int i = 0; i <= n; ++i) {
            K acc = k_int<K>(0);
            for (int j = 0; j <= i; ++j) acc += a.c_[j] * b.c_[i - j];
            s.c_[i] = acc;
        }
        return s;
    }
    friend Series operator*(const K& v, const Series& a) {
        Series s(a.order());
        for (int i = 0; i <= a.order(); ++i) s.c_[i] = v * a.c_[i];
        return s;
    }
    friend Series operator*(const Series& a, const K& v) { return v * a; }

    friend bool operator==(const Series& a, const Series& b) {
        if (a.order() != b.order()) return false;
        for (int i = 0; i <= a.order(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // Multiplicative inverse; requires nonzero constant term.
    Series inverse() const {
        if (FieldTraits<K>::is_zero(c_[0]))
            throw NotInvertible("series inverse requires nonzero constant term");
        Series g(order());
        K r = k_int<K>(1) / c_[0];
        g.c_[0] = r;
        for (int n = 1; n <= order(); ++n) {
            K acc = k_int<K>(0);
            for (int i = 1; i <= n; ++i) acc += c_[i] * g.c_[n - i];
            g.c_[n] = -r * acc;
        }
        return g;
    }

  private:
    std::vector<K> c_;
};

template <class K>
Series<K> operator/(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.order(), b.order());
    return a.truncated(n) * b.truncated(n).inverse();
}

// f(g(x)) by Horner; the inner series must have zero constant term.
template <class K>
Series<K> compose(const Series<K>& f, const Series<K>& g) {
    if (!FieldTraits<K>::is_zero(g.coeff(0)))
        throw NonzeroInnerConstant("compose requires inner constant term 0");
    int n = std::min(f.order(), g.order());
    Series<K> gn = g.truncated(n);
    Series<K> r = Series<K>::constant(f.coeff(std::min(f.order(), n)), n);
    for (int i = std::min(f.order(), n) - 1; i >= 0; --i) {
        r = r * gn;
        r.set(0, r.coeff(0) + f.coeff(i));
    }
    return r;
}

// f^lambda for f with constant term exactly 1, by the first-order
// differential recurrence h' f = lambda f' h:
//   h_n = (1/n) sum_{i=1..n} (lambda i - (n - i)) f_i h_{n-i}.
// For f = 1 - x this reproduces the coefficients (-lambda)_m / m!.
template <class K>
Series<K> binom_pow(const Series<K>& f, const K& lambda) {
    if (!(f.coeff(0) == k_int<K>(1)))
        throw ConstantTermNotOne("binom_pow requires constant term 1");
    int n = f.order();
    Series<K> h = Series<K>::one(n);
    for (int m = 1; m <= n; ++m) {
        K acc = k_int<K>(0);
        for (int i = 1; i <= m; ++i)
            acc += (lambda * k_int<K>(i) - k_int<K>(m - i)) * f.coeff(i) * h.coeff(m - i);
        h.set(m, acc / k_int<K>(m));
    }
    return h;
}

// exp of a series with zero constant term: n g_n = sum i f_i g_{n-i}.
template <class K>
Series<K> exp_series(const Series<K>& f) {
    if (!FieldTraits<K>::is_zero(f.coeff(0)))
        throw DomainError("exp_series requires zero constant term");
    int n = f.order();
    Series<K> g = Series<K>::one(n);
    for (int m = 1; m <= n; ++m) {
        K acc = k_int<K>(0);
        for (int i = 1; i <= m; ++i) acc += k_int<K>(i) * f.coeff(i) * g.coeff(m - i);
        g.set(m, acc / k_int<K>(m));
    }
    return g;
}

// log of a series with constant term 1: n g_n = n f_n - sum_{j<n} j g_j f_{n-j}.
template <class K>
Series<K> log_series(const Series<K>& f) {
    if (!(f.coeff(0) == k_int<K>(1)))
        throw DomainError("log_series requires constant term 1");
    int n = f.order();
    Series<K> g(n);
    for (int m = 1; m <= n; ++m) {
        K acc = k_int<K>(m) * f.coeff(m);
        for (int j = 1; j < m; ++j) acc -= k_int<K>(j) * g.coeff(j) * f.coeff(m - j);
        g.set(m, acc / k_int<K>(m));
    }
    return g;
}

// Compositional inverse by the coefficient recurrence of Lagrange inversion:
// for f = x u(x) with u(0) != 0,   g_n = (1/n) [x^{n-1}] u(x)^{-n}.
template <class K>
Series<K> revert_lagrange(const Series<K>& f) {
    if (!FieldTraits<K>::is_zero(f.coeff(0)))
        throw NotInvertible("reversion requires zero constant term");
    int n = f.order();
    if (n < 1 || FieldTraits<K>::is_zero(f.coeff(1)))
        throw NotInvertible("reversion requires nonzero linear term");
    Series<K> u(n - 1);
    for (int i = 0; i <= n - 1; ++i) u.set(i, f.coeff(i + 1));
    Series<K> v = u.inverse();  // order n-1
    Series<K> g(n);
    Series<K> p = Series<K>::one(n - 1);
    for (int m = 1; m <= n; ++m) {
        p = p * v;
        g.set(m, p.coeff(m - 1) / k_int<K>(m));
    }
    return g;
}

// Compositional inverse by Newton iteration on composition (quadratic
// convergence in valuation), verified against the defining identity, with
// the Lagrange recurrence as fallback.
template <class K>
Series<K> revert(const Series<K>& f) {
    if (!FieldTraits<K>::is_zero(f.coeff(0)))
        throw NotInvertible("reversion requires zero constant term");
    int n = f.order();
    if (n < 1 || FieldTraits<K>::is_zero(f.coeff(1)))
        throw NotInvertible("reversion requires nonzero linear term");

    Series<K> x = Series<K>::variable(n);
    Series<K> g = (k_int<K>(1) / f.coeff(1)) * x;
    // f' padded back to order n with a zero top coefficient: the Newton
    // residual below always has valuation >= 2, so the padded coefficient
    // never reaches the quotient within the truncation order.
    Series<K> fp(n);
    for (int i = 1; i <= n; ++i) fp.set(i - 1, k_int<K>(i) * f.coeff(i));
    int steps = 2;
    for (int m = 1; m < n; m *= 2) ++steps;
    for (int s = 0; s < steps; ++s) {
        // g <- g - (f(g) - x) / f'(g)
        Series<K> num = compose(f, g) - x;
        bool zero_num = true;
        for (int i = 0; i <= num.order(); ++i)
            if (!FieldTraits<K>::is_zero(num.coeff(i))) {
                zero_num = false;
                break;
            }
        if (zero_num) break;
        Series<K> den = compose(fp, g);
        g = g - num / den;
    }
    // verify the defining identity; fall back if Newton failed to settle
    Series<K> check = compose(f, g);
    bool ok = true;
    for (int i = 0; i <= check.order(); ++i) {
        K want = (i == 1) ? k_int<K>(1) : k_int<K>(0);
        if constexpr (is_exact_v<K>) {
            if (!(check.coeff(i) == want)) {
                ok = false;
                break;
            }
        } else {
            if (abs_approx(check.coeff(i) - want) > 1e-10) {
                ok = false;
                break;
            }
        }
    }
    return ok ? g : revert_lagrange(f);
}

}  // namespace hypinv
