#pragma once

// Scalar field layer: exact rationals (GMP) and complex floating point at
// three precisions (IEEE double, 128-bit, 256-bit). The scalar type is a
// template parameter throughout the library, so exact and float pipelines
// can never mix at runtime: mixing is a compile error.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include "hypinv/errors.hpp"

namespace hypinv {

// ---------------------------------------------------------------------------
// Exact rational scalar (value semantics; always canonical lowest terms).
// ---------------------------------------------------------------------------
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {}
    Rat(long num, long den) : v_(static_cast<signed long>(num), static_cast<signed long>(den)) {
        if (den == 0) throw DomainError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rat from_text(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'");
        if (q.get_den() == 0) throw ParseError("rational with zero denominator: '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }
    std::string to_text() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.v_ == 0) throw DomainError("rational division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  private:
    mpq_class v_;
};

// ---------------------------------------------------------------------------
// Complex floating-point tiers.
// ---------------------------------------------------------------------------
namespace mpns = boost::multiprecision;

using C53 = std::complex<double>;
using R128 = mpns::number<mpns::cpp_bin_float<128, mpns::digit_base_2>, mpns::et_off>;
using C128 = mpns::number<mpns::complex_adaptor<mpns::cpp_bin_float<128, mpns::digit_base_2>>,
                          mpns::et_off>;
using R256 = mpns::number<mpns::cpp_bin_float<256, mpns::digit_base_2>, mpns::et_off>;
using C256 = mpns::number<mpns::complex_adaptor<mpns::cpp_bin_float<256, mpns::digit_base_2>>,
                          mpns::et_off>;
// 512-bit tier: internal only, used as the widened type when 256-bit
// computations need a double-width scratch field.
using R512 = mpns::number<mpns::cpp_bin_float<512, mpns::digit_base_2>, mpns::et_off>;
using C512c = mpns::number<mpns::complex_adaptor<mpns::cpp_bin_float<512, mpns::digit_base_2>>,
                           mpns::et_off>;

// real-component -> double
inline double to_dbl(double x) { return x; }
template <class R>
double to_dbl(const R& x) {
    return x.template convert_to<double>();
}

// real-component text round trip (shortest for double, max_digits10 otherwise)
inline std::string real_to_text(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
template <class R>
std::string real_to_text(const R& x) {
    return x.str(std::numeric_limits<R>::max_digits10, std::ios_base::scientific);
}
template <class R>
R real_from_text(const std::string& s) {
    if constexpr (std::is_same_v<R, double>) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("not a real number: '" + s + "'");
        return v;
    } else {
        try {
            return R(s);
        } catch (const std::exception&) {
            throw ParseError("not a real number: '" + s + "'");
        }
    }
}

// ---------------------------------------------------------------------------
// FieldTraits: the one place that knows what a scalar mode can do.
// ---------------------------------------------------------------------------
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
    static constexpr bool is_exact = true;
    using real_type = Rat;
    static const char* name() { return "exact"; }
    static Rat from_int(long n) { return Rat(n); }
    static Rat from_ratio(long p, long q) { return Rat(p, q); }
    static bool is_zero(const Rat& a) { return a == Rat(0); }
    static double abs_approx(const Rat& a) { return std::fabs(a.to_double()); }
    static double eps() { return 0.0; }
};

template <class C, class R>
struct ComplexFieldTraits {
    static constexpr bool is_exact = false;
    using real_type = R;
    static C from_int(long n) { return C(R(static_cast<double>(n)), R(0)); }
    static C from_ratio(long p, long q) {
        if (q == 0) throw DomainError("ratio with zero denominator");
        return C(R(static_cast<double>(p)) / R(static_cast<double>(q)), R(0));
    }
    static bool is_zero(const C& z) { return z == C(R(0), R(0)); }
    static double abs_approx(const C& z) {
        using std::abs;
        return to_dbl(abs(z));
    }
    static double eps() { return to_dbl(std::numeric_limits<R>::epsilon()); }
};

template <>
struct FieldTraits<C53> : ComplexFieldTraits<C53, double> {
    static const char* name() { return "complex53"; }
};
template <>
struct FieldTraits<C128> : ComplexFieldTraits<C128, R128> {
    static const char* name() { return "complex128"; }
};
template <>
struct FieldTraits<C256> : ComplexFieldTraits<C256, R256> {
    static const char* name() { return "complex256"; }
};
template <>
struct FieldTraits<C512c> : ComplexFieldTraits<C512c, R512> {
    static const char* name() { return "complex512"; }
};

template <class K>
inline constexpr bool is_exact_v = FieldTraits<K>::is_exact;

template <class K>
using real_of_t = typename FieldTraits<K>::real_type;

// Widened scratch field used when a narrow-band computation needs roughly
// twice the working precision (e.g. the near-coincident branch of the
// reciprocal-gamma difference quotient).
template <class K>
struct Escalate;
template <>
struct Escalate<C53> {
    using type = C128;
};
template <>
struct Escalate<C128> {
    using type = C256;
};
template <>
struct Escalate<C256> {
    using type = C512c;
};
template <>
struct Escalate<C512c> {
    using type = C512c;  // top tier: no further widening available
};

// real-component cross-precision cast
template <class R2, class R1>
R2 real_cast(const R1& x) {
    if constexpr (std::is_same_v<R1, R2>) {
        return x;
    } else if constexpr (std::is_same_v<R2, double>) {
        return to_dbl(x);
    } else if constexpr (std::is_same_v<R1, double>) {
        return R2(x);
    } else {
        return R2(x);
    }
}

// complex cross-precision cast (componentwise, rounding on narrowing)
template <class K2, class K1>
K2 complex_cast(const K1& z) {
    using R2 = typename FieldTraits<K2>::real_type;
    return K2(real_cast<R2>(z.real()), real_cast<R2>(z.imag()));
}

// Convenience constructors used all over the numeric code.
template <class K>
K k_int(long n) {
    return FieldTraits<K>::from_int(n);
}
template <class K>
K k_ratio(long p, long q) {
    return FieldTraits<K>::from_ratio(p, q);
}

// |z| as double, for tolerance checks and reports.
template <class K>
double abs_approx(const K& z) {
    return FieldTraits<K>::abs_approx(z);
}

// double -> float scalar, exact (binary64 embeds in every float tier).
template <class K>
K k_real(double v) {
    static_assert(!is_exact_v<K>, "k_real targets float modes");
    using R = typename FieldTraits<K>::real_type;
    return K(R(v), R(0));
}

// Exact conversion Rat -> float scalar (numerator/denominator rounded once each).
template <class K>
K k_from_rat(const Rat& q) {
    static_assert(!is_exact_v<K>, "k_from_rat targets float modes");
    using R = typename FieldTraits<K>::real_type;
    const mpq_class& v = q.raw();
    R num = real_from_text<R>(v.get_num().get_str());
    R den = real_from_text<R>(v.get_den().get_str());
    return K(num / den, R(0));
}

}  // namespace hypinv
