#pragma once

#include <string>
#include <type_traits>

#include "jetinv/bigfloat.hpp"
#include "jetinv/rational.hpp"

namespace jetinv {

// Complexification of a real scalar backend: a pair (re, im).
template <class K>
struct Complex {
    K re{};
    K im{};

    Complex() = default;
    Complex(K r, K i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(K r) : re(std::move(r)), im() {}

    Complex conj() const { return {re, -im}; }
    // Multiplication by i.
    Complex times_i() const { return {-im, re}; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    Complex operator-() const { return {-re, -im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        K n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_exact = true;
    static constexpr bool is_complex = false;
    using Real = Rational;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_long(long v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    // negligible == exactly zero on the exact backend
    static bool negligible(const Rational& x) { return sgn(x) == 0; }
    // Unit test for division / pivoting.
    static bool is_unit(const Rational& x) { return sgn(x) != 0; }
    static std::string to_string(const Rational& x) { return rat_to_string(x); }
};

namespace detail {
// Working precision for scalars created from rationals/longs inside jet
// computations on the float backend. Set once by the CLI front end.
inline mpfr_prec_t& working_precision() {
    static mpfr_prec_t prec = BigFloat::kDefaultPrecision;
    return prec;
}
}  // namespace detail

inline void set_working_precision(mpfr_prec_t p) { detail::working_precision() = p; }
inline mpfr_prec_t working_precision() { return detail::working_precision(); }

template <>
struct ScalarTraits<BigFloat> {
    static constexpr bool is_exact = false;
    static constexpr bool is_complex = false;
    using Real = BigFloat;
    static BigFloat zero() { return BigFloat(working_precision(), 0); }
    static BigFloat one() { return BigFloat(working_precision(), 1); }
    static BigFloat from_long(long v) { return BigFloat(working_precision(), v); }
    static BigFloat from_rational(const Rational& q) { return BigFloat(q, working_precision()); }
    static bool is_zero(const BigFloat& x) { return x.is_zero(); }
    static bool negligible(const BigFloat& x) { return abs(x) <= x.default_tolerance(); }
    static bool is_unit(const BigFloat& x) { return abs(x) > x.default_tolerance(); }
    static std::string to_string(const BigFloat& x) { return x.to_string(); }
};

template <class K>
struct ScalarTraits<Complex<K>> {
    static constexpr bool is_exact = ScalarTraits<K>::is_exact;
    static constexpr bool is_complex = true;
    using Real = K;
    static Complex<K> zero() { return Complex<K>(ScalarTraits<K>::zero(), ScalarTraits<K>::zero()); }
    static Complex<K> one() { return Complex<K>(ScalarTraits<K>::one(), ScalarTraits<K>::zero()); }
    static Complex<K> i() { return Complex<K>(ScalarTraits<K>::zero(), ScalarTraits<K>::one()); }
    static Complex<K> from_long(long v) {
        return Complex<K>(ScalarTraits<K>::from_long(v), ScalarTraits<K>::zero());
    }
    static Complex<K> from_rational(const Rational& q) {
        return Complex<K>(ScalarTraits<K>::from_rational(q), ScalarTraits<K>::zero());
    }
    static bool is_zero(const Complex<K>& x) {
        return ScalarTraits<K>::is_zero(x.re) && ScalarTraits<K>::is_zero(x.im);
    }
    static bool negligible(const Complex<K>& x) {
        return ScalarTraits<K>::negligible(x.re) && ScalarTraits<K>::negligible(x.im);
    }
    static bool is_unit(const Complex<K>& x) {
        return ScalarTraits<K>::is_unit(x.re * x.re + x.im * x.im);
    }
    static std::string to_string(const Complex<K>& x) {
        return ScalarTraits<K>::to_string(x.re) + "+" + ScalarTraits<K>::to_string(x.im) + "i";
    }
};

template <class K>
K scalar_from_rational(const Rational& q) {
    return ScalarTraits<K>::from_rational(q);
}

}  // namespace jetinv
