#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "jetinv/errors.hpp"
#include "jetinv/rational.hpp"

namespace jetinv {

// Arbitrary-precision binary float (MPFR), round-to-nearest throughout.
// Every value carries its own precision; binary operations work at the
// larger of the two operand precisions.
class BigFloat {
public:
    static constexpr mpfr_prec_t kMinPrecision = 128;
    static constexpr mpfr_prec_t kDefaultPrecision = 256;

    BigFloat() : BigFloat(kDefaultPrecision, 0L) {}
    explicit BigFloat(mpfr_prec_t prec, long v = 0) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_si(v_, v, MPFR_RNDN);
    }
    BigFloat(const Rational& q, mpfr_prec_t prec = kDefaultPrecision) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    static BigFloat from_string(const std::string& s, mpfr_prec_t prec = kDefaultPrecision) {
        BigFloat r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw Error("invalid float literal '" + s + "'");
        return r;
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Deterministic decimal form with enough digits to round-trip.
    std::string to_string() const {
        if (mpfr_zero_p(v_)) return "0";
        long digits = static_cast<long>(precision() * 0.30103) + 3;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(mpfr_add, a, b); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(mpfr_sub, a, b); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(mpfr_mul, a, b); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(mpfr_div, a, b); }
    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
    BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
    BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
    BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define JETINV_BF_FN(name, mpfr_name)                  \
    friend BigFloat name(const BigFloat& a) {          \
        BigFloat r(a.precision());                     \
        mpfr_name(r.v_, a.v_, MPFR_RNDN);              \
        return r;                                      \
    }
    JETINV_BF_FN(exp, mpfr_exp)
    JETINV_BF_FN(log, mpfr_log)
    JETINV_BF_FN(sin, mpfr_sin)
    JETINV_BF_FN(cos, mpfr_cos)
    JETINV_BF_FN(asin, mpfr_asin)
    JETINV_BF_FN(asinh, mpfr_asinh)
    JETINV_BF_FN(sqrt, mpfr_sqrt)
#undef JETINV_BF_FN

    // Default comparison tolerance derived from the precision: 2^(-prec/2).
    BigFloat default_tolerance() const {
        BigFloat t(precision(), 1);
        mpfr_mul_2si(t.v_, t.v_, -static_cast<long>(precision() / 2), MPFR_RNDN);
        return t;
    }

private:
    static mpfr_prec_t check_prec(mpfr_prec_t p) {
        if (p < kMinPrecision)
            throw Error("big-float precision must be at least 128 bits");
        return p;
    }
    template <typename F>
    static BigFloat bin(F f, const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

}  // namespace jetinv
