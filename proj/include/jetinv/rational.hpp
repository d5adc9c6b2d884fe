#pragma once

#include <gmpxx.h>

#include <string>

#include "jetinv/errors.hpp"

namespace jetinv {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p/q" and plain decimal strings like "1.25" or "-0.5".
inline Rational rat_from_string(const std::string& s) {
    auto dot = s.find('.');
    try {
        if (dot == std::string::npos) {
            Rational q(s, 10);
            q.canonicalize();
            return q;
        }
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        Rational num(digits, 10);
        Rational den(1);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational q = num / den;
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("invalid rational literal '" + s + "'");
    }
}

inline std::string rat_to_string(const Rational& q) {
    return q.get_str();
}

inline bool is_perfect_square(const mpz_class& z) {
    return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t());
}

// Exact square root; throws NeedsFloatError when irrational.
inline Rational rat_sqrt_exact(const Rational& q) {
    if (sgn(q) < 0) throw DomainError("sqrt of negative value");
    if (!is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den()))
        throw NeedsFloatError("sqrt(" + q.get_str() + ") is irrational");
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(n, d);
}

}  // namespace jetinv
