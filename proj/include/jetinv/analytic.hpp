#pragma once

#include <string>
#include <vector>

#include "jetinv/jet.hpp"

namespace jetinv {

enum class AnalyticFn { Exp, Log, Sin, Cos, Arcsin, Arcsinh, Sqrt };

inline const char* analytic_fn_name(AnalyticFn f) {
    switch (f) {
        case AnalyticFn::Exp: return "exp";
        case AnalyticFn::Log: return "log";
        case AnalyticFn::Sin: return "sin";
        case AnalyticFn::Cos: return "cos";
        case AnalyticFn::Arcsin: return "arcsin";
        case AnalyticFn::Arcsinh: return "arcsinh";
        case AnalyticFn::Sqrt: return "sqrt";
    }
    return "?";
}

// Taylor coefficients of fn about c0, up to degree n. On the exact backend
// only base values with rational series are admitted; anything else throws
// NeedsFloatError instead of silently rounding.
template <class K>
std::vector<K> analytic_series(AnalyticFn fn, const K& c0, int n) {
    static_assert(!ScalarTraits<K>::is_complex, "analytic lifts act on real scalars");
    constexpr bool exact = ScalarTraits<K>::is_exact;
    auto k = [](long v) { return ScalarTraits<K>::from_long(v); };
    const K zero = k(0), one = k(1);
    std::vector<K> a(static_cast<std::size_t>(n) + 1, zero);
    switch (fn) {
        case AnalyticFn::Exp: {
            K a0 = one;
            if (!(c0 == zero)) {
                if constexpr (exact) throw NeedsFloatError("exp at a nonzero rational base");
                else a0 = exp(c0);
            }
            a[0] = a0;
            for (int i = 1; i <= n; ++i) a[i] = a[i - 1] / k(i);
            return a;
        }
        case AnalyticFn::Log: {
            if (!(c0 > zero)) throw DomainError("log of a non-positive base value");
            if (!(c0 == one)) {
                if constexpr (exact) throw NeedsFloatError("log at a rational base other than 1");
            }
            if constexpr (exact) a[0] = zero;
            else a[0] = log(c0);
            if (n >= 1) a[1] = one / c0;
            for (int i = 2; i <= n; ++i) a[i] = -a[i - 1] * k(i - 1) / (k(i) * c0);
            return a;
        }
        case AnalyticFn::Sin:
        case AnalyticFn::Cos: {
            K s = zero, c = one;
            if (!(c0 == zero)) {
                if constexpr (exact) throw NeedsFloatError("sin/cos at a nonzero rational base");
                else { s = sin(c0); c = cos(c0); }
            }
            // derivative cycle sin -> cos -> -sin -> -cos
            K cyc[4] = {s, c, -s, -c};
            int start = (fn == AnalyticFn::Sin) ? 0 : 1;
            K fact = one;
            for (int i = 0; i <= n; ++i) {
                if (i > 0) fact = fact * k(i);
                a[i] = cyc[(start + i) % 4] / fact;
            }
            return a;
        }
        case AnalyticFn::Sqrt: {
            if (!(c0 > zero)) throw DomainError("sqrt of a non-positive base value");
            K a0;
            if constexpr (exact) a0 = rat_sqrt_exact(c0);
            else a0 = sqrt(c0);
            a[0] = a0;
            for (int i = 1; i <= n; ++i) a[i] = a[i - 1] * k(3 - 2 * i) / (k(2 * i) * c0);
            return a;
        }
        case AnalyticFn::Arcsin: {
            if (!(c0 < one && -c0 < one)) throw DomainError("arcsin needs |base value| < 1");
            K a0 = zero, a1 = one, u = one - c0 * c0;
            if (!(c0 == zero)) {
                if constexpr (exact) throw NeedsFloatError("arcsin at a nonzero rational base");
                else { a0 = asin(c0); a1 = one / sqrt(u); }
            }
            a[0] = a0;
            if (n >= 1) a[1] = a1;
            for (int i = 0; i + 2 <= n; ++i)
                a[i + 2] = (c0 * k((i + 1) * (2 * i + 1)) * a[i + 1] + k(i) * k(i) * a[i]) /
                           (u * k((i + 2) * (i + 1)));
            return a;
        }
        case AnalyticFn::Arcsinh: {
            K a0 = zero, a1 = one, u = one + c0 * c0;
            if (!(c0 == zero)) {
                if constexpr (exact) throw NeedsFloatError("arcsinh at a nonzero rational base");
                else { a0 = asinh(c0); a1 = one / sqrt(u); }
            }
            a[0] = a0;
            if (n >= 1) a[1] = a1;
            for (int i = 0; i + 2 <= n; ++i)
                a[i + 2] = -(c0 * k((i + 1) * (2 * i + 1)) * a[i + 1] + k(i) * k(i) * a[i]) /
                           (u * k((i + 2) * (i + 1)));
            return a;
        }
    }
    throw Error("unreachable");
}

// fn o a, computed by substituting (a - a0) into the Taylor series of fn
// at a0 and truncating.
template <class K>
Jet<K> analytic_lift(AnalyticFn fn, const Jet<K>& a) {
    int n = a.order();
    std::vector<K> s = analytic_series(fn, a.constant_term(), n);
    Jet<K> shifted = a - a.constant_term();
    Jet<K> r = Jet<K>::constant(a.vars_ptr(), a.base(), n, s[n]);
    for (int i = n - 1; i >= 0; --i) r = r * shifted + s[i];
    return r;
}

}  // namespace jetinv
