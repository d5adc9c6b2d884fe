#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetinv/jet.hpp"

namespace jetinv {

enum class Verdict { ExactZero, BelowTolerance, Nonzero, PreconditionFailed };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ExactZero: return "exact-zero";
        case Verdict::BelowTolerance: return "below-tolerance";
        case Verdict::Nonzero: return "nonzero";
        case Verdict::PreconditionFailed: return "precondition-failed";
    }
    return "?";
}

// Default report tolerance on the float backend (absolute, per coefficient).
inline BigFloat default_report_tolerance() { return BigFloat::from_string("1e-40"); }

// Vanishing verdict for a jet. "exact-zero" is only ever produced by the
// exact backend; the float backend reports "below-tolerance" instead.
template <class K>
Verdict classify_jet(const Jet<K>& j, const std::optional<BigFloat>& tolerance = std::nullopt) {
    if constexpr (ScalarTraits<K>::is_exact) {
        (void)tolerance;
        return j.is_zero() ? Verdict::ExactZero : Verdict::Nonzero;
    } else {
        BigFloat tol = tolerance ? *tolerance : default_report_tolerance();
        auto m = jet_max_abs(j);
        return (m < tol) ? Verdict::BelowTolerance : Verdict::Nonzero;
    }
}

template <class K>
struct InvariantEntry {
    std::string name;
    std::optional<Jet<K>> value;  // absent on precondition failure
    Verdict verdict;
    int order_used = 0;
    std::string note;  // failure reason, when any
};

template <class K>
using InvariantReport = std::vector<InvariantEntry<K>>;

}  // namespace jetinv
