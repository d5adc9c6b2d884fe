#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "jetinv/errors.hpp"

namespace jetinv {

// Exponent tuple of a monomial; fixed capacity, nvars() live entries.
using Exponents = std::array<std::uint8_t, 6>;

constexpr int kMaxVars = 6;

// Dense enumeration of all multi-indices of total degree <= order in nvars
// variables, in graded order (degree ascending, lexicographic ascending
// within a degree). Shared immutable structure, cached per (nvars, order).
class JetLayout {
public:
    int nvars() const { return nvars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(exps_.size()); }
    const Exponents& exponents(int idx) const { return exps_[idx]; }
    int degree(int idx) const { return degree_[idx]; }
    std::uint64_t packed(int idx) const { return packed_[idx]; }

    int index_of(std::uint64_t packed_key) const {
        auto it = index_.find(packed_key);
        return it == index_.end() ? -1 : it->second;
    }
    int index_of(const Exponents& e) const { return index_of(pack(e, nvars_)); }

    // First index of the given total degree; degree d occupies a contiguous
    // range [degree_start(d), degree_start(d+1)).
    int degree_start(int d) const { return degree_start_[d]; }

    static std::uint64_t pack(const Exponents& e, int nvars) {
        std::uint64_t k = 0;
        for (int i = 0; i < nvars; ++i) k |= static_cast<std::uint64_t>(e[i]) << (8 * i);
        return k;
    }

    static std::shared_ptr<const JetLayout> get(int nvars, int order) {
        if (nvars < 1 || nvars > kMaxVars) throw Error("unsupported variable count");
        if (order < 0 || order > 200) throw Error("unsupported truncation order");
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(nvars, order);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto layout = std::shared_ptr<const JetLayout>(new JetLayout(nvars, order));
        cache.emplace(key, layout);
        return layout;
    }

private:
    JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
        degree_start_.assign(order + 2, 0);
        Exponents e{};
        for (int d = 0; d <= order; ++d) {
            degree_start_[d] = static_cast<int>(exps_.size());
            emit_degree(d, 0, d, e);
        }
        degree_start_[order + 1] = static_cast<int>(exps_.size());
        packed_.reserve(exps_.size());
        degree_.reserve(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            int deg = 0;
            for (int v = 0; v < nvars_; ++v) deg += exps_[i][v];
            degree_.push_back(deg);
            packed_.push_back(pack(exps_[i], nvars_));
            index_.emplace(packed_.back(), static_cast<int>(i));
        }
    }

    // Lexicographic ascending within a fixed total degree: recurse with the
    // first variable's exponent from 0 up.
    void emit_degree(int total, int var, int rem, Exponents& e) {
        if (var == nvars_ - 1) {
            e[var] = static_cast<std::uint8_t>(rem);
            exps_.push_back(e);
            return;
        }
        for (int k = 0; k <= rem; ++k) {
            e[var] = static_cast<std::uint8_t>(k);
            emit_degree(total, var + 1, rem - k, e);
        }
    }

    int nvars_, order_;
    std::vector<Exponents> exps_;
    std::vector<int> degree_;
    std::vector<std::uint64_t> packed_;
    std::vector<int> degree_start_;
    std::unordered_map<std::uint64_t, int> index_;
};

using LayoutPtr = std::shared_ptr<const JetLayout>;

}  // namespace jetinv
