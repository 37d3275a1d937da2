// Test-only brute-force oracles, independent of the DP/search implementation
// path (plain recursion over multiplicity vectors, no bitsets, no folding).
#pragma once

#include <set>
#include <vector>

#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum::oracle {

inline std::int64_t idx_add(const Group& g, std::int64_t a, std::int64_t b) {
    std::int64_t out = 0, place = 1;
    for (int i = g.rank(); i-- > 0;) {
        std::int64_t d = g.invariant_factors[i];
        out += ((a % d + b % d) % d) * place;
        a /= d;
        b /= d;
        place *= d;
    }
    return out;
}

inline std::int64_t idx_scale(const Group& g, std::int64_t k, std::int64_t a) {
    std::int64_t out = 0, place = 1;
    for (int i = g.rank(); i-- > 0;) {
        std::int64_t d = g.invariant_factors[i];
        out += ((a % d) * (k % d)) % d * place;
        a /= d;
        place *= d;
    }
    return out;
}

/// All sums of nonempty sub-multisets by direct enumeration.
inline std::set<std::int64_t> naive_achievable(const Sequence& seq) {
    const Group& g = seq.group;
    std::vector<std::pair<std::int64_t, std::int64_t>> items(seq.mult_by_index.begin(),
                                                             seq.mult_by_index.end());
    std::set<std::int64_t> sums;
    auto rec = [&](auto&& self, std::size_t i, std::int64_t partial, bool any) -> void {
        if (i == items.size()) {
            if (any) sums.insert(partial);
            return;
        }
        auto [x, mult] = items[i];
        for (std::int64_t k = 0; k <= mult; ++k)
            self(self, i + 1, idx_add(g, partial, idx_scale(g, k, x)), any || k > 0);
    };
    rec(rec, 0, 0, false);
    return sums;
}

/// Shortest zero-sum sub-multiset length by direct enumeration; 0 if none.
inline std::int64_t naive_min_zero_sum_length(const Sequence& seq) {
    const Group& g = seq.group;
    std::vector<std::pair<std::int64_t, std::int64_t>> items(seq.mult_by_index.begin(),
                                                             seq.mult_by_index.end());
    std::int64_t best = 0;
    auto rec = [&](auto&& self, std::size_t i, std::int64_t partial, std::int64_t len) -> void {
        if (i == items.size()) {
            if (len > 0 && partial == 0 && (best == 0 || len < best)) best = len;
            return;
        }
        auto [x, mult] = items[i];
        for (std::int64_t k = 0; k <= mult; ++k)
            self(self, i + 1, idx_add(g, partial, idx_scale(g, k, x)), len + k);
    };
    rec(rec, 0, 0, 0);
    return best;
}

inline bool naive_zero_sum_free(const Sequence& seq) {
    return naive_min_zero_sum_length(seq) == 0;
}

/// D(G) by recursive enumeration of zero-sum-free multisets (tiny groups).
inline std::int64_t naive_davenport(const Group& g) {
    std::int64_t n = g.order();
    std::int64_t best = 0;
    Sequence cur = make_sequence(g);
    auto rec = [&](auto&& self, std::int64_t min_idx) -> void {
        best = std::max(best, cur.length());
        for (std::int64_t x = min_idx; x < n; ++x) {
            cur.push_index(x);
            if (naive_zero_sum_free(cur)) self(self, x);
            cur.remove_index(x);
        }
    };
    rec(rec, 1);
    return best + 1;
}

}  // namespace zerosum::oracle
