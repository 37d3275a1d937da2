#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zerosum/sequence.hpp"

namespace zerosum {

class ResultCache;

struct SearchConfig {
    /// Node budget shared across workers; exhaustion yields a lower bound,
    /// never a wrong exact value.
    std::uint64_t max_nodes = 400'000'000;
    bool symmetry_pruning = true;
    int workers = 1;
    /// If set, the search stops as soon as a zero-sum-free sequence of this
    /// length is found (lower-bound exhibition runs).
    std::optional<std::int64_t> length_cap;
    /// Feasibility cap for exact searches (davenport / davenport_short).
    std::int64_t order_cap = 64;
    /// Feasibility cap on s for davenport_short.
    std::int64_t short_s_cap = 4;
    /// Consult/fill the in-process memo of exact results.
    bool use_memo = true;
};

enum class SearchStatus { exact, lower_bound };

struct SearchOutcome {
    std::int64_t value = 0;
    SearchStatus status = SearchStatus::exact;
    std::uint64_t nodes = 0;
    /// A longest sequence found (the certificate for `value`).
    std::optional<Sequence> example;
};

enum class Method { formula_rank2, formula_pgroup, search, gao };
const char* method_name(Method m);

struct ValueResult {
    std::int64_t value = 0;
    Method method = Method::search;
    SearchStatus status = SearchStatus::exact;
    std::uint64_t nodes = 0;
    bool from_cache = false;
};

/// Exactly the sums of nonempty sub-multisets of seq, sorted by index.
std::vector<Element> achievable_sums(const Sequence& seq);

/// A zero-sum sub-multiset if one exists (the lexicographically least under
/// canonical element order), else nullopt.
std::optional<Witness> find_zero_sum(const Sequence& seq);

/// As find_zero_sum but restricted to witnesses of length <= s.
std::optional<Witness> find_short_zero_sum(const Sequence& seq, std::int64_t s);

/// Maximum length of a zero-sum-free sequence over g (= D(g) - 1 when exact),
/// by canonical-order DFS over multisets of nonzero elements.
SearchOutcome max_zero_sum_free_length(const Group& g, const SearchConfig& cfg = {});

/// Davenport constant. Known-equality oracles first (rank <= 2, p-groups),
/// then cache/memo, then search. Records the method used.
ValueResult davenport(const Group& g, const SearchConfig& cfg = {}, ResultCache* cache = nullptr);

/// Short Davenport constant D^s: 1 + max length of a sequence with no
/// zero-sum subsequence of length <= s. Finite only for s >= exponent(g);
/// smaller s is rejected.
SearchOutcome davenport_short(const Group& g, std::int64_t s, const SearchConfig& cfg = {});

/// ZS(g) via Gao's relation: |g| + D(g) - 1.
ValueResult zero_sum_constant(const Group& g, const SearchConfig& cfg = {},
                              ResultCache* cache = nullptr);

/// ZS(g) from the definition (zero-sum subsequence of length exactly |g|),
/// by exhaustive search. Hard feasibility cap: order <= 9.
std::int64_t zs_direct(const Group& g);

/// Test hook: drop all memoized exact values.
void clear_search_memo();

}  // namespace zerosum
