#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerosum/group.hpp"
#include "zerosum/rational.hpp"
#include "zerosum/search.hpp"

namespace zerosum {

/// D^s(Z_s^3) for the directly-computable cases s = 2, 3, 4 (values 8/17/22).
std::optional<std::int64_t> short_constant_cube(std::int64_t s);

/// D(Z_q^r) = r(q-1)+1 when q is a prime power (Olson); nullopt otherwise.
std::optional<std::int64_t> davenport_cube_formula(std::int64_t q, int r);

/// m(1 + ln(n/m)) as an upward-rounded rational, so comparisons never
/// understate the bound. Exact (= n) for cyclic groups.
Rat bound_agp(const Group& g);

struct RatBound {
    Rat value;
    bool applicable = false;
};

/// n/k + (k-1), applicable when n/m >= k. Rejects k outside [1,7].
RatBound bound_theorem1(const Group& g, int k);

struct BlockBound {
    std::int64_t value = 0;
    bool applicable = false;
    std::int64_t h = 0;
    std::int64_t u = 0;
};

/// Bound on D(Z_s + Z_sa + Z_sab): B = (h - u - 1)s + A with
/// u = floor((A-s)/d_s3) and h the rank-<=2 Davenport constant of the
/// quotient. Applicable iff h >= u+1; the value is reported regardless.
BlockBound bound_lemma1(std::int64_t s, std::int64_t a, std::int64_t b, std::int64_t A,
                        std::int64_t d_s3);

/// D(Z_{q}^{r-1} + Z_{q t}) <= D(Z_{q}^r) * t with d_full = D(Z_q^r) supplied.
std::int64_t bound_lemma3(std::int64_t q, int r, std::int64_t t, std::int64_t d_full);

/// Bound on D(Z_a + Z_ab + Z_abc) via a divisor d of a: B = (h - u - 1)d + A.
/// h follows the case split on (a=d, b=1, c=1); the rank-3 quotient case
/// takes h from h_override or derives it (formula, else one recursion level).
/// Rejects non-divisors; h >= u+1 gates applicability.
BlockBound bound_lemma5(std::int64_t d, std::int64_t a, std::int64_t b, std::int64_t c,
                        std::int64_t A, std::int64_t d_d3,
                        std::optional<std::int64_t> h_override = std::nullopt);

/// D(H + K) <= (D(H) - 1)|K| + D(K).
std::int64_t bound_composition(std::int64_t d_H, std::int64_t order_K, std::int64_t d_K);

/// D(Z_2^3 + K) <= 2 D(K) + 3.
std::int64_t bound_oq_klein(std::int64_t d_K);

struct Theorem2Bounds {
    Rat proof_form;     // a1*a2*a3 + a1*a2 + (2K-1)*a1
    Rat abstract_form;  // M(G) * (1 + K/(a2*a3))
};

/// Rank-3 bound parameterized by the Alon-Dubiner-type constant K > 0.
Theorem2Bounds bound_theorem2(std::int64_t a1, std::int64_t a2, std::int64_t a3, Rat K);

struct BoundEntry {
    std::string name;
    Rat value;
    /// Entries with applicable=false are reported but excluded from
    /// best_upper (parameter shape unmet, h >= u+1 violated, or the bound is
    /// conditional on an unverifiable constant, as for theorem2).
    bool applicable = false;
    std::string provenance;
};

struct BoundReport {
    Group group;
    std::int64_t lower = 0;  // M(G)
    std::vector<BoundEntry> entries;
    std::optional<Rat> best_upper;
};

/// Evaluate every bound that applies to g, instantiating Lemma 1/5
/// parameters from the invariant factors; exact formula oracles included.
BoundReport best_upper(const Group& g, Rat K, const SearchConfig& cfg = {});

std::string bound_report_json(const BoundReport& r);

struct Theorem1Violation {
    Group group;
    int k = 0;
    std::int64_t d_exact = 0;
    Rat bound;
};

struct Theorem1Report {
    std::int64_t order_cap = 0;
    std::int64_t groups_checked = 0;
    std::int64_t checks = 0;
    std::vector<Theorem1Violation> violations;
    std::vector<Group> skipped;  // budget-exhausted groups
    std::vector<std::pair<Group, Rat>> slack_by_group;
    std::optional<Rat> min_slack;
};

/// For every abelian group of order <= order_cap and every k <= 7 with
/// n/m >= k, check exact D(G) <= n/k + k - 1 by rational comparison.
Theorem1Report verify_theorem1(std::int64_t order_cap, const SearchConfig& cfg = {});

std::string theorem1_report_json(const Theorem1Report& r);

struct AgpThresholdReport {
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    std::int64_t ambiguous = 0;  // could not be decided by directed rounding
    std::int64_t smallest_n = 0, smallest_m = 0;
    bool violations_only_at_qmin = true;  // every violation has n/m == q_min
};

/// Checks m(1 + ln(n/m)) <= n/7 + 6 over all pairs (n, m) with m | n,
/// n <= n_cap and n/m >= q_min, using directed rounding on both sides so a
/// violation verdict is certain.
AgpThresholdReport agp_threshold_sweep(std::int64_t n_cap, std::int64_t q_min);

}  // namespace zerosum
