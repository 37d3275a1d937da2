#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zerosum/rational.hpp"

namespace zerosum {

/// Points of Z_p^d are packed mixed-radix indices (base p, d digits,
/// big-endian), matching the group element encoding.

enum class HyperplaneMode {
    affine,  // level sets {v : x.v = c}, any c
    linear,  // through the origin only (c = 0)
};

/// Max over nonzero functionals (deduplicated up to scalars) and levels of
/// the number of points of A on one hyperplane. Rejects empty A, requires
/// p prime and p^d <= 2^16.
std::int64_t hyperplane_max_count(std::int64_t p, int d, const std::vector<std::int32_t>& A,
                                  HyperplaneMode mode = HyperplaneMode::affine);

/// Largest W for which the hyperplane condition "no hyperplane contains more
/// than |A|/4W points of A" holds: |A| / (4 * hyperplane_max_count).
Rat max_w(std::int64_t p, int d, const std::vector<std::int32_t>& A,
          HyperplaneMode mode = HyperplaneMode::affine);

/// L(a) = |(a + Y) \ Y|.
std::int64_t boundary_expansion(std::int64_t p, int d, const std::vector<std::int32_t>& Y,
                                std::int32_t a);

struct VectorInstance {
    std::int64_t p = 3;
    int d = 1;
    std::vector<std::int32_t> A;  // nonzero points
    std::vector<std::int32_t> Y;
    Rat W;
};

struct ExpansionVerdict {
    bool hypothesis_ok = false;  // hyperplane condition at W and |Y| <= p^d/2
    bool holds = false;          // max_a L(a) >= (W/5p) |Y|, exact comparison
    std::int32_t best_a = -1;
    std::int64_t best_l = -1;
    Rat threshold;
};

ExpansionVerdict check_expansion(const VectorInstance& inst,
                                 HyperplaneMode mode = HyperplaneMode::affine);

struct SubadditivityReport {
    std::int64_t checked = 0;
    struct Violation {
        std::int32_t a;
        std::int64_t j;
        std::int64_t lhs, rhs;
    };
    std::vector<Violation> violations;
};

/// Verifies L(j a) <= j L(a) for 1 <= j <= j_max.
SubadditivityReport subadditivity_check(std::int64_t p, int d, const std::vector<std::int32_t>& Y,
                                        std::int32_t a, std::int64_t j_max);

struct CampaignSummary {
    std::int64_t instances = 0;
    std::int64_t holds = 0;
    std::int64_t rejected_hypothesis = 0;
    std::optional<Rat> min_slack;  // min of best_l - threshold over judged instances
    // diagnostics beyond the stable JSON schema:
    std::int64_t degenerate = 0;  // A inside one hyperplane (W = 1/4)
    struct Violation {
        std::uint64_t instance_seed;
        std::vector<std::int32_t> A, Y;
    };
    std::vector<Violation> violations;
};

/// Randomized statement-level campaign: `count` instances with random A,
/// W = max_w(A), and random Y with |Y| <= p^d/2, split across workers with
/// per-instance seeds.
CampaignSummary run_expansion_campaign(std::int64_t p, int d, std::int64_t count,
                                       std::uint64_t seed, int workers = 1);

/// The stable four-key JSON summary {instances, holds, rejected_hypothesis,
/// min_slack}.
std::string campaign_json(const CampaignSummary& s);

}  // namespace zerosum
