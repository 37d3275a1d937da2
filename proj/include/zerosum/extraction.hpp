#pragma once

#include <optional>
#include <vector>

#include "zerosum/group.hpp"
#include "zerosum/search.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

/**
 * The block structure produced by the constructive proofs of Lemmas 1/5:
 * h pairwise-disjoint sub-multisets whose sums vanish coordinatewise mod s
 * (resp. mod d), their images C_j in the quotient group, and the
 * subcollection whose union is the returned zero-sum witness.
 */
struct BlockDecomposition {
    std::vector<Sequence> blocks;  // over the full group
    Group quotient;
    std::vector<Element> quotient_elements;  // C_j, one per block
    std::vector<std::size_t> chosen;         // block indices in the witness
    std::int64_t h = 0;
    std::int64_t u = 0;
    std::int64_t short_block_count = 0;  // the first h-u blocks have length <= s
};

struct ExtractionResult {
    Witness witness;
    BlockDecomposition decomposition;
};

/**
 * Constructive zero-sum extraction over Z_s + Z_sa + Z_sab for a sequence of
 * length >= B(h) = (h-u-1)s + A: peel h-u short blocks (length <= s) and u
 * unbounded blocks whose projections vanish in Z_s^3, then recombine a
 * zero-sum subcollection of the quotient images.
 *
 * A must bound D^s(Z_s^3) from above and d_s3 must equal D(Z_s^3).
 * Preconditions (length, h >= u+1) are rejected up front; a failure of a
 * proof-guaranteed step raises a hard invariant breach.
 */
ExtractionResult extract_zero_sum_l1(std::int64_t s, std::int64_t a, std::int64_t b,
                                     const Sequence& seq, std::int64_t A, std::int64_t d_s3);

/**
 * The generalized form over Z_a + Z_ab + Z_abc with a divisor d of a,
 * projecting mod d. The quotient subcollection step runs either by direct
 * search or by one level of recursion when the quotient admits the same
 * shape and length threshold.
 */
ExtractionResult extract_zero_sum_l5(std::int64_t d, std::int64_t a, std::int64_t b,
                                     std::int64_t c, const Sequence& seq, std::int64_t A,
                                     std::int64_t d_d3,
                                     std::optional<std::int64_t> h_override = std::nullopt,
                                     int recursion_depth = 3);

}  // namespace zerosum
