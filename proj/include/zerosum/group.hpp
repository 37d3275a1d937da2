#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zerosum {

/**
 * A finite abelian group in invariant-factor form:
 *   G = Z_{d_1} + Z_{d_2} + ... + Z_{d_r},  d_i >= 2,  d_i | d_{i+1}.
 *
 * The trivial group is the empty factor list (order 1, exponent 1, rank 0).
 * Construct through normalize() / parse_group(); the raw constructor does
 * not check the divisibility chain.
 */
struct Group {
    std::vector<std::int64_t> invariant_factors;

    std::int64_t order() const {
        std::int64_t n = 1;
        for (auto d : invariant_factors) n *= d;
        return n;
    }
    std::int64_t exponent() const {
        return invariant_factors.empty() ? 1 : invariant_factors.back();
    }
    int rank() const { return static_cast<int>(invariant_factors.size()); }
    bool is_trivial() const { return invariant_factors.empty(); }

    bool operator==(const Group&) const = default;
    bool operator<(const Group& o) const { return invariant_factors < o.invariant_factors; }
};

/**
 * An element of a Group: one residue per invariant factor plus the packed
 * mixed-radix index. Index uses big-endian strides so that index order
 * coincides with lexicographic order on the residue tuple; the zero element
 * has index 0.
 */
struct Element {
    std::vector<std::int64_t> residues;
    std::int64_t index = 0;

    bool operator==(const Element&) const = default;
};

/// Invariant-factor form of +_i Z_{moduli[i]}. Rejects moduli < 2.
/// The empty list yields the trivial group.
Group normalize(const std::vector<std::int64_t>& moduli);

/// Parse the group spec grammar: comma-separated moduli, whitespace ignored,
/// e.g. "2, 2, 6". Normalized on parse. Throws std::invalid_argument.
Group parse_group(std::string_view spec);

/// Canonical key, e.g. "2,2,6". The trivial group formats as "1".
std::string format_group(const Group& g);

Element element_from_residues(const Group& g, std::vector<std::int64_t> residues);
Element element_from_index(const Group& g, std::int64_t index);

Element zero(const Group& g);
Element add(const Group& g, const Element& x, const Element& y);
Element neg(const Group& g, const Element& x);
Element scalar_mul(const Group& g, std::int64_t k, const Element& x);

/// Multiplicative order of x in g (1 for the zero element).
std::int64_t element_order(const Group& g, const Element& x);

/// M(G) = 1 + sum(d_i - 1), the universal lower bound for D(G).
std::int64_t m_lower_bound(const Group& g);

/// All isomorphism classes of abelian groups of order n, canonically sorted
/// (cyclic group first; descending lexicographic on the factor list).
/// Rejects n < 1.
std::vector<Group> enumerate_groups(std::int64_t n);

/// True iff order is a prime power p^k, k >= 0 (the trivial group counts).
/// On success stores p in *p_out if given (0 for the trivial group).
bool is_p_group(const Group& g, std::int64_t* p_out = nullptr);

/// Prime factorization as (prime, exponent) pairs, ascending primes.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Number-of-partitions function, small arguments.
std::int64_t partition_count(int n);

}  // namespace zerosum
