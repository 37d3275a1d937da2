#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "zerosum/group.hpp"

namespace zerosum {

/**
 * A finite multiset of group elements, keyed by packed element index.
 * Multiplicities are strictly positive.
 */
struct Sequence {
    Group group;
    std::map<std::int64_t, std::int64_t> mult_by_index;

    std::int64_t length() const {
        std::int64_t n = 0;
        for (auto& [i, m] : mult_by_index) n += m;
        return n;
    }
    bool empty() const { return mult_by_index.empty(); }

    void push(const Element& e, std::int64_t count = 1);
    void push_index(std::int64_t index, std::int64_t count = 1);
    /// Removes `count` copies; throws if not present.
    void remove_index(std::int64_t index, std::int64_t count = 1);

    bool operator==(const Sequence&) const = default;
};

Sequence make_sequence(const Group& g);

/// Parse the sequence literal grammar: semicolon-separated elements, each a
/// comma-separated residue tuple with optional "*k" multiplicity suffix,
/// e.g. "1,0,0*2; 0,1,2". Whitespace ignored. Residues are reduced modulo
/// the invariant factors.
Sequence parse_sequence(const Group& g, std::string_view literal);

std::string format_sequence(const Sequence& s);

/// Componentwise sum of all elements (with multiplicity).
Element sum_of(const Sequence& s);

/// Multiplicity-wise containment.
bool contains(const Sequence& parent, const Sequence& sub);

/**
 * A sub-multiset certifying a zero-sum subsequence of some parent sequence:
 * nonempty, contained in the parent, sums to the zero element.
 */
struct Witness {
    Sequence sub;
    bool operator==(const Witness&) const = default;
};

/// Full validity check of a witness against its parent.
bool witness_valid(const Witness& w, const Sequence& parent);

}  // namespace zerosum
