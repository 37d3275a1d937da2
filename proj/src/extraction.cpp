#include "zerosum/extraction.hpp"

#include <algorithm>
#include <stdexcept>

#include "zerosum/bounds.hpp"

namespace zerosum {

namespace {

struct PeelSetup {
    Group full;      // rank-3 chain (D1, D2, D3)
    Group cube;      // Z_d^3
    Group quotient;  // chain of D_i/d with the trivial coordinates dropped
    std::int64_t d = 0;
    std::int64_t h = 0, u = 0, A = 0, d_d3 = 0;
};

std::int64_t project_index(const PeelSetup& ps, std::int64_t idx) {
    Element e = element_from_index(ps.full, idx);
    std::vector<std::int64_t> res(3);
    for (int i = 0; i < 3; ++i) res[i] = e.residues[i] % ps.d;
    return element_from_residues(ps.cube, std::move(res)).index;
}

Sequence project_sequence(const PeelSetup& ps, const Sequence& seq) {
    Sequence out = make_sequence(ps.cube);
    for (auto& [idx, mult] : seq.mult_by_index) out.push_index(project_index(ps, idx), mult);
    return out;
}

/// Pull a projected witness back to concrete elements of the residual,
/// lowest element indices first, and remove them from the residual.
Sequence lift_and_remove(const PeelSetup& ps, Sequence& residual, const Sequence& projected_w) {
    Sequence block = make_sequence(ps.full);
    for (auto& [pidx, need0] : projected_w.mult_by_index) {
        std::int64_t need = need0;
        for (auto it = residual.mult_by_index.begin();
             need > 0 && it != residual.mult_by_index.end(); ++it) {
            if (project_index(ps, it->first) != pidx) continue;
            std::int64_t take = std::min(need, it->second);
            block.push_index(it->first, take);
            need -= take;
        }
        if (need > 0) throw std::logic_error("extraction: projected witness does not lift");
    }
    for (auto& [bidx, bmult] : block.mult_by_index) residual.remove_index(bidx, bmult);
    return block;
}

/// Shrink a zero-sum sub-multiset to a minimal one (no proper zero-sum
/// inside). Minimal zero-sums have length <= D of the group.
Sequence minimalize_zero_sum(Sequence w) {
    for (;;) {
        if (w.length() <= 1) return w;
        auto shorter = find_short_zero_sum(w, w.length() - 1);
        if (!shorter) return w;
        w = shorter->sub;
    }
}

Element quotient_image(const PeelSetup& ps, const Sequence& block) {
    Element sum = sum_of(block);
    std::vector<std::int64_t> qres;
    for (int i = 0; i < 3; ++i) {
        if (sum.residues[i] % ps.d != 0)
            throw std::logic_error("extraction: block sum is not divisible by the modulus");
        std::int64_t q = ps.full.invariant_factors[i] / ps.d;
        if (q > 1) qres.push_back((sum.residues[i] / ps.d) % q);
    }
    return element_from_residues(ps.quotient, std::move(qres));
}

/// Peels h disjoint blocks whose sums vanish coordinatewise mod d: the first
/// h-u via the short constant (length <= d each), the last u via plain
/// zero-sums minimalized to length <= d_d3. The counting inequalities from
/// the proof are asserted before every peel.
BlockDecomposition peel_blocks(const PeelSetup& ps, const Sequence& seq) {
    if (ps.A - ps.d < ps.u * ps.d_d3)
        throw std::logic_error("extraction: u is inconsistent with A and d_d3");

    BlockDecomposition out;
    out.quotient = ps.quotient;
    out.h = ps.h;
    out.u = ps.u;
    out.short_block_count = std::max<std::int64_t>(ps.h - ps.u, 0);

    Sequence residual = seq;
    for (std::int64_t j = 0; j < ps.h; ++j) {
        bool short_peel = j < ps.h - ps.u;
        if (short_peel && residual.length() < ps.A)
            throw std::logic_error("extraction: residual shorter than the short constant");
        if (!short_peel && residual.length() < ps.d_d3)
            throw std::logic_error("extraction: residual shorter than D of the cube");

        Sequence projected = project_sequence(ps, residual);
        std::optional<Witness> w = short_peel ? find_short_zero_sum(projected, ps.d)
                                              : find_zero_sum(projected);
        if (!w)
            throw std::logic_error(
                "extraction: guaranteed block not found; this would falsify the lemma");
        Sequence pw = w->sub;
        if (!short_peel) {
            pw = minimalize_zero_sum(std::move(pw));
            if (pw.length() > ps.d_d3)
                throw std::logic_error("extraction: minimal block exceeds D of the cube");
        }
        Sequence block = lift_and_remove(ps, residual, pw);
        out.quotient_elements.push_back(quotient_image(ps, block));
        out.blocks.push_back(std::move(block));
    }
    return out;
}

/// Turn a witness over the quotient into block indices, lowest-index blocks
/// first within each quotient value.
std::vector<std::size_t> blocks_for_witness(const BlockDecomposition& dec, const Witness& w) {
    std::vector<std::size_t> chosen;
    for (auto& [qidx, need0] : w.sub.mult_by_index) {
        std::int64_t need = need0;
        for (std::size_t j = 0; j < dec.quotient_elements.size() && need > 0; ++j) {
            if (dec.quotient_elements[j].index != qidx) continue;
            if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
            chosen.push_back(j);
            --need;
        }
        if (need > 0) throw std::logic_error("extraction: quotient witness does not match blocks");
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

ExtractionResult assemble(const Group& g, BlockDecomposition dec, const Witness& qw) {
    dec.chosen = blocks_for_witness(dec, qw);
    Witness witness{make_sequence(g)};
    for (std::size_t j : dec.chosen)
        for (auto& [idx, mult] : dec.blocks[j].mult_by_index) witness.sub.push_index(idx, mult);
    if (witness.sub.empty() || sum_of(witness.sub).index != 0)
        throw std::logic_error("extraction: assembled witness is not a zero sum");
    return {std::move(witness), std::move(dec)};
}

Group quotient_group(std::int64_t d, std::int64_t D1, std::int64_t D2, std::int64_t D3) {
    std::vector<std::int64_t> moduli;
    for (std::int64_t q : {D1 / d, D2 / d, D3 / d})
        if (q > 1) moduli.push_back(q);
    return normalize(moduli);
}

}  // namespace

ExtractionResult extract_zero_sum_l1(std::int64_t s, std::int64_t a, std::int64_t b,
                                     const Sequence& seq, std::int64_t A, std::int64_t d_s3) {
    BlockBound bb = bound_lemma1(s, a, b, A, d_s3);
    // h <= u still admits the construction: all h blocks are peeled without a
    // length cap, and B(h) >= h * d_s3 covers the counting
    if (bb.h < 1)
        throw std::invalid_argument("extract_zero_sum_l1: no blocks at these parameters");
    Group g = normalize({s, s * a, s * a * b});
    if (seq.group != g)
        throw std::invalid_argument("extract_zero_sum_l1: sequence group is not Z_s+Z_sa+Z_sab");
    if (seq.length() < bb.value)
        throw std::invalid_argument("extract_zero_sum_l1: sequence shorter than B(h)");

    PeelSetup ps{g, normalize({s, s, s}), quotient_group(s, s, s * a, s * a * b),
                 s, bb.h, bb.u, A, d_s3};
    BlockDecomposition dec = peel_blocks(ps, seq);

    Sequence cseq = make_sequence(ps.quotient);
    for (const Element& c : dec.quotient_elements) cseq.push(c);
    auto qw = find_zero_sum(cseq);
    if (!qw)
        throw std::logic_error(
            "extract_zero_sum_l1: no zero-sum subcollection among h >= D(quotient) images");
    return assemble(g, std::move(dec), *qw);
}

ExtractionResult extract_zero_sum_l5(std::int64_t d, std::int64_t a, std::int64_t b,
                                     std::int64_t c, const Sequence& seq, std::int64_t A,
                                     std::int64_t d_d3, std::optional<std::int64_t> h_override,
                                     int recursion_depth) {
    BlockBound bb = bound_lemma5(d, a, b, c, A, d_d3, h_override);
    if (bb.h < 1)
        throw std::invalid_argument("extract_zero_sum_l5: outside the lemma's case split");
    Group g = normalize({a, a * b, a * b * c});
    if (g.rank() != 3 || seq.group != g)
        throw std::invalid_argument("extract_zero_sum_l5: sequence group is not Z_a+Z_ab+Z_abc");
    if (seq.length() < bb.value)
        throw std::invalid_argument("extract_zero_sum_l5: sequence shorter than B(h)");

    PeelSetup ps{g, normalize({d, d, d}), quotient_group(d, a, a * b, a * b * c),
                 d, bb.h, bb.u, A, d_d3};
    BlockDecomposition dec = peel_blocks(ps, seq);

    Sequence cseq = make_sequence(ps.quotient);
    for (const Element& cj : dec.quotient_elements) cseq.push(cj);

    // step (iv): one recursion level when the quotient keeps the rank-3 shape
    // and the C_j collection itself meets the quotient's length threshold
    std::optional<Witness> qw;
    if (recursion_depth > 0 && ps.quotient.rank() == 3 && (a / d) % d == 0) {
        try {
            BlockBound inner = bound_lemma5(d, a / d, b, c, A, d_d3);
            if (inner.applicable && static_cast<std::int64_t>(dec.quotient_elements.size()) >=
                                        inner.value) {
                qw = extract_zero_sum_l5(d, a / d, b, c, cseq, A, d_d3, std::nullopt,
                                         recursion_depth - 1)
                         .witness;
            }
        } catch (const std::invalid_argument&) {
            // fall through to direct search
        }
    }
    if (!qw) qw = find_zero_sum(cseq);
    if (!qw)
        throw std::logic_error(
            "extract_zero_sum_l5: no zero-sum subcollection among h >= D(quotient) images");
    return assemble(g, std::move(dec), *qw);
}

}  // namespace zerosum
