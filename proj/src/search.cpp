#include "zerosum/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "zerosum/cache.hpp"

namespace zerosum {

const char* method_name(Method m) {
    switch (m) {
        case Method::formula_rank2: return "formula-rank2";
        case Method::formula_pgroup: return "formula-pgroup";
        case Method::search: return "search";
        case Method::gao: return "gao";
    }
    return "?";
}

namespace {

constexpr std::int64_t kDpOrderCap = 1 << 22;  // allocation guard for DP bitsets

// ---------------------------------------------------------------------------
// general-order machinery (dynamic bitsets, arbitrary group order)
// ---------------------------------------------------------------------------

struct DynBits {
    std::vector<std::uint64_t> w;
    explicit DynBits(std::int64_t n = 0) : w((n + 63) / 64, 0) {}
    bool test(std::int64_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(std::int64_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void or_with(const DynBits& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    }
};

struct AddTable {
    const Group& g;
    std::vector<std::int64_t> stride;
    explicit AddTable(const Group& g_) : g(g_), stride(g_.rank()) {
        std::int64_t s = 1;
        for (int i = g.rank(); i-- > 0;) {
            stride[i] = s;
            s *= g.invariant_factors[i];
        }
    }
    std::int64_t add(std::int64_t v, std::int64_t x) const {
        std::int64_t out = 0;
        for (int i = 0; i < g.rank(); ++i) {
            std::int64_t d = g.invariant_factors[i];
            std::int64_t rv = (v / stride[i]) % d;
            std::int64_t rx = (x / stride[i]) % d;
            out += ((rv + rx) % d) * stride[i];
        }
        return out;
    }
    std::int64_t negate(std::int64_t v) const {
        std::int64_t out = 0;
        for (int i = 0; i < g.rank(); ++i) {
            std::int64_t d = g.invariant_factors[i];
            std::int64_t rv = (v / stride[i]) % d;
            out += ((d - rv) % d) * stride[i];
        }
        return out;
    }
};

// dst |= (src translated by x)
void or_shifted(DynBits& dst, const DynBits& src, std::int64_t x, const AddTable& tab,
                std::int64_t n) {
    for (std::size_t k = 0; k < src.w.size(); ++k) {
        std::uint64_t word = src.w[k];
        while (word) {
            int b = std::countr_zero(word);
            word &= word - 1;
            std::int64_t v = static_cast<std::int64_t>(k) * 64 + b;
            if (v < n) dst.set(tab.add(v, x));
        }
    }
}

std::vector<std::int64_t> expand_copies(const Sequence& seq) {
    std::vector<std::int64_t> copies;
    copies.reserve(static_cast<std::size_t>(seq.length()));
    for (auto& [idx, mult] : seq.mult_by_index)
        for (std::int64_t i = 0; i < mult; ++i) copies.push_back(idx);
    return copies;
}

void check_dp_feasible(const Group& g) {
    if (g.order() > kDpOrderCap)
        throw std::domain_error("sequence DP: group order exceeds the desk-scale cap");
}

}  // namespace

std::vector<Element> achievable_sums(const Sequence& seq) {
    check_dp_feasible(seq.group);
    const std::int64_t n = seq.group.order();
    AddTable tab(seq.group);
    DynBits reach(n);
    for (auto& [idx, mult] : seq.mult_by_index) {
        for (std::int64_t i = 0; i < mult; ++i) {
            DynBits shifted(n);
            or_shifted(shifted, reach, idx, tab, n);
            shifted.set(idx);
            reach.or_with(shifted);
        }
    }
    std::vector<Element> out;
    for (std::int64_t v = 0; v < n; ++v)
        if (reach.test(v)) out.push_back(element_from_index(seq.group, v));
    return out;
}

std::optional<Witness> find_zero_sum(const Sequence& seq) {
    check_dp_feasible(seq.group);
    const std::int64_t n = seq.group.order();
    if (seq.empty()) return std::nullopt;
    if (n == 1) {
        Witness w{make_sequence(seq.group)};
        w.sub.push_index(0, 1);
        return w;
    }
    AddTable tab(seq.group);
    auto copies = expand_copies(seq);
    const std::size_t K = copies.size();

    // suffix[i] = sums of (possibly empty) sub-multisets of copies[i..K)
    std::vector<DynBits> suffix(K + 1, DynBits(n));
    suffix[K].set(0);
    for (std::size_t i = K; i-- > 0;) {
        suffix[i] = suffix[i + 1];
        or_shifted(suffix[i], suffix[i + 1], copies[i], tab, n);
    }
    // a nonempty zero-sum exists iff some copy is completed to zero by its suffix
    bool feasible = false;
    for (std::size_t i = 0; i < K && !feasible; ++i)
        if (suffix[i + 1].test(tab.negate(copies[i]))) feasible = true;
    if (!feasible) return std::nullopt;

    // greedy lexicographically-least witness: stop once the target is met,
    // otherwise include the earliest copy whose suffix can still complete
    Witness w{make_sequence(seq.group)};
    std::int64_t target = 0;
    bool picked = false;
    for (std::size_t i = 0; i < K; ++i) {
        if (picked && target == 0) break;
        std::int64_t rest = tab.add(target, tab.negate(copies[i]));
        if (suffix[i + 1].test(rest)) {
            w.sub.push_index(copies[i], 1);
            target = rest;
            picked = true;
        }
    }
    if (!(picked && target == 0)) throw std::logic_error("find_zero_sum: reconstruction failed");
    return w;
}

std::optional<Witness> find_short_zero_sum(const Sequence& seq, std::int64_t s) {
    if (s < 1) throw std::invalid_argument("find_short_zero_sum: s must be >= 1");
    check_dp_feasible(seq.group);
    if (s >= seq.length()) return find_zero_sum(seq);
    const std::int64_t n = seq.group.order();
    AddTable tab(seq.group);
    auto copies = expand_copies(seq);
    const std::size_t K = copies.size();
    const std::size_t S = static_cast<std::size_t>(s);

    // suffix[i][c] = sums achievable with at most c picks from copies[i..K)
    std::vector<std::vector<DynBits>> suffix(K + 1, std::vector<DynBits>(S + 1, DynBits(n)));
    for (std::size_t c = 0; c <= S; ++c) suffix[K][c].set(0);
    for (std::size_t i = K; i-- > 0;) {
        suffix[i][0].set(0);
        for (std::size_t c = 1; c <= S; ++c) {
            suffix[i][c] = suffix[i + 1][c];
            or_shifted(suffix[i][c], suffix[i + 1][c - 1], copies[i], tab, n);
        }
    }
    bool feasible = false;
    for (std::size_t i = 0; i < K && !feasible; ++i)
        if (suffix[i + 1][S - 1].test(tab.negate(copies[i]))) feasible = true;
    if (!feasible) return std::nullopt;

    Witness w{make_sequence(seq.group)};
    std::int64_t target = 0;
    std::size_t used = 0;
    bool picked = false;
    for (std::size_t i = 0; i < K && used < S; ++i) {
        if (picked && target == 0) break;
        std::int64_t rest = tab.add(target, tab.negate(copies[i]));
        if (suffix[i + 1][S - used - 1].test(rest)) {
            w.sub.push_index(copies[i], 1);
            target = rest;
            ++used;
            picked = true;
        }
    }
    if (!(picked && target == 0))
        throw std::logic_error("find_short_zero_sum: reconstruction failed");
    return w;
}

// ---------------------------------------------------------------------------
// exact search over groups of order <= 64: single-word reachability with
// per-coordinate blockwise rotations
// ---------------------------------------------------------------------------

namespace {

struct CoordOp {
    std::uint8_t shl = 0, shr = 0;
    std::uint64_t mask_hi = 0, mask_lo = 0;
};

struct SearchCtx {
    Group g;
    std::int64_t n = 0;
    std::vector<CoordOp> ops_flat;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ops_span;  // index -> [begin,count)
    std::vector<std::int32_t> neg_idx;
    std::vector<std::int64_t> elem_order;
    std::vector<std::uint8_t> orbit_min;

    std::uint64_t shift_add(std::uint64_t w, std::int64_t x) const {
        auto [b, c] = ops_span[x];
        for (std::uint32_t i = b; i < b + c; ++i) {
            const CoordOp& op = ops_flat[i];
            w = ((w << op.shl) & op.mask_hi) | ((w >> op.shr) & op.mask_lo);
        }
        return w;
    }
};

SearchCtx build_ctx(const Group& g, bool with_orbits) {
    SearchCtx ctx;
    ctx.g = g;
    ctx.n = g.order();
    const int r = g.rank();
    AddTable tab(g);

    std::vector<std::vector<CoordOp>> coord_ops(r);
    for (int i = 0; i < r; ++i) {
        std::int64_t d = g.invariant_factors[i];
        std::int64_t L = d * tab.stride[i];
        coord_ops[i].resize(d);
        for (std::int64_t t = 1; t < d; ++t) {
            std::int64_t sh = t * tab.stride[i];
            CoordOp op;
            op.shl = static_cast<std::uint8_t>(sh);
            op.shr = static_cast<std::uint8_t>(L - sh);
            for (std::int64_t p = 0; p < ctx.n; ++p) {
                if (p % L >= sh)
                    op.mask_hi |= std::uint64_t{1} << p;
                else
                    op.mask_lo |= std::uint64_t{1} << p;
            }
            coord_ops[i][t] = op;
        }
    }
    ctx.ops_span.resize(ctx.n);
    ctx.neg_idx.resize(ctx.n);
    ctx.elem_order.resize(ctx.n);
    for (std::int64_t x = 0; x < ctx.n; ++x) {
        Element e = element_from_index(g, x);
        auto begin = static_cast<std::uint32_t>(ctx.ops_flat.size());
        for (int i = 0; i < r; ++i)
            if (e.residues[i] != 0) ctx.ops_flat.push_back(coord_ops[i][e.residues[i]]);
        ctx.ops_span[x] = {begin, static_cast<std::uint32_t>(ctx.ops_flat.size()) - begin};
        ctx.neg_idx[x] = static_cast<std::int32_t>(tab.negate(x));
        ctx.elem_order[x] = element_order(g, e);
    }

    ctx.orbit_min.assign(ctx.n, 1);
    if (with_orbits && r > 0) {
        // automorphisms considered: permutations of equal invariant factors,
        // composed with global negation
        std::vector<std::vector<int>> perms;
        std::vector<std::pair<int, int>> blocks;
        int b = 0;
        while (b < r) {
            int e2 = b;
            while (e2 < r && g.invariant_factors[e2] == g.invariant_factors[b]) ++e2;
            blocks.emplace_back(b, e2);
            b = e2;
        }
        std::vector<int> cur(r);
        std::iota(cur.begin(), cur.end(), 0);
        auto rec = [&](auto&& self, std::size_t bi) -> void {
            if (bi == blocks.size()) {
                perms.push_back(cur);
                return;
            }
            auto [lo, hi] = blocks[bi];
            std::vector<int> seg(cur.begin() + lo, cur.begin() + hi);
            std::sort(seg.begin(), seg.end());
            do {
                std::copy(seg.begin(), seg.end(), cur.begin() + lo);
                self(self, bi + 1);
            } while (std::next_permutation(seg.begin(), seg.end()));
        };
        rec(rec, 0);

        for (std::int64_t x = 0; x < ctx.n; ++x) {
            Element e = element_from_index(g, x);
            std::int64_t best = x;
            std::vector<std::int64_t> res(r), resn(r);
            for (const auto& perm : perms) {
                for (int i = 0; i < r; ++i) {
                    res[i] = e.residues[perm[i]];
                    std::int64_t d = g.invariant_factors[i];
                    resn[i] = (d - res[i]) % d;
                }
                best = std::min(best, element_from_residues(g, res).index);
                best = std::min(best, element_from_residues(g, resn).index);
            }
            if (best != x) ctx.orbit_min[x] = 0;
        }
    }
    return ctx;
}

// DFS policies ---------------------------------------------------------------

struct FreePolicy {
    struct State {
        std::uint64_t reach = 0;
    };
    State root(const SearchCtx&) const { return {}; }
    bool dead(const SearchCtx& c, const State& st, std::int64_t x) const {
        return (st.reach >> c.neg_idx[x]) & 1;
    }
    State extend(const SearchCtx& c, const State& st, std::int64_t x) const {
        return {st.reach | c.shift_add(st.reach, x) | (std::uint64_t{1} << x)};
    }
    // every extension adds at least one new achievable sum
    std::int64_t growth_room(const SearchCtx& c, const State& st) const {
        return c.n - 1 - std::popcount(st.reach);
    }
};

template <int S>
struct ShortPolicy {
    struct State {
        std::array<std::uint64_t, S> layer{};  // layer[c] = sums of <= c+1 elements
    };
    State root(const SearchCtx&) const { return {}; }
    bool dead(const SearchCtx& c, const State& st, std::int64_t x) const {
        return (st.layer[S - 2] >> c.neg_idx[x]) & 1;
    }
    State extend(const SearchCtx& c, const State& st, std::int64_t x) const {
        State out;
        std::uint64_t bit = std::uint64_t{1} << x;
        out.layer[0] = st.layer[0] | bit;
        for (int cc = 1; cc < S; ++cc)
            out.layer[cc] = st.layer[cc] | c.shift_add(st.layer[cc - 1], x) | bit;
        return out;
    }
    std::int64_t growth_room(const SearchCtx&, const State&) const { return -1; }
};

struct DynShortPolicy {
    int s_layers;
    struct State {
        std::array<std::uint64_t, 32> layer{};
    };
    State root(const SearchCtx&) const { return {}; }
    bool dead(const SearchCtx& c, const State& st, std::int64_t x) const {
        return (st.layer[s_layers - 2] >> c.neg_idx[x]) & 1;
    }
    State extend(const SearchCtx& c, const State& st, std::int64_t x) const {
        State out = st;
        std::uint64_t bit = std::uint64_t{1} << x;
        out.layer[0] |= bit;
        for (int cc = 1; cc < s_layers; ++cc)
            out.layer[cc] = st.layer[cc] | c.shift_add(st.layer[cc - 1], x) | bit;
        return out;
    }
    std::int64_t growth_room(const SearchCtx&, const State&) const { return -1; }
};

struct ExactLenPolicy {
    int target_len;  // |G|
    struct State {
        std::array<std::uint64_t, 10> layer{};  // layer[c] = sums of exactly c elements
    };
    State root(const SearchCtx&) const {
        State st;
        st.layer[0] = 1;  // empty sub-multiset
        return st;
    }
    bool dead(const SearchCtx& c, const State& st, std::int64_t x) const {
        return (st.layer[target_len - 1] >> c.neg_idx[x]) & 1;
    }
    State extend(const SearchCtx& c, const State& st, std::int64_t x) const {
        State out = st;
        for (int cc = target_len; cc >= 1; --cc)
            out.layer[cc] = st.layer[cc] | c.shift_add(st.layer[cc - 1], x);
        return out;
    }
    std::int64_t growth_room(const SearchCtx&, const State&) const { return -1; }
};

struct Shared {
    std::atomic<std::int64_t> best{0};
    std::atomic<std::int64_t> budget{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> budget_exhausted{false};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::size_t> next_task{0};
    std::mutex example_mu;
    std::int64_t example_len = -1;
    std::vector<std::int64_t> example;
};

template <class Policy>
struct Runner {
    const SearchCtx& ctx;
    const SearchConfig& cfg;
    Policy pol;
    std::int64_t first_candidate;                 // 0 in exact-length mode, else 1
    const std::vector<std::int64_t>& suffix_cap;  // indexed by element index
    Shared sh{};

    static constexpr std::int64_t kLease = 4096;

    struct WorkerLocal {
        std::int64_t lease = 0;
        std::vector<std::int64_t> path;
    };

    bool take_node(WorkerLocal& wl) {
        if (wl.lease == 0) {
            std::int64_t got = sh.budget.fetch_sub(kLease, std::memory_order_relaxed);
            if (got <= 0) {
                sh.budget_exhausted.store(true, std::memory_order_relaxed);
                sh.stop.store(true, std::memory_order_relaxed);
                return false;
            }
            wl.lease = std::min<std::int64_t>(kLease, got);
        }
        --wl.lease;
        sh.nodes.fetch_add(1, std::memory_order_relaxed);
        return true;
    }

    void record_best(WorkerLocal& wl, std::int64_t len) {
        std::int64_t cur = sh.best.load(std::memory_order_relaxed);
        while (len > cur && !sh.best.compare_exchange_weak(cur, len, std::memory_order_relaxed)) {
        }
        if (len > cur) {
            std::lock_guard<std::mutex> lk(sh.example_mu);
            if (len > sh.example_len) {
                sh.example_len = len;
                sh.example = wl.path;
            }
        }
        if (cfg.length_cap && len >= *cfg.length_cap) sh.stop.store(true, std::memory_order_relaxed);
    }

    void dfs(WorkerLocal& wl, std::int64_t min_idx, const typename Policy::State& st,
             std::int64_t len) {
        if (!take_node(wl)) return;
        if (len > sh.best.load(std::memory_order_relaxed)) {
            record_best(wl, len);
            if (sh.stop.load(std::memory_order_relaxed)) return;
        }

        std::int64_t room = pol.growth_room(ctx, st);
        if (room >= 0 && len + room <= sh.best.load(std::memory_order_relaxed)) return;

        for (std::int64_t x = min_idx; x < ctx.n; ++x) {
            if (len + suffix_cap[x] <= sh.best.load(std::memory_order_relaxed)) break;
            if (pol.dead(ctx, st, x)) continue;
            auto st2 = pol.extend(ctx, st, x);
            wl.path.push_back(x);
            dfs(wl, x, st2, len + 1);
            wl.path.pop_back();
            if (sh.stop.load(std::memory_order_relaxed)) return;
        }
    }

    SearchOutcome run() {
        std::vector<std::int64_t> tasks;
        for (std::int64_t x = first_candidate; x < ctx.n; ++x) {
            if (cfg.symmetry_pruning && !ctx.orbit_min[x]) continue;
            tasks.push_back(x);
        }
        sh.budget.store(static_cast<std::int64_t>(cfg.max_nodes));

        auto worker = [&] {
            WorkerLocal wl;
            for (;;) {
                std::size_t t = sh.next_task.fetch_add(1, std::memory_order_relaxed);
                if (t >= tasks.size() || sh.stop.load(std::memory_order_relaxed)) break;
                std::int64_t x = tasks[t];
                auto root = pol.root(ctx);
                if (pol.dead(ctx, root, x)) continue;
                auto st = pol.extend(ctx, root, x);
                wl.path.push_back(x);
                dfs(wl, x, st, 1);
                wl.path.pop_back();
            }
        };

        int nw = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
        if (nw <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(nw);
            for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        SearchOutcome out;
        out.value = sh.best.load();
        out.nodes = sh.nodes.load();
        bool capped = cfg.length_cap && out.value >= *cfg.length_cap;
        out.status = (sh.budget_exhausted.load() || capped) ? SearchStatus::lower_bound
                                                            : SearchStatus::exact;
        Sequence ex = make_sequence(ctx.g);
        {
            std::lock_guard<std::mutex> lk(sh.example_mu);
            for (auto idx : sh.example) ex.push_index(idx, 1);
        }
        out.example = std::move(ex);
        return out;
    }
};

std::vector<std::int64_t> suffix_caps_by_order(const SearchCtx& ctx, std::int64_t first) {
    std::vector<std::int64_t> caps(ctx.n + 1, 0);
    for (std::int64_t x = ctx.n; x-- > first;) caps[x] = caps[x + 1] + (ctx.elem_order[x] - 1);
    return caps;
}

// in-process memo of exact values -------------------------------------------

std::mutex memo_mu;
std::unordered_map<std::string, std::int64_t> memo;

std::string memo_key(const Group& g, const char* kind, std::int64_t s = 0) {
    std::ostringstream os;
    os << format_group(g) << '|' << kind << '|' << s;
    return os.str();
}

std::optional<std::int64_t> memo_get(const std::string& key) {
    std::lock_guard<std::mutex> lk(memo_mu);
    auto it = memo.find(key);
    if (it == memo.end()) return std::nullopt;
    return it->second;
}

void memo_put(const std::string& key, std::int64_t v) {
    std::lock_guard<std::mutex> lk(memo_mu);
    memo[key] = v;
}

}  // namespace

void clear_search_memo() {
    std::lock_guard<std::mutex> lk(memo_mu);
    memo.clear();
}

SearchOutcome max_zero_sum_free_length(const Group& g, const SearchConfig& cfg) {
    if (g.order() > cfg.order_cap)
        throw std::domain_error("max_zero_sum_free_length: order exceeds the feasibility cap");
    if (g.order() > 64)
        throw std::domain_error("max_zero_sum_free_length: order beyond 64 is unsupported");
    if (g.is_trivial()) return {0, SearchStatus::exact, 0, make_sequence(g)};

    SearchCtx ctx = build_ctx(g, cfg.symmetry_pruning);
    auto caps = suffix_caps_by_order(ctx, 1);
    Runner<FreePolicy> r{ctx, cfg, FreePolicy{}, 1, caps};
    return r.run();
}

SearchOutcome davenport_short(const Group& g, std::int64_t s, const SearchConfig& cfg) {
    if (s < 1) throw std::invalid_argument("davenport_short: s must be >= 1");
    if (s < g.exponent())
        throw std::domain_error(
            "davenport_short: no finite value when s is below the exponent of g");
    if (g.order() > cfg.order_cap || s > cfg.short_s_cap)
        throw std::domain_error("davenport_short: outside the configured feasibility caps");
    if (g.is_trivial()) return {1, SearchStatus::exact, 0, std::nullopt};
    if (g.order() > 64)
        throw std::domain_error("davenport_short: order beyond 64 is unsupported");

    std::string key = memo_key(g, "Ds", s);
    if (cfg.use_memo && !cfg.length_cap) {
        if (auto v = memo_get(key)) return {*v, SearchStatus::exact, 0, std::nullopt};
    }

    SearchCtx ctx = build_ctx(g, cfg.symmetry_pruning);
    // s >= exponent(g), so every element order is <= s and multiplicity is capped
    auto caps = suffix_caps_by_order(ctx, 1);
    SearchOutcome out;
    switch (s) {
        case 2: {
            Runner<ShortPolicy<2>> r{ctx, cfg, {}, 1, caps};
            out = r.run();
            break;
        }
        case 3: {
            Runner<ShortPolicy<3>> r{ctx, cfg, {}, 1, caps};
            out = r.run();
            break;
        }
        case 4: {
            Runner<ShortPolicy<4>> r{ctx, cfg, {}, 1, caps};
            out = r.run();
            break;
        }
        default: {
            if (s > 32) throw std::domain_error("davenport_short: s beyond 32 is unsupported");
            Runner<DynShortPolicy> r{ctx, cfg, DynShortPolicy{static_cast<int>(s)}, 1, caps};
            out = r.run();
            break;
        }
    }
    out.value += 1;  // D^s = 1 + max short-zero-sum-free length
    if (cfg.use_memo && out.status == SearchStatus::exact) memo_put(key, out.value);
    return out;
}

ValueResult davenport(const Group& g, const SearchConfig& cfg, ResultCache* cache) {
    if (g.is_trivial()) return {1, Method::formula_pgroup, SearchStatus::exact, 0, false};
    if (g.rank() <= 2) {
        // D = d_1 + d_2 - 1 (Olson / Kruyswijk); rank 1 via d_1 = 1
        std::int64_t d1 = g.rank() == 2 ? g.invariant_factors[0] : 1;
        std::int64_t d2 = g.invariant_factors.back();
        return {d1 + d2 - 1, Method::formula_rank2, SearchStatus::exact, 0, false};
    }
    if (is_p_group(g))
        return {m_lower_bound(g), Method::formula_pgroup, SearchStatus::exact, 0, false};

    std::string gkey = format_group(g);
    if (cache) {
        if (auto rec = cache->get(gkey, "D"))
            return {rec->value, Method::search, SearchStatus::exact, 0, true};
    }
    std::string key = memo_key(g, "D");
    if (cfg.use_memo) {
        if (auto v = memo_get(key)) return {*v, Method::search, SearchStatus::exact, 0, true};
    }

    SearchOutcome out = max_zero_sum_free_length(g, cfg);
    ValueResult res;
    res.value = out.value + 1;
    res.method = Method::search;
    res.status = out.status;
    res.nodes = out.nodes;
    if (out.status == SearchStatus::exact) {
        if (cfg.use_memo) memo_put(key, res.value);
        if (cache) cache->put({gkey, "D", 0, res.value, method_name(res.method), true, 0});
    }
    return res;
}

ValueResult zero_sum_constant(const Group& g, const SearchConfig& cfg, ResultCache* cache) {
    ValueResult d = davenport(g, cfg, cache);
    return {g.order() + d.value - 1, Method::gao, d.status, d.nodes, d.from_cache};
}

std::int64_t zs_direct(const Group& g) {
    const std::int64_t n = g.order();
    if (n > 9) throw std::domain_error("zs_direct: order exceeds the hard cap of 9");
    if (g.is_trivial()) return 1;

    std::string key = memo_key(g, "ZSdirect");
    if (auto v = memo_get(key)) return *v;

    SearchConfig cfg;
    cfg.symmetry_pruning = false;
    SearchCtx ctx = build_ctx(g, false);
    // n copies of any element form an exact-length-n zero-sum
    std::vector<std::int64_t> caps(n + 1, 0);
    for (std::int64_t x = n; x-- > 0;) caps[x] = caps[x + 1] + (n - 1);
    Runner<ExactLenPolicy> r{ctx, cfg, ExactLenPolicy{static_cast<int>(n)}, 0, caps};
    SearchOutcome out = r.run();
    if (out.status != SearchStatus::exact)
        throw std::runtime_error("zs_direct: search did not complete");
    std::int64_t zs = out.value + 1;
    memo_put(key, zs);
    return zs;
}

}  // namespace zerosum
