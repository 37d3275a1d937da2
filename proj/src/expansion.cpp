#include "zerosum/expansion.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

namespace zerosum {

namespace {

constexpr std::int64_t kPointCap = 1 << 16;

std::int64_t pow_ll(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

void check_space(std::int64_t p, int d) {
    if (!is_prime(p)) throw std::invalid_argument("expansion: p must be prime");
    if (d < 1) throw std::invalid_argument("expansion: d must be >= 1");
    if (pow_ll(p, d) > kPointCap)
        throw std::invalid_argument("expansion: p^d exceeds the exhaustive cap 2^16");
}

std::vector<std::int32_t> digits_of(std::int64_t p, int d, std::int32_t v) {
    std::vector<std::int32_t> out(d);
    for (int i = d; i-- > 0;) {
        out[i] = static_cast<std::int32_t>(v % p);
        v = static_cast<std::int32_t>(v / p);
    }
    return out;
}

std::int32_t dot(std::int64_t p, int d, std::int32_t x, std::int32_t v) {
    auto xd = digits_of(p, d, x);
    auto vd = digits_of(p, d, v);
    std::int64_t acc = 0;
    for (int i = 0; i < d; ++i) acc += static_cast<std::int64_t>(xd[i]) * vd[i];
    return static_cast<std::int32_t>(acc % p);
}

std::int32_t translate(std::int64_t p, int d, std::int32_t v, std::int32_t a) {
    auto vd = digits_of(p, d, v);
    auto ad = digits_of(p, d, a);
    std::int64_t idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * p + (vd[i] + ad[i]) % p;
    return static_cast<std::int32_t>(idx);
}

std::int32_t scale(std::int64_t p, int d, std::int64_t k, std::int32_t v) {
    auto vd = digits_of(p, d, v);
    std::int64_t idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * p + (vd[i] * (k % p)) % p;
    return static_cast<std::int32_t>(idx);
}

/// Canonical normalized functionals: first nonzero digit equals 1; one
/// representative per scalar class, (p^d - 1)/(p - 1) of them.
std::vector<std::int32_t> normalized_functionals(std::int64_t p, int d) {
    std::int64_t n = pow_ll(p, d);
    std::vector<std::int32_t> out;
    for (std::int32_t x = 1; x < n; ++x) {
        auto xd = digits_of(p, d, x);
        std::int32_t lead = 0;
        for (int i = 0; i < d; ++i)
            if (xd[i] != 0) {
                lead = xd[i];
                break;
            }
        if (lead == 1) out.push_back(x);
    }
    return out;
}

}  // namespace

std::int64_t hyperplane_max_count(std::int64_t p, int d, const std::vector<std::int32_t>& A,
                                  HyperplaneMode mode) {
    check_space(p, d);
    if (A.empty()) throw std::invalid_argument("hyperplane_max_count: A must be nonempty");
    std::int64_t best = 0;
    std::vector<std::int64_t> levels(static_cast<std::size_t>(p));
    for (std::int32_t x : normalized_functionals(p, d)) {
        std::fill(levels.begin(), levels.end(), 0);
        for (std::int32_t a : A) ++levels[static_cast<std::size_t>(dot(p, d, x, a))];
        if (mode == HyperplaneMode::linear) {
            best = std::max(best, levels[0]);
        } else {
            for (std::int64_t c : levels) best = std::max(best, c);
        }
    }
    return best;
}

Rat max_w(std::int64_t p, int d, const std::vector<std::int32_t>& A, HyperplaneMode mode) {
    return Rat(static_cast<std::int64_t>(A.size()), 4 * hyperplane_max_count(p, d, A, mode));
}

std::int64_t boundary_expansion(std::int64_t p, int d, const std::vector<std::int32_t>& Y,
                                std::int32_t a) {
    check_space(p, d);
    std::vector<bool> in_y(static_cast<std::size_t>(pow_ll(p, d)), false);
    for (std::int32_t y : Y) in_y[static_cast<std::size_t>(y)] = true;
    std::int64_t out = 0;
    for (std::int32_t y : Y)
        if (!in_y[static_cast<std::size_t>(translate(p, d, y, a))]) ++out;
    return out;
}

ExpansionVerdict check_expansion(const VectorInstance& inst, HyperplaneMode mode) {
    check_space(inst.p, inst.d);
    if (inst.A.empty()) throw std::invalid_argument("check_expansion: A must be nonempty");
    const std::int64_t n = pow_ll(inst.p, inst.d);

    ExpansionVerdict v;
    std::int64_t maxcount = hyperplane_max_count(inst.p, inst.d, inst.A, mode);
    // no hyperplane may contain more than |A| / 4W points
    bool hyper_ok = Rat(maxcount) <= Rat(static_cast<std::int64_t>(inst.A.size())) / (inst.W * 4);
    bool y_ok = 2 * static_cast<std::int64_t>(inst.Y.size()) <= n;
    v.hypothesis_ok = hyper_ok && y_ok && inst.W > Rat(0);
    if (!v.hypothesis_ok) return v;

    for (std::int32_t a : inst.A) {
        std::int64_t l = boundary_expansion(inst.p, inst.d, inst.Y, a);
        if (l > v.best_l) {
            v.best_l = l;
            v.best_a = a;
        }
    }
    v.threshold = inst.W * Rat(static_cast<std::int64_t>(inst.Y.size()), 5 * inst.p);
    v.holds = Rat(v.best_l) >= v.threshold;
    return v;
}

SubadditivityReport subadditivity_check(std::int64_t p, int d, const std::vector<std::int32_t>& Y,
                                        std::int32_t a, std::int64_t j_max) {
    check_space(p, d);
    if (j_max < 1) throw std::invalid_argument("subadditivity_check: j_max must be >= 1");
    SubadditivityReport rep;
    std::int64_t la = boundary_expansion(p, d, Y, a);
    for (std::int64_t j = 1; j <= j_max; ++j) {
        std::int64_t lja = boundary_expansion(p, d, Y, scale(p, d, j, a));
        ++rep.checked;
        if (lja > j * la)
            rep.violations.push_back({a, j, lja, j * la});
    }
    return rep;
}

CampaignSummary run_expansion_campaign(std::int64_t p, int d, std::int64_t count,
                                       std::uint64_t seed, int workers) {
    check_space(p, d);
    const std::int64_t n = pow_ll(p, d);

    struct Part {
        CampaignSummary sum;
    };
    auto run_range = [&](std::int64_t lo, std::int64_t hi, CampaignSummary& sum) {
        for (std::int64_t i = lo; i < hi; ++i) {
            // per-instance seed: aggregation is order-independent
            std::uint64_t iseed = seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(i);
            std::mt19937_64 rng(iseed);

            VectorInstance inst;
            inst.p = p;
            inst.d = d;
            for (std::int32_t v = 1; v < n; ++v)
                if (rng() & 1) inst.A.push_back(v);
            if (inst.A.empty())
                inst.A.push_back(
                    static_cast<std::int32_t>(1 + rng() % static_cast<std::uint64_t>(n - 1)));
            std::vector<std::int32_t> all(static_cast<std::size_t>(n));
            for (std::int32_t v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
            std::shuffle(all.begin(), all.end(), rng);
            auto ysize = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n / 2 + 1));
            inst.Y.assign(all.begin(), all.begin() + ysize);
            std::sort(inst.Y.begin(), inst.Y.end());
            inst.W = max_w(p, d, inst.A);

            ExpansionVerdict v = check_expansion(inst);
            ++sum.instances;
            if (inst.W == Rat(1, 4)) ++sum.degenerate;
            if (!v.hypothesis_ok) {
                ++sum.rejected_hypothesis;
                continue;
            }
            if (v.holds)
                ++sum.holds;
            else
                sum.violations.push_back({iseed, inst.A, inst.Y});
            Rat slack = Rat(v.best_l) - v.threshold;
            if (!sum.min_slack || slack < *sum.min_slack) sum.min_slack = slack;
        }
    };

    CampaignSummary total;
    int nw = std::max(1, workers);
    if (nw == 1 || count < 2 * nw) {
        run_range(0, count, total);
        return total;
    }
    std::vector<Part> parts(static_cast<std::size_t>(nw));
    std::vector<std::thread> pool;
    std::int64_t chunk = (count + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
        std::int64_t lo = w * chunk, hi = std::min<std::int64_t>(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&run_range, &parts, w, lo, hi] { run_range(lo, hi, parts[w].sum); });
    }
    for (auto& t : pool) t.join();
    for (auto& part : parts) {
        total.instances += part.sum.instances;
        total.holds += part.sum.holds;
        total.rejected_hypothesis += part.sum.rejected_hypothesis;
        total.degenerate += part.sum.degenerate;
        for (auto& viol : part.sum.violations) total.violations.push_back(viol);
        if (part.sum.min_slack && (!total.min_slack || *part.sum.min_slack < *total.min_slack))
            total.min_slack = part.sum.min_slack;
    }
    return total;
}

std::string campaign_json(const CampaignSummary& s) {
    nlohmann::json j{{"instances", s.instances},
                     {"holds", s.holds},
                     {"rejected_hypothesis", s.rejected_hypothesis}};
    if (s.min_slack)
        j["min_slack"] = {{"num", s.min_slack->num}, {"den", s.min_slack->den}};
    else
        j["min_slack"] = nullptr;
    return j.dump(2);
}

}  // namespace zerosum
