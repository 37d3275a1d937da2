#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "zerosum/expansion.hpp"

using namespace zerosum;

namespace {

std::int32_t idx_of(std::int64_t p, std::vector<std::int32_t> digits) {
    std::int64_t idx = 0;
    for (auto d : digits) idx = idx * p + d;
    return static_cast<std::int32_t>(idx);
}

std::vector<std::int32_t> random_subset(std::int64_t n, std::size_t size, std::mt19937_64& rng) {
    std::vector<std::int32_t> all(static_cast<std::size_t>(n));
    for (std::int64_t v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(v);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return all;
}

}  // namespace

TEST_CASE("hyperplane_max_count: worked examples") {
    // all 8 nonzero points of Z_3^2: affine lines carry 3, lines through 0 carry 2
    std::vector<std::int32_t> all_nonzero;
    for (std::int32_t v = 1; v < 9; ++v) all_nonzero.push_back(v);
    CHECK(hyperplane_max_count(3, 2, all_nonzero) == 3);
    CHECK(hyperplane_max_count(3, 2, all_nonzero, HyperplaneMode::linear) == 2);

    CHECK(hyperplane_max_count(3, 2, {idx_of(3, {1, 2})}) == 1);

    // A contained in one hyperplane: count = |A|
    std::vector<std::int32_t> line = {idx_of(3, {0, 0}), idx_of(3, {0, 1}), idx_of(3, {0, 2})};
    CHECK(hyperplane_max_count(3, 2, line) == 3);

    CHECK_THROWS_AS(hyperplane_max_count(3, 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(hyperplane_max_count(4, 2, {1}), std::invalid_argument);
    CHECK_THROWS_AS(hyperplane_max_count(2, 17, {1}), std::invalid_argument);
}

TEST_CASE("hyperplane_max_count is invariant under invertible linear maps") {
    std::mt19937_64 rng(31337);
    for (int it = 0; it < 40; ++it) {
        std::vector<std::int32_t> a =
            random_subset(9, 1 + static_cast<std::size_t>(rng() % 8), rng);
        std::array<std::int32_t, 4> m{};
        do {
            for (auto& x : m) x = static_cast<std::int32_t>(rng() % 3);
        } while ((m[0] * m[3] - m[1] * m[2]) % 3 == 0);
        std::vector<std::int32_t> image;
        for (std::int32_t v : a) {
            std::int32_t x = v / 3, y = v % 3;
            image.push_back(idx_of(3, {(m[0] * x + m[1] * y) % 3, (m[2] * x + m[3] * y) % 3}));
        }
        CHECK(hyperplane_max_count(3, 2, image) == hyperplane_max_count(3, 2, a));
    }
}

TEST_CASE("max_w: worked examples") {
    std::vector<std::int32_t> all_nonzero;
    for (std::int32_t v = 1; v < 9; ++v) all_nonzero.push_back(v);
    CHECK(max_w(3, 2, all_nonzero) == Rat(2, 3));
    CHECK(max_w(3, 2, {5}) == Rat(1, 4));
    // perfectly equidistributed: every level of every functional holds |A|/p
    std::vector<std::int32_t> everything;
    for (std::int32_t v = 0; v < 9; ++v) everything.push_back(v);
    CHECK(max_w(3, 2, everything) == Rat(3, 4));
}

TEST_CASE("boundary_expansion: worked examples") {
    std::vector<std::int32_t> col = {idx_of(3, {0, 0}), idx_of(3, {0, 1}), idx_of(3, {0, 2})};
    CHECK(boundary_expansion(3, 2, col, idx_of(3, {0, 1})) == 0);  // invariant direction
    CHECK(boundary_expansion(3, 2, col, idx_of(3, {1, 0})) == 3);  // full displacement
    CHECK(boundary_expansion(3, 2, col, 0) == 0);
    CHECK(boundary_expansion(5, 1, {2}, 3) == 1);
    CHECK(boundary_expansion(3, 2, {}, 4) == 0);
}

TEST_CASE("L(a) = L(-a) for p=3, d=2 over random Y") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 100; ++it) {
        auto y = random_subset(9, static_cast<std::size_t>(rng() % 10), rng);
        for (std::int32_t a = 0; a < 9; ++a) {
            std::int32_t x = a / 3, yv = a % 3;
            std::int32_t nega = idx_of(3, {(3 - x) % 3, (3 - yv) % 3});
            CHECK(boundary_expansion(3, 2, y, a) == boundary_expansion(3, 2, y, nega));
        }
    }
}

TEST_CASE("subadditivity L(ja) <= j L(a)") {
    SUBCASE("a = 0 trivially") {
        auto rep = subadditivity_check(3, 2, {1, 4, 7}, 0, 5);
        CHECK(rep.checked == 5);
        CHECK(rep.violations.empty());
    }
    SUBCASE("randomized campaign over p in {3,5,7}, d in {1,2}") {
        std::mt19937_64 rng(23);
        std::int64_t checked = 0;
        while (checked < 10'000) {
            std::int64_t p = std::array<std::int64_t, 3>{3, 5, 7}[rng() % 3];
            int d = 1 + static_cast<int>(rng() % 2);
            std::int64_t n = d == 1 ? p : p * p;
            auto y = random_subset(n, static_cast<std::size_t>(rng() % (n + 1)), rng);
            auto a = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(n));
            auto rep = subadditivity_check(p, d, y, a, 1 + static_cast<std::int64_t>(rng() % 6));
            CHECK(rep.violations.empty());
            checked += rep.checked;
        }
    }
    SUBCASE("Y a subgroup and a in Y: L(ja) = 0 for every j") {
        std::vector<std::int32_t> sub = {idx_of(3, {0, 0}), idx_of(3, {1, 1}), idx_of(3, {2, 2})};
        for (std::int32_t a : sub) {
            auto rep = subadditivity_check(3, 2, sub, a, 6);
            CHECK(rep.violations.empty());
            CHECK(boundary_expansion(3, 2, sub, a) == 0);
        }
    }
}

TEST_CASE("check_expansion: vacuous and rejected hypotheses") {
    VectorInstance inst;
    inst.p = 3;
    inst.d = 2;
    inst.A = {1, 3, 4};
    inst.W = max_w(3, 2, inst.A);

    SUBCASE("empty Y holds vacuously") {
        auto v = check_expansion(inst);
        CHECK(v.hypothesis_ok);
        CHECK(v.holds);
        CHECK(v.threshold == Rat(0));
    }
    SUBCASE("|Y| > p^d / 2 is rejected") {
        for (std::int32_t y = 0; y < 5; ++y) inst.Y.push_back(y);
        auto v = check_expansion(inst);
        CHECK_FALSE(v.hypothesis_ok);
    }
    SUBCASE("W above max_w fails the hyperplane condition") {
        inst.W = inst.W + Rat(1, 100);
        inst.Y = {0};
        auto v = check_expansion(inst);
        CHECK_FALSE(v.hypothesis_ok);
    }
}

TEST_CASE("the statement fails in the degenerate corner (pinned counterexample)") {
    // A = {(0,1)} lies inside hyperplanes, so max_w = 1/4 and the hyperplane
    // condition holds while constraining nothing; Y = <(0,1)> is invariant
    // under every a in A, so max L = 0 < (W/5p)|Y| = 1/20.
    VectorInstance inst;
    inst.p = 3;
    inst.d = 2;
    inst.A = {idx_of(3, {0, 1})};
    inst.Y = {idx_of(3, {0, 0}), idx_of(3, {0, 1}), idx_of(3, {0, 2})};
    inst.W = max_w(3, 2, inst.A);
    REQUIRE(inst.W == Rat(1, 4));
    auto v = check_expansion(inst);
    CHECK(v.hypothesis_ok);
    CHECK_FALSE(v.holds);
    CHECK(v.best_l == 0);
    CHECK(v.threshold == Rat(1, 20));
}

TEST_CASE("spanning A with nonempty proper Y always expands at desk scale") {
    std::mt19937_64 rng(5150);
    for (int it = 0; it < 500; ++it) {
        VectorInstance inst;
        inst.p = 3;
        inst.d = 2;
        // force A to contain a basis, so <A> is everything
        inst.A = {idx_of(3, {0, 1}), idx_of(3, {1, 0})};
        for (std::int32_t v = 1; v < 9; ++v)
            if (rng() & 1) inst.A.push_back(v);
        std::sort(inst.A.begin(), inst.A.end());
        inst.A.erase(std::unique(inst.A.begin(), inst.A.end()), inst.A.end());
        inst.Y = random_subset(9, 1 + static_cast<std::size_t>(rng() % 4), rng);
        inst.W = max_w(3, 2, inst.A);
        auto v = check_expansion(inst);
        REQUIRE(v.hypothesis_ok);
        CHECK(v.holds);
    }
}

TEST_CASE("campaign: determinism and the stable JSON schema") {
    CampaignSummary a = run_expansion_campaign(3, 2, 300, 42, 1);
    CampaignSummary b = run_expansion_campaign(3, 2, 300, 42, 3);
    CHECK(a.instances == b.instances);
    CHECK(a.holds == b.holds);
    CHECK(a.rejected_hypothesis == b.rejected_hypothesis);
    CHECK(a.degenerate == b.degenerate);
    CHECK(a.min_slack == b.min_slack);
    CHECK(campaign_json(a) == campaign_json(b));

    auto j = nlohmann::json::parse(campaign_json(a));
    CHECK(j.size() == 4);
    CHECK(j.contains("instances"));
    CHECK(j.contains("holds"));
    CHECK(j.contains("rejected_hypothesis"));
    CHECK(j.contains("min_slack"));

    CampaignSummary c = run_expansion_campaign(3, 2, 300, 43, 1);
    CHECK(c.instances == 300);  // different seed still counts everything
}
