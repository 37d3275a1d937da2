#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "zerosum/group.hpp"

using namespace zerosum;

TEST_CASE("normalize: CRT recombination into the divisibility chain") {
    CHECK(normalize({4, 6}).invariant_factors == std::vector<std::int64_t>{2, 12});
    CHECK(normalize({5}).invariant_factors == std::vector<std::int64_t>{5});
    CHECK(normalize({2, 2, 2, 6}).invariant_factors == std::vector<std::int64_t>{2, 2, 2, 6});
    CHECK(normalize({6, 10, 15}).invariant_factors == std::vector<std::int64_t>{30, 30});
    CHECK(normalize({}).is_trivial());
    CHECK(normalize({}).order() == 1);
    CHECK(normalize({}).exponent() == 1);
    CHECK_THROWS_AS(normalize({1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(normalize({0}), std::invalid_argument);
    CHECK_THROWS_AS(normalize({-3}), std::invalid_argument);
}

TEST_CASE("normalize is idempotent and permutation-invariant") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 500; ++it) {
        std::vector<std::int64_t> moduli;
        std::int64_t product = 1;
        while (true) {
            std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 30);
            if (product * m > 1'000'000) break;
            product *= m;
            moduli.push_back(m);
            if (moduli.size() >= 6 || (rng() & 3) == 0) break;
        }
        if (moduli.empty()) continue;
        Group a = normalize(moduli);
        CHECK(a.order() == product);
        CHECK(normalize(a.invariant_factors) == a);
        std::shuffle(moduli.begin(), moduli.end(), rng);
        CHECK(normalize(moduli) == a);
        for (std::size_t i = 0; i + 1 < a.invariant_factors.size(); ++i)
            CHECK(a.invariant_factors[i + 1] % a.invariant_factors[i] == 0);
    }
}

TEST_CASE("group spec grammar") {
    CHECK(parse_group("2, 2, 6") == normalize({2, 2, 6}));
    CHECK(parse_group(" 12 ") == normalize({12}));
    CHECK(parse_group("4,6") == normalize({2, 12}));
    CHECK(format_group(parse_group("6,2,2")) == "2,2,6");
    CHECK(parse_group("1").is_trivial());
    CHECK_THROWS_AS(parse_group(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_group("2,,4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group("2,x"), std::invalid_argument);
}

TEST_CASE("element arithmetic") {
    Group g = normalize({2, 4});
    Element x = element_from_residues(g, {1, 3});
    Element y = element_from_residues(g, {1, 2});
    CHECK(add(g, x, y).residues == std::vector<std::int64_t>{0, 1});
    CHECK(neg(normalize({5}), element_from_residues(normalize({5}), {2})).residues ==
          std::vector<std::int64_t>{3});
    Group z33 = normalize({3, 3});
    CHECK(scalar_mul(z33, 3, element_from_residues(z33, {1, 2})).index == 0);
    CHECK(scalar_mul(z33, -1, element_from_residues(z33, {1, 2})) ==
          neg(z33, element_from_residues(z33, {1, 2})));
    CHECK_THROWS_AS(add(g, x, element_from_residues(normalize({5}), {1})),
                    std::invalid_argument);
    CHECK(zero(g).index == 0);
}

TEST_CASE("m_lower_bound") {
    CHECK(m_lower_bound(normalize({3, 3, 3})) == 7);
    CHECK(m_lower_bound(normalize({2, 12})) == 13);  // 1 + 1 + 11
    CHECK(m_lower_bound(normalize({3, 12})) == 14);  // Z_k + Z_kt, k=3, t=4: kt+k-1
    CHECK(m_lower_bound(Group{}) == 1);
}

TEST_CASE("enumerate_groups: canonical order and known lists") {
    auto g8 = enumerate_groups(8);
    REQUIRE(g8.size() == 3);
    CHECK(g8[0] == normalize({8}));
    CHECK(g8[1] == normalize({2, 4}));
    CHECK(g8[2] == normalize({2, 2, 2}));
    auto g12 = enumerate_groups(12);
    REQUIRE(g12.size() == 2);
    CHECK(g12[0] == normalize({12}));
    CHECK(g12[1] == normalize({2, 6}));
    CHECK(enumerate_groups(1) == std::vector<Group>{Group{}});
    CHECK_THROWS_AS(enumerate_groups(0), std::invalid_argument);
}

TEST_CASE("enumerate_groups count equals the product of partition numbers") {
    for (std::int64_t n = 1; n <= 200; ++n) {
        std::int64_t expected = 1;
        for (auto [p, e] : factorize(n)) expected *= partition_count(e);
        auto groups = enumerate_groups(n);
        CHECK(static_cast<std::int64_t>(groups.size()) == expected);
        for (const auto& g : groups) {
            CHECK(g.order() == n);
            CHECK(normalize(g.invariant_factors) == g);
        }
    }
}

TEST_CASE("index/residue round-trip for every group of order <= 1000") {
    for (std::int64_t n = 1; n <= 1000; ++n) {
        for (const Group& g : enumerate_groups(n)) {
            for (std::int64_t i = 0; i < n; ++i) {
                Element e = element_from_index(g, i);
                CHECK(element_from_residues(g, e.residues).index == i);
            }
        }
    }
}

TEST_CASE("group axioms: exhaustive to order 16, randomized above") {
    std::mt19937_64 rng(11);
    for (std::int64_t n = 1; n <= 64; ++n) {
        for (const Group& g : enumerate_groups(n)) {
            auto check_triple = [&](std::int64_t ia, std::int64_t ib, std::int64_t ic) {
                Element a = element_from_index(g, ia);
                Element b = element_from_index(g, ib);
                Element c = element_from_index(g, ic);
                CHECK(add(g, add(g, a, b), c) == add(g, a, add(g, b, c)));
                CHECK(add(g, a, b) == add(g, b, a));
                CHECK(add(g, a, zero(g)) == a);
                CHECK(add(g, a, neg(g, a)).index == 0);
            };
            if (n <= 16) {
                for (std::int64_t ia = 0; ia < n; ++ia)
                    for (std::int64_t ib = 0; ib < n; ++ib)
                        for (std::int64_t ic = 0; ic < n; ++ic) check_triple(ia, ib, ic);
            } else {
                for (int it = 0; it < 10'000; ++it)
                    check_triple(rng() % n, rng() % n, rng() % n);
            }
        }
    }
}

TEST_CASE("element_order and p-group detection") {
    Group g = normalize({2, 4});
    CHECK(element_order(g, element_from_residues(g, {1, 2})) == 2);
    CHECK(element_order(g, element_from_residues(g, {0, 1})) == 4);
    CHECK(element_order(g, zero(g)) == 1);
    CHECK(is_p_group(normalize({2, 4})));
    CHECK(is_p_group(normalize({3, 3, 9})));
    CHECK_FALSE(is_p_group(normalize({6})));
    std::int64_t p = 0;
    CHECK(is_p_group(normalize({49}), &p));
    CHECK(p == 7);
    CHECK(is_p_group(Group{}));
}
