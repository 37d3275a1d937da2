#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "zerosum/cache.hpp"

using namespace zerosum;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ZEROSUM_BIN_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

std::filesystem::path temp_file(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("zerosum_test_" + name);
    std::filesystem::remove(p);
    return p;
}

}  // namespace

TEST_CASE("cache round-trip, last-record-wins, corrupt lines skipped") {
    auto path = temp_file("cache.jsonl");
    {
        ResultCache c(path.string());
        c.put({"2,2,6", "D", 0, 8, "search", true, 0});
        c.put({"3,3,3", "Ds", 3, 17, "search", true, 0});
        auto rec = c.get("2,2,6", "D");
        REQUIRE(rec.has_value());
        CHECK(rec->value == 8);
        CHECK(rec->method == "search");
        CHECK_FALSE(c.get("2,2,6", "Ds", 3).has_value());
        CHECK_THROWS_AS(c.put({"5", "D", 0, 4, "search", false, 0}), std::invalid_argument);
    }
    {
        std::ofstream app(path, std::ios::app);
        app << "this is not json\n";
        app << R"({"group":"2,2,6","kind":"D","value":9,"method":"search","exact":true})" << "\n";
        app << R"({"kind":"D","value":1})" << "\n";  // missing group: skipped
    }
    {
        ResultCache c(path.string());
        auto rec = c.get("2,2,6", "D");
        REQUIRE(rec.has_value());
        CHECK(rec->value == 9);  // last record wins
        auto ds = c.get("3,3,3", "Ds", 3);
        REQUIRE(ds.has_value());
        CHECK(ds->value == 17);
    }
    std::filesystem::remove(path);
}

TEST_CASE("cache path precedence") {
    CHECK(default_cache_path("/tmp/explicit.jsonl") == "/tmp/explicit.jsonl");
    setenv("ZEROSUM_CACHE", "/tmp/envcache.jsonl", 1);
    CHECK(default_cache_path() == "/tmp/envcache.jsonl");
    unsetenv("ZEROSUM_CACHE");
    CHECK(default_cache_path().find("zerosum/cache.jsonl") != std::string::npos);
}

TEST_CASE("cli compute: stable JSON schema against the golden file") {
    auto cache = temp_file("cli_cache.jsonl");
    auto r = run_cli("compute -g 2,2 -k ZS --json --cache " + cache.string());
    CHECK(r.exit_code == 0);
    json got = json::parse(r.out);
    got["nodes"] = 0;
    got["wall_ms"] = 0;
    std::ifstream gf(std::string(ZEROSUM_GOLDEN_DIR) + "/compute_zs_22.json");
    REQUIRE(gf.is_open());
    json want = json::parse(gf);
    CHECK(got == want);
    std::filesystem::remove(cache);
}

TEST_CASE("cli compute: cache write-back and read-through") {
    auto cache = temp_file("cli_cache2.jsonl");
    auto first = run_cli("compute -g 2,2,6 -k D --json --cache " + cache.string());
    CHECK(first.exit_code == 0);
    json j1 = json::parse(first.out);
    CHECK(j1["value"] == 8);
    CHECK(j1["from_cache"] == false);
    auto second = run_cli("compute -g 2,2,6 -k D --json --cache " + cache.string());
    json j2 = json::parse(second.out);
    CHECK(j2["value"] == 8);
    CHECK(j2["from_cache"] == true);
    // normalization applies to the cache key: a permuted spec hits the record
    auto third = run_cli("compute -g 6,2,2 -k D --json --cache " + cache.string());
    CHECK(json::parse(third.out)["from_cache"] == true);
    std::filesystem::remove(cache);
}

TEST_CASE("cli bounds golden JSON") {
    auto cache = temp_file("cli_cache3.jsonl");
    auto r = run_cli("bounds -g 3,3,6 --json --cache " + cache.string());
    CHECK(r.exit_code == 0);
    std::ifstream gf(std::string(ZEROSUM_GOLDEN_DIR) + "/bounds_336.json");
    REQUIRE(gf.is_open());
    CHECK(json::parse(r.out) == json::parse(gf));
    std::filesystem::remove(cache);
}

TEST_CASE("cli exit codes: usage, parse, budget") {
    CHECK(run_cli("compute -g not_a_group -k D").exit_code == 2);
    CHECK(run_cli("compute -g 2,2 -k bogus").exit_code == 2);
    CHECK(run_cli("compute -g 4 -k Ds --s 2").exit_code == 2);  // s below the exponent
    auto budget = run_cli("compute -g 2,2,12 -k D --max-nodes 100 --cache " +
                          temp_file("cli_cache4.jsonl").string());
    CHECK(budget.exit_code == 3);
}

TEST_CASE("cli enumerate") {
    auto r = run_cli("enumerate -n 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "8\n2,4\n2,2,2\n");
}

TEST_CASE("cli extract emits a decomposition") {
    auto r = run_cli("extract --lemma l1 -s 2 -a 1 -b 2 --seq \"0,0,1*8\"");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["witness_length"] > 0);
    CHECK(j["h"] == 2);
    CHECK(j["blocks"].size() == 2);
}

TEST_CASE("cli verify: reproducible byte-for-byte with a fixed seed") {
    auto a = run_cli("verify expansion -p 3 -d 2 -n 200 --seed 9");
    auto b = run_cli("verify expansion -p 3 -d 2 -n 200 --seed 9 --workers 3");
    CHECK(a.out == b.out);
    auto gao1 = run_cli("verify gao");
    auto gao2 = run_cli("verify gao");
    CHECK(gao1.exit_code == 0);
    CHECK(gao1.out == gao2.out);
    auto l2 = run_cli("verify lemma2 --s 2");
    CHECK(l2.exit_code == 0);
    CHECK(json::parse(l2.out)["value"] == 8);
    auto t1 = run_cli("verify theorem1 --order-cap 16 --json");
    CHECK(t1.exit_code == 0);
}
