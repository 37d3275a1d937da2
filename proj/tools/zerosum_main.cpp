// zerosum: zero-sum invariants of finite abelian groups at desk scale.
#include <chrono>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zerosum/bounds.hpp"
#include "zerosum/cache.hpp"
#include "zerosum/expansion.hpp"
#include "zerosum/extraction.hpp"
#include "zerosum/search.hpp"

using namespace zerosum;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct GlobalOpts {
    bool json = false;
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t max_nodes = 400'000'000ull;
    std::string cache_path;
};

SearchConfig make_config(const GlobalOpts& g) {
    SearchConfig cfg;
    cfg.max_nodes = g.max_nodes;
    cfg.workers = g.workers;
    return cfg;
}

std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

json sequence_json(const Sequence& s) {
    json arr = json::array();
    for (auto& [idx, mult] : s.mult_by_index) {
        Element e = element_from_index(s.group, idx);
        arr.push_back({{"residues", e.residues}, {"mult", mult}});
    }
    return arr;
}

int cmd_compute(const GlobalOpts& g, const std::string& group_spec, const std::string& kind,
                std::int64_t s) {
    Group grp = parse_group(group_spec);
    SearchConfig cfg = make_config(g);
    ResultCache cache(default_cache_path(g.cache_path));
    std::string key = format_group(grp);

    auto t0 = std::chrono::steady_clock::now();
    std::int64_t value = 0;
    std::string method;
    bool exact = true, from_cache = false;
    std::uint64_t nodes = 0;

    if (kind == "D") {
        ValueResult r = davenport(grp, cfg, &cache);
        value = r.value;
        method = method_name(r.method);
        exact = r.status == SearchStatus::exact;
        from_cache = r.from_cache;
        nodes = r.nodes;
    } else if (kind == "Ds") {
        if (s < 1) throw CLI::ValidationError("--s is required for kind Ds");
        if (auto rec = cache.get(key, "Ds", s)) {
            value = rec->value;
            method = rec->method;
            from_cache = true;
        } else {
            SearchOutcome r = davenport_short(grp, s, cfg);
            value = r.value;
            method = "search";
            exact = r.status == SearchStatus::exact;
            nodes = r.nodes;
            if (exact) cache.put({key, "Ds", s, value, method, true, 0});
        }
    } else if (kind == "ZS") {
        if (auto rec = cache.get(key, "ZS")) {
            value = rec->value;
            method = rec->method;
            from_cache = true;
        } else {
            ValueResult r = zero_sum_constant(grp, cfg, &cache);
            value = r.value;
            method = method_name(r.method);
            exact = r.status == SearchStatus::exact;
            nodes = r.nodes;
            if (exact) cache.put({key, "ZS", 0, value, method, true, 0});
        }
    } else {
        throw CLI::ValidationError("kind must be one of D, Ds, ZS");
    }

    std::int64_t wall = ms_since(t0);
    if (g.json) {
        json out{{"schema", "zerosum.compute.v1"},
                 {"group", key},
                 {"kind", kind},
                 {"value", value},
                 {"method", method},
                 {"exact", exact},
                 {"from_cache", from_cache},
                 {"nodes", nodes},
                 {"wall_ms", wall}};
        out["s"] = (kind == "Ds") ? json(s) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << kind << "(" << key << ")";
        if (kind == "Ds") std::cout << " s=" << s;
        std::cout << (exact ? " = " : " >= ") << value << "   [" << method
                  << (from_cache ? ", cached" : "") << "]  nodes=" << nodes << " wall=" << wall
                  << "ms\n";
    }
    if (!exact) {
        std::cerr << "zerosum: node budget exhausted; value is a certified lower bound\n";
        return kExitBudget;
    }
    return kExitOk;
}

int cmd_bounds(const GlobalOpts& g, const std::string& group_spec, std::int64_t k_num,
               std::int64_t k_den) {
    Group grp = parse_group(group_spec);
    SearchConfig cfg = make_config(g);
    BoundReport rep = best_upper(grp, Rat(k_num, k_den), cfg);

    std::optional<std::int64_t> exact_d;
    std::string exact_method;
    try {
        ValueResult r = davenport(grp, cfg);
        if (r.status == SearchStatus::exact) {
            exact_d = r.value;
            exact_method = method_name(r.method);
        }
    } catch (const std::domain_error&) {
        // beyond desk scale; report bounds only
    }

    if (g.json) {
        json out{{"schema", "zerosum.bounds.v1"}, {"report", json::parse(bound_report_json(rep))}};
        if (exact_d)
            out["exact_d"] = {{"value", *exact_d}, {"method", exact_method}};
        else
            out["exact_d"] = nullptr;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "group " << format_group(grp) << "  lower M = " << rep.lower << "\n";
        for (const auto& e : rep.entries) {
            std::cout << "  " << (e.applicable ? "*" : " ") << " " << e.name << " = "
                      << e.value.str() << "   (" << e.provenance << ")\n";
        }
        if (rep.best_upper) std::cout << "best upper = " << rep.best_upper->str() << "\n";
        if (exact_d)
            std::cout << "exact D = " << *exact_d << "  [" << exact_method << "]\n";
    }
    return kExitOk;
}

int cmd_extract(const GlobalOpts& g, const std::string& lemma, std::int64_t s, std::int64_t d,
                std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t A, std::int64_t d3,
                const std::string& seq_literal) {
    ExtractionResult res;
    Group grp;
    if (lemma == "l1") {
        if (A == 0) {
            auto av = short_constant_cube(s);
            if (!av) throw CLI::ValidationError("--A required when s is not 2, 3 or 4");
            A = *av;
        }
        if (d3 == 0) {
            auto dv = davenport_cube_formula(s, 3);
            if (!dv) throw CLI::ValidationError("--d3 required when s is not a prime power");
            d3 = *dv;
        }
        grp = normalize({s, s * a, s * a * b});
        Sequence seq = parse_sequence(grp, seq_literal);
        res = extract_zero_sum_l1(s, a, b, seq, A, d3);
    } else if (lemma == "l5") {
        if (A == 0) {
            auto av = short_constant_cube(d);
            if (!av) throw CLI::ValidationError("--A required when d is not 2, 3 or 4");
            A = *av;
        }
        if (d3 == 0) {
            auto dv = davenport_cube_formula(d, 3);
            if (!dv) throw CLI::ValidationError("--d3 required when d is not a prime power");
            d3 = *dv;
        }
        grp = normalize({a, a * b, a * b * c});
        Sequence seq = parse_sequence(grp, seq_literal);
        res = extract_zero_sum_l5(d, a, b, c, seq, A, d3);
    } else {
        throw CLI::ValidationError("--lemma must be l1 or l5");
    }

    json blocks = json::array();
    for (const auto& blk : res.decomposition.blocks) blocks.push_back(sequence_json(blk));
    json qelems = json::array();
    for (const auto& e : res.decomposition.quotient_elements) qelems.push_back(e.residues);
    json out{{"schema", "zerosum.extract.v1"},
             {"group", format_group(grp)},
             {"witness", format_sequence(res.witness.sub)},
             {"witness_length", res.witness.sub.length()},
             {"quotient", format_group(res.decomposition.quotient)},
             {"h", res.decomposition.h},
             {"u", res.decomposition.u},
             {"short_block_count", res.decomposition.short_block_count},
             {"blocks", blocks},
             {"quotient_elements", qelems},
             {"chosen", res.decomposition.chosen}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_expansion(const GlobalOpts& g, std::int64_t p, int d, std::int64_t count) {
    CampaignSummary sum = run_expansion_campaign(p, d, count, g.seed, g.workers);
    std::cout << campaign_json(sum) << "\n";
    std::int64_t violations = sum.instances - sum.holds - sum.rejected_hypothesis;
    if (violations > 0) {
        std::cerr << "zerosum: " << violations << " expansion violations (" << sum.degenerate
                  << " degenerate instances with A inside one hyperplane)\n";
        for (const auto& v : sum.violations) {
            std::cerr << "  seed=" << v.instance_seed << " |A|=" << v.A.size()
                      << " |Y|=" << v.Y.size() << "\n";
        }
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_enumerate(const GlobalOpts& g, std::int64_t n) {
    auto groups = enumerate_groups(n);
    if (g.json) {
        json arr = json::array();
        for (const auto& grp : groups) arr.push_back(format_group(grp));
        json out{{"schema", "zerosum.enumerate.v1"}, {"n", n}, {"count", groups.size()},
                 {"groups", arr}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& grp : groups) std::cout << format_group(grp) << "\n";
    }
    return kExitOk;
}

int verify_exit(bool pass, bool incomplete) {
    if (incomplete) return kExitBudget;
    return pass ? kExitOk : kExitViolation;
}

int cmd_verify_lemma2(const GlobalOpts& g, std::int64_t s) {
    SearchConfig cfg = make_config(g);
    json out{{"schema", "zerosum.verify.v1"}, {"suite", "lemma2"}, {"s", s}};
    bool pass = true, incomplete = false;

    if (s == 2 || s == 3) {
        std::int64_t expect = s == 2 ? 8 : 17;
        SearchOutcome r = davenport_short(parse_group(s == 2 ? "2,2,2" : "3,3,3"), s, cfg);
        out["value"] = r.value;
        out["expected"] = expect;
        out["nodes"] = r.nodes;
        if (r.status != SearchStatus::exact) {
            incomplete = true;
            out["status"] = "incomplete";
        } else {
            pass = r.value == expect;
            out["status"] = pass ? "pass" : "fail";
        }
    } else if (s == 4) {
        // lower direction only: exhibit a length-21 short-zero-sum-free sequence
        SearchConfig lcfg = cfg;
        lcfg.length_cap = 22;  // D^4 value target = 22 -> free length 21
        lcfg.use_memo = false;
        SearchOutcome r = davenport_short(parse_group("4,4,4"), 4, lcfg);
        std::int64_t exhibited = r.value - 1;
        out["exhibited_length"] = exhibited;
        out["expected_length"] = 21;
        out["nodes"] = r.nodes;
        bool valid = false;
        if (r.example && exhibited >= 21)
            valid = !find_short_zero_sum(*r.example, 4).has_value() &&
                    r.example->length() >= 21;
        if (exhibited < 21) {
            incomplete = true;
            out["status"] = "incomplete";
        } else {
            pass = valid;
            out["status"] = pass ? "pass" : "fail";
            if (r.example) out["example"] = format_sequence(*r.example);
        }
    } else {
        throw CLI::ValidationError("verify lemma2: --s must be 2, 3 or 4");
    }
    std::cout << out.dump(2) << "\n";
    return verify_exit(pass, incomplete);
}

int cmd_verify_theorem1(const GlobalOpts& g, std::int64_t order_cap) {
    SearchConfig cfg = make_config(g);
    Theorem1Report rep = verify_theorem1(order_cap, cfg);
    bool pass = rep.violations.empty();
    bool incomplete = !rep.skipped.empty();
    if (g.json) {
        json out{{"schema", "zerosum.verify.v1"},
                 {"suite", "theorem1"},
                 {"status", incomplete ? "incomplete" : (pass ? "pass" : "fail")},
                 {"report", json::parse(theorem1_report_json(rep))}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "theorem1 order_cap=" << order_cap << ": " << rep.groups_checked
                  << " groups, " << rep.checks << " checks, " << rep.violations.size()
                  << " violations";
        if (!rep.skipped.empty()) std::cout << ", " << rep.skipped.size() << " skipped (budget)";
        if (rep.min_slack) std::cout << ", min slack " << rep.min_slack->str();
        std::cout << "\n";
        for (const auto& v : rep.violations)
            std::cout << "  VIOLATION " << format_group(v.group) << " k=" << v.k << " D="
                      << v.d_exact << " bound=" << v.bound.str() << "\n";
    }
    return verify_exit(pass, incomplete);
}

int cmd_verify_expansion(const GlobalOpts& g, std::int64_t p, int d, std::int64_t count) {
    CampaignSummary sum = run_expansion_campaign(p, d, count, g.seed, g.workers);
    std::int64_t violations = sum.instances - sum.holds - sum.rejected_hypothesis;
    json out{{"schema", "zerosum.verify.v1"},
             {"suite", "expansion"},
             {"p", p},
             {"d", d},
             {"status", violations == 0 ? "pass" : "fail"},
             {"summary", json::parse(campaign_json(sum))},
             {"degenerate_instances", sum.degenerate}};
    std::cout << out.dump(2) << "\n";
    return verify_exit(violations == 0, false);
}

int cmd_verify_extraction(const GlobalOpts& g, std::int64_t count) {
    std::mt19937_64 rng(g.seed);
    struct Params {
        std::int64_t s, a, b;
    };
    const Params sets[] = {{2, 1, 2}, {2, 1, 3}, {2, 2, 2}, {3, 1, 2}};
    json detail = json::array();
    bool pass = true;
    for (const auto& ps : sets) {
        std::int64_t A = *short_constant_cube(ps.s);
        std::int64_t d3 = *davenport_cube_formula(ps.s, 3);
        BlockBound bb = bound_lemma1(ps.s, ps.a, ps.b, A, d3);
        Group grp = normalize({ps.s, ps.s * ps.a, ps.s * ps.a * ps.b});
        std::int64_t ok = 0;
        for (std::int64_t i = 0; i < count; ++i) {
            Sequence seq = make_sequence(grp);
            for (std::int64_t j = 0; j < bb.value; ++j)
                seq.push_index(static_cast<std::int64_t>(
                    rng() % static_cast<std::uint64_t>(grp.order())));
            ExtractionResult res = extract_zero_sum_l1(ps.s, ps.a, ps.b, seq, A, d3);
            if (witness_valid(res.witness, seq)) ++ok;
        }
        pass &= ok == count;
        detail.push_back({{"s", ps.s},
                          {"a", ps.a},
                          {"b", ps.b},
                          {"threshold", bb.value},
                          {"ok", ok},
                          {"count", count}});
    }
    json out{{"schema", "zerosum.verify.v1"},
             {"suite", "extraction"},
             {"status", pass ? "pass" : "fail"},
             {"cases", detail}};
    std::cout << out.dump(2) << "\n";
    return verify_exit(pass, false);
}

int cmd_verify_gao(const GlobalOpts& g) {
    SearchConfig cfg = make_config(g);
    json detail = json::array();
    bool pass = true;
    for (std::int64_t n = 1; n <= 9; ++n) {
        for (const Group& grp : enumerate_groups(n)) {
            std::int64_t zs = zs_direct(grp);
            std::int64_t viaGao = zero_sum_constant(grp, cfg).value;
            bool ok = zs == viaGao;
            pass &= ok;
            detail.push_back(
                {{"group", format_group(grp)}, {"zs_direct", zs}, {"gao", viaGao}, {"ok", ok}});
        }
    }
    json out{{"schema", "zerosum.verify.v1"},
             {"suite", "gao"},
             {"status", pass ? "pass" : "fail"},
             {"cases", detail}};
    std::cout << out.dump(2) << "\n";
    return verify_exit(pass, false);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-sum invariants of finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--seed", g.seed, "seed for randomized drivers");
    app.add_option("--workers", g.workers, "worker threads for searches and campaigns")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", g.max_nodes, "search node budget");
    app.add_option("--cache", g.cache_path, "result cache path (else ZEROSUM_CACHE, else XDG)");

    std::string group_spec, kind = "D", seq_literal, lemma = "l1";
    std::int64_t s_opt = 0;
    auto* compute = app.add_subcommand("compute", "compute D / D^s / ZS of a group");
    compute->add_option("-g,--group", group_spec, "group spec, e.g. \"2,2,6\"")->required();
    compute->add_option("-k,--kind", kind, "D, Ds or ZS");
    compute->add_option("--s", s_opt, "s for kind Ds");

    std::int64_t k_num = 4, k_den = 1;
    auto* bounds = app.add_subcommand("bounds", "evaluate every applicable upper bound");
    bounds->add_option("-g,--group", group_spec, "group spec")->required();
    bounds->add_option("-K,--K", k_num, "Alon-Dubiner-type constant (integer part)");
    bounds->add_option("--K-den", k_den, "denominator for a rational K");

    std::int64_t ex_s = 2, ex_d = 2, ex_a = 1, ex_b = 1, ex_c = 1, ex_A = 0, ex_d3 = 0;
    auto* extract = app.add_subcommand("extract", "constructive zero-sum extraction");
    extract->add_option("--lemma", lemma, "l1 or l5");
    extract->add_option("-s", ex_s, "modulus s (l1)");
    extract->add_option("-d", ex_d, "divisor d (l5)");
    extract->add_option("-a", ex_a, "parameter a");
    extract->add_option("-b", ex_b, "parameter b");
    extract->add_option("-c", ex_c, "parameter c (l5)");
    extract->add_option("--A", ex_A, "upper bound for D^s(Z_s^3); default from the table");
    extract->add_option("--d3", ex_d3, "D(Z_s^3); default from the prime-power formula");
    extract->add_option("--seq", seq_literal, "sequence literal, e.g. \"1,0,0*2; 0,1,2\"")
        ->required();

    std::int64_t xp = 3, xcount = 1000;
    int xd = 2;
    auto* expansion = app.add_subcommand("expansion", "randomized expansion campaign");
    expansion->add_option("-p", xp, "prime p");
    expansion->add_option("-d", xd, "dimension d");
    expansion->add_option("-n,--instances", xcount, "instance count");

    std::int64_t enum_n = 1;
    auto* enumerate = app.add_subcommand("enumerate", "abelian groups of a given order");
    enumerate->add_option("-n,--order", enum_n, "group order")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    verify->fallthrough();
    std::int64_t v_s = 2, v_cap = 32, v_p = 5, v_n = 1000, v_count = 200;
    int v_d = 2;
    auto* v_lemma2 = verify->add_subcommand("lemma2", "short-constant values of Z_s^3");
    v_lemma2->add_option("--s", v_s, "2, 3 or 4");
    auto* v_theorem1 = verify->add_subcommand("theorem1", "desk-scale bound sweep");
    v_theorem1->add_option("--order-cap", v_cap, "max group order");
    auto* v_expansion = verify->add_subcommand("expansion", "expansion inequality campaign");
    v_expansion->add_option("-p", v_p, "prime p");
    v_expansion->add_option("-d", v_d, "dimension d");
    v_expansion->add_option("-n,--instances", v_n, "instance count");
    auto* v_extraction = verify->add_subcommand("extraction", "extraction property campaign");
    v_extraction->add_option("-n,--count", v_count, "sequences per parameter set");
    verify->add_subcommand("gao", "ZS = |G| + D - 1 on every group of order <= 9");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_compute(g, group_spec, kind, s_opt);
        if (bounds->parsed()) return cmd_bounds(g, group_spec, k_num, k_den);
        if (extract->parsed())
            return cmd_extract(g, lemma, ex_s, ex_d, ex_a, ex_b, ex_c, ex_A, ex_d3, seq_literal);
        if (expansion->parsed()) return cmd_expansion(g, xp, xd, xcount);
        if (enumerate->parsed()) return cmd_enumerate(g, enum_n);
        if (verify->parsed()) {
            if (v_lemma2->parsed()) return cmd_verify_lemma2(g, v_s);
            if (v_theorem1->parsed()) return cmd_verify_theorem1(g, v_cap);
            if (v_expansion->parsed()) return cmd_verify_expansion(g, v_p, v_d, v_n);
            if (v_extraction->parsed()) return cmd_verify_extraction(g, v_count);
            return cmd_verify_gao(g);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "zerosum: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "zerosum: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "zerosum: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "zerosum: internal error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
