#include "zerosum/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zerosum {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Group normalize(const std::vector<std::int64_t>& moduli) {
    // Per prime, collect exponents of that prime across all moduli, sorted
    // descending. d_r takes the largest power of every prime, d_{r-1} the
    // next largest, and so on; this is the CRT recombination into the
    // divisibility chain.
    std::map<std::int64_t, std::vector<int>> exps;
    std::size_t rank = 0;
    for (auto m : moduli) {
        if (m < 2) throw std::invalid_argument("normalize: every modulus must be >= 2");
        for (auto [p, e] : factorize(m)) exps[p].push_back(e);
    }
    for (auto& [p, es] : exps) {
        std::sort(es.begin(), es.end(), std::greater<>());
        rank = std::max(rank, es.size());
    }
    std::vector<std::int64_t> factors(rank, 1);
    for (auto& [p, es] : exps) {
        for (std::size_t j = 0; j < es.size(); ++j) {
            std::int64_t pe = 1;
            for (int k = 0; k < es[j]; ++k) pe *= p;
            factors[rank - 1 - j] *= pe;  // largest powers into the last slot
        }
    }
    return Group{std::move(factors)};
}

Group parse_group(std::string_view spec) {
    std::vector<std::int64_t> moduli;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(token, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_group: bad modulus '" + token + "'");
        }
        if (pos != token.size())
            throw std::invalid_argument("parse_group: bad modulus '" + token + "'");
        moduli.push_back(v);
        token.clear();
    };
    for (char c : spec) {
        if (c == ',') {
            if (token.empty()) throw std::invalid_argument("parse_group: empty modulus");
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token.push_back(c);
        }
    }
    flush();
    // "1" denotes the trivial group; otherwise every modulus must be >= 2.
    if (moduli.size() == 1 && moduli[0] == 1) return Group{};
    if (moduli.empty()) throw std::invalid_argument("parse_group: empty spec");
    return normalize(moduli);
}

std::string format_group(const Group& g) {
    if (g.is_trivial()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
        if (i) os << ',';
        os << g.invariant_factors[i];
    }
    return os.str();
}

static void check_arity(const Group& g, const Element& x, const char* who) {
    if (x.residues.size() != g.invariant_factors.size())
        throw std::invalid_argument(std::string(who) + ": residue arity does not match group rank");
}

Element element_from_residues(const Group& g, std::vector<std::int64_t> residues) {
    if (residues.size() != g.invariant_factors.size())
        throw std::invalid_argument("element_from_residues: arity mismatch");
    std::int64_t index = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        std::int64_t d = g.invariant_factors[i];
        std::int64_t r = residues[i] % d;
        if (r < 0) r += d;
        residues[i] = r;
        index = index * d + r;
    }
    return Element{std::move(residues), index};
}

Element element_from_index(const Group& g, std::int64_t index) {
    if (index < 0 || index >= g.order())
        throw std::invalid_argument("element_from_index: index out of range");
    std::vector<std::int64_t> res(g.invariant_factors.size());
    std::int64_t rest = index;
    for (std::size_t i = g.invariant_factors.size(); i-- > 0;) {
        std::int64_t d = g.invariant_factors[i];
        res[i] = rest % d;
        rest /= d;
    }
    return Element{std::move(res), index};
}

Element zero(const Group& g) {
    return Element{std::vector<std::int64_t>(g.invariant_factors.size(), 0), 0};
}

Element add(const Group& g, const Element& x, const Element& y) {
    check_arity(g, x, "add");
    check_arity(g, y, "add");
    std::vector<std::int64_t> res(x.residues.size());
    for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = (x.residues[i] + y.residues[i]) % g.invariant_factors[i];
    return element_from_residues(g, std::move(res));
}

Element neg(const Group& g, const Element& x) {
    check_arity(g, x, "neg");
    std::vector<std::int64_t> res(x.residues.size());
    for (std::size_t i = 0; i < res.size(); ++i) {
        std::int64_t d = g.invariant_factors[i];
        res[i] = (d - x.residues[i]) % d;
    }
    return element_from_residues(g, std::move(res));
}

Element scalar_mul(const Group& g, std::int64_t k, const Element& x) {
    check_arity(g, x, "scalar_mul");
    std::vector<std::int64_t> res(x.residues.size());
    for (std::size_t i = 0; i < res.size(); ++i) {
        std::int64_t d = g.invariant_factors[i];
        std::int64_t r = (x.residues[i] % d) * (k % d) % d;
        if (r < 0) r += d;
        res[i] = r;
    }
    return element_from_residues(g, std::move(res));
}

std::int64_t element_order(const Group& g, const Element& x) {
    check_arity(g, x, "element_order");
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < x.residues.size(); ++i) {
        std::int64_t d = g.invariant_factors[i];
        std::int64_t o = d / std::gcd(d, x.residues[i] == 0 ? d : x.residues[i]);
        ord = std::lcm(ord, o);
    }
    return ord;
}

std::int64_t m_lower_bound(const Group& g) {
    std::int64_t m = 1;
    for (auto d : g.invariant_factors) m += d - 1;
    return m;
}

std::int64_t partition_count(int n) {
    // Euler's pentagonal-number recurrence.
    static std::vector<std::int64_t> memo{1};
    for (int m = static_cast<int>(memo.size()); m <= n; ++m) {
        std::int64_t total = 0;
        for (int k = 1;; ++k) {
            std::int64_t g1 = static_cast<std::int64_t>(k) * (3 * k - 1) / 2;
            std::int64_t g2 = static_cast<std::int64_t>(k) * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            std::int64_t sign = (k % 2) ? 1 : -1;
            if (g1 <= m) total += sign * memo[m - g1];
            if (g2 <= m) total += sign * memo[m - g2];
        }
        memo.push_back(total);
    }
    return memo[n];
}

static void partitions_of(int n, std::vector<std::vector<int>>& out) {
    // All partitions of n in descending part order.
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxPart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, maxPart); part >= 1; --part) {
            cur.push_back(part);
            self(self, rest - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
}

std::vector<Group> enumerate_groups(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("enumerate_groups: n must be >= 1");
    if (n == 1) return {Group{}};

    auto primes = factorize(n);
    std::vector<std::vector<std::vector<int>>> parts(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
        partitions_of(primes[i].second, parts[i]);

    std::vector<Group> out;
    std::vector<std::size_t> pick(primes.size(), 0);
    for (;;) {
        // Combine: slot j of the chain takes the j-th largest power of each prime.
        std::size_t rank = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            rank = std::max(rank, parts[i][pick[i]].size());
        std::vector<std::int64_t> factors(rank, 1);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const auto& lambda = parts[i][pick[i]];
            for (std::size_t j = 0; j < lambda.size(); ++j) {
                std::int64_t pe = 1;
                for (int k = 0; k < lambda[j]; ++k) pe *= primes[i].first;
                factors[j] *= pe;  // lambda descending: slot 0 is d_r
            }
        }
        std::reverse(factors.begin(), factors.end());
        out.push_back(Group{std::move(factors)});

        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == parts[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const Group& a, const Group& b) {
        return a.invariant_factors > b.invariant_factors;  // cyclic group first
    });
    return out;
}

bool is_p_group(const Group& g, std::int64_t* p_out) {
    if (g.is_trivial()) {
        if (p_out) *p_out = 0;
        return true;
    }
    auto primes = factorize(g.order());
    if (primes.size() != 1) return false;
    if (p_out) *p_out = primes[0].first;
    return true;
}

}  // namespace zerosum
