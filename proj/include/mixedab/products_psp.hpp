#pragma once

// The rank-2 PSP example inside prod_j Z_{p_j}, and the per-prime splitting of
// finitely many product coordinates into a finite summand plus a complement.

#include "mixedab/integer.hpp"
#include "mixedab/pgroup.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedab {

struct IntPair {
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend bool operator==(const IntPair&, const IntPair&) = default;
};

/// Canonical order on Z^2: (|a|+|b|, a, b).
inline bool canonical_less(const IntPair& u, const IntPair& v) {
    const std::int64_t su = std::llabs(u.a) + std::llabs(u.b), sv = std::llabs(v.a) + std::llabs(v.b);
    if (su != sv) return su < sv;
    if (u.a != v.a) return u.a < v.a;
    return u.b < v.b;
}

/// Successor of u in the canonical order on Z^2.
inline IntPair canonical_next(const IntPair& u) {
    const std::int64_t s = std::llabs(u.a) + std::llabs(u.b);
    const std::int64_t r = s - std::llabs(u.a);
    if (r > 0 && u.b < 0) return {u.a, r};
    if (u.a < s) {
        const std::int64_t a = u.a + 1;
        const std::int64_t rest = s - std::llabs(a);
        return {a, -rest};
    }
    return {-(s + 1), 0};
}

/// 1-based position of (a, b) != 0 among the nonzero pairs.
inline std::uint64_t canonical_index(const IntPair& u) {
    if (u.a == 0 && u.b == 0) throw std::invalid_argument("canonical_index: (0,0) is not enumerated");
    const std::int64_t s = std::llabs(u.a) + std::llabs(u.b);
    std::uint64_t idx = static_cast<std::uint64_t>(2 * s * (s - 1));
    for (std::int64_t a = -s; a < u.a; ++a) idx += std::llabs(a) == s ? 1 : 2;
    if (u.b > 0) ++idx;
    return idx + 1;
}

struct PspExample {
    std::size_t steps = 0;
    std::vector<IntPair> pairs;  ///< (a_j, b_j)
    std::vector<IntPair> picks;  ///< (x_j, y_j)
    std::vector<std::uint64_t> primes;
};

inline std::int64_t combo(const IntPair& ab, const IntPair& xy) { return ab.a * xy.a + ab.b * xy.b; }

/// Step j picks the least (x, y) with a_k x + b_k y != 0 for every k <= j and
/// the least prime above p_{j-1} and above every |a_k x + b_k y|.
inline PspExample psp_example(std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("psp_example: need at least one step");
    PspExample e;
    e.steps = steps;
    IntPair ab{-1, 0};
    std::uint64_t last = 1;
    for (std::size_t j = 0; j < steps; ++j, ab = canonical_next(ab)) {
        e.pairs.push_back(ab);
        IntPair xy{-1, 0};
        for (;; xy = canonical_next(xy)) {
            bool ok = true;
            for (const auto& q : e.pairs)
                if (combo(q, xy) == 0) {
                    ok = false;
                    break;
                }
            if (ok) break;
        }
        std::uint64_t m = last;
        for (const auto& q : e.pairs) m = std::max<std::uint64_t>(m, std::llabs(combo(q, xy)));
        last = next_prime_above(m);
        e.picks.push_back(xy);
        e.primes.push_back(last);
    }
    return e;
}

/// Re-checks every invariant from scratch; empty when all hold.
inline std::vector<std::string> verify(const PspExample& e) {
    std::vector<std::string> out;
    if (e.pairs.size() != e.steps || e.picks.size() != e.steps || e.primes.size() != e.steps)
        out.emplace_back("table lengths differ from steps");
    const std::size_t n = std::min({e.pairs.size(), e.picks.size(), e.primes.size()});
    for (std::size_t j = 0; j < n; ++j) {
        const std::string at = "step " + std::to_string(j + 1) + ": ";
        if (e.pairs[j].a == 0 && e.pairs[j].b == 0) out.push_back(at + "pair is zero");
        else if (canonical_index(e.pairs[j]) != j + 1) out.push_back(at + "pair out of canonical order");
        if (!is_prime(e.primes[j])) out.push_back(at + "p_j not prime");
        if (j > 0 && e.primes[j] <= e.primes[j - 1]) out.push_back(at + "primes not increasing");
        const auto p = static_cast<std::int64_t>(e.primes[j]);
        for (std::size_t k = 0; k <= j; ++k) {
            const std::int64_t c = combo(e.pairs[k], e.picks[j]);
            if (c % p == 0) out.push_back(at + "combination with pair " + std::to_string(k + 1) + " vanishes mod p_j");
        }
        if (combo(e.pairs[j], e.picks[j]) == 0 || std::llabs(combo(e.pairs[j], e.picks[j])) >= p)
            out.push_back(at + "|a_j x_j + b_j y_j| not in (0, p_j)");
    }
    return out;
}

/// #{j <= J : a x_j + b y_j = 0 mod p_j}
inline std::uint64_t combo_zero_count(const PspExample& e, std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) throw std::invalid_argument("combo_zero_count: (a,b) = (0,0)");
    std::uint64_t n = 0;
    for (std::size_t j = 0; j < e.picks.size(); ++j)
        if (combo({a, b}, e.picks[j]) % static_cast<std::int64_t>(e.primes[j]) == 0) ++n;
    return n;
}

/// Outcome of checking that no combination a x + b y lives on one side of a
/// split of the coordinates 1..J.
struct SplitEvidence {
    std::string split;
    std::uint64_t pairs_checked = 0;
    std::uint64_t late_zeros = 0;  ///< zeros at coordinates j >= index(a,b)
    bool holds() const noexcept { return late_zeros == 0; }
};

/// For each split j -> (j mod m == r) and each |a|,|b| <= c, both parts see a
/// nonzero combination at every coordinate from index(a,b) on.
inline std::vector<SplitEvidence> indecomposability_evidence(const PspExample& e, std::int64_t c,
                                                             const std::vector<std::uint64_t>& moduli = {2, 3}) {
    std::vector<SplitEvidence> out;
    for (auto m : moduli)
        for (std::uint64_t r = 0; r < m; ++r) {
            SplitEvidence s;
            s.split = "j mod " + std::to_string(m) + " == " + std::to_string(r);
            for (std::int64_t a = -c; a <= c; ++a)
                for (std::int64_t b = -c; b <= c; ++b) {
                    if (a == 0 && b == 0) continue;
                    ++s.pairs_checked;
                    const std::uint64_t k = canonical_index({a, b});
                    for (std::size_t j = k - 1; j < e.picks.size(); ++j) {
                        if ((j + 1) % m != r) continue;
                        if (combo({a, b}, e.picks[j]) % static_cast<std::int64_t>(e.primes[j]) == 0) ++s.late_zeros;
                    }
                }
            out.push_back(s);
        }
    return out;
}

inline nlohmann::json to_json(const PspExample& e) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t j = 0; j < e.steps; ++j)
        rows.push_back({{"j", j + 1},
                        {"a", e.pairs[j].a},
                        {"b", e.pairs[j].b},
                        {"x", e.picks[j].a},
                        {"y", e.picks[j].b},
                        {"p", e.primes[j]}});
    return {{"steps", e.steps}, {"rows", rows}};
}

inline std::string to_csv(const PspExample& e) {
    std::string out = "j,a,b,x,y,p\n";
    for (std::size_t j = 0; j < e.steps; ++j)
        out += std::to_string(j + 1) + "," + std::to_string(e.pairs[j].a) + "," + std::to_string(e.pairs[j].b) + "," +
               std::to_string(e.picks[j].a) + "," + std::to_string(e.picks[j].b) + "," +
               std::to_string(e.primes[j]) + "\n";
    return out;
}

/// Finitely many elements of prod_p T_p, read on the explicit primes only.
struct CoordinateData {
    std::map<std::uint64_t, FinitePGroup> torsion;
    std::vector<std::map<std::uint64_t, IntVector>> coords;
};

inline std::vector<std::string> validate(const CoordinateData& cd) {
    std::vector<std::string> out;
    for (const auto& [p, g] : cd.torsion) {
        if (g.p != p) out.push_back("T_" + std::to_string(p) + " is keyed under the wrong prime");
        for (auto& m : g.validate()) out.push_back("T_" + std::to_string(p) + ": " + m);
    }
    for (std::size_t i = 0; i < cd.coords.size(); ++i)
        for (const auto& [p, v] : cd.coords[i]) {
            auto it = cd.torsion.find(p);
            if (it == cd.torsion.end())
                out.push_back("coordinate " + std::to_string(i) + " uses unlisted prime " + std::to_string(p));
            else if (v.size() != it->second.rank())
                out.push_back("coordinate " + std::to_string(i) + " has wrong length at " + std::to_string(p));
        }
    return out;
}

struct ExtensionSplit {
    SubgroupGens finite;      ///< F_p
    SubgroupGens complement;  ///< S_p
};

/// Per prime: F_p is a least-order summand of T_p holding every coordinate
/// entry, S_p a complement of it.
inline std::map<std::uint64_t, ExtensionSplit> decompose_extension(const CoordinateData& cd,
                                                                   const EnumBound& bound = EnumBound::from_env()) {
    if (auto v = validate(cd); !v.empty()) throw std::invalid_argument("decompose_extension: " + v.front());
    std::map<std::uint64_t, ExtensionSplit> out;
    for (const auto& [p, g] : cd.torsion) {
        require_bound(g, bound);
        std::vector<IntVector> entries;
        for (const auto& c : cd.coords)
            if (auto it = c.find(p); it != c.end()) entries.push_back(it->second);
        const SubgroupLattice f = minimal_summand_containing(SubgroupLattice(g, entries));
        const auto s = is_summand(f.to_gens(), bound);
        if (!s) throw std::logic_error("decompose_extension: closure is not a summand");
        out[p] = ExtensionSplit{f.to_gens(), *s};
    }
    return out;
}

}  // namespace mixedab
