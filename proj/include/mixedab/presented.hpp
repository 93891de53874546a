#pragma once

// Generator/relation presentations built from valuated data, and their
// p-local truncations, where heights and Ulm invariants are read off a Smith
// normal form.

#include "mixedab/descriptor.hpp"
#include "mixedab/snf.hpp"
#include "mixedab/valuated.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mixedab {

/// A generator y with defining relation p^exp * y = sum coeffs[g] * g over
/// earlier generators. An inf record stands for the chain y = y_1, y_2, ...
/// with p * y_{i+1} = y_i continuing forever.
struct ChainGen {
    std::string id;
    std::uint64_t p = 2;
    unsigned exp = 1;
    std::map<std::string, BigInt> coeffs;
    bool inf = false;

    friend bool operator==(const ChainGen&, const ChainGen&) = default;
};

struct Presentation {
    std::vector<std::string> base;
    std::vector<ChainGen> chains;
    nlohmann::json manifest = nlohmann::json::object();

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.base == b.base && a.chains == b.chains;
    }
};

inline std::vector<std::string> validate(const Presentation& P) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& b : P.base)
        if (!seen.insert(b).second) out.push_back("duplicate generator id \"" + b + "\"");
    for (const auto& c : P.chains) {
        const std::string at = "chain \"" + c.id + "\"";
        if (!is_prime(c.p)) out.push_back(at + ": p = " + std::to_string(c.p) + " is not a prime");
        if (c.exp == 0) out.push_back(at + ": exponent must be >= 1");
        if (c.inf && c.exp != 1) out.push_back(at + ": inf chains use exponent 1");
        for (const auto& kv : c.coeffs)
            if (!seen.count(kv.first)) out.push_back(at + ": relation uses \"" + kv.first + "\" before it is defined");
        if (!seen.insert(c.id).second) out.push_back("duplicate generator id \"" + c.id + "\"");
    }
    return out;
}

class HypothesisError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string chain_id(const std::string& prefix, std::uint64_t p, std::uint64_t k, std::uint64_t j) {
    return prefix + "_" + std::to_string(p) + "_" + std::to_string(k) + "_" + std::to_string(j);
}

/// Chains Y_p^k for one coordinate, appended to `out`.
inline void emit_cyclic_chains(const ValueTrack& t, std::uint64_t p, const std::string& x, const std::string& prefix,
                               std::uint64_t jump_cut, std::vector<ChainGen>& out) {
    std::vector<std::uint64_t> ks{0};
    for (auto k : jump_positions(t, jump_cut)) ks.push_back(k);
    for (auto k : ks) {
        const HeightValue v = value_at(t, k);
        const BigInt pk = ipow(p, static_cast<unsigned>(k));
        if (v.is_inf()) {
            out.push_back({prefix + "_" + std::to_string(p) + "_" + std::to_string(k) + "_inf", p, 1, {{x, pk}}, true});
            continue;
        }
        const std::uint64_t n = v.value();
        std::string below = x;
        for (std::uint64_t j = 1; j <= n; ++j) {
            ChainGen g{chain_id(prefix, p, k, j), p, 1, {}, false};
            g.coeffs[below] = j == 1 ? pk : BigInt(1);
            below = g.id;
            out.push_back(std::move(g));
        }
    }
}

}  // namespace detail

/// Tight simply presented realization of <x>: for each listed prime and each
/// k in the jump set, a chain p y_1 = p^k x, p y_{j+1} = y_j of length
/// |p^k x|_p (infinite chains as inf records). Jumpy tails are expanded to
/// `jump_cut` jumps.
inline Presentation realize_cyclic(const ValuatedCyclic& x, std::uint64_t jump_cut = 8, const std::string& base = "x") {
    Presentation P;
    P.base = {base};
    nlohmann::json cut = nlohmann::json::array();
    for (const auto& [p, t] : x.tracks) {
        auto bad = validate_track(t);
        if (!bad.empty()) throw std::invalid_argument("realize_cyclic: p = " + std::to_string(p) + ": " + bad.front());
        if (!is_prime(p)) throw std::invalid_argument("realize_cyclic: " + std::to_string(p) + " is not a prime");
        if (t.tail.kind == TrackTail::Kind::Jumpy) cut.push_back(p);
        detail::emit_cyclic_chains(t, p, base, "y", jump_cut, P.chains);
    }
    P.manifest = {{"source", "realize_cyclic"}, {"jump_cut", jump_cut}, {"jumpy_primes_cut", cut}};
    return P;
}

/// Coordinatewise realize_cyclic; base generators x0, x1, ...
inline Presentation realize_coproduct(const FreeValuated& f, std::uint64_t jump_cut = 8) {
    Presentation P;
    nlohmann::json cut = nlohmann::json::array();
    for (std::size_t i = 0; i < f.coords.size(); ++i) {
        const std::string x = "x" + std::to_string(i);
        Presentation Q = realize_cyclic(f.coords[i], jump_cut, x);
        for (auto& c : Q.chains) c.id = "c" + std::to_string(i) + c.id;
        for (auto& c : Q.chains) {
            std::map<std::string, BigInt> renamed;
            for (auto& [g, a] : c.coeffs) renamed[g == x ? g : "c" + std::to_string(i) + g] = a;
            c.coeffs = std::move(renamed);
        }
        P.base.push_back(x);
        P.chains.insert(P.chains.end(), Q.chains.begin(), Q.chains.end());
        for (const auto& p : Q.manifest["jumpy_primes_cut"]) cut.push_back({{"coord", i}, {"p", p}});
    }
    P.manifest = {{"source", "realize_coproduct"}, {"jump_cut", jump_cut}, {"jumpy_primes_cut", cut}};
    return P;
}

/// Tight data at every listed prime, or the first prime where it is absent.
inline std::pair<TightData, std::optional<std::uint64_t>> tight_data(const FreeValuated& f) {
    TightData td;
    for (auto p : f.primes()) {
        auto e = tight_hypothesis(f, p);
        if (!e) return {td, p};
        td[p] = *e;
    }
    return {td, std::nullopt};
}

/// Realization with F 0-tight, from the generator families
///   p y = b over F(1)/(pF + F(2)),  p^m y = b over F(m)/F(m+1) for 2 <= m < n_p,
///   p^{n_p} y = b over X_p,  inf chains over F(inf).
/// A relation p^m y = p^k x_i is first reduced to p^{m-s} y = p^{k-s} x_i for
/// the largest s with |p^{k-s} x_i| = m - s; relations reduced to m = 0 and
/// repeats are dropped.
inline Presentation realize_free(const FreeValuated& f, const TightData& td) {
    if (auto bad = validate(f); !bad.empty()) throw std::invalid_argument("realize_free: " + bad.front());
    Presentation P;
    for (std::size_t i = 0; i < f.rank(); ++i) P.base.push_back("x" + std::to_string(i));
    nlohmann::json ns = nlohmann::json::object();
    for (auto p : f.primes()) {
        auto it = td.find(p);
        if (it == td.end()) throw HypothesisError("realize_free: tight hypothesis absent at p = " + std::to_string(p));
        const TightEntry& e = it->second;
        if (e.coords.size() != f.rank()) throw std::invalid_argument("realize_free: tight data rank mismatch");
        ns[std::to_string(p)] = e.n;
        const std::string pp = std::to_string(p);

        for (std::size_t i = 0; i < f.rank(); ++i) {
            if (!e.coords[i].inf) continue;
            ChainGen g{"y_" + pp + "_inf_" + std::to_string(i), p, 1, {}, true};
            g.coeffs[P.base[i]] = ipow(p, static_cast<unsigned>(e.coords[i].offset));
            P.chains.push_back(std::move(g));
        }

        // (m, coordinate, k): p^m y = p^k x_i, in the order X_p, layers m = n-1 .. 1
        std::vector<std::tuple<std::uint64_t, std::size_t, std::uint64_t>> rels;
        for (std::size_t i = 0; i < f.rank(); ++i)
            if (!e.coords[i].inf) rels.emplace_back(e.n, i, e.coords[i].offset);
        for (std::uint64_t m = e.n - 1; m >= 1; --m)
            for (std::size_t i = 0; i < f.rank(); ++i) {
                const ValueTrack t = f.coords[i].track(p);
                // values below n_p sit at positions below the offset
                for (std::uint64_t k = 0; k < e.coords[i].offset; ++k) {
                    if (value_at(t, k) != HeightValue(m)) continue;
                    // F(1)/(pF + F(2)) sees only elements outside pF
                    if (m == 1 && k > 0) continue;
                    rels.emplace_back(m, i, k);
                }
            }

        std::set<std::tuple<std::uint64_t, std::size_t, std::uint64_t>> emitted;
        for (auto [m, i, k] : rels) {
            const ValueTrack t = f.coords[i].track(p);
            std::uint64_t s = std::min(m, k);
            while (s > 0 && value_at(t, k - s) != HeightValue(m - s)) --s;
            const std::uint64_t m2 = m - s, k2 = k - s;
            if (m2 == 0 || !emitted.emplace(m2, i, k2).second) continue;
            ChainGen g{"y_" + pp + "_" + std::to_string(m2) + "_" + std::to_string(i) + "_" + std::to_string(k2), p,
                       static_cast<unsigned>(m2), {}, false};
            g.coeffs[P.base[i]] = ipow(p, static_cast<unsigned>(k2));
            P.chains.push_back(std::move(g));
        }
    }
    P.manifest = {{"source", "realize_free"}, {"n", ns}};
    return P;
}

/// Generated by t and s_p (p <= cutoff) subject to p^2 s_p = p t.
inline Presentation example_b(std::uint64_t cutoff) {
    Presentation P;
    P.base = {"t"};
    for (auto p : primes_up_to(cutoff)) P.chains.push_back({"s_" + std::to_string(p), p, 2, {{"t", BigInt(p)}}, false});
    P.manifest = {{"source", "example_b"}, {"cutoff", cutoff}};
    return P;
}

/// f_S = f_G - f_F at every prime.
inline TorsionDescriptor warfield_split(const TorsionDescriptor& fG, const FreeValuated& F) {
    std::set<std::uint64_t> primes = F.primes();
    for (const auto& kv : fG.listed) primes.insert(kv.first);
    GroupDescriptor out;
    out.torsion.tail = fG.tail;
    for (auto p : primes) {
        std::uint64_t bound = 1;
        for (const auto& c : F.coords) {
            const ValueTrack t = c.track(p);
            if (t.tail.kind == TrackTail::Kind::Jumpy)
                throw std::invalid_argument("warfield_split: jumpy track at p = " + std::to_string(p) +
                                            " has infinitely many Ulm invariants");
            const std::uint64_t last = infinite_from(t).value_or(t.last_jump_position() + 1);
            if (last > 0 && !value_at(t, last - 1).is_inf()) bound = std::max(bound, value_at(t, last - 1).value() + 1);
        }
        const auto fF = ulm_valuated(F, p, bound);
        const UlmVector g = fG.at(p);
        UlmVector s(std::max<std::size_t>(g.size(), fF.size()));
        for (std::size_t j = 0; j < s.size(); ++j) {
            const ExtNat gj = j < g.size() ? g[j] : ExtNat{};
            const ExtNat fj = j < fF.size() ? ExtNat(fF[j]) : ExtNat{};
            auto d = checked_sub(gj, fj);
            if (!d)
                throw std::invalid_argument("warfield_split: f_F(" + std::to_string(j) + ") = " + fj.str() +
                                            " exceeds f_G(" + std::to_string(j) + ") = " + gj.str() +
                                            " at p = " + std::to_string(p));
            s[j] = *d;
        }
        out.torsion.listed[p] = s;
    }
    return normalize(out).torsion;
}

/// Z_(p)^g / (row space of N), with coordinates from a Smith form.
class LocalQuotient {
 public:
    LocalQuotient() = default;
    LocalQuotient(const IntMatrix& rows, std::size_t gens, std::uint64_t p) : p_(p), gens_(gens) {
        IntMatrix N = rows.rows() == 0 ? IntMatrix(1, gens) : rows;
        form_ = snf(N);
        for (std::size_t i = 0; i < gens; ++i) {
            if (i < form_.rank) {
                exps_.push_back(valuation(form_.S(i, i), p, UINT_MAX));
            } else {
                exps_.push_back(UINT_MAX);  // free coordinate
            }
        }
    }

    /// p-height; nullopt when e is zero in the quotient.
    std::optional<std::uint64_t> height(const IntVector& e) const { return min_height(e, true); }

    /// Height of the image in the torsion-free quotient.
    std::optional<std::uint64_t> free_height(const IntVector& e) const { return min_height(e, false); }

    bool is_zero(const IntVector& e) const { return !height(e).has_value(); }

    /// Exponents a of the cyclic p-torsion factors Z_(p)/p^a, ascending.
    std::vector<unsigned> torsion_exponents() const {
        std::vector<unsigned> out;
        for (auto a : exps_)
            if (a != UINT_MAX && a > 0) out.push_back(a);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t free_rank() const {
        return static_cast<std::size_t>(std::count(exps_.begin(), exps_.end(), UINT_MAX));
    }

 private:
    std::optional<std::uint64_t> min_height(const IntVector& e, bool with_torsion) const {
        if (e.size() != gens_) throw std::invalid_argument("element length does not match the generator count");
        const IntVector c = form_.V.left_apply(e);
        std::optional<std::uint64_t> best;
        for (std::size_t i = 0; i < gens_; ++i) {
            const unsigned a = exps_[i];
            if (a == 0 || c[i] == 0) continue;
            if (a != UINT_MAX && !with_torsion) continue;
            const unsigned v = valuation(c[i], p_, UINT_MAX);
            if (a != UINT_MAX && v >= a) continue;
            if (!best || v < *best) best = v;
        }
        return best;
    }

    std::uint64_t p_ = 2;
    std::size_t gens_ = 0;
    SmithForm form_;
    std::vector<unsigned> exps_;
};

struct BoundedHeight {
    enum class Kind { Exact, GeqB, Inf };
    Kind kind = Kind::Exact;
    std::uint64_t h = 0;

    static BoundedHeight exact(std::uint64_t h) { return {Kind::Exact, h}; }
    static BoundedHeight geq_b() { return {Kind::GeqB, 0}; }
    static BoundedHeight inf() { return {Kind::Inf, 0}; }

    std::string str() const {
        switch (kind) {
            case Kind::Exact: return std::to_string(h);
            case Kind::GeqB: return ">=B";
            case Kind::Inf: return "inf";
        }
        return "?";
    }
    friend bool operator==(const BoundedHeight&, const BoundedHeight&) = default;
};

/// A presentation localized at p: inf chains at p cut after B + 2 steps,
/// chains at other primes kept with their unit relations.
struct TruncatedModel {
    std::uint64_t p = 2;
    std::uint64_t depth = 4;
    std::vector<std::string> gens;
    std::map<std::string, std::size_t> index;
    IntMatrix relations;
    std::vector<std::size_t> inf_marked;
    LocalQuotient quotient;
    LocalQuotient quotient_mod_inf;

    std::size_t size() const { return gens.size(); }

    /// Coefficient vector of a word in the generators.
    IntVector element(const std::map<std::string, BigInt>& word) const {
        IntVector e(gens.size());
        for (const auto& [g, a] : word) {
            auto it = index.find(g);
            if (it == index.end()) throw std::invalid_argument("unknown generator \"" + g + "\"");
            e[it->second] += a;
        }
        return e;
    }
};

inline TruncatedModel truncate(const Presentation& P, std::uint64_t p, std::uint64_t B) {
    if (B < 4) throw std::invalid_argument("truncate: depth must be >= 4");
    if (auto bad = validate(P); !bad.empty()) throw std::invalid_argument("truncate: " + bad.front());
    TruncatedModel M;
    M.p = p;
    M.depth = B;
    auto add_gen = [&M](const std::string& id) {
        M.index[id] = M.gens.size();
        M.gens.push_back(id);
    };
    for (const auto& b : P.base) add_gen(b);
    struct Rel {
        std::size_t gen;
        BigInt lead;
        std::map<std::string, BigInt> rhs;
    };
    std::vector<Rel> rels;
    for (const auto& c : P.chains) {
        add_gen(c.id);
        rels.push_back({M.gens.size() - 1, ipow(c.p, c.exp), c.coeffs});
        if (c.inf && c.p == p) {
            M.inf_marked.push_back(M.gens.size() - 1);
            std::string below = c.id;
            for (std::uint64_t i = 2; i <= B + 2; ++i) {
                const std::string id = c.id + "#" + std::to_string(i);
                add_gen(id);
                M.inf_marked.push_back(M.gens.size() - 1);
                rels.push_back({M.gens.size() - 1, BigInt(p), {{below, BigInt(1)}}});
                below = id;
            }
        }
    }
    M.relations = IntMatrix(rels.size(), M.gens.size());
    for (std::size_t r = 0; r < rels.size(); ++r) {
        M.relations(r, rels[r].gen) += rels[r].lead;
        for (const auto& [g, a] : rels[r].rhs) M.relations(r, M.index.at(g)) -= a;
    }
    M.quotient = LocalQuotient(M.relations, M.gens.size(), p);
    IntMatrix with_inf(M.inf_marked.size(), M.gens.size());
    for (std::size_t i = 0; i < M.inf_marked.size(); ++i) with_inf(i, M.inf_marked[i]) = 1;
    M.quotient_mod_inf = LocalQuotient(stack(M.relations, with_inf), M.gens.size(), p);
    return M;
}

/// Exact below B; INF only for elements of the inf-marked span.
inline BoundedHeight height(const TruncatedModel& M, const IntVector& e) {
    if (e.size() != M.size()) throw std::invalid_argument("height: element length does not match the model");
    if (M.quotient_mod_inf.is_zero(e)) return BoundedHeight::inf();
    const auto h = M.quotient.height(e);
    if (h && *h < M.depth) return BoundedHeight::exact(*h);
    return BoundedHeight::geq_b();
}

inline BoundedHeight height(const TruncatedModel& M, const std::map<std::string, BigInt>& word) {
    return height(M, M.element(word));
}

/// f(alpha) for alpha < bound: the number of torsion factors Z_(p)/p^{alpha+1}.
inline std::vector<std::uint64_t> ulm_model(const TruncatedModel& M, std::uint64_t bound) {
    if (bound + 2 > M.depth)
        throw std::invalid_argument("ulm_model: bound " + std::to_string(bound) + " exceeds depth - 2 = " +
                                    std::to_string(M.depth - 2));
    std::vector<std::uint64_t> f(bound, 0);
    for (auto a : M.quotient.torsion_exponents())
        if (a - 1 < bound) ++f[a - 1];
    return f;
}

/// Invariant factors p^a of the p-torsion of the model.
inline std::vector<BigInt> torsion_factors(const TruncatedModel& M) {
    std::vector<BigInt> out;
    for (auto a : M.quotient.torsion_exponents()) out.push_back(ipow(M.p, a));
    return out;
}

struct RealizationCheck {
    bool valuation_match = false;
    bool tight = false;
    bool zero_tight = false;
    std::vector<std::string> mismatches;
};

inline nlohmann::json to_json(const RealizationCheck& c) {
    return {{"valuation_match", c.valuation_match},
            {"tight", c.tight},
            {"zero_tight", c.zero_tight},
            {"mismatches", c.mismatches}};
}

namespace detail {

inline bool height_agrees(HeightValue expected, const BoundedHeight& got, std::uint64_t B) {
    if (expected.is_inf()) return got.kind == BoundedHeight::Kind::Inf;
    if (expected.value() >= B) return got.kind == BoundedHeight::Kind::GeqB;
    return got == BoundedHeight::exact(expected.value());
}

}  // namespace detail

/// Compares model heights of p^k x_i and p^k (x_i + x_j), k <= B - 2, with
/// the valuation (base generator i carries coordinate i), and the model Ulm
/// function with f_F below B - 2.
inline RealizationCheck check_realization(const FreeValuated& F, const Presentation& P, std::uint64_t p,
                                          std::uint64_t B) {
    if (P.base.size() < F.rank()) throw std::invalid_argument("check_realization: presentation has too few base generators");
    const TruncatedModel M = truncate(P, p, B);
    RealizationCheck r;
    r.valuation_match = true;
    const std::uint64_t top = B - 2;
    auto probe = [&](const std::vector<std::size_t>& coords) {
        for (std::uint64_t k = 0; k <= top; ++k) {
            std::map<std::string, BigInt> word;
            HeightValue expected = HeightValue::inf();
            for (auto i : coords) {
                word[P.base[i]] += ipow(p, static_cast<unsigned>(k));
                expected = std::min(expected, value_at(F.coords[i].track(p), k));
            }
            const BoundedHeight got = height(M, word);
            if (!detail::height_agrees(expected, got, B)) {
                r.valuation_match = false;
                std::string name;
                for (auto i : coords) name += (name.empty() ? "" : "+") + P.base[i];
                r.mismatches.push_back("|" + std::to_string(p) + "^" + std::to_string(k) + " (" + name + ")| = " +
                                       got.str() + ", expected " + expected.str());
            }
        }
    };
    for (std::size_t i = 0; i < F.rank(); ++i) probe({i});
    for (std::size_t i = 0; i < F.rank(); ++i)
        for (std::size_t j = i + 1; j < F.rank(); ++j) probe({i, j});
    const auto model = ulm_model(M, top);
    const auto val = ulm_valuated(F, p, top);
    r.tight = model == val;
    r.zero_tight = top == 0 || model[0] == val[0];
    return r;
}

inline RealizationCheck check_realization(const ValuatedCyclic& X, const Presentation& P, std::uint64_t p,
                                          std::uint64_t B) {
    return check_realization(FreeValuated{{X}}, P, p, B);
}

// JSON

inline nlohmann::json to_json_value(const BigInt& a) {
    if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(a);
    return a.str();
}

inline BigInt big_int_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return BigInt(s);
    }
    throw FormatError(path + ": expected an integer");
}

inline nlohmann::json to_json(const Presentation& P) {
    nlohmann::json chains = nlohmann::json::array();
    for (const auto& c : P.chains) {
        nlohmann::json coeffs = nlohmann::json::object();
        for (const auto& [g, a] : c.coeffs) coeffs[g] = to_json_value(a);
        nlohmann::json rec = {{"id", c.id}, {"p", c.p}, {"rel", {{"coeffs", coeffs}}}, {"inf", c.inf}};
        if (c.exp != 1) rec["exp"] = c.exp;
        chains.push_back(rec);
    }
    return {{"base", P.base}, {"chains", chains}, {"manifest", P.manifest}};
}

inline Presentation presentation_from_json(const nlohmann::json& j) {
    Presentation P;
    const auto& base = json_field(j, "base", "presentation");
    if (!base.is_array()) throw FormatError("base: expected an array");
    for (std::size_t i = 0; i < base.size(); ++i) P.base.push_back(json_string(base[i], "base[" + std::to_string(i) + "]"));
    const auto& chains = json_field(j, "chains", "presentation");
    if (!chains.is_array()) throw FormatError("chains: expected an array");
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const std::string path = "chains[" + std::to_string(i) + "]";
        const auto& c = chains[i];
        ChainGen g;
        g.id = json_string(json_field(c, "id", path), path + ".id");
        const long long p = json_int(json_field(c, "p", path), path + ".p");
        if (p < 2) throw FormatError(path + ".p: expected a prime");
        g.p = static_cast<std::uint64_t>(p);
        if (c.contains("exp")) {
            const long long e = json_int(c.at("exp"), path + ".exp");
            if (e < 1) throw FormatError(path + ".exp: expected a positive integer");
            g.exp = static_cast<unsigned>(e);
        }
        const auto& rel = json_field(c, "rel", path);
        const auto& coeffs = json_field(rel, "coeffs", path + ".rel");
        if (!coeffs.is_object()) throw FormatError(path + ".rel.coeffs: expected an object");
        for (const auto& [gen, a] : coeffs.items()) g.coeffs[gen] = big_int_from_json(a, path + ".rel.coeffs." + gen);
        if (c.contains("inf")) {
            if (!c.at("inf").is_boolean()) throw FormatError(path + ".inf: expected a boolean");
            g.inf = c.at("inf").get<bool>();
        }
        P.chains.push_back(std::move(g));
    }
    if (j.contains("manifest")) P.manifest = j.at("manifest");
    return P;
}

}  // namespace mixedab
