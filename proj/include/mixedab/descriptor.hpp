#pragma once

// Isomorphism-invariant descriptions of mixed groups with bounded p-torsion:
// torsion-free rank, a Ulm vector per listed prime, a tail rule for all other
// primes, and asserted structure classes.

#include "mixedab/integer.hpp"
#include "mixedab/json_io.hpp"

#include <algorithm>
#include <compare>
#include <iterator>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedab {

/// A natural number or aleph_0.
class ExtNat {
 public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t n) : n_(n) {}  // NOLINT(google-explicit-constructor)
    static constexpr ExtNat aleph0() {
        ExtNat e;
        e.inf_ = true;
        return e;
    }

    constexpr bool is_finite() const noexcept { return !inf_; }
    constexpr bool is_zero() const noexcept { return !inf_ && n_ == 0; }
    std::uint64_t value() const {
        if (inf_) throw std::logic_error("ExtNat: aleph0 has no finite value");
        return n_;
    }

    friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
        if (a.inf_ || b.inf_) return aleph0();
        return ExtNat(a.n_ + b.n_);
    }

    friend constexpr bool operator==(ExtNat a, ExtNat b) { return a.inf_ == b.inf_ && (a.inf_ || a.n_ == b.n_); }
    friend constexpr std::strong_ordering operator<=>(ExtNat a, ExtNat b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.n_ <=> b.n_;
    }

    std::string str() const { return inf_ ? "aleph0" : std::to_string(n_); }
    friend std::ostream& operator<<(std::ostream& os, ExtNat e) { return os << e.str(); }

 private:
    bool inf_ = false;
    std::uint64_t n_ = 0;
};

/// a - b for b <= a; aleph0 - finite = aleph0. nullopt when undefined.
inline std::optional<ExtNat> checked_sub(ExtNat a, ExtNat b) {
    if (!a.is_finite()) return b.is_finite() ? std::optional<ExtNat>(ExtNat::aleph0()) : std::nullopt;
    if (!b.is_finite() || b.value() > a.value()) return std::nullopt;
    return ExtNat(a.value() - b.value());
}

/// f(0), ..., f(L-1): T_p = sum over j < L of Z_{p^{j+1}}^{f(j)}.
using UlmVector = std::vector<ExtNat>;

inline UlmVector trimmed(UlmVector v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
}

inline UlmVector add(const UlmVector& a, const UlmVector& b) {
    UlmVector out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (i < a.size() ? a[i] : ExtNat{}) + (i < b.size() ? b[i] : ExtNat{});
    return trimmed(out);
}

/// Entrywise a <= b.
inline bool dominated_by(const UlmVector& a, const UlmVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > (i < b.size() ? b[i] : ExtNat{})) return false;
    return true;
}

struct Tail {
    enum class Kind { Zero, Elementary };
    Kind kind = Kind::Zero;
    ExtNat rank;  ///< meaningful for Elementary only

    static Tail zero() { return {}; }
    static Tail elementary(ExtNat r) { return {Kind::Elementary, r}; }

    /// The Ulm vector this tail assigns to each unlisted prime.
    UlmVector vector() const {
        if (kind == Kind::Zero || rank.is_zero()) return {};
        return {rank};
    }

    friend bool operator==(const Tail& a, const Tail& b) { return a.vector() == b.vector(); }
};

struct TorsionDescriptor {
    std::map<std::uint64_t, UlmVector> listed;
    Tail tail;

    /// Ulm vector of T_p.
    UlmVector at(std::uint64_t p) const {
        auto it = listed.find(p);
        return it == listed.end() ? tail.vector() : it->second;
    }

    friend bool operator==(const TorsionDescriptor& a, const TorsionDescriptor& b) = default;
};

enum class StructureClass { Warfield, BalancedProjective, Psp, TfqDivisible, NiceFreeQe, Splitting, Unknown };

inline const std::vector<StructureClass>& all_structure_classes() {
    static const std::vector<StructureClass> all{StructureClass::Warfield,     StructureClass::BalancedProjective,
                                                 StructureClass::Psp,          StructureClass::TfqDivisible,
                                                 StructureClass::NiceFreeQe,   StructureClass::Splitting,
                                                 StructureClass::Unknown};
    return all;
}

inline std::string to_string(StructureClass c) {
    switch (c) {
        case StructureClass::Warfield: return "warfield";
        case StructureClass::BalancedProjective: return "balanced_projective";
        case StructureClass::Psp: return "psp";
        case StructureClass::TfqDivisible: return "tfq_divisible";
        case StructureClass::NiceFreeQe: return "nice_free_qe";
        case StructureClass::Splitting: return "splitting";
        case StructureClass::Unknown: return "unknown";
    }
    return "unknown";
}

inline std::optional<StructureClass> structure_class_from_string(const std::string& s) {
    for (auto c : all_structure_classes())
        if (to_string(c) == s) return c;
    return std::nullopt;
}

using ClassSet = std::set<StructureClass>;

/// Every class except UNKNOWN; the zero group and torsion groups with bounded
/// p-torsion belong to all of them.
inline ClassSet all_proper_classes() {
    ClassSet s;
    for (auto c : all_structure_classes())
        if (c != StructureClass::Unknown) s.insert(c);
    return s;
}

struct GroupDescriptor {
    ExtNat rank;
    TorsionDescriptor torsion;
    ClassSet classes{StructureClass::Unknown};

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) = default;
};

struct LocalShape {
    UlmVector bounded;
    ExtNat divisible_rank;
    ExtNat free_rank;
};

inline GroupDescriptor zero_descriptor() { return GroupDescriptor{0, {}, all_proper_classes()}; }

inline std::vector<std::string> validate(const GroupDescriptor& d) {
    std::vector<std::string> out;
    for (const auto& [p, v] : d.torsion.listed) {
        if (!is_prime(p)) out.push_back("listed key " + std::to_string(p) + " is not a prime");
        if (!v.empty() && v.back().is_zero())
            out.push_back("Ulm vector at p = " + std::to_string(p) + " has trailing zeros (not normalized)");
    }
    if (d.torsion.tail.kind == Tail::Kind::Elementary && d.torsion.tail.rank.is_zero())
        out.emplace_back("elementary tail of rank 0 must be written as the zero tail");
    if (d.classes.empty()) out.emplace_back("class set is empty (use unknown)");
    if (d.classes.count(StructureClass::Unknown) && d.classes.size() > 1)
        out.emplace_back("unknown cannot be combined with other classes");
    if (d.classes.count(StructureClass::BalancedProjective) && !d.classes.count(StructureClass::Warfield))
        out.emplace_back("balanced_projective requires warfield");
    return out;
}

/// Trims Ulm vectors, drops listed primes that agree with the tail, and
/// writes a rank-0 elementary tail as the zero tail.
inline GroupDescriptor normalize(GroupDescriptor d) {
    if (d.torsion.tail.kind == Tail::Kind::Elementary && d.torsion.tail.rank.is_zero()) d.torsion.tail = Tail::zero();
    std::map<std::uint64_t, UlmVector> listed;
    const UlmVector tv = d.torsion.tail.vector();
    for (auto& [p, v] : d.torsion.listed) {
        UlmVector t = trimmed(v);
        if (t != tv) listed.emplace(p, std::move(t));
    }
    d.torsion.listed = std::move(listed);
    if (d.classes.empty()) d.classes = {StructureClass::Unknown};
    return d;
}

inline GroupDescriptor direct_sum(const GroupDescriptor& a, const GroupDescriptor& b) {
    GroupDescriptor out;
    out.rank = a.rank + b.rank;
    std::set<std::uint64_t> primes;
    for (const auto& kv : a.torsion.listed) primes.insert(kv.first);
    for (const auto& kv : b.torsion.listed) primes.insert(kv.first);
    for (auto p : primes) out.torsion.listed[p] = add(a.torsion.at(p), b.torsion.at(p));
    const Tail& ta = a.torsion.tail;
    const Tail& tb = b.torsion.tail;
    if (ta.kind == Tail::Kind::Zero) {
        out.torsion.tail = tb;
    } else if (tb.kind == Tail::Kind::Zero) {
        out.torsion.tail = ta;
    } else {
        out.torsion.tail = Tail::elementary(ta.rank + tb.rank);
    }
    out.classes.clear();
    std::set_intersection(a.classes.begin(), a.classes.end(), b.classes.begin(), b.classes.end(),
                          std::inserter(out.classes, out.classes.begin()));
    out.classes.erase(StructureClass::Unknown);
    if (out.classes.empty()) out.classes = {StructureClass::Unknown};
    return normalize(out);
}

struct TorsionPredicates {
    bool bounded_p_torsion = true;
    bool all_Tp_finite = true;
    bool all_pTp_finite = true;
};

inline TorsionPredicates torsion_predicates(const GroupDescriptor& d) {
    TorsionPredicates t;
    auto scan = [&t](const UlmVector& v) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_finite()) continue;
            t.all_Tp_finite = false;
            if (j >= 1) t.all_pTp_finite = false;
        }
    };
    for (const auto& kv : d.torsion.listed) scan(kv.second);
    // explicit primes are finitely many, so the tail always governs some prime
    scan(d.torsion.tail.vector());
    return t;
}

/// First prime at which `pred` fails on the Ulm vector, checking listed
/// primes in order and then the least unlisted prime for the tail.
template <class Pred>
std::optional<std::uint64_t> first_failing_prime(const TorsionDescriptor& t, Pred pred) {
    for (const auto& [p, v] : t.listed)
        if (!pred(v)) return p;
    if (!pred(t.tail.vector())) {
        std::uint64_t q = 2;
        while (t.listed.count(q)) q = next_prime_above(q);
        return q;
    }
    return std::nullopt;
}

/// `sub` is entrywise dominated by `d` at every prime and in rank.
inline bool is_sub_descriptor(const GroupDescriptor& sub, const GroupDescriptor& d) {
    if (sub.rank > d.rank) return false;
    std::set<std::uint64_t> primes;
    for (const auto& kv : sub.torsion.listed) primes.insert(kv.first);
    for (const auto& kv : d.torsion.listed) primes.insert(kv.first);
    for (auto p : primes)
        if (!dominated_by(sub.torsion.at(p), d.torsion.at(p))) return false;
    return dominated_by(sub.torsion.tail.vector(), d.torsion.tail.vector());
}

// JSON

inline nlohmann::json to_json_value(ExtNat e) {
    if (e.is_finite()) return e.value();
    return "aleph0";
}

inline ExtNat ext_nat_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "aleph0") return ExtNat::aleph0();
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0))
        return ExtNat(j.get<std::uint64_t>());
    throw FormatError(path + ": expected a nonnegative integer or \"aleph0\"");
}

inline nlohmann::json to_json(const GroupDescriptor& d) {
    nlohmann::json listed = nlohmann::json::object();
    for (const auto& [p, v] : d.torsion.listed) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto e : v) arr.push_back(to_json_value(e));
        listed[std::to_string(p)] = arr;
    }
    nlohmann::json tail;
    if (d.torsion.tail.kind == Tail::Kind::Zero) {
        tail = {{"kind", "zero"}};
    } else {
        tail = {{"kind", "elementary"}, {"rank", to_json_value(d.torsion.tail.rank)}};
    }
    nlohmann::json classes = nlohmann::json::array();
    for (auto c : d.classes) classes.push_back(to_string(c));
    return {{"rank", to_json_value(d.rank)}, {"torsion", {{"explicit", listed}, {"tail", tail}}}, {"classes", classes}};
}

/// Parses the descriptor schema. Structural errors throw FormatError; the
/// result is not validated.
inline GroupDescriptor descriptor_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("descriptor: expected an object");
    GroupDescriptor d;
    d.rank = ext_nat_from_json(json_field(j, "rank", "descriptor"), "rank");
    const auto& t = json_field(j, "torsion", "descriptor");
    if (!t.is_object()) throw FormatError("torsion: expected an object");
    if (t.contains("explicit")) {
        const auto& e = t.at("explicit");
        if (!e.is_object()) throw FormatError("torsion.explicit: expected an object");
        for (const auto& [key, arr] : e.items()) {
            const std::string path = "torsion.explicit." + key;
            std::uint64_t p = 0;
            try {
                std::size_t used = 0;
                p = std::stoull(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw FormatError(path + ": key is not a prime number");
            }
            if (!arr.is_array()) throw FormatError(path + ": expected an array");
            UlmVector v;
            for (std::size_t i = 0; i < arr.size(); ++i)
                v.push_back(ext_nat_from_json(arr[i], path + "[" + std::to_string(i) + "]"));
            d.torsion.listed[p] = v;
        }
    }
    if (t.contains("tail")) {
        const auto& tl = t.at("tail");
        const std::string kind = json_string(json_field(tl, "kind", "torsion.tail"), "torsion.tail.kind");
        if (kind == "zero") {
            d.torsion.tail = Tail::zero();
        } else if (kind == "elementary") {
            d.torsion.tail = Tail::elementary(ext_nat_from_json(json_field(tl, "rank", "torsion.tail"), "torsion.tail.rank"));
        } else {
            throw FormatError("torsion.tail.kind: expected \"zero\" or \"elementary\"");
        }
    }
    d.classes.clear();
    if (j.contains("classes")) {
        const auto& cs = j.at("classes");
        if (!cs.is_array()) throw FormatError("classes: expected an array");
        for (const auto& c : cs) {
            auto sc = structure_class_from_string(json_string(c, "classes[]"));
            if (!sc) throw FormatError("classes: unknown flag \"" + c.get<std::string>() + "\"");
            d.classes.insert(*sc);
        }
    }
    if (d.classes.empty()) d.classes = {StructureClass::Unknown};
    return d;
}

}  // namespace mixedab
