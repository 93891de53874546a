#pragma once

// Decision procedures on descriptors. Every YES or NO names the result it
// rests on and carries witness data; UNDECIDED is reserved for B+E groups
// outside the classes where the converse of "generalized Bassian implies
// B+E" is known.

#include "mixedab/descriptor.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace mixedab {

enum class Verdict { Yes, No, Undecided };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Undecided: return "undecided";
    }
    return "undecided";
}

/// Route tags and the results they name.
inline const std::map<std::string, std::string>& route_table() {
    static const std::map<std::string, std::string> t{
        {"thm:main-bassian", "Bassian iff finite torsion-free rank and every T_p finite"},
        {"prop:step", "B+E iff finite torsion-free rank and every pT_p finite"},
        {"thm:finite", "generalized Bassian groups have finite torsion-free rank"},
        {"cor:oneway", "every generalized Bassian group is B+E"},
        {"cor:warfield", "a Warfield group is generalized Bassian iff it is B+E"},
        {"cor:psp", "a PSP-group is generalized Bassian iff it is B+E"},
        {"cor:divisible", "if G/T is divisible, G is generalized Bassian iff it is B+E"},
        {"thm:nice2", "with a free nice quasi-essential subgroup, generalized Bassian iff B+E"},
        {"cor:first", "A + S with S torsion and A without infinite elementary summands is generalized Bassian"},
        {"cor:embeds", "B+E iff it embeds in a generalized Bassian group"},
        {"prop:hopfian", "a B+E group is Bassian iff it is Hopfian"},
        {"conjecture:1.3", "open: B+E iff generalized Bassian"},
    };
    return t;
}

struct ClassificationReport {
    Verdict verdict = Verdict::Undecided;
    std::string route;
    nlohmann::json witness;
};

inline nlohmann::json to_json(const ClassificationReport& r) {
    return {{"verdict", to_string(r.verdict)}, {"route", r.route}, {"witness", r.witness}};
}

class PreconditionError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool all_finite(const UlmVector& v) {
    for (auto e : v)
        if (!e.is_finite()) return false;
    return true;
}

inline bool finite_above_zero(const UlmVector& v) {
    for (std::size_t j = 1; j < v.size(); ++j)
        if (!v[j].is_finite()) return false;
    return true;
}

}  // namespace detail

inline ClassificationReport is_bassian(const GroupDescriptor& d) {
    const std::string route = "thm:main-bassian";
    if (!d.rank.is_finite()) return {Verdict::No, route, {{"criterion", "rank"}, {"rank", "aleph0"}}};
    if (auto p = first_failing_prime(d.torsion, detail::all_finite))
        return {Verdict::No, route, {{"criterion", "T_p infinite"}, {"prime", *p}}};
    return {Verdict::Yes, route, {{"rank", d.rank.value()}, {"criterion", "finite rank, every T_p finite"}}};
}

inline ClassificationReport is_b_plus_e(const GroupDescriptor& d) {
    const std::string route = "prop:step";
    if (!d.rank.is_finite()) return {Verdict::No, route, {{"criterion", "rank"}, {"rank", "aleph0"}}};
    if (auto p = first_failing_prime(d.torsion, detail::finite_above_zero))
        return {Verdict::No, route, {{"criterion", "pT_p infinite"}, {"prime", *p}}};
    return {Verdict::Yes, route, {{"rank", d.rank.value()}, {"criterion", "finite rank, every pT_p finite"}}};
}

struct BPlusESplit {
    GroupDescriptor bassian;
    GroupDescriptor elementary;
};

/// Finite f(0) stays in the Bassian part; an infinite f(0) moves wholly to
/// the elementary part.
inline BPlusESplit b_plus_e_split(const GroupDescriptor& d) {
    if (is_b_plus_e(d).verdict != Verdict::Yes) throw PreconditionError("b_plus_e_split: descriptor is not B+E");
    BPlusESplit s;
    s.bassian.rank = d.rank;
    s.bassian.classes = d.classes;
    s.elementary.rank = 0;
    s.elementary.classes = all_proper_classes();
    auto cut = [](const UlmVector& v) {
        std::pair<UlmVector, UlmVector> out;
        if (v.empty()) return out;
        out.first = v;
        if (!v[0].is_finite()) {
            out.first[0] = 0;
            out.second = {v[0]};
        }
        return out;
    };
    for (const auto& [p, v] : d.torsion.listed) {
        auto [b, e] = cut(v);
        s.bassian.torsion.listed[p] = b;
        s.elementary.torsion.listed[p] = e;
    }
    const Tail& t = d.torsion.tail;
    if (t.kind == Tail::Kind::Elementary && !t.rank.is_finite()) {
        s.bassian.torsion.tail = Tail::zero();
        s.elementary.torsion.tail = t;
    } else {
        s.bassian.torsion.tail = t;
        s.elementary.torsion.tail = Tail::zero();
    }
    s.bassian = normalize(s.bassian);
    s.elementary = normalize(s.elementary);
    return s;
}

inline nlohmann::json to_json(const BPlusESplit& s) {
    return {{"bassian", to_json(s.bassian)}, {"elementary", to_json(s.elementary)}};
}

inline ClassificationReport generalized_bassian(const GroupDescriptor& d) {
    const ClassificationReport bassian = is_bassian(d);
    if (bassian.verdict == Verdict::Yes) return {Verdict::Yes, bassian.route, bassian.witness};
    const ClassificationReport be = is_b_plus_e(d);
    if (be.verdict == Verdict::No) {
        const bool rank_fails = !d.rank.is_finite();
        return {Verdict::No, rank_fails ? "thm:finite" : "cor:oneway", {{"b_plus_e", to_json(be)}}};
    }
    const nlohmann::json split = to_json(b_plus_e_split(d));
    // torsion groups with bounded p-components are direct sums of cyclics, hence Warfield
    if (d.rank.is_zero())
        return {Verdict::Yes, "cor:warfield", {{"class", "torsion"}, {"split", split}}};
    static const std::pair<StructureClass, const char*> routes[] = {
        {StructureClass::Warfield, "cor:warfield"},     {StructureClass::BalancedProjective, "cor:warfield"},
        {StructureClass::Psp, "cor:psp"},               {StructureClass::TfqDivisible, "cor:divisible"},
        {StructureClass::NiceFreeQe, "thm:nice2"},      {StructureClass::Splitting, "cor:first"},
    };
    for (const auto& [cls, route] : routes)
        if (d.classes.count(cls)) return {Verdict::Yes, route, {{"class", to_string(cls)}, {"split", split}}};
    return {Verdict::Undecided, "conjecture:1.3", {{"b_plus_e", to_json(be)}, {"split", split}}};
}

/// True iff every local quotient shape is free plus divisible.
inline bool nice_check(const std::map<std::uint64_t, LocalShape>& shapes) {
    for (const auto& kv : shapes)
        if (!trimmed(kv.second.bounded).empty()) return false;
    return true;
}

inline GroupDescriptor embed_into_gb(const GroupDescriptor& d) {
    if (is_b_plus_e(d).verdict != Verdict::Yes) throw PreconditionError("embed_into_gb: descriptor is not B+E");
    if (d.classes.count(StructureClass::TfqDivisible)) return d;
    GroupDescriptor out = d;
    out.classes = {StructureClass::TfqDivisible};
    return out;
}

inline ClassificationReport hopfian_equiv(const GroupDescriptor& d) {
    if (is_b_plus_e(d).verdict != Verdict::Yes) throw PreconditionError("hopfian_equiv: descriptor is not B+E");
    const ClassificationReport b = is_bassian(d);
    return {b.verdict, "prop:hopfian", {{"bassian", to_json(b)}}};
}

}  // namespace mixedab
