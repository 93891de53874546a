#pragma once

// Seeded random generators for descriptors and valuated data.

#include "mixedab/descriptor.hpp"
#include "mixedab/products_psp.hpp"
#include "mixedab/valuated.hpp"

#include <random>

namespace gen {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline mixedab::ExtNat ext_nat(Rng& rng, double inf_prob, int max_finite) {
    if (coin(rng, inf_prob)) return mixedab::ExtNat::aleph0();
    return static_cast<std::uint64_t>(uniform(rng, 0, max_finite));
}

inline mixedab::GroupDescriptor descriptor(Rng& rng) {
    using namespace mixedab;
    GroupDescriptor d;
    d.rank = ext_nat(rng, 0.15, 3);
    for (std::uint64_t p : {2, 3, 5, 7}) {
        if (!coin(rng, 0.5)) continue;
        UlmVector v(static_cast<std::size_t>(uniform(rng, 0, 4)));
        for (auto& e : v) e = ext_nat(rng, 0.15, 3);
        d.torsion.listed[p] = v;
    }
    if (coin(rng, 0.5)) d.torsion.tail = Tail::elementary(ext_nat(rng, 0.3, 3));
    d.classes.clear();
    for (auto c : all_proper_classes())
        if (coin(rng, 0.15)) d.classes.insert(c);
    if (d.classes.count(StructureClass::BalancedProjective)) d.classes.insert(StructureClass::Warfield);
    return normalize(d);
}

/// Entrywise smaller data: rank, every Ulm entry and the tail rank.
inline mixedab::GroupDescriptor sub_descriptor(Rng& rng, const mixedab::GroupDescriptor& d) {
    using namespace mixedab;
    auto below = [&rng](ExtNat e) -> ExtNat {
        if (!e.is_finite()) return ext_nat(rng, 0.5, 5);
        return static_cast<std::uint64_t>(uniform(rng, 0, static_cast<int>(e.value())));
    };
    GroupDescriptor s;
    s.rank = below(d.rank);
    for (const auto& [p, v] : d.torsion.listed) {
        UlmVector w = v;
        for (auto& e : w) e = below(e);
        s.torsion.listed[p] = w;
    }
    if (d.torsion.tail.kind == Tail::Kind::Elementary) s.torsion.tail = Tail::elementary(below(d.torsion.tail.rank));
    s.classes = {StructureClass::Unknown};
    return normalize(s);
}

struct TrackShape {
    int max_value = 8;      ///< largest finite value
    int max_jumps = 3;
    double inf_prob = 0.2;  ///< chance of an infinite ending
    double jumpy_prob = 0.0;
};

/// A valid track with finite values <= shape.max_value.
inline mixedab::ValueTrack track(Rng& rng, const TrackShape& shape) {
    using namespace mixedab;
    ValueTrack t;
    if (coin(rng, shape.inf_prob / 4)) return ValueTrack::infinite();
    std::uint64_t val = static_cast<std::uint64_t>(uniform(rng, 0, std::min(3, shape.max_value)));
    t.v0 = val;
    std::uint64_t pos = 0;
    const int jumps = uniform(rng, 0, shape.max_jumps);
    for (int i = 0; i < jumps; ++i) {
        const std::uint64_t k = pos + static_cast<std::uint64_t>(uniform(rng, 1, 3));
        const std::uint64_t before = val + (k - 1 - pos);
        if (before + 2 > static_cast<std::uint64_t>(shape.max_value)) break;
        const std::uint64_t v = before + static_cast<std::uint64_t>(uniform(rng, 2, static_cast<int>(shape.max_value - before)));
        t.jumps.push_back({k, v});
        pos = k;
        val = v;
    }
    if (coin(rng, shape.jumpy_prob)) {
        t.tail = TrackTail::jumpy(static_cast<std::uint64_t>(uniform(rng, 2, 3)));
    } else if (coin(rng, shape.inf_prob)) {
        if (coin(rng, 0.5) || t.jumps.empty()) {
            t.tail = TrackTail::inf_at(pos + static_cast<std::uint64_t>(uniform(rng, 1, 2)));
        } else {
            t.jumps.back().v = HeightValue::inf();
        }
    }
    return t;
}

inline mixedab::ValuatedCyclic cyclic(Rng& rng, const TrackShape& shape, int max_primes = 3) {
    static const std::uint64_t primes[] = {2, 3, 5, 7};
    mixedab::ValuatedCyclic x;
    const int n = uniform(rng, 1, max_primes);
    for (int i = 0; i < n; ++i) x.tracks[primes[uniform(rng, 0, 3)]] = track(rng, shape);
    return x;
}

inline mixedab::FreeValuated free_valuated(Rng& rng, const TrackShape& shape, int max_rank = 3, int max_primes = 2) {
    mixedab::FreeValuated f;
    const int r = uniform(rng, 1, max_rank);
    for (int i = 0; i < r; ++i) f.coords.push_back(cyclic(rng, shape, max_primes));
    return f;
}

/// Elements of T_2 + T_3 with each explicit T_p of order at most p^max_log.
inline mixedab::CoordinateData coordinate_data(Rng& rng, unsigned max_log, std::size_t ncoords) {
    mixedab::CoordinateData cd;
    for (std::uint64_t p : {2, 3}) {
        if (!coin(rng, 0.7)) continue;
        std::vector<unsigned> orders;
        unsigned total = 0;
        const unsigned rank = static_cast<unsigned>(uniform(rng, 1, 3));
        for (unsigned i = 0; i < rank && total < max_log; ++i) {
            unsigned e = static_cast<unsigned>(uniform(rng, 1, std::min(4u, max_log - total)));
            orders.push_back(e);
            total += e;
        }
        cd.torsion[p] = mixedab::FinitePGroup::make(p, orders);
    }
    for (std::size_t i = 0; i < ncoords; ++i) {
        std::map<std::uint64_t, mixedab::IntVector> c;
        for (const auto& [p, g] : cd.torsion) {
            mixedab::IntVector v(g.rank());
            for (std::size_t k = 0; k < g.rank(); ++k) {
                // bias towards elements of positive height
                const auto m = mixedab::to_i64(g.modulus(k));
                v[k] = uniform(rng, 0, m - 1) * (coin(rng, 0.5) ? static_cast<std::int64_t>(p) : 1);
            }
            c[p] = g.reduce(v);
        }
        cd.coords.push_back(c);
    }
    return cd;
}


}  // namespace gen
