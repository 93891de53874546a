// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "generators.hpp"
#include "mutations.hpp"
#include "oracles.hpp"
#include "mixedab/mixedab.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace mixedab;

namespace {

struct Outcome {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
};

struct Criterion {
    std::string name;
    double limit_s;  ///< 0 = no time limit
    std::function<Outcome()> run;
};

Outcome snf_suite() {
    Outcome o;
    gen::Rng rng(1001);
    for (int i = 0; i < 1000; ++i) {
        IntMatrix a(static_cast<std::size_t>(gen::uniform(rng, 1, 8)), static_cast<std::size_t>(gen::uniform(rng, 1, 8)));
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = gen::uniform(rng, -20, 20);
        const SmithForm f = snf(a);
        bool ok = f.U * a * f.V == f.S && abs(f.U.determinant()) == 1 && abs(f.V.determinant()) == 1 &&
                  f.S.is_diagonal();
        const std::size_t lim = std::min(a.rows(), a.cols());
        for (std::size_t k = 0; ok && k < lim; ++k) {
            ok = f.S(k, k) >= 0;
            if (ok && k + 1 < lim) ok = f.S(k, k) == 0 ? f.S(k + 1, k + 1) == 0 : f.S(k + 1, k + 1) % f.S(k, k) == 0;
        }
        o.check(ok, "matrix " + std::to_string(i));
    }
    return o;
}

Outcome ulm_equivalence() {
    Outcome o;
    gen::Rng rng(1002);
    const gen::TrackShape shape{8, 3, 0.2, 0.0};
    for (int i = 0; i < 200; ++i) {
        const ValuatedCyclic x = gen::cyclic(rng, shape, 3);
        const Presentation P = realize_cyclic(x);
        for (const auto& kv : x.tracks) {
            const std::uint64_t p = kv.first;
            const RealizationCheck r = check_realization(x, P, p, 12);
            const auto model = ulm_model(truncate(P, p, 12), 10);
            o.check(r.valuation_match && model == ulm_valuated(x, p, 10),
                    "cyclic " + std::to_string(i) + " at p = " + std::to_string(p) + ": " + to_json(FreeValuated{{x}}).dump());
        }
    }
    return o;
}

Outcome tight_suite() {
    Outcome o;
    gen::Rng rng(1003);
    const gen::TrackShape shape{8, 3, 0.25, 0.0};
    for (int i = 0; i < 100; ++i) {
        const FreeValuated f = gen::free_valuated(rng, shape, 3, 2);
        auto [td, bad] = tight_data(f);
        if (bad) {
            o.check(false, "hypothesis missing on jump-free tails: " + to_json(f).dump());
            continue;
        }
        const Presentation P = realize_free(f, td);
        for (auto p : f.primes()) {
            const RealizationCheck r = check_realization(f, P, p, 12);
            // finite torsion: the invariant factors do not move when the model deepens
            const bool finite = torsion_factors(truncate(P, p, 12)) == torsion_factors(truncate(P, p, 20));
            o.check(r.zero_tight && finite, "free " + std::to_string(i) + " at p = " + std::to_string(p));
        }
    }
    for (int i = 0; i < 20; ++i) {
        FreeValuated f = gen::free_valuated(rng, shape, 3, 2);
        auto& c = f.coords[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(f.rank()) - 1))];
        const std::uint64_t p = c.tracks.begin()->first;
        ValueTrack& t = c.tracks.begin()->second;
        if (infinite_from(t)) t = ValueTrack::gapless(static_cast<std::uint64_t>(gen::uniform(rng, 0, 3)));
        t.tail = TrackTail::jumpy(static_cast<std::uint64_t>(gen::uniform(rng, 2, 3)));
        auto [td, bad] = tight_data(f);
        bool refused = false;
        try {
            realize_free(f, td);
        } catch (const HypothesisError&) {
            refused = true;
        }
        o.check(refused && bad.has_value() && !td.count(p), "jumpy input " + std::to_string(i) + " accepted");
    }
    return o;
}

Outcome flag_identity() {
    Outcome o;
    gen::Rng rng(1004);
    const gen::TrackShape shape{8, 3, 0.2, 0.0};
    for (int i = 0; i < 100; ++i) {
        const FreeValuated F = gen::free_valuated(rng, shape, 3, 2);
        TorsionDescriptor fG;
        if (gen::coin(rng, 0.5)) fG.tail = Tail::elementary(gen::ext_nat(rng, 0.5, 3));
        TorsionDescriptor fF;
        for (auto p : F.primes()) {
            const auto f = ulm_valuated(F, p, 12);
            UlmVector g(f.size()), fv(f.size());
            for (std::size_t j = 0; j < f.size(); ++j) {
                fv[j] = f[j];
                g[j] = ExtNat(f[j]) + gen::ext_nat(rng, 0.2, 2);
            }
            fG.listed[p] = add(g, fG.tail.vector());
            fF.listed[p] = fv;
        }
        const TorsionDescriptor S = warfield_split(fG, F);
        bool ok = true;
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
            // entrywise, over the explicit primes and one prime under the tail
            const UlmVector lhs = trimmed(add(fF.at(p), S.at(p)));
            ok = ok && lhs == trimmed(fG.at(p));
        }
        o.check(ok, "pair " + std::to_string(i));
    }
    return o;
}

Outcome classification_logic() {
    Outcome o;
    gen::Rng rng(1005);
    for (int i = 0; i < 1000; ++i) {
        const GroupDescriptor d = gen::descriptor(rng);
        const bool bassian = is_bassian(d).verdict == Verdict::Yes;
        const bool be = is_b_plus_e(d).verdict == Verdict::Yes;
        const ClassificationReport gb = generalized_bassian(d);
        const std::string tag = "descriptor " + to_json(d).dump();
        o.check(!bassian || be, "Bassian but not B+E: " + tag);
        o.check((gb.verdict == Verdict::No) == !be, "NO does not match B+E failure: " + tag);
        o.check(gb.verdict != Verdict::Undecided || d.classes == ClassSet{StructureClass::Unknown},
                "UNDECIDED with a known class: " + tag);
        if (be) {
            const BPlusESplit s = b_plus_e_split(d);
            const GroupDescriptor sum = direct_sum(s.bassian, s.elementary);
            o.check(sum.rank == d.rank && sum.torsion == d.torsion, "split does not recombine: " + tag);
            o.check(is_bassian(s.bassian).verdict == Verdict::Yes, "Bassian part is not Bassian: " + tag);
        }
    }
    for (int i = 0; i < 1000; ++i) {
        const GroupDescriptor d = gen::descriptor(rng);
        const GroupDescriptor s = gen::sub_descriptor(rng, d);
        if (is_b_plus_e(d).verdict == Verdict::Yes)
            o.check(is_b_plus_e(s).verdict == Verdict::Yes, "subgroup of B+E not B+E: " + to_json(s).dump());
    }
    return o;
}

Outcome example_b_checks() {
    Outcome o;
    const Presentation P = example_b(13);
    for (auto p : primes_up_to(13)) {
        const TruncatedModel M = truncate(P, p, 10);
        const std::string at = "p = " + std::to_string(p);
        o.check(torsion_factors(M) == std::vector<BigInt>{BigInt(p)}, at + ": torsion factors");
        o.check(height(M, {{"t", 1}}) == BoundedHeight::exact(0), at + ": height(t)");
        const BoundedHeight hpt = height(M, {{"t", BigInt(p)}});
        o.check(hpt.kind != BoundedHeight::Kind::Exact || hpt.h >= 2, at + ": height(pt)");
        const auto q = M.quotient.free_height(M.element({{"t", 1}}));
        o.check(q && *q >= 1, at + ": quotient height of [t]");
    }
    return o;
}

Outcome psp_checks() {
    Outcome o;
    const PspExample e = psp_example(200);
    const auto problems = verify(e);
    o.check(problems.empty(), problems.empty() ? "" : problems.front());
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t b = -5; b <= 5; ++b) {
            if (a == 0 && b == 0) continue;
            o.check(combo_zero_count(e, a, b) < canonical_index({a, b}),
                    "(" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
    return o;
}

Outcome decompose_checks() {
    Outcome o;
    gen::Rng rng(1008);
    for (int i = 0; i < 50; ++i) {
        const CoordinateData cd = gen::coordinate_data(rng, 8, static_cast<std::size_t>(gen::uniform(rng, 0, 3)));
        const auto out = decompose_extension(cd);
        for (const auto& [p, g] : cd.torsion) {
            const oracle::Group og(g);
            const auto whole = og.span(oracle::to_elems(SubgroupLattice::whole(g).generators()));
            const auto F = og.span(oracle::to_elems(out.at(p).finite.gens));
            const auto S = og.span(oracle::to_elems(out.at(p).complement.gens));
            bool contained = true;
            for (const auto& c : cd.coords)
                if (auto it = c.find(p); it != c.end()) contained = contained && F.count(og.scale(1, oracle::to_elem(it->second)));
            o.check(F.size() <= whole.size() && og.is_pure(F, whole) && oracle::is_complement(F, S, whole.size()) &&
                        contained,
                    "data " + std::to_string(i) + " at p = " + std::to_string(p));
        }
    }
    return o;
}

Outcome mutation_checks() {
    Outcome o;
    gen::Rng rng(1009);
    const gen::TrackShape shape{8, 3, 0.2, 0.0};
    int made = 0;
    while (made < 50) {
        const ValuatedCyclic x = gen::cyclic(rng, shape, 3);
        const Presentation P = realize_cyclic(x);
        const auto head = mutate::first_finite_chain_head(P);
        if (!head) continue;
        const bool shorten = made % 2 == 0;
        const Presentation Q = shorten ? mutate::shorten_chain(P, *head) : mutate::alter_coefficient(P, *head);
        const RealizationCheck r = check_realization(x, Q, P.chains[*head].p, 12);
        o.check(!(r.valuation_match && r.tight),
                std::string(shorten ? "shortened" : "altered") + " presentation passed: " + to_json(Q).dump());
        ++made;
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1 SNF suite (1000 matrices)", 5, snf_suite},
        {"2 Ulm oracle equivalence (200 cyclics, B=12)", 30, ulm_equivalence},
        {"3 tight suite (100 free, 20 jumpy refused)", 60, tight_suite},
        {"4 flag identity (100 pairs)", 0, flag_identity},
        {"5 classification logic (1000 descriptors, 1000 sub-descriptors)", 0, classification_logic},
        {"6 example_b, p <= 13, B=10", 10, example_b_checks},
        {"7 PSP example, J=200, |a|,|b| <= 5", 10, psp_checks},
        {"8 decompose_extension (50 random, order <= p^8)", 60, decompose_checks},
        {"9 mutation soundness (50 corrupted presentations)", 0, mutation_checks},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        std::string error;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool slow = c.limit_s > 0 && s > c.limit_s;
        const bool pass = error.empty() && o.failures == 0 && !slow;
        if (!pass) ++failed;
        std::printf("%s  criterion %s: %llu cases, %llu failures, %.2fs", pass ? "PASS" : "FAIL", c.name.c_str(),
                    static_cast<unsigned long long>(o.cases), static_cast<unsigned long long>(o.failures), s);
        if (c.limit_s > 0) std::printf(" (limit %.0fs)", c.limit_s);
        std::printf("\n");
        if (!error.empty()) std::printf("      exception: %s\n", error.c_str());
        if (o.failures) std::printf("      first failure: %s\n", o.first_failure.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
