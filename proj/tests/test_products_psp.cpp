#include "generators.hpp"
#include "oracles.hpp"
#include "mixedab/products_psp.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace mixedab;

namespace {

std::vector<IntPair> sorted_box(std::int64_t c) {
    std::vector<IntPair> v;
    for (std::int64_t a = -c; a <= c; ++a)
        for (std::int64_t b = -c; b <= c; ++b)
            if (a != 0 || b != 0) v.push_back({a, b});
    std::sort(v.begin(), v.end(), canonical_less);
    return v;
}

std::set<std::size_t> zero_set(const PspExample& e, std::int64_t a, std::int64_t b) {
    std::set<std::size_t> out;
    for (std::size_t j = 0; j < e.steps; ++j) {
        const std::int64_t c = a * e.picks[j].a + b * e.picks[j].b;
        if (c % static_cast<std::int64_t>(e.primes[j]) == 0) out.insert(j);
    }
    return out;
}

}  // namespace

TEST(CanonicalOrder, MatchesSortedBox) {
    const auto box = sorted_box(12);
    IntPair u{-1, 0};
    // pairs with |a|+|b| <= 12 form a prefix of the sorted box
    for (std::size_t i = 0; i < 2 * 12 * 13; ++i, u = canonical_next(u)) {
        ASSERT_EQ(u, box[i]) << i;
        EXPECT_EQ(canonical_index(u), i + 1);
    }
    EXPECT_EQ(box[0], (IntPair{-1, 0}));
    EXPECT_EQ(box[1], (IntPair{0, -1}));
    EXPECT_EQ(box[2], (IntPair{0, 1}));
    EXPECT_EQ(box[3], (IntPair{1, 0}));
    EXPECT_THROW(canonical_index({0, 0}), std::invalid_argument);
}

TEST(PspExample, FirstStep) {
    auto e = psp_example(1);
    EXPECT_EQ(e.pairs[0], (IntPair{-1, 0}));
    // (-1,0) is the least pair and -1 * -1 = 1 != 0
    EXPECT_EQ(e.picks[0], (IntPair{-1, 0}));
    EXPECT_EQ(e.primes[0], 2u);
    EXPECT_THROW(psp_example(0), std::invalid_argument);
}

TEST(PspExample, InvariantsAndMinimality) {
    auto e = psp_example(200);
    EXPECT_TRUE(verify(e).empty());
    const auto box = sorted_box(20);
    std::uint64_t last = 1;
    for (std::size_t j = 0; j < e.steps; ++j) {
        IntPair best{0, 0};
        for (const auto& c : box) {
            bool ok = true;
            for (std::size_t k = 0; k <= j && ok; ++k) ok = e.pairs[k].a * c.a + e.pairs[k].b * c.b != 0;
            if (ok) {
                best = c;
                break;
            }
        }
        ASSERT_EQ(e.picks[j], best) << j;
        std::uint64_t m = last;
        for (std::size_t k = 0; k <= j; ++k)
            m = std::max<std::uint64_t>(m, std::llabs(e.pairs[k].a * best.a + e.pairs[k].b * best.b));
        std::uint64_t p = m + 1;
        while (!is_prime(p)) ++p;
        EXPECT_EQ(e.primes[j], p);
        last = p;
    }
}

TEST(PspExample, VerifyCatchesTampering) {
    auto e = psp_example(20);
    auto bad = e;
    bad.primes[5] = bad.primes[4];
    EXPECT_FALSE(verify(bad).empty());
    bad = e;
    bad.picks[7] = {0, 0};
    EXPECT_FALSE(verify(bad).empty());
    bad = e;
    std::swap(bad.pairs[2], bad.pairs[3]);
    EXPECT_FALSE(verify(bad).empty());
}

TEST(ComboZeroCount, BelowIndex) {
    auto e = psp_example(200);
    EXPECT_EQ(combo_zero_count(e, e.pairs[0].a, e.pairs[0].b), 0u);
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t b = -5; b <= 5; ++b) {
            if (a == 0 && b == 0) continue;
            const auto n = combo_zero_count(e, a, b);
            EXPECT_LT(n, canonical_index({a, b})) << a << "," << b;
            EXPECT_EQ(n, zero_set(e, a, b).size());
        }
    EXPECT_THROW(combo_zero_count(e, 0, 0), std::invalid_argument);
}

TEST(ComboZeroCount, ScalingKeepsOddZeros) {
    auto e = psp_example(200);
    for (std::int64_t a = -4; a <= 4; ++a)
        for (std::int64_t b = -4; b <= 4; ++b) {
            if (a == 0 && b == 0) continue;
            auto z1 = zero_set(e, a, b), z2 = zero_set(e, 2 * a, 2 * b);
            for (std::size_t j = 0; j < e.steps; ++j)
                if (e.primes[j] > 2) { EXPECT_EQ(z1.count(j), z2.count(j)); }
        }
}

TEST(PspExample, IndecomposabilityEvidence) {
    auto e = psp_example(200);
    auto ev = indecomposability_evidence(e, 5);
    EXPECT_EQ(ev.size(), 5u);
    for (const auto& s : ev) {
        EXPECT_TRUE(s.holds()) << s.split;
        EXPECT_EQ(s.pairs_checked, 120u);
    }
}

TEST(PspExample, TableOutput) {
    auto e = psp_example(3);
    auto j = to_json(e);
    EXPECT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][0]["p"], 2);
    EXPECT_EQ(to_csv(e).substr(0, 12), "j,a,b,x,y,p\n");
}

namespace {

void check_split(const CoordinateData& cd, const std::map<std::uint64_t, ExtensionSplit>& out, bool minimal) {
    for (const auto& [p, g] : cd.torsion) {
        const oracle::Group og(g);
        const auto whole = og.span(oracle::to_elems(SubgroupLattice::whole(g).generators()));
        const auto& s = out.at(p);
        const auto F = og.span(oracle::to_elems(s.finite.gens));
        const auto S = og.span(oracle::to_elems(s.complement.gens));
        EXPECT_TRUE(oracle::is_complement(F, S, whole.size()));
        EXPECT_TRUE(og.is_pure(F, whole));
        for (const auto& c : cd.coords)
            if (auto it = c.find(p); it != c.end()) { EXPECT_TRUE(F.count(og.scale(1, oracle::to_elem(it->second)))); }
        if (!minimal) continue;
        std::vector<oracle::Elem> entries;
        for (const auto& c : cd.coords)
            if (auto it = c.find(p); it != c.end()) entries.push_back(og.scale(1, oracle::to_elem(it->second)));
        for (const auto& H : oracle::all_subgroups(og, g.rank())) {
            if (H.size() >= F.size()) continue;
            bool holds = std::all_of(entries.begin(), entries.end(), [&](const auto& x) { return H.count(x) > 0; });
            EXPECT_FALSE(holds && og.is_pure(H, whole));
        }
    }
}

}  // namespace

TEST(DecomposeExtension, Examples) {
    CoordinateData cd;
    cd.torsion[2] = FinitePGroup::make(2, {2, 1});
    cd.coords = {{{2, {2, 0}}}};
    auto out = decompose_extension(cd);
    EXPECT_EQ(SubgroupLattice(out[2].finite).type(), std::vector<unsigned>{2});
    EXPECT_EQ(SubgroupLattice(out[2].complement).type(), std::vector<unsigned>{1});
    check_split(cd, out, true);

    cd.coords = {{{2, {0, 0}}}};
    out = decompose_extension(cd);
    EXPECT_TRUE(out[2].finite.gens.empty());
    EXPECT_EQ(SubgroupLattice(out[2].complement).type(), (std::vector<unsigned>{2, 1}));

    cd.coords = {{{2, {1, 0}}}, {{2, {0, 1}}}};
    out = decompose_extension(cd);
    EXPECT_EQ(SubgroupLattice(out[2].finite).type(), (std::vector<unsigned>{2, 1}));
    EXPECT_TRUE(out[2].complement.gens.empty());

    cd.coords = {{{3, {1, 0}}}};
    EXPECT_THROW(decompose_extension(cd), std::invalid_argument);
    cd.torsion[2] = FinitePGroup::make(2, {4, 4, 4, 4});
    cd.coords.clear();
    EXPECT_THROW(decompose_extension(cd, EnumBound{12}), BoundExceeded);
}

TEST(DecomposeExtension, RandomSmallAreMinimal) {
    gen::Rng rng(51);
    for (int i = 0; i < 30; ++i) {
        auto cd = gen::coordinate_data(rng, 5, static_cast<std::size_t>(gen::uniform(rng, 0, 2)));
        check_split(cd, decompose_extension(cd), true);
    }
}

TEST(DecomposeExtension, RandomUpToP8) {
    gen::Rng rng(52);
    for (int i = 0; i < 20; ++i) {
        auto cd = gen::coordinate_data(rng, 8, static_cast<std::size_t>(gen::uniform(rng, 0, 3)));
        check_split(cd, decompose_extension(cd), false);
    }
}
