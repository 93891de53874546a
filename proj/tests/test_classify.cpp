#include "generators.hpp"
#include "mixedab/classify.hpp"

#include <gtest/gtest.h>

using namespace mixedab;

namespace {

const ExtNat A0 = ExtNat::aleph0();

GroupDescriptor make(ExtNat rank, std::map<std::uint64_t, UlmVector> listed, Tail tail = Tail::zero(),
                     ClassSet classes = {StructureClass::Unknown}) {
    return normalize(GroupDescriptor{rank, TorsionDescriptor{std::move(listed), tail}, std::move(classes)});
}

// Independent restatement of both criteria, by scanning one listed prime
// beyond the tail's reach.
bool oracle_finite_from(const GroupDescriptor& d, std::size_t from) {
    if (!d.rank.is_finite()) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        auto v = d.torsion.at(p);
        for (std::size_t j = from; j < v.size(); ++j)
            if (!v[j].is_finite()) return false;
    }
    return true;
}

}  // namespace

TEST(IsBassian, Examples) {
    auto b = make(1, {}, Tail::elementary(1));
    EXPECT_EQ(is_bassian(b).verdict, Verdict::Yes);
    EXPECT_EQ(is_bassian(b).route, "thm:main-bassian");
    auto r = is_bassian(make(A0, {}));
    EXPECT_EQ(r.verdict, Verdict::No);
    EXPECT_EQ(r.witness["criterion"], "rank");
    auto t = is_bassian(make(1, {{2, {A0}}}));
    EXPECT_EQ(t.verdict, Verdict::No);
    EXPECT_EQ(t.witness["prime"], 2);
}

TEST(IsBassian, TailWitnessPrimeIsUnlisted) {
    auto r = is_bassian(make(0, {{2, {1}}, {3, {1}}}, Tail::elementary(A0)));
    EXPECT_EQ(r.verdict, Verdict::No);
    EXPECT_EQ(r.witness["prime"], 5);
}

TEST(IsBPlusE, Examples) {
    EXPECT_EQ(is_b_plus_e(make(1, {}, Tail::elementary(A0))).verdict, Verdict::Yes);
    EXPECT_EQ(is_b_plus_e(make(0, {{2, {0, A0}}})).verdict, Verdict::No);
    EXPECT_EQ(is_b_plus_e(make(1, {}, Tail::elementary(A0))).route, "prop:step");
}

TEST(Criteria, AgreeWithOracle) {
    gen::Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
        auto d = gen::descriptor(rng);
        EXPECT_EQ(is_bassian(d).verdict == Verdict::Yes, oracle_finite_from(d, 0));
        EXPECT_EQ(is_b_plus_e(d).verdict == Verdict::Yes, oracle_finite_from(d, 1));
    }
}

TEST(Split, Examples) {
    auto s = b_plus_e_split(make(1, {{2, {A0, 3, 1}}}));
    EXPECT_EQ(s.bassian.torsion.at(2), (UlmVector{0, 3, 1}));
    EXPECT_EQ(s.elementary.torsion.at(2), (UlmVector{A0}));
    auto e = b_plus_e_split(make(0, {{3, {A0}}}, Tail::elementary(A0)));
    EXPECT_TRUE(e.bassian.torsion.listed.empty());
    EXPECT_EQ(e.bassian.torsion.tail, Tail::zero());
    auto b = b_plus_e_split(make(2, {{2, {4, 1}}}, Tail::elementary(1)));
    EXPECT_TRUE(b.elementary.torsion.listed.empty());
    EXPECT_EQ(b.elementary.torsion.tail, Tail::zero());
    EXPECT_THROW(b_plus_e_split(make(A0, {})), PreconditionError);
}

TEST(Split, Recombines) {
    gen::Rng rng(22);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        auto d = gen::descriptor(rng);
        if (is_b_plus_e(d).verdict != Verdict::Yes) continue;
        ++checked;
        auto s = b_plus_e_split(d);
        auto sum = direct_sum(s.bassian, s.elementary);
        EXPECT_EQ(sum.rank, d.rank);
        EXPECT_EQ(sum.torsion, d.torsion);
        EXPECT_EQ(is_bassian(s.bassian).verdict, Verdict::Yes);
        EXPECT_TRUE(s.elementary.rank.is_zero());
        for (std::uint64_t p : {2, 3, 5, 7, 11}) { EXPECT_LE(s.elementary.torsion.at(p).size(), 1u); }
    }
    EXPECT_GT(checked, 300);
}

TEST(GeneralizedBassian, Examples) {
    auto w = generalized_bassian(make(1, {{2, {A0}}}, Tail::zero(), {StructureClass::Warfield}));
    EXPECT_EQ(w.verdict, Verdict::Yes);
    EXPECT_EQ(w.route, "cor:warfield");
    auto r = generalized_bassian(make(A0, {}));
    EXPECT_EQ(r.verdict, Verdict::No);
    EXPECT_EQ(r.route, "thm:finite");
    auto p = generalized_bassian(make(1, {{2, {0, A0}}}, Tail::zero(), {StructureClass::Warfield}));
    EXPECT_EQ(p.verdict, Verdict::No);
    EXPECT_EQ(p.route, "cor:oneway");
    auto u = generalized_bassian(make(1, {{2, {A0}}}));
    EXPECT_EQ(u.verdict, Verdict::Undecided);
    EXPECT_EQ(u.route, "conjecture:1.3");
    EXPECT_EQ(generalized_bassian(make(1, {}, Tail::elementary(1))).route, "thm:main-bassian");
}

TEST(GeneralizedBassian, ClassRoutes) {
    const std::pair<StructureClass, const char*> cases[] = {
        {StructureClass::Psp, "cor:psp"},         {StructureClass::TfqDivisible, "cor:divisible"},
        {StructureClass::NiceFreeQe, "thm:nice2"}, {StructureClass::Splitting, "cor:first"},
    };
    for (const auto& [c, route] : cases) {
        auto r = generalized_bassian(make(2, {{3, {A0, 1}}}, Tail::elementary(A0), {c}));
        EXPECT_EQ(r.verdict, Verdict::Yes);
        EXPECT_EQ(r.route, route);
    }
    auto t = generalized_bassian(make(0, {{3, {A0, 1}}}));
    EXPECT_EQ(t.verdict, Verdict::Yes);
    EXPECT_EQ(t.route, "cor:warfield");
}

TEST(GeneralizedBassian, TruthTable) {
    gen::Rng rng(23);
    for (int i = 0; i < 2000; ++i) {
        auto d = gen::descriptor(rng);
        const auto gb = generalized_bassian(d);
        const bool be = is_b_plus_e(d).verdict == Verdict::Yes;
        if (is_bassian(d).verdict == Verdict::Yes) { EXPECT_TRUE(be); }
        EXPECT_EQ(gb.verdict == Verdict::No, !be);
        if (gb.verdict == Verdict::Undecided) { EXPECT_EQ(d.classes, ClassSet{StructureClass::Unknown}); }
        EXPECT_TRUE(route_table().count(gb.route)) << gb.route;
        EXPECT_FALSE(gb.witness.is_null());
    }
}

TEST(SubDescriptor, PreservesBPlusE) {
    gen::Rng rng(24);
    for (int i = 0; i < 1000; ++i) {
        auto d = gen::descriptor(rng);
        auto s = gen::sub_descriptor(rng, d);
        if (is_b_plus_e(d).verdict == Verdict::Yes) { EXPECT_EQ(is_b_plus_e(s).verdict, Verdict::Yes); }
    }
}

TEST(NiceCheck, Examples) {
    EXPECT_TRUE(nice_check({{2, LocalShape{{}, 0, 1}}, {3, LocalShape{{}, 0, 1}}}));
    EXPECT_FALSE(nice_check({{2, LocalShape{{}, 0, 1}}, {3, LocalShape{{1}, 0, 1}}}));
    EXPECT_TRUE(nice_check({{5, LocalShape{{}, 2, 0}}}));
    EXPECT_TRUE(nice_check({{5, LocalShape{{0, 0}, 2, 0}}}));
}

TEST(Embed, Examples) {
    auto b = make(1, {}, Tail::elementary(1));
    auto e = embed_into_gb(b);
    EXPECT_TRUE(e.classes.count(StructureClass::TfqDivisible));
    EXPECT_EQ(generalized_bassian(e).verdict, Verdict::Yes);
    EXPECT_EQ(embed_into_gb(e), e);
    EXPECT_THROW(embed_into_gb(make(0, {{2, {0, A0}}})), PreconditionError);
}

TEST(Embed, AlwaysClassifiesYes) {
    gen::Rng rng(25);
    for (int i = 0; i < 1000; ++i) {
        auto d = gen::descriptor(rng);
        if (is_b_plus_e(d).verdict != Verdict::Yes) continue;
        auto e = embed_into_gb(d);
        EXPECT_EQ(generalized_bassian(e).verdict, Verdict::Yes);
        EXPECT_TRUE(is_sub_descriptor(d, e));
        EXPECT_TRUE(validate(e).empty());
    }
}

TEST(Hopfian, Examples) {
    EXPECT_EQ(hopfian_equiv(make(1, {}, Tail::elementary(1))).verdict, Verdict::Yes);
    auto h = hopfian_equiv(make(1, {{2, {A0}}}));
    EXPECT_EQ(h.verdict, Verdict::No);
    EXPECT_EQ(h.route, "prop:hopfian");
    EXPECT_THROW(hopfian_equiv(make(A0, {})), PreconditionError);
}
