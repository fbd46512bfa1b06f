#include <gtest/gtest.h>

#include <random>

#include "builders.hpp"
#include "dlts/oracle.hpp"

namespace dlts::oracle {
namespace {

using testing::make_dfa;
using testing::make_dlts;

TEST(IsBisimulation, Examples) {
    const auto t = make_dlts(3, {{0, 'a', 1}, {1, 'a', 2}});
    EXPECT_TRUE(is_bisimulation({{0}, {1}, {2}}, t));

    const auto cycle = make_dlts(2, {{0, 'a', 1}, {1, 'a', 0}});
    EXPECT_TRUE(is_bisimulation({{0, 1}}, cycle));

    const auto lopsided = make_dlts(2, {{0, 'a', 0}});
    EXPECT_FALSE(is_bisimulation({{0, 1}}, lopsided));
}

TEST(NaiveFixpoint, Examples) {
    const auto t = make_dlts(3, {{0, 'a', 1}, {1, 'b', 2}});
    EXPECT_EQ(naive_fixpoint(t, {{0}, {1}, {2}}), (BlockList{{0}, {1}, {2}}));
    const auto cycle = make_dlts(2, {{0, 'a', 1}, {1, 'a', 0}});
    EXPECT_EQ(naive_fixpoint(cycle, {{0, 1}}), (BlockList{{0, 1}}));
}

TEST(NaiveFixpoint, ResultIsCoarsestBisimulation) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 150; ++i) {
        GenConfig cfg{.n = 1 + rng() % 20, .k = 1 + rng() % 3, .density = 0.6, .seed = rng(), .max_initial_blocks = 3};
        const auto inst = gen_random_dlts(cfg);
        const auto result = naive_fixpoint(inst.dlts, inst.p_init);
        EXPECT_TRUE(is_partition(cfg.n, result));
        EXPECT_TRUE(is_bisimulation(result, inst.dlts));
        EXPECT_TRUE(refines(result, inst.p_init));
        EXPECT_TRUE(refines(result, signature_grouping(inst.dlts, inst.p_init)));
        EXPECT_TRUE(coarseness_certificate(inst.dlts, inst.p_init, result));
    }
}

TEST(CoarsenessCertificate, RejectsOverRefinedPartition) {
    const auto cycle = make_dlts(2, {{0, 'a', 1}, {1, 'a', 0}});
    EXPECT_FALSE(coarseness_certificate(cycle, {{0, 1}}, {{0}, {1}}));
    EXPECT_TRUE(coarseness_certificate(cycle, {{0}, {1}}, {{0}, {1}}));  // merge would leave R_init
}

TEST(Partitions, Predicates) {
    EXPECT_TRUE(is_partition(3, {{0, 2}, {1}}));
    EXPECT_FALSE(is_partition(3, {{0, 2}}));
    EXPECT_FALSE(is_partition(3, {{0, 1}, {1, 2}}));
    EXPECT_FALSE(is_partition(2, {{0, 1}, {}}));
    EXPECT_TRUE(refines({{0}, {1}, {2}}, {{0, 1}, {2}}));
    EXPECT_FALSE(refines({{0, 2}, {1}}, {{0, 1}, {2}}));
}

TEST(Generator, DensityExtremes) {
    const auto none = gen_random_dlts({.n = 10, .k = 3, .density = 0.0, .seed = 1});
    EXPECT_EQ(none.dlts.transition_count(), 0u);
    const auto full = gen_random_dlts({.n = 10, .k = 3, .density = 1.0, .seed = 1});
    EXPECT_EQ(full.dlts.transition_count(), 30u);
    EXPECT_TRUE(check_deterministic(full.raw).empty());
}

TEST(Generator, DeterministicInSeed) {
    const GenConfig cfg{.n = 15, .k = 2, .density = 0.5, .seed = 77, .max_initial_blocks = 4};
    const auto a = gen_random_dlts(cfg);
    const auto b = gen_random_dlts(cfg);
    EXPECT_EQ(a.raw.transitions, b.raw.transitions);
    EXPECT_EQ(a.p_init, b.p_init);
    EXPECT_TRUE(is_partition(15, a.p_init));
    EXPECT_LE(a.p_init.size(), 4u);
    EXPECT_EQ(gen_random_dfa(cfg).finals, gen_random_dfa(cfg).finals);
}

TEST(Generator, RejectsBadConfig) {
    EXPECT_THROW(gen_random_dlts({.n = 0}), std::invalid_argument);
    EXPECT_THROW(gen_random_dlts({.n = 2, .k = 0}), std::invalid_argument);
    EXPECT_THROW(gen_random_dlts({.n = 2, .k = 1, .density = 1.5}), std::invalid_argument);
    EXPECT_THROW(gen_random_dlts({.n = 2, .k = 1, .density = 0.5, .seed = 0, .max_initial_blocks = 0}),
                 std::invalid_argument);
}

TEST(LanguageEquivalence, Examples) {
    const auto d = make_dfa(2, {{0, 'a', 1}, {1, 'a', 0}}, 0, {0});
    EXPECT_TRUE(dfa_language_equivalent(d, d));

    const auto accepts_nothing = make_dfa(1, {}, 0, {});
    const auto accepts_epsilon = make_dfa(1, {}, 0, {0});
    EXPECT_FALSE(dfa_language_equivalent(accepts_nothing, accepts_epsilon));

    Dfa empty;  // 0 states
    EXPECT_TRUE(dfa_language_equivalent(empty, accepts_nothing));

    // Same language, different shape: (aa)* unrolled to four states.
    const auto unrolled = make_dfa(4, {{0, 'a', 1}, {1, 'a', 2}, {2, 'a', 3}, {3, 'a', 0}}, 0, {0, 2});
    EXPECT_TRUE(dfa_language_equivalent(d, unrolled));
    EXPECT_FALSE(dfa_isomorphic(d, unrolled));

    const auto other_alphabet = make_dfa(2, {{0, 'b', 1}, {1, 'b', 0}}, 0, {0});
    EXPECT_THROW(dfa_language_equivalent(d, other_alphabet), ValidationError);
}

TEST(LanguageEquivalence, IsSymmetricOnRandomPairs) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const GenConfig c1{.n = 1 + rng() % 6, .k = 2, .density = 0.8, .seed = rng()};
        const GenConfig c2{.n = 1 + rng() % 6, .k = 2, .density = 0.8, .seed = rng()};
        const auto d1 = gen_random_dfa(c1);
        const auto d2 = gen_random_dfa(c2);
        EXPECT_EQ(dfa_language_equivalent(d1, d2), dfa_language_equivalent(d2, d1));
        EXPECT_TRUE(dfa_language_equivalent(d1, d1));
    }
}

TEST(Isomorphism, RenamingAndLetterOrder) {
    const auto d1 = make_dfa(3, {{0, 'a', 1}, {1, 'b', 2}, {2, 'a', 0}}, 0, {2});
    // states permuted, letters declared in the other order
    auto d2 = make_dfa(3, {{2, 'b', 0}, {0, 'a', 1}, {1, 'a', 2}}, 1, {0});
    EXPECT_TRUE(dfa_isomorphic(d1, d2));
    d2.finals = {1};
    EXPECT_FALSE(dfa_isomorphic(d1, d2));
}

TEST(InvariantCheckerTest, FlagsCorruptedWorklist) {
    const auto t = make_dlts(3, {{0, 'a', 1}, {1, 'a', 2}});
    auto p = RefinablePartition::from_initial(3, {{0}, {1}, {2}});
    LetterBuckets buckets(t.letter_count(), t.transition_count());
    InvariantChecker checker(t, {{0, 1, 2}}, true);

    const std::vector<SplitterDesc> single{{0, 1}};
    p.set_in_splitter_union(0, true);
    EXPECT_THROW(checker(IterationView{p, single, buckets}), InvariantViolation);

    const std::vector<SplitterDesc> ok{{0, 3}};
    for (BlockId b = 0; b < 3; ++b) p.set_in_splitter_union(b, true);
    EXPECT_NO_THROW(checker(IterationView{p, ok, buckets}));

    p.set_in_splitter_union(2, false);
    EXPECT_THROW(checker(IterationView{p, ok, buckets}), InvariantViolation);
}

}  // namespace
}  // namespace dlts::oracle
