#include <gtest/gtest.h>

#include <random>

#include "builders.hpp"
#include "dlts/minimize.hpp"
#include "dlts/oracle.hpp"
#include "table_filling.hpp"

namespace dlts {
namespace {

using testing::make_dfa;

TEST(Minimize, AlreadyMinimalParity) {
    // even number of a's
    const auto dfa = make_dfa(2, {{0, 'a', 1}, {1, 'a', 0}}, 0, {0});
    EXPECT_EQ(testing::minimal_state_count(dfa), 2u);
    const auto result = minimize_dfa(dfa);
    EXPECT_EQ(result.dfa.lts.states.size(), 2u);
    EXPECT_TRUE(oracle::dfa_isomorphic(result.dfa, dfa));
}

TEST(Minimize, MergesTwinNonFinalStates) {
    const auto dfa = make_dfa(3, {{0, 'a', 2}, {1, 'a', 2}, {2, 'a', 1}}, 0, {2});
    EXPECT_EQ(testing::minimal_state_count(dfa), 2u);
    const auto result = minimize_dfa(dfa);
    EXPECT_EQ(result.dfa.lts.states.size(), 2u);
    EXPECT_TRUE(oracle::dfa_language_equivalent(result.dfa, dfa));
    EXPECT_EQ(result.report.blocks_final, 2u);
}

TEST(Minimize, DropsUnreachableState) {
    const auto dfa = make_dfa(3, {{0, 'a', 1}, {1, 'a', 0}, {2, 'a', 0}}, 0, {1});
    const auto useful = useful_states(dfa);
    EXPECT_EQ(useful, (std::vector<char>{1, 1, 0}));
    const auto result = minimize_dfa(dfa);
    EXPECT_EQ(result.report.useless_removed, 1u);
    for (const auto& name : result.dfa.lts.states) EXPECT_NE(name, "q2");
    EXPECT_TRUE(oracle::dfa_language_equivalent(result.dfa, dfa));
}

TEST(Minimize, DropsDeadState) {
    // q2 cannot reach a final state
    const auto dfa = make_dfa(3, {{0, 'a', 1}, {0, 'b', 2}, {2, 'a', 2}}, 0, {1});
    const auto result = minimize_dfa(dfa);
    EXPECT_EQ(result.dfa.lts.states.size(), 2u);
    EXPECT_EQ(result.dfa.lts.letters.size(), 2u);  // alphabet kept
    EXPECT_TRUE(oracle::dfa_language_equivalent(result.dfa, dfa));
}

TEST(Minimize, EmptyLanguageGivesEmptyAutomaton) {
    const auto dfa = make_dfa(2, {{0, 'a', 1}}, 0, {});
    const auto result = minimize_dfa(dfa);
    EXPECT_TRUE(result.dfa.lts.states.empty());
    EXPECT_FALSE(result.dfa.initial.has_value());
    EXPECT_EQ(format_dfa(result.dfa), "dfa 0\nletters: a\n");
    EXPECT_TRUE(oracle::dfa_language_equivalent(result.dfa, dfa));
}

TEST(Minimize, SixStatesWithOneMergeablePair) {
    // q1 and q2 have identical successors.
    const auto dfa = make_dfa(6,
                              {{0, 'a', 1}, {0, 'b', 2}, {1, 'a', 3}, {1, 'b', 4}, {2, 'a', 3}, {2, 'b', 4},
                               {3, 'a', 5}, {3, 'b', 0}, {4, 'a', 0}, {4, 'b', 5}, {5, 'a', 5}, {5, 'b', 0}},
                              0, {5});
    const auto expected = testing::minimal_state_count(dfa);
    ASSERT_EQ(expected, 5u);
    const auto result = minimize_dfa(dfa);
    EXPECT_EQ(result.dfa.lts.states.size(), expected);
    EXPECT_TRUE(oracle::dfa_language_equivalent(result.dfa, dfa));
}

TEST(Minimize, RejectsBadInput) {
    auto dfa = make_dfa(2, {{0, 'a', 1}, {0, 'a', 0}}, 0, {1});
    EXPECT_THROW(minimize_dfa(dfa), NondeterminismError);
    auto bad_final = make_dfa(2, {}, 0, {5});
    EXPECT_THROW(minimize_dfa(bad_final), ValidationError);
}

TEST(MinimizeProperty, RandomAutomata) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
        const oracle::GenConfig cfg{.n = 1 + rng() % 40, .k = 1 + rng() % 3, .density = 0.3 + 0.2 * (i % 4), .seed = rng()};
        const auto dfa = oracle::gen_random_dfa(cfg);
        const auto result = minimize_dfa(dfa);
        ASSERT_TRUE(oracle::dfa_language_equivalent(result.dfa, dfa)) << "seed " << cfg.seed;
        EXPECT_EQ(result.dfa.lts.states.size(), testing::minimal_state_count(dfa)) << "seed " << cfg.seed;
        EXPECT_EQ(result.dfa.lts.states.size(), result.report.blocks_final);

        const auto again = minimize_dfa(result.dfa);
        EXPECT_TRUE(oracle::dfa_isomorphic(again.dfa, result.dfa)) << "seed " << cfg.seed;

        // Nothing left to merge inside {F, Q \ F}.
        if (!result.dfa.lts.states.empty()) {
            const auto t = normalize(result.dfa.lts);
            BlockList init(2);
            std::vector<char> fin(t.state_count(), 0);
            for (auto q : result.dfa.finals) fin[q] = 1;
            for (StateIndex q = 0; q < t.state_count(); ++q) init[fin[q] ? 0 : 1].push_back(q);
            std::erase_if(init, [](const auto& b) { return b.empty(); });
            EXPECT_EQ(oracle::naive_fixpoint(t, init).size(), t.state_count());
        }
    }
}

}  // namespace
}  // namespace dlts
