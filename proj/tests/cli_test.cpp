#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "dlts/lts.hpp"
#include "dlts/oracle.hpp"

namespace dlts::cli {
namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("dlts_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

    std::filesystem::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST_F(CliTest, BisimEmptyTransitionsIsOneBlock) {
    const auto path = write("empty.lts", "dlts 3\nstates: x y z\n");
    EXPECT_EQ(cmd_bisim(path, std::nullopt, false, out_, err_), kOk);
    EXPECT_EQ(out_.str(), "x y z\n");
}

TEST_F(CliTest, BisimTwoStateCycle) {
    const auto path = write("cycle.lts", "dlts 2\nstates: q0 q1\nq0 a q1\nq1 a q0\n");
    EXPECT_EQ(cmd_bisim(path, std::nullopt, false, out_, err_), kOk);
    EXPECT_EQ(out_.str(), "q0 q1\n");
}

TEST_F(CliTest, BisimWithPartitionFile) {
    const auto lts = write("cycle.lts", "dlts 2\nstates: q0 q1\nq0 a q1\nq1 a q0\n");
    const auto part = write("init.part", "q1\nq0\n");
    EXPECT_EQ(cmd_bisim(lts, part, true, out_, err_), kOk);
    EXPECT_EQ(out_.str(), "q0\nq1\n");
    EXPECT_NE(err_.str().find("transitions_scanned="), std::string::npos);
}

TEST_F(CliTest, BisimExitCodes) {
    const auto nd = write("nd.lts", "dlts 3\nq0 a q1\n");  // undeclared names: parse error
    EXPECT_EQ(cmd_bisim(nd, std::nullopt, false, out_, err_), kInputError);
    const auto nondet = write("nondet.lts", "dlts 3\n0 a 1\n0 a 2\n");
    EXPECT_EQ(cmd_bisim(nondet, std::nullopt, false, out_, err_), kNondeterministic);
    const auto ok = write("ok.lts", "dlts 3\n0 a 1\n");
    const auto overlap = write("bad.part", "0 1\n1 2\n");
    EXPECT_EQ(cmd_bisim(ok, overlap, false, out_, err_), kInputError);
    EXPECT_EQ(cmd_bisim((dir_ / "missing").string(), std::nullopt, false, out_, err_), kInputError);
}

TEST_F(CliTest, BisimDebugRunsInvariantChecks) {
    std::ostringstream text;
    text << format_lts(oracle::gen_random_dlts({.n = 30, .k = 3, .density = 0.7, .seed = 9}).raw);
    const auto path = write("rand.lts", text.str());
    EXPECT_EQ(cmd_bisim(path, std::nullopt, true, out_, err_), kOk) << err_.str();
}

TEST_F(CliTest, MinimizeDfa) {
    const auto path = write("a.dfa",
                            "dfa 4\nstates: s0 s1 s2 s3\nletters: a\ninitial: s0\nfinals: s2\n"
                            "s0 a s2\ns1 a s2\ns2 a s1\ns3 a s0\n");
    EXPECT_EQ(cmd_minimize_dfa(path, false, out_, err_), kOk);
    EXPECT_EQ(out_.str(), "dfa 2\nstates: s0 s2\nletters: a\ninitial: s0\nfinals: s2\ns0 a s2\ns2 a s0\n");
    EXPECT_NE(err_.str().find("useless_removed=1"), std::string::npos);
    EXPECT_NE(err_.str().find("final_blocks=2"), std::string::npos);
    const auto back = parse_dfa(out_.str());
    EXPECT_TRUE(oracle::dfa_language_equivalent(back, parse_dfa(std::string_view(
                                                          "dfa 4\nstates: s0 s1 s2 s3\nletters: a\ninitial: s0\n"
                                                          "finals: s2\ns0 a s2\ns1 a s2\ns2 a s1\ns3 a s0\n"))));
}

TEST_F(CliTest, MinimizeDfaErrors) {
    EXPECT_EQ(cmd_minimize_dfa(write("bad.dfa", "dlts 2\n"), false, out_, err_), kInputError);
    EXPECT_EQ(cmd_minimize_dfa(write("nd.dfa", "dfa 2\ninitial: 0\n0 a 0\n0 a 1\n"), false, out_, err_),
              kNondeterministic);
}

TEST_F(CliTest, GenIsReproducibleAndParses) {
    const oracle::GenConfig cfg{.n = 7, .k = 2, .density = 0.5, .seed = 42};
    std::ostringstream again;
    EXPECT_EQ(cmd_gen(cfg, false, out_, err_), kOk);
    EXPECT_EQ(cmd_gen(cfg, false, again, err_), kOk);
    EXPECT_EQ(out_.str(), again.str());
    EXPECT_NO_THROW(normalize(parse_lts(out_.str())));

    std::ostringstream dfa;
    EXPECT_EQ(cmd_gen(cfg, true, dfa, err_), kOk);
    EXPECT_NO_THROW(parse_dfa(dfa.str()));
    EXPECT_EQ(cmd_gen({.n = 0}, false, out_, err_), kInputError);
}

TEST_F(CliTest, CheckZeroCountPasses) {
    EXPECT_EQ(cmd_check({.count = 0}, out_, err_), kOk);
}

TEST_F(CliTest, CheckPassesOnDefaultsAndCatchesMutant) {
    EXPECT_EQ(cmd_check({.count = 300, .max_n = 50, .max_k = 4, .density = 0.5, .seed = 3}, out_, err_), kOk)
        << err_.str();
    CheckOptions mutant{.count = 300, .max_n = 50, .max_k = 4, .density = 0.9, .seed = 3};
    mutant.pick_larger = true;
    EXPECT_EQ(cmd_check(mutant, out_, err_), kCheckFailed);
    EXPECT_NE(err_.str().find("reproduce:"), std::string::npos);
}

TEST_F(CliTest, BenchRowsRespectBound) {
    BenchOptions opts;
    opts.sizes = {16};
    opts.csv = true;
    EXPECT_EQ(cmd_bench(opts, out_, err_), kOk);
    std::istringstream lines(out_.str());
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "n,k,m,blocks,transitions_scanned,bound,ratio,time_ms");
    EXPECT_EQ(row.rfind("16,2,32,", 0), 0u);
    EXPECT_FALSE(std::getline(lines, extra));

    opts.sizes = {256, 512, 1024, 2048};
    opts.per_transition = true;
    for (const auto& r : run_bench(opts)) {
        EXPECT_LE(r.transitions_scanned, r.bound);
        EXPECT_LE(r.max_per_transition, log_bound(r.n));
    }
}

TEST_F(CliTest, BenchScanGrowthAtFixedN) {
    // Complete DFAs: doubling k doubles m at fixed n.
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        for (std::size_t k : {2u, 4u}) {
            const BenchOptions base{.sizes = {4096}, .seed = seed, .k = k};
            BenchOptions twice = base;
            twice.k = 2 * k;
            const auto a = run_bench(base).front();
            const auto b = run_bench(twice).front();
            ASSERT_EQ(b.m, 2 * a.m);
            EXPECT_LE(static_cast<double>(b.transitions_scanned), 2.2 * static_cast<double>(a.transitions_scanned))
                << "seed " << seed << " k " << k << ": " << a.transitions_scanned << " -> " << b.transitions_scanned;
        }
    }
}

TEST(LogBound, Values) {
    EXPECT_EQ(log_bound(1), 1u);
    EXPECT_EQ(log_bound(2), 2u);
    EXPECT_EQ(log_bound(3), 2u);
    EXPECT_EQ(log_bound(1024), 11u);
}

}  // namespace
}  // namespace dlts::cli
