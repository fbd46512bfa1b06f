#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dlts/oracle.hpp"

namespace dlts::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kNondeterministic = 2,
    kCheckFailed = 3,
};

/// DLTS_BISIM_DEBUG=1 turns on invariant assertions and per-transition counters.
bool debug_from_env();

/// Input path "-" reads standard input.
int cmd_bisim(const std::string& input, const std::optional<std::string>& partition, bool debug, std::ostream& out,
              std::ostream& err);

int cmd_minimize_dfa(const std::string& input, bool debug, std::ostream& out, std::ostream& err);

int cmd_gen(const oracle::GenConfig& cfg, bool dfa, std::ostream& out, std::ostream& err);

struct CheckOptions {
    std::size_t count = 1000;
    std::size_t max_n = 50;
    std::size_t max_k = 4;
    double density = 0.5;
    std::uint64_t seed = 1;
    std::size_t max_initial_blocks = 3;
    /// Brute-force invariant checks run on instances up to this size.
    std::size_t brute_force_limit = 12;
    bool pick_larger = false;  // mutation test only
};

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::vector<std::size_t> sizes;
    std::uint64_t seed = 1;
    std::size_t k = 2;
    double density = 1.0;
    bool csv = false;
    bool per_transition = false;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t blocks = 0;
    std::uint64_t transitions_scanned = 0;
    std::uint64_t bound = 0;  // m * (floor(log2 n) + 1)
    std::uint32_t max_per_transition = 0;
    double ratio = 0.0;  // scanned / (m * log2 n)
    double wall_ms = 0.0;
};

/// One random automaton per size: transitions as in `gen`, initial partition
/// {finals, non-finals}.
std::vector<BenchRow> run_bench(const BenchOptions& options);

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// floor(log2 n) + 1 for n >= 1.
std::uint32_t log_bound(std::size_t n);

}  // namespace dlts::cli
