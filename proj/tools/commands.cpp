#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "dlts/bisim.hpp"
#include "dlts/minimize.hpp"
#include "dlts/partition.hpp"

namespace dlts::cli {

namespace {

// Brute-force invariant checks in debug runs stay below this size.
constexpr std::size_t kDebugBruteForceLimit = 64;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Empty string when every transition respects the halving bound.
std::string check_scan_bound(const NormalizedDlts& t, const ScanStats& stats) {
    const std::uint32_t bound = log_bound(t.state_count());
    for (std::size_t i = 0; i < stats.per_transition_counts.size(); ++i) {
        if (stats.per_transition_counts[i] > bound) {
            const auto& tr = t.transitions()[i];
            return "transition " + t.state_names()[tr.src] + " " + t.letter_names()[tr.letter] + " " +
                   t.state_names()[tr.dst] + " scanned " + std::to_string(stats.per_transition_counts[i]) +
                   " times, bound " + std::to_string(bound);
        }
    }
    if (stats.transitions_scanned > static_cast<std::uint64_t>(t.transition_count()) * bound)
        return "total scans " + std::to_string(stats.transitions_scanned) + " exceed m*(floor(log2 n)+1)";
    return {};
}

void write_stats(std::ostream& err, const ScanStats& stats) {
    err << "transitions_scanned=" << stats.transitions_scanned << " split_calls=" << stats.split_calls
        << " iterations=" << stats.iterations << " blocks=" << stats.blocks_final << '\n';
}

}  // namespace

bool debug_from_env() {
    const char* value = std::getenv("DLTS_BISIM_DEBUG");
    return value != nullptr && std::string(value) == "1";
}

std::uint32_t log_bound(std::size_t n) {
    return n == 0 ? 1 : static_cast<std::uint32_t>(std::bit_width(n));
}

int cmd_bisim(const std::string& input, const std::optional<std::string>& partition, bool debug, std::ostream& out,
              std::ostream& err) {
    NormalizedDlts t;
    BlockList init;
    try {
        const RawLts raw = parse_lts(read_input(input));
        t = normalize(raw);
        if (partition) {
            std::istringstream in(read_input(*partition));
            init = parse_partition(in, t.state_names());
        } else if (t.state_count() > 0) {
            init = RefinablePartition::single_block(t.state_count()).to_canonical();
        }
        RefinablePartition::from_initial(t.state_count(), init);
    } catch (const NondeterminismError& e) {
        err << "error: " << e.what() << '\n';
        return kNondeterministic;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    ScanStats stats;
    DbisimOptions options;
    std::optional<oracle::InvariantChecker> checker;
    if (debug) {
        options.count_per_transition = true;
        checker.emplace(t, init, t.state_count() <= kDebugBruteForceLimit);
        options.observer = [&](const IterationView& view) { (*checker)(view); };
    }
    try {
        const auto result = dbisim(t, RefinablePartition::from_initial(t.state_count(), init), &stats, options);
        if (debug) {
            if (auto msg = check_scan_bound(t, stats); !msg.empty()) {
                err << "invariant violated: " << msg << '\n';
                return kCheckFailed;
            }
            write_stats(err, stats);
        }
        out << format_partition(result.to_canonical(), t.state_names());
    } catch (const oracle::InvariantViolation& e) {
        err << "invariant violated: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kOk;
}

int cmd_minimize_dfa(const std::string& input, bool debug, std::ostream& out, std::ostream& err) {
    Dfa dfa;
    try {
        dfa = parse_dfa(read_input(input));
        validate_dfa(dfa);
        if (auto v = check_deterministic(dfa.lts); !v.empty())
            throw NondeterminismError(dfa.lts.states[v.front().state], dfa.lts.letters[v.front().letter]);
    } catch (const NondeterminismError& e) {
        err << "error: " << e.what() << '\n';
        return kNondeterministic;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    DbisimOptions options;
    options.count_per_transition = debug;
    const auto result = minimize_dfa(dfa, options);
    const auto& r = result.report;
    out << format_dfa(result.dfa);
    err << "states=" << r.states << " letters=" << r.letters << " transitions=" << r.transitions
        << " useless_removed=" << r.useless_removed << " final_blocks=" << r.blocks_final
        << " transitions_scanned=" << r.stats.transitions_scanned << " wall_ms=" << std::fixed << std::setprecision(3)
        << r.wall_ms << '\n';
    return kOk;
}

int cmd_gen(const oracle::GenConfig& cfg, bool dfa, std::ostream& out, std::ostream& err) {
    try {
        if (dfa)
            out << format_dfa(oracle::gen_random_dfa(cfg));
        else
            out << format_lts(oracle::gen_random_dlts(cfg).raw);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err) {
    if (options.max_n < 1 || options.max_k < 1 || !(options.density >= 0.0 && options.density <= 1.0)) {
        err << "error: need n >= 1, k >= 1 and density in [0, 1]\n";
        return kInputError;
    }
    std::mt19937_64 driver(options.seed);
    std::uniform_int_distribution<std::size_t> pick_n(1, options.max_n);
    std::uniform_int_distribution<std::size_t> pick_k(1, options.max_k);
    std::uint64_t scanned = 0;

    for (std::size_t i = 0; i < options.count; ++i) {
        oracle::GenConfig cfg;
        cfg.n = pick_n(driver);
        cfg.k = pick_k(driver);
        cfg.density = options.density;
        cfg.seed = driver();
        cfg.max_initial_blocks = options.max_initial_blocks;
        const auto inst = oracle::gen_random_dlts(cfg);

        auto fail = [&](const std::string& what) {
            err << "FAIL instance " << i << ": " << what << '\n'
                << "reproduce: gen --n " << cfg.n << " --k " << cfg.k << " --density " << cfg.density << " --seed "
                << cfg.seed << " (initial block bound " << cfg.max_initial_blocks << ")\n";
            return kCheckFailed;
        };

        ScanStats stats;
        DbisimOptions dopts;
        dopts.count_per_transition = true;
        dopts.policy = options.pick_larger ? SmallerPolicy::kLargerHalf : SmallerPolicy::kSmallerHalf;
        oracle::InvariantChecker checker(inst.dlts, inst.p_init, cfg.n <= options.brute_force_limit);
        dopts.observer = [&](const IterationView& view) { checker(view); };

        RefinablePartition result;
        try {
            result = dbisim(inst.dlts, RefinablePartition::from_initial(cfg.n, inst.p_init), &stats, dopts);
        } catch (const oracle::InvariantViolation& e) {
            return fail(std::string("invariant: ") + e.what());
        }
        if (result.to_canonical() != oracle::naive_fixpoint(inst.dlts, inst.p_init))
            return fail("partition differs from the naive fixpoint");
        if (auto msg = check_scan_bound(inst.dlts, stats); !msg.empty()) return fail(msg);
        scanned += stats.transitions_scanned;
    }
    out << "ok: " << options.count << " instances, " << scanned << " transitions scanned\n";
    return kOk;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
    std::vector<BenchRow> rows;
    for (std::size_t n : options.sizes) {
        oracle::GenConfig cfg;
        cfg.n = n;
        cfg.k = options.k;
        cfg.density = options.density;
        cfg.seed = options.seed;
        const Dfa dfa = oracle::gen_random_dfa(cfg);
        const NormalizedDlts t = normalize(dfa.lts);
        BlockList init(2);
        std::vector<char> is_final(n, 0);
        for (auto q : dfa.finals) is_final[q] = 1;
        for (std::size_t q = 0; q < n; ++q) init[is_final[q] ? 0 : 1].push_back(static_cast<StateIndex>(q));
        std::erase_if(init, [](const auto& b) { return b.empty(); });

        ScanStats stats;
        DbisimOptions dopts;
        dopts.count_per_transition = options.per_transition;
        auto p = RefinablePartition::from_initial(n, init);
        const auto started = std::chrono::steady_clock::now();
        const auto result = dbisim(t, std::move(p), &stats, dopts);
        const auto elapsed = std::chrono::steady_clock::now() - started;

        BenchRow row;
        row.n = n;
        row.k = t.letter_count();
        row.m = t.transition_count();
        row.blocks = result.block_count();
        row.transitions_scanned = stats.transitions_scanned;
        row.bound = static_cast<std::uint64_t>(row.m) * log_bound(n);
        if (!stats.per_transition_counts.empty())
            row.max_per_transition = *std::max_element(stats.per_transition_counts.begin(), stats.per_transition_counts.end());
        const double denom = static_cast<double>(row.m) * std::log2(static_cast<double>(n));
        row.ratio = denom > 0 ? static_cast<double>(row.transitions_scanned) / denom : 0.0;
        row.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
        rows.push_back(row);
    }
    return rows;
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
    for (std::size_t n : options.sizes) {
        if (n < 1) {
            err << "error: sizes must be positive\n";
            return kInputError;
        }
    }
    if (options.k < 1 || !(options.density >= 0.0 && options.density <= 1.0)) {
        err << "error: need k >= 1 and density in [0, 1]\n";
        return kInputError;
    }
    const auto rows = run_bench(options);
    if (options.csv) {
        out << "n,k,m,blocks,transitions_scanned,bound,ratio,time_ms\n";
        for (const auto& r : rows)
            out << r.n << ',' << r.k << ',' << r.m << ',' << r.blocks << ',' << r.transitions_scanned << ',' << r.bound
                << ',' << std::fixed << std::setprecision(4) << r.ratio << ',' << std::setprecision(3) << r.wall_ms
                << '\n';
    } else {
        out << std::setw(10) << "n" << std::setw(4) << "k" << std::setw(12) << "m" << std::setw(10) << "blocks"
            << std::setw(14) << "scanned" << std::setw(14) << "bound" << std::setw(8) << "ratio" << std::setw(12)
            << "time_ms" << '\n';
        for (const auto& r : rows)
            out << std::setw(10) << r.n << std::setw(4) << r.k << std::setw(12) << r.m << std::setw(10) << r.blocks
                << std::setw(14) << r.transitions_scanned << std::setw(14) << r.bound << std::setw(8) << std::fixed
                << std::setprecision(3) << r.ratio << std::setw(12) << r.wall_ms << '\n';
    }
    for (const auto& r : rows) {
        if (r.transitions_scanned > r.bound) {
            err << "scan bound exceeded at n=" << r.n << '\n';
            return kCheckFailed;
        }
    }
    return kOk;
}

}  // namespace dlts::cli
