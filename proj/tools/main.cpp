#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace dlts::cli;

    CLI::App app{"Coarsest bisimulation and DFA minimization for deterministic LTSs"};
    app.require_subcommand(1);
    const bool debug = debug_from_env();

    std::string bisim_input;
    std::string partition_path;
    auto* bisim = app.add_subcommand("bisim", "Print the coarsest bisimulation of a DLTS");
    bisim->add_option("file", bisim_input, "DLTS file ('-' for stdin)")->required();
    bisim->add_option("--partition", partition_path, "Initial partition file (default: one block)");

    std::string dfa_input;
    auto* minimize = app.add_subcommand("minimize-dfa", "Minimize a deterministic automaton");
    minimize->add_option("file", dfa_input, "DFA file ('-' for stdin)")->required();

    dlts::oracle::GenConfig gen_cfg;
    bool gen_dfa = false;
    auto* gen = app.add_subcommand("gen", "Generate a random DLTS or DFA");
    gen->add_option("--n", gen_cfg.n, "State count")->required();
    gen->add_option("--k", gen_cfg.k, "Alphabet size")->required();
    gen->add_option("--density", gen_cfg.density, "Probability of a transition per (state, letter)")->required();
    gen->add_option("--seed", gen_cfg.seed, "Random seed")->required();
    gen->add_flag("--dfa", gen_dfa, "Emit a DFA (initial state q0, random finals)");

    CheckOptions check_opts;
    auto* check = app.add_subcommand("check", "Cross-check against the naive fixpoint on random instances");
    check->add_option("--count", check_opts.count, "Number of instances")->capture_default_str();
    check->add_option("--n", check_opts.max_n, "Maximum state count")->capture_default_str();
    check->add_option("--k", check_opts.max_k, "Maximum alphabet size")->capture_default_str();
    check->add_option("--density", check_opts.density, "Transition density")->capture_default_str();
    check->add_option("--seed", check_opts.seed, "Random seed")->capture_default_str();
    check->add_option("--initial-blocks", check_opts.max_initial_blocks, "Bound on initial blocks")->capture_default_str();
    check->add_flag("--mutant-pick-larger", check_opts.pick_larger)->group("");

    BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "Report scan counts against m*(floor(log2 n)+1)");
    bench->add_option("--sizes", bench_opts.sizes, "Comma-separated state counts")->required()->delimiter(',');
    bench->add_option("--seed", bench_opts.seed, "Random seed")->capture_default_str();
    bench->add_option("--k", bench_opts.k, "Alphabet size")->capture_default_str();
    bench->add_option("--density", bench_opts.density, "Transition density")->capture_default_str();
    bench->add_flag("--csv", bench_opts.csv, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    if (bisim->parsed()) {
        std::optional<std::string> partition;
        if (!partition_path.empty()) partition = partition_path;
        return cmd_bisim(bisim_input, partition, debug, std::cout, std::cerr);
    }
    if (minimize->parsed()) return cmd_minimize_dfa(dfa_input, debug, std::cout, std::cerr);
    if (gen->parsed()) return cmd_gen(gen_cfg, gen_dfa, std::cout, std::cerr);
    if (check->parsed()) {
        if (debug) check_opts.brute_force_limit = 64;
        return cmd_check(check_opts, std::cout, std::cerr);
    }
    bench_opts.per_transition = debug;
    return cmd_bench(bench_opts, std::cout, std::cerr);
}
