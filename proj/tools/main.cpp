// Copyright 2026-present the provlog project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "provlog/engine.hpp"
#include "provlog/hypergraph.hpp"
#include "provlog/oracle.hpp"
#include "provlog/parser.hpp"
#include "provlog/translations.hpp"

namespace {

using namespace provlog;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        out.push_back(comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

struct RingArgs {
    std::string name;
    std::string universe;  // comma-separated tokens for set-lattice
    std::string chains;    // comma-separated lengths for chain-product

    void attach(CLI::App* cmd) {
        cmd->add_option("--semiring", name, "Semiring: tropical, boolean, set-lattice, chain-product, natural")
                ->required();
        cmd->add_option("--universe", universe, "Universe tokens for set-lattice, e.g. a,b,c");
        cmd->add_option("--chains", chains, "Chain lengths for chain-product, e.g. 3,2");
    }

    Semiring make() const {
        if (name == "tropical") return Semiring::tropical();
        if (name == "boolean") return Semiring::boolean();
        if (name == "natural") return Semiring::natural();
        if (name == "set-lattice") {
            if (universe.empty()) throw UsageError("set-lattice requires --universe");
            return Semiring::set_lattice(split_csv(universe));
        }
        if (name == "chain-product") {
            if (chains.empty()) throw UsageError("chain-product requires --chains");
            std::vector<uint32_t> lengths;
            for (const auto& tok : split_csv(chains)) {
                try {
                    lengths.push_back(static_cast<uint32_t>(std::stoul(tok)));
                } catch (const std::exception&) {
                    throw UsageError("bad chain length '" + tok + "'");
                }
            }
            return Semiring::chain_product(lengths);
        }
        throw UsageError("unknown semiring '" + name + "'");
    }
};

Program load_program(const std::string& path) {
    Program program;
    try {
        program = parse_program(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.col()) + ": " + e.what());
    }
    bool bad = false;
    for (const auto& d : validate(program)) {
        std::cerr << path << ": " << (d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ")
                  << d.message << "\n";
        if (d.severity == Diagnostic::Severity::Error) bad = true;
    }
    if (bad) throw InputError(path + ": program is invalid");
    return program;
}

int cmd_run(const std::string& program_path, const std::string& facts_dir, const RingArgs& ring_args,
            const std::string& strategy, const std::string& output_dir, uint64_t max_rounds) {
    Semiring ring = ring_args.make();
    EngineOptions opts;
    opts.max_rounds = max_rounds;
    require_strategy_support(strategy, ring, opts);
    Program program = load_program(program_path);
    auto edb = load_facts_dir(program, facts_dir, ring);
    EvalReport report = run_strategy(strategy, program, edb, ring, opts);
    std::filesystem::create_directories(output_dir);
    write_outputs(report, program, edb, ring, output_dir);
    return 0;
}

int cmd_translate(const std::string& mode, const std::string& in_path, const std::string& out_path,
                  const RingArgs& ring_args) {
    Semiring ring = ring_args.make();
    if (mode == "dl2hg") {
        Program program = load_program(in_path + "/program.dl");
        auto edb = load_facts_dir(program, in_path, ring);
        WeightedHypergraph h = from_program(program, edb, ring);
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << format_hypergraph(h);
        return 0;
    }
    if (mode == "hg2dl-simple" || mode == "hg2dl-fixed") {
        WeightedHypergraph h = parse_hypergraph(read_file(in_path), ring);
        DatalogInstance inst = mode == "hg2dl-simple" ? hg_to_datalog_simple(h) : hg_to_datalog_fixed(h);
        std::filesystem::create_directories(out_path);
        std::ofstream prog(out_path + "/program.dl");
        if (!prog) throw InputError("cannot write " + out_path + "/program.dl");
        prog << format_program(inst.program);
        for (const auto& d : inst.program.decls) {
            if (!inst.program.is_edb(d.name)) continue;
            std::ofstream facts(out_path + "/" + d.name + ".facts");
            if (!facts) throw InputError("cannot write " + out_path + "/" + d.name + ".facts");
            write_facts(facts, inst.facts, d, ring);
        }
        return 0;
    }
    if (mode == "andor2hg") {
        WeightedHypergraph h = parse_andor(read_file(in_path), ring);
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << format_hypergraph(h);
        return 0;
    }
    throw UsageError("unknown translate mode '" + mode + "'");
}

int cmd_bench(const std::string& program_path, const std::string& facts_dir, const RingArgs& ring_args,
              const std::string& strategies_csv, uint64_t reps) {
    Semiring ring = ring_args.make();
    Program program = load_program(program_path);
    auto edb = load_facts_dir(program, facts_dir, ring);
    auto strategies = split_csv(strategies_csv);
    if (strategies.empty()) throw UsageError("--strategies needs at least one strategy");

    // correctness gates performance claims: all value maps must agree
    std::vector<EvalReport> reports;
    for (const auto& s : strategies) reports.push_back(run_strategy(s, program, edb, ring));
    for (size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].values == reports[0].values) continue;
        for (const auto& [k, v] : reports[0].values) {
            auto it = reports[i].values.find(k);
            if (it == reports[i].values.end() || !(it->second == v)) {
                std::string atom = k.first + "(";
                for (size_t a = 0; a < k.second.size(); ++a)
                    atom += (a ? "," : "") + format_constant(k.second[a]);
                atom += ")";
                throw InternalError("bench: strategies '" + strategies[0] + "' and '" + strategies[i] +
                                    "' disagree at " + atom);
            }
        }
        for (const auto& [k, v] : reports[i].values) {
            if (!reports[0].values.count(k)) {
                std::string atom = k.first + "(";
                for (size_t a = 0; a < k.second.size(); ++a)
                    atom += (a ? "," : "") + format_constant(k.second[a]);
                atom += ")";
                throw InternalError("bench: strategies '" + strategies[0] + "' and '" + strategies[i] +
                                    "' disagree at " + atom);
            }
        }
        throw InternalError("bench: strategies disagree");
    }

    std::cout << "strategy,wall_seconds,extractions,rule_instantiations,queue_pushes,stale_pops\n";
    for (uint64_t rep = 0; rep < reps; ++rep) {
        for (const auto& s : strategies) {
            auto t0 = std::chrono::steady_clock::now();
            EvalReport r = run_strategy(s, program, edb, ring);
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            std::cout << s << ',' << dt.count() << ',' << r.stats.extractions << ',' << r.stats.rule_instantiations
                      << ',' << r.stats.queue_pushes << ',' << r.stats.stale_pops << "\n";
        }
    }
    return 0;
}

int cmd_check(const RingArgs& ring_args, uint64_t samples, uint64_t seed, const std::string& claims_csv) {
    Semiring ring = ring_args.make();
    for (const auto& claim : split_csv(claims_csv)) {
        if (claim == "commutative")
            ring.flags.commutative = true;
        else if (claim == "idempotent")
            ring.flags.idempotent = true;
        else if (claim == "zero-closed")
            ring.flags.zero_closed = true;
        else if (claim == "totally-ordered")
            ring.flags.totally_ordered = true;
        else if (claim == "mult-idempotent")
            ring.flags.multiplicatively_idempotent = true;
        else
            throw UsageError("unknown flag '" + claim + "' in --claim");
    }
    PropertyReport report = check_properties(ring, samples, seed);
    for (const auto& law : report.laws) {
        std::cout << law.law << '\t' << (law.passed ? "pass" : "FAIL");
        if (!law.passed) std::cout << '\t' << law.counterexample;
        std::cout << "\n";
    }
    std::cout << "result\t" << (report.all_passed() ? "pass" : "fail") << "\n";
    return report.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"provlog - a semiring-provenance Datalog engine"};
    app.require_subcommand(1);

    std::string program_path, facts_dir, output_dir, strategy = "seminaive";
    uint64_t max_rounds = 0;
    RingArgs run_ring;
    auto* run = app.add_subcommand("run", "Evaluate a program and write per-relation CSV outputs");
    run->add_option("program", program_path, "Program file (.dl)")->required();
    run->add_option("--facts", facts_dir, "Directory with <relation>.facts files")->required();
    run->add_option("--strategy", strategy, "naive, best-first, seminaive, stratified or lattice");
    run->add_option("--output", output_dir, "Output directory")->required();
    run->add_option("--max-rounds", max_rounds, "Kleene round bound for --strategy naive (0 = automatic)");
    run_ring.attach(run);

    std::string mode, in_path, out_path;
    RingArgs tr_ring;
    auto* translate = app.add_subcommand("translate", "Convert between Datalog, hypergraph and AND/OR formats");
    translate->add_option("--mode", mode, "dl2hg, hg2dl-simple, hg2dl-fixed or andor2hg")->required();
    translate->add_option("input", in_path, "Input file (directory for dl2hg)")->required();
    translate->add_option("output", out_path, "Output file (directory for hg2dl-*)")->required();
    tr_ring.attach(translate);

    std::string bench_program, bench_facts, strategies = "naive,seminaive";
    uint64_t reps = 1;
    RingArgs bench_ring;
    auto* bench = app.add_subcommand("bench", "Compare strategies; verifies equal results before timing");
    bench->add_option("program", bench_program, "Program file (.dl)")->required();
    bench->add_option("--facts", bench_facts, "Directory with <relation>.facts files")->required();
    bench->add_option("--strategies", strategies, "Comma-separated strategy list");
    bench->add_option("--reps", reps, "Timing repetitions per strategy");
    bench_ring.attach(bench);

    uint64_t samples = 1000, seed = 42;
    std::string claims;
    RingArgs check_ring;
    auto* check = app.add_subcommand("check", "Randomized self-check of semiring laws and declared flags");
    check->add_option("--samples", samples, "Random samples per law");
    check->add_option("--seed", seed, "RNG seed");
    check->add_option("--claim", claims, "Extra flags to declare (to test misdeclaration), e.g. zero-closed");
    check_ring.attach(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // exit 1 for every command-line usage error
    }

    try {
        if (run->parsed()) return cmd_run(program_path, facts_dir, run_ring, strategy, output_dir, max_rounds);
        if (translate->parsed()) return cmd_translate(mode, in_path, out_path, tr_ring);
        if (bench->parsed()) return cmd_bench(bench_program, bench_facts, bench_ring, strategies, reps);
        if (check->parsed()) return cmd_check(check_ring, samples, seed, claims);
    } catch (const Error& e) {
        std::cerr << "provlog: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "provlog: internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
