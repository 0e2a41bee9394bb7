#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "seqsat/bench.h"
#include "seqsat/error.h"
#include "seqsat/oracle.h"
#include "seqsat/solver.h"

using namespace seqsat;

namespace {

bool fits(const model& m, const bounds& b) {
    for (auto const& [v, s] : m.seqs)
        if (s.size() > b.max_len)
            return false;
    for (auto const& [v, x] : m.ints)
        if (x < -b.int_bound || x > b.int_bound)
            return false;
    return true;
}

int run(int argc, char** argv) {
    CLI::App app{"satisfiability checker for quantifier-free sequence constraints"};
    std::string file, mode_name = "ext", trace_file;
    std::size_t step_limit = 100000;
    bool validate = false, oracle_check = false, arrays = false;
    bounds ob;
    std::uint64_t seed = 0;
    app.add_option("file", file, "SMT-LIB input")->required()->check(CLI::ExistingFile);
    app.add_option("--mode", mode_name, "calculus")->check(CLI::IsMember({"base", "ext"}));
    app.add_option("--step-limit", step_limit, "rule application budget");
    app.add_flag("--validate-model", validate, "evaluate the input under the model; error on mismatch");
    app.add_flag("--oracle-check", oracle_check, "compare with the bounded enumerator");
    app.add_option("--max-len", ob.max_len, "oracle sequence length bound");
    app.add_option("--max-elem", ob.max_elem, "oracle element values per sort")->check(CLI::PositiveNumber);
    app.add_option("--int-bound", ob.int_bound, "oracle integer range")->check(CLI::NonNegativeNumber);
    app.add_option("--trace", trace_file, "write one line per rule application");
    app.add_flag("--arrays", arrays, "translate select/store over arrays to nth/update over sequences");
    app.add_option("--seed", seed, "ignored; the solver is deterministic");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();

    std::ofstream trace;
    solve_options opts;
    opts.engine.calculus = mode_name == "base" ? mode::base : mode::ext;
    opts.engine.step_limit = step_limit;
    opts.validate_model = true;
    opts.strict_validation = validate;
    if (!trace_file.empty()) {
        trace.open(trace_file);
        if (!trace)
            throw error("cannot open trace file " + trace_file);
        opts.engine.trace = &trace;
    }

    term_manager tm;
    script sc = parse_script(tm, arrays ? translate_arrays(buf.str()) : buf.str());
    solve_result res = solve(tm, sc, opts);

    if (oracle_check) {
        oracle_result o = oracle_solve(tm, sc.assertions, ob);
        std::cerr << "oracle: " << to_string(o.status) << " (" << o.states << " states)\n";
        if (res.status == verdict::unsat && o.status == oracle_verdict::sat)
            throw error("oracle found a model for an unsat answer");
        if (res.status == verdict::sat && fits(*res.sat_model, ob) && o.status == oracle_verdict::bounded_unsat)
            throw error("oracle found no model although the solver's model fits the bounds");
    }

    if (sc.commands.empty()) {
        std::cout << to_string(res.status) << '\n';
        return 0;
    }
    for (command c : sc.commands) {
        if (c == command::check_sat) {
            std::cout << to_string(res.status) << '\n';
        } else if (res.status == verdict::sat) {
            std::cout << print_model(tm, *res.sat_model, sc.decls);
        } else {
            std::cout << "(error \"model is not available\")\n";
        }
    }
    if (res.status == verdict::unknown && !res.reason.empty())
        std::cerr << "unknown: " << res.reason << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
