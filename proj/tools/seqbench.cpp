#include <CLI11.hpp>

#include <iostream>

#include "seqsat/bench.h"

using namespace seqsat;

int main(int argc, char** argv) {
    CLI::App app{"runs the solver over a directory of SMT-LIB files and prints a CSV table"};
    std::string dir;
    std::vector<std::string> mode_names{"base", "ext"};
    suite_options opts;
    app.add_option("dir", dir, "directory of .smt2 files")->required()->check(CLI::ExistingDirectory);
    app.add_option("--modes", mode_names, "calculi to run")->check(CLI::IsMember({"base", "ext"}));
    app.add_option("--time-limit", opts.time_limit_ms, "milliseconds per file and mode");
    app.add_option("--step-limit", opts.step_limit, "rule application budget");
    app.add_flag("--arrays", opts.translate, "translate array scripts before solving");
    app.add_option("-j,--jobs", opts.jobs, "parallel solver runs");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        opts.modes.clear();
        for (auto const& m : mode_names)
            opts.modes.push_back(m == "base" ? mode::base : mode::ext);
        std::cout << to_csv(run_suite(dir, opts), opts.modes);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
