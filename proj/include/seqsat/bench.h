#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqsat/engine.h"

namespace seqsat {

/*
  Rewrites an SMT-LIB script over arrays into one over sequences: array
  sorts become Seq of the element sort, the index sort becomes Int, store
  becomes seq.update and select becomes seq.nth. Throws translation_error
  naming the construct it cannot handle.
*/
std::string translate_arrays(const std::string& smt2);

struct suite_options {
    std::vector<mode> modes{mode::base, mode::ext};
    std::size_t time_limit_ms = 10000;
    std::size_t step_limit = 100000;
    // run translate_arrays on every file first
    bool translate = false;
    unsigned jobs = 1;
};

struct suite_row {
    std::string file;
    mode calculus = mode::ext;
    // sat, unsat, unknown or error
    std::string verdict;
    double wall_ms = 0;
    std::size_t rules = 0;
    std::map<std::string, std::size_t> rule_counts;
    // set for sat rows: every assertion holds under the model
    std::optional<bool> model_validated;
    std::string message;
};

// one row per file and mode, files in name order
std::vector<suite_row> run_suite(const std::string& dir, const suite_options& opts = {});

// file,mode,verdict,wall-ms,rule-applications,model-validated plus a summary row per mode
std::string to_csv(const std::vector<suite_row>& rows, const std::vector<mode>& modes);

} // namespace seqsat
