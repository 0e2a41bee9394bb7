#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "seqsat/engine.h"
#include "seqsat/model.h"
#include "seqsat/smtlib.h"

namespace seqsat {

struct solve_options {
    engine_options engine;
    std::size_t branch_cap = 4096;
    // evaluate every assertion under the returned model
    bool validate_model = true;
    // throw model_error on a failed validation instead of counting the branch as unknown
    bool strict_validation = false;
};

struct solve_result {
    verdict status = verdict::unknown;
    // covers every declared variable when status is sat
    std::optional<model> sat_model;
    std::string reason;
    std::size_t branches = 0;
    engine_stats stats;
};

/*
  Splits the assertions into conjunctive branches and runs the engine on
  each until one is satisfiable. Unknown branches make the overall answer
  unknown unless another branch is sat.
*/
solve_result solve(term_manager& tm, const script& sc, const solve_options& opts = {});

// convenience: parse and solve
solve_result solve_text(term_manager& tm, const std::string& smt2, const solve_options& opts = {});

} // namespace seqsat
