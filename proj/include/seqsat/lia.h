#pragma once

#include <cstddef>
#include <vector>

#include "seqsat/linear.h"

namespace seqsat {

enum class lia_status { sat, unsat, unknown };

struct lia_options {
    // simplex pivots plus branch nodes before giving up
    std::size_t work_limit = 200000;
};

struct lia_result {
    lia_status status = lia_status::unknown;
    lia_model model;
    // when unsat: positions in the input of a contradictory subset
    std::vector<std::size_t> core;
};

/*
  Decides a conjunction of clauses over the integers. Equalities are
  eliminated first, inequalities go to a rational simplex with
  branch-and-bound, and disequalities/disjunctions are split on demand
  against the current model.
*/
// hint: groups of constraints over disjoint variables that it satisfies keep its values
lia_result lia_check(const std::vector<arith_constraint>& cs, const lia_options& opts = {},
                     const lia_model* hint = nullptr);

enum class entailment { yes, no, unknown };

entailment lia_entails(const std::vector<arith_constraint>& cs, const arith_constraint& c,
                       const lia_options& opts = {});

} // namespace seqsat
