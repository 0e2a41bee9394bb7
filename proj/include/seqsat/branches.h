#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "seqsat/config.h"
#include "seqsat/term.h"

namespace seqsat {

struct branch {
    // sequence constraints and Int (dis)equalities
    std::vector<literal> S;
    // arithmetic clauses of one or two literals; Int (dis)equalities again
    std::vector<raw_clause> A;
    // Boolean variables fixed by the branch
    std::map<term_id, bool> bools;
};

struct branch_set {
    std::vector<branch> branches;
};

/*
  Disjunctive normal form of the conjunction of assertions, left to right.
  A disjunction of exactly two arithmetic literals stays a clause instead of
  splitting the branch. Contradictory branches are dropped; throws
  resource_error when more than cap branches arise.
*/
branch_set to_branches(term_manager& tm, const std::vector<term_id>& assertions, std::size_t cap = 4096);

} // namespace seqsat
