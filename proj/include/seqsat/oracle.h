#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "seqsat/config.h"
#include "seqsat/model.h"
#include "seqsat/term.h"

namespace seqsat {

struct bounds {
    std::size_t max_len = 3;
    // element values per element sort
    std::size_t max_elem = 3;
    // Int variables range over [-int_bound, int_bound]
    std::int64_t int_bound = 4;
    std::size_t state_cap = 2000000;
};

enum class oracle_verdict { sat, bounded_unsat, inconclusive };

const char* to_string(oracle_verdict v);

struct oracle_result {
    oracle_verdict status = oracle_verdict::inconclusive;
    std::optional<model> witness;
    std::size_t states = 0;
};

/*
  Exhaustive search over bounded assignments. Integers are tried by
  absolute value then sign, sequences by length then lexicographically.
  Out-of-bounds nth values are chosen lazily when a read needs them.
  Each constraint is checked as soon as its variables are assigned.
*/
oracle_result oracle_solve(const term_manager& tm, const std::vector<term_id>& formulas, const bounds& b = {});
oracle_result oracle_solve(const term_manager& tm, const configuration& cfg, const bounds& b = {});

// 0, 1, -1, 2, -2, ... of the given length
std::vector<std::int64_t> small_ints(std::size_t count);

} // namespace seqsat
