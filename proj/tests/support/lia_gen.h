#pragma once

#include <random>
#include <vector>

#include "seqsat/linear.h"
#include "seqsat/term.h"

namespace testgen {

using namespace seqsat;

inline arith_atom random_atom(const std::vector<term_id>& vars, std::mt19937_64& rng) {
    linear_expr e;
    std::size_t n = 1 + rng() % std::min<std::size_t>(3, vars.size());
    for (std::size_t k = 0; k < n; ++k)
        e.add_var(vars[rng() % vars.size()], static_cast<long>(rng() % 9) - 4);
    e.constant = static_cast<long>(rng() % 9) - 4;
    int r = static_cast<int>(rng() % 6);
    return {e, r < 3 ? rel::le : r < 5 ? rel::eq : rel::ne};
}

// every variable boxed to [-bound, bound]
inline std::vector<arith_constraint> random_lia_instance(const std::vector<term_id>& vars, std::mt19937_64& rng,
                                                         long bound) {
    std::vector<arith_constraint> cs;
    for (term_id v : vars) {
        cs.emplace_back(arith_atom::le(linear_expr::of_var(v), linear_expr::of_const(bound)));
        cs.emplace_back(arith_atom::ge(linear_expr::of_var(v), linear_expr::of_const(-bound)));
    }
    std::size_t n = 1 + rng() % 4;
    for (std::size_t k = 0; k < n; ++k) {
        if (rng() % 5 == 0)
            cs.emplace_back(std::vector<arith_atom>{random_atom(vars, rng), random_atom(vars, rng)});
        else
            cs.emplace_back(random_atom(vars, rng));
    }
    return cs;
}

} // namespace testgen
