#pragma once

#include <random>
#include <vector>

#include "seqsat/term.h"

namespace testgen {

using namespace seqsat;

struct cc_instance {
    std::vector<std::pair<term_id, term_id>> eqs, diseqs;
};

// small terms over few variables
inline term_id cc_term(term_manager& tm, std::mt19937_64& rng, int depth, bool seq) {
    sort ss = sort::seq(sort::elem("U"));
    static const char* sv[] = {"a", "b", "c"};
    static const char* iv[] = {"i", "j"};
    static const char* ev[] = {"e", "f"};
    if (seq) {
        if (depth <= 0 || rng() % 3 == 0)
            return tm.mk_var(sv[rng() % 3], ss);
        switch (rng() % 3) {
        case 0: return tm.mk_unit(tm.mk_var(ev[rng() % 2], sort::elem("U")));
        case 1:
            return tm.mk_update(cc_term(tm, rng, depth - 1, true), tm.mk_var(iv[rng() % 2], sort::int_sort()),
                                tm.mk_var(ev[rng() % 2], sort::elem("U")));
        default: return tm.mk_app(op::concat, {cc_term(tm, rng, depth - 1, true), cc_term(tm, rng, depth - 1, true)});
        }
    }
    if (depth <= 0 || rng() % 3 == 0)
        return tm.mk_var(ev[rng() % 2], sort::elem("U"));
    return tm.mk_nth(cc_term(tm, rng, depth - 1, true), tm.mk_var(iv[rng() % 2], sort::int_sort()));
}

inline cc_instance random_cc_instance(term_manager& tm, std::mt19937_64& rng) {
    cc_instance inst;
    std::size_t n = 1 + rng() % 8;
    for (std::size_t k = 0; k < n; ++k) {
        bool seq = rng() % 2;
        term_id a = cc_term(tm, rng, 2, seq), b = cc_term(tm, rng, 2, seq);
        if (rng() % 4 == 0)
            inst.diseqs.emplace_back(a, b);
        else
            inst.eqs.emplace_back(a, b);
    }
    return inst;
}

} // namespace testgen
