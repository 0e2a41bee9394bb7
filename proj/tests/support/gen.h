#pragma once

// Random term generation shared by the unit and acceptance tests.

#include <random>
#include <vector>

#include "seqsat/term.h"

namespace testgen {

using namespace seqsat;

struct term_pool {
    std::vector<term_id> seqs;
    std::vector<term_id> ints;
    sort seq_sort;
};

inline term_pool make_pool(term_manager& tm) {
    term_pool p;
    p.seq_sort = sort::seq(sort::int_sort());
    for (const char* n : {"x", "y", "z"})
        p.seqs.push_back(tm.mk_var(n, p.seq_sort));
    for (const char* n : {"i", "j"})
        p.ints.push_back(tm.mk_var(n, sort::int_sort()));
    return p;
}

term_id random_int_term(term_manager& tm, const term_pool& p, std::mt19937_64& rng, int depth);

inline term_id random_seq_term(term_manager& tm, const term_pool& p, std::mt19937_64& rng, int depth) {
    int c = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 7);
    switch (c) {
    case 0: return p.seqs[rng() % p.seqs.size()];
    case 1: return tm.mk_empty(p.seq_sort);
    case 2: return tm.mk_unit(random_int_term(tm, p, rng, depth - 1));
    case 3:
        return tm.mk_update(random_seq_term(tm, p, rng, depth - 1), random_int_term(tm, p, rng, depth - 1),
                            random_int_term(tm, p, rng, depth - 1));
    case 4:
        return tm.mk_extract(random_seq_term(tm, p, rng, depth - 1), random_int_term(tm, p, rng, depth - 1),
                             random_int_term(tm, p, rng, depth - 1));
    default: {
        std::size_t n = 2 + rng() % 3;
        std::vector<term_id> ks;
        for (std::size_t i = 0; i < n; ++i)
            ks.push_back(random_seq_term(tm, p, rng, depth - 1));
        return tm.mk_app(op::concat, ks);
    }
    }
}

inline term_id random_int_term(term_manager& tm, const term_pool& p, std::mt19937_64& rng, int depth) {
    int c = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 7);
    switch (c) {
    case 0: return p.ints[rng() % p.ints.size()];
    case 1: return tm.mk_int(static_cast<std::int64_t>(rng() % 4));
    case 2:
    case 3: return tm.mk_len(random_seq_term(tm, p, rng, depth - 1));
    case 4: return tm.mk_nth(random_seq_term(tm, p, rng, depth - 1), random_int_term(tm, p, rng, depth - 1));
    case 5: return tm.mk_add(random_int_term(tm, p, rng, depth - 1), random_int_term(tm, p, rng, depth - 1));
    default: return tm.mk_neg(random_int_term(tm, p, rng, depth - 1));
    }
}

inline term_id random_term(term_manager& tm, const term_pool& p, std::mt19937_64& rng, int depth) {
    return rng() % 2 ? random_seq_term(tm, p, rng, depth) : random_int_term(tm, p, rng, depth);
}

} // namespace testgen
