#pragma once

// Naive congruence fixpoint: repeat pairwise congruence checks until stable.

#include <set>
#include <vector>

#include "seqsat/term.h"

namespace oracle_cc {

using namespace seqsat;

struct naive_closure {
    std::vector<term_id> terms;
    std::vector<std::size_t> cls;
    bool conflict = false;

    std::size_t idx(term_id t) const {
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i] == t)
                return i;
        return terms.size();
    }
    bool equal(term_id a, term_id b) const { return cls[idx(a)] == cls[idx(b)]; }
};

inline void subterms(const term_manager& tm, term_id t, std::set<term_id>& out) {
    if (!out.insert(t).second)
        return;
    for (term_id c : tm.kids(t))
        subterms(tm, c, out);
}

inline naive_closure close(const term_manager& tm, const std::vector<std::pair<term_id, term_id>>& eqs,
                           const std::vector<std::pair<term_id, term_id>>& diseqs) {
    std::set<term_id> all;
    for (auto [a, b] : eqs) {
        subterms(tm, a, all);
        subterms(tm, b, all);
    }
    for (auto [a, b] : diseqs) {
        subterms(tm, a, all);
        subterms(tm, b, all);
    }
    naive_closure nc;
    nc.terms.assign(all.begin(), all.end());
    for (std::size_t i = 0; i < nc.terms.size(); ++i)
        nc.cls.push_back(i);
    auto relabel = [&](std::size_t from, std::size_t to) {
        for (auto& c : nc.cls)
            if (c == from)
                c = to;
    };
    for (auto [a, b] : eqs)
        relabel(nc.cls[nc.idx(a)], nc.cls[nc.idx(b)]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < nc.terms.size(); ++i)
            for (std::size_t j = i + 1; j < nc.terms.size(); ++j) {
                if (nc.cls[i] == nc.cls[j])
                    continue;
                const term_node& x = tm.node(nc.terms[i]);
                const term_node& y = tm.node(nc.terms[j]);
                if (x.kids.empty() || x.kind != y.kind || x.kids.size() != y.kids.size())
                    continue;
                bool cong = true;
                for (std::size_t k = 0; k < x.kids.size() && cong; ++k)
                    cong = nc.equal(x.kids[k], y.kids[k]);
                if (cong) {
                    relabel(nc.cls[i], nc.cls[j]);
                    changed = true;
                }
            }
    }
    for (auto [a, b] : diseqs)
        nc.conflict |= nc.equal(a, b);
    return nc;
}

} // namespace oracle_cc
