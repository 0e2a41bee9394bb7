#pragma once

// Independent rewriting oracle: single rule steps at random redex
// positions, and a comparison key that treats integer sums as linear forms.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "seqsat/term.h"

namespace oracle_nf {

using namespace seqsat;

inline bool is_redex(term_manager& tm, term_id t) {
    op k = tm.kind(t);
    if (k == op::len) {
        op a = tm.kind(tm.kid(t, 0));
        return a == op::empty || a == op::unit || a == op::update || a == op::concat;
    }
    if (k == op::concat) {
        for (term_id c : tm.kids(t))
            if (tm.kind(c) == op::empty || tm.kind(c) == op::concat)
                return true;
    }
    return false;
}

inline term_id concat_of(term_manager& tm, std::vector<term_id> ks, const sort& s) {
    if (ks.empty())
        return tm.mk_empty(s);
    if (ks.size() == 1)
        return ks[0];
    return tm.mk_app(op::concat, ks);
}

// apply one rule at the root; for concat, the rule acts on child position pos
inline term_id step_root(term_manager& tm, term_id t, std::mt19937_64& rng) {
    if (tm.kind(t) == op::len) {
        term_id s = tm.kid(t, 0);
        switch (tm.kind(s)) {
        case op::empty: return tm.mk_int(0);
        case op::unit: return tm.mk_int(1);
        case op::update: return tm.mk_len(tm.kid(s, 0));
        default: {
            term_id acc = tm.mk_len(tm.kid(s, 0));
            for (std::size_t i = 1; i < tm.kids(s).size(); ++i)
                acc = tm.mk_add(acc, tm.mk_len(tm.kid(s, i)));
            return acc;
        }
        }
    }
    std::vector<std::size_t> cand;
    const auto ks = tm.kids(t);
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (tm.kind(ks[i]) == op::empty || tm.kind(ks[i]) == op::concat)
            cand.push_back(i);
    std::size_t p = cand[rng() % cand.size()];
    std::vector<term_id> out;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (i != p) {
            out.push_back(ks[i]);
        } else if (tm.kind(ks[i]) == op::concat) {
            for (term_id c : tm.kids(ks[i]))
                out.push_back(c);
        }
    }
    return concat_of(tm, out, tm.sort_of(t));
}

inline void redexes(term_manager& tm, term_id t, std::vector<std::vector<unsigned>>& out, std::vector<unsigned>& path) {
    if (is_redex(tm, t))
        out.push_back(path);
    const auto ks = tm.kids(t);
    for (unsigned i = 0; i < ks.size(); ++i) {
        path.push_back(i);
        redexes(tm, ks[i], out, path);
        path.pop_back();
    }
}

inline term_id replace_at(term_manager& tm, term_id t, const std::vector<unsigned>& path, std::size_t d,
                          std::mt19937_64& rng) {
    if (d == path.size())
        return step_root(tm, t, rng);
    std::vector<term_id> ks = tm.kids(t);
    ks[path[d]] = replace_at(tm, ks[path[d]], path, d + 1, rng);
    return tm.mk_app(tm.kind(t), ks);
}

// rewrite at random positions until no redex is left
inline term_id random_fixpoint(term_manager& tm, term_id t, std::mt19937_64& rng, std::size_t* steps = nullptr) {
    std::size_t n = 0;
    for (;;) {
        std::vector<std::vector<unsigned>> rs;
        std::vector<unsigned> path;
        redexes(tm, t, rs, path);
        if (rs.empty())
            break;
        t = replace_at(tm, t, rs[rng() % rs.size()], 0, rng);
        ++n;
    }
    if (steps)
        *steps = n;
    return t;
}

inline bool is_arith(term_manager& tm, term_id t) {
    op k = tm.kind(t);
    return k == op::add || k == op::neg || k == op::int_const;
}

inline std::string key(term_manager& tm, term_id t);

inline std::string struct_key(term_manager& tm, term_id t) {
    const term_node& n = tm.node(t);
    if (n.kids.empty())
        return tm.to_string(t);
    std::string r = "(";
    r += op_name(n.kind);
    for (term_id k : n.kids)
        r += " " + key(tm, k);
    return r + ")";
}

inline void collect(term_manager& tm, term_id t, long sign, std::map<std::string, long>& m, long& c) {
    switch (tm.kind(t)) {
    case op::add:
        collect(tm, tm.kid(t, 0), sign, m, c);
        collect(tm, tm.kid(t, 1), sign, m, c);
        return;
    case op::neg: collect(tm, tm.kid(t, 0), -sign, m, c); return;
    case op::int_const: c += sign * tm.node(t).value; return;
    default: m[struct_key(tm, t)] += sign; return;
    }
}

// structural key in which integer terms compare as linear combinations
inline std::string key(term_manager& tm, term_id t) {
    if (!tm.sort_of(t).is_int())
        return struct_key(tm, t);
    std::map<std::string, long> m;
    long c = 0;
    collect(tm, t, 1, m, c);
    std::string r = "[lin";
    for (auto const& [k, v] : m)
        if (v != 0)
            r += " " + std::to_string(v) + "*" + k;
    return r + " " + std::to_string(c) + "]";
}

} // namespace oracle_nf
