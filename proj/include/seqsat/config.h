#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "seqsat/linear.h"
#include "seqsat/term.h"

namespace seqsat {

// input literal; atom is an eq or leq term
struct literal {
    bool positive = true;
    term_id atom = null_term;
    bool operator==(const literal& o) const { return positive == o.positive && atom == o.atom; }
    bool operator<(const literal& o) const {
        return atom != o.atom ? atom < o.atom : positive < o.positive;
    }
};

using raw_clause = std::vector<literal>;

// flat sequence constraint: lhs is a variable, rhs a variable or f(vars)
struct s_literal {
    bool positive = true;
    term_id lhs = null_term;
    term_id rhs = null_term;
    bool operator==(const s_literal& o) const {
        return positive == o.positive && lhs == o.lhs && rhs == o.rhs;
    }
    bool operator<(const s_literal& o) const {
        if (lhs != o.lhs)
            return lhs < o.lhs;
        if (rhs != o.rhs)
            return rhs < o.rhs;
        return positive < o.positive;
    }
};

/*
  A pair of sequence constraints S and arithmetic constraints A in flat
  form. Every Seq variable occurring in S has a length variable l with
  l = |x| in S and l >= 0 in A; every non-variable term of S is the right
  hand side of some literal (its defining variable). Values are copied
  freely, one per search branch.
*/
class configuration {
public:
    std::vector<s_literal> S;
    std::vector<arith_constraint> A;
    std::map<term_id, term_id> len_vars;
    std::map<term_id, term_id> def_vars;
    std::map<std::string, term_id> witnesses;
    std::uint32_t fresh_counter = 0;

    term_id fresh(term_manager& tm, const sort& s);
    term_id len_var(term_manager& tm, term_id seq_var);

    // variable standing for t, introducing a definition when needed
    term_id name(term_manager& tm, term_id t);
    // t with every argument replaced by its name
    term_id flat(term_manager& tm, term_id t);
    linear_expr linearize(term_manager& tm, term_id t);

    void add_eq(term_manager& tm, term_id s, term_id t);
    void add_diseq(term_manager& tm, term_id s, term_id t);
    void add_arith(const arith_constraint& c);
    // input literals: eq over any sort, or leq
    void add_literal(term_manager& tm, const literal& l);
    void add_clause(term_manager& tm, const raw_clause& c);

    bool has(const s_literal& l) const { return m_s_set.count(l) > 0; }
    bool has(const arith_constraint& c) const;

    std::string to_string(const term_manager& tm) const;

private:
    void push_s(term_manager& tm, s_literal l);
    arith_atom to_atom(term_manager& tm, const literal& l);
    bool is_arith(const term_manager& tm, term_id t) const;

    std::set<s_literal> m_s_set;
    std::set<arith_constraint> m_a_set;
};

// build a configuration from sequence literals and arithmetic clauses
configuration flatten(term_manager& tm, const std::vector<literal>& raw_s, const std::vector<raw_clause>& raw_a);

} // namespace seqsat
