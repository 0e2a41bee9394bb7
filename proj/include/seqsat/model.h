#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seqsat/config.h"
#include "seqsat/congruence.h"
#include "seqsat/linear.h"
#include "seqsat/term.h"

namespace seqsat {

// elements are integers; for uninterpreted sorts they are indices printed as @u<N>
using seq_value = std::vector<std::int64_t>;

struct oob_key {
    std::string elem_sort;
    seq_value seq;
    std::int64_t index;
    bool operator<(const oob_key& o) const {
        if (elem_sort != o.elem_sort)
            return elem_sort < o.elem_sort;
        if (seq != o.seq)
            return seq < o.seq;
        return index < o.index;
    }
};

struct model {
    std::map<term_id, std::int64_t> ints;
    std::map<term_id, std::int64_t> elems;
    std::map<term_id, seq_value> seqs;
    std::map<term_id, bool> bools;
    // out-of-bounds nth; reads missing here yield oob_default
    std::map<oob_key, std::int64_t> nth_oob;
    std::int64_t oob_default = 0;
    // missing out-of-bounds reads throw oob_miss instead of yielding oob_default
    bool strict_oob = false;
};

struct oob_miss {
    oob_key key;
    bool int_elems;
};

struct value {
    sort_kind kind = sort_kind::int_sort;
    std::int64_t scalar = 0; // Int, element, or Bool (0/1)
    seq_value seq;
    bool operator==(const value& o) const { return kind == o.kind && scalar == o.scalar && seq == o.seq; }
    bool operator!=(const value& o) const { return !(*this == o); }
};

// throws contract_error for variables the model does not cover
value evaluate(const term_manager& tm, const model& m, term_id t);
bool holds(const term_manager& tm, const model& m, term_id formula);

std::string print_value(const term_manager& tm, const sort& s, const value& v);
// define-fun lines for the given declarations
std::string print_model(const term_manager& tm, const model& m,
                        const std::vector<std::pair<std::string, sort>>& decls);

// normal form of each Seq class (keyed by class root), as class representatives
using nf_map = std::map<term_id, std::vector<term_id>>;

/*
  Model of a saturated configuration: integers from the arithmetic model,
  distinct values per element class, atomic sequence classes filled through
  the weak equivalence graph of their update literals, non-atomic classes
  concatenated along their normal forms, and the out-of-bounds table taken
  from nth literals. Throws contract_error when the construction cannot
  respect the configuration.
*/
model build_model(const term_manager& tm, const configuration& cfg, const congruence& cc, const lia_model& arith,
                  const nf_map& nfs);

// every literal of S and constraint of A holds in m
bool satisfies(const term_manager& tm, const model& m, const configuration& cfg, std::string* why = nullptr);

} // namespace seqsat
