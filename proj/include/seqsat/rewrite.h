#pragma once

#include <cstddef>

#include "seqsat/term.h"

namespace seqsat {

/*
  Length/concatenation normalization:

    |eps| -> 0            |unit(t)| -> 1          |update(s,i,t)| -> |s|
    |s1 ++ ... ++ sn| -> |s1| + ... + |sn|
    u ++ eps ++ v -> u ++ v
    u ++ (s1 ++ ... ++ sn) ++ v -> u ++ s1 ++ ... ++ sn ++ v

  Concatenations left with one argument collapse to it, with none to eps.
  Rewriting is innermost, leftmost. If steps is given, it receives the
  number of rule applications.
*/
term_id nf(term_manager& tm, term_id t, std::size_t* steps = nullptr);

// one rule application at the root, null_term when no rule matches
term_id rewrite_root(term_manager& tm, term_id t);

} // namespace seqsat
