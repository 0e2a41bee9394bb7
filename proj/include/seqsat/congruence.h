#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "seqsat/term.h"

namespace seqsat {

/*
  Congruence closure over the terms of a term_manager, with a trail so that
  states can be restored in LIFO order. Classes are merged by size and every
  member points at its root directly, so find is a lookup.
*/
class congruence {
public:
    // caller-supplied tag of an asserted (dis)equality, reported by explanations
    using reason = std::uint32_t;
    static constexpr reason no_reason = UINT32_MAX;

    explicit congruence(const term_manager& tm) : m_tm(tm) {}

    // registers t and all of its subterms
    void register_term(term_id t);
    bool is_registered(term_id t) const { return t < m_root.size() && m_root[t] != null_term; }

    // both return false when the state is in conflict afterwards
    bool assert_eq(term_id a, term_id b, reason r = no_reason);
    bool assert_diseq(term_id a, term_id b, reason r = no_reason);
    // atom is an equality term
    bool assert_literal(bool positive, term_id atom, reason r = no_reason);

    bool in_conflict() const { return m_conflict; }
    // tags of asserted literals that together force a = b; requires are_equal(a, b)
    std::vector<reason> explain(term_id a, term_id b) const;
    // tags of a set of asserted literals that is contradictory
    const std::vector<reason>& conflict_explanation() const { return m_conflict_expl; }

    term_id root(term_id t) const { return m_root[t]; }
    bool are_equal(term_id a, term_id b) const;
    bool are_disequal(term_id a, term_id b) const;
    // lowest-id variable of the class of t, or the lowest-id member when there is none
    term_id alpha(term_id t) const;

    const std::vector<term_id>& members(term_id root) const { return m_members[root]; }
    // registered terms in registration order
    const std::vector<term_id>& terms() const { return m_terms; }
    std::vector<term_id> roots() const;
    const std::vector<std::pair<term_id, term_id>>& disequalities() const { return m_diseqs; }

    std::size_t mark() const { return m_trail.size(); }
    void undo_to(std::size_t mark);

private:
    enum class entry_kind { reg, merge, sig_insert, sig_erase, diseq, conflict };
    // proof forest edge label: an asserted literal or congruence of two applications
    struct justification {
        reason tag = no_reason;
        term_id p = null_term;
        term_id q = null_term;
    };
    struct pf_change {
        term_id node;
        term_id parent;
        justification just;
    };
    struct entry {
        entry_kind kind;
        term_id a = null_term;
        term_id b = null_term;
        std::size_t members_before = 0;
        std::size_t uses_before = 0;
        term_id alpha_before = null_term;
        std::vector<term_id> key;
        std::vector<pf_change> proof;
    };
    struct pending_eq {
        term_id a;
        term_id b;
        justification just;
    };
    struct key_hash {
        std::size_t operator()(const std::vector<term_id>& k) const;
    };

    std::vector<term_id> signature(term_id t) const;
    void grow(term_id t);
    void process(term_id a, term_id b, justification j);
    void check_diseqs();
    void set_conflict(std::vector<reason> expl);
    void add_proof_edge(term_id a, term_id b, justification j, std::vector<pf_change>& log);

    const term_manager& m_tm;
    std::vector<term_id> m_root;
    std::vector<std::vector<term_id>> m_members;
    std::vector<std::vector<term_id>> m_uses;
    std::vector<term_id> m_alpha;
    std::vector<term_id> m_terms;
    std::unordered_map<std::vector<term_id>, term_id, key_hash> m_sigs;
    std::vector<std::pair<term_id, term_id>> m_diseqs;
    std::vector<reason> m_diseq_reasons;
    std::vector<term_id> m_pf;
    std::vector<justification> m_pj;
    std::vector<entry> m_trail;
    bool m_conflict = false;
    std::vector<reason> m_conflict_expl;
};

} // namespace seqsat
