#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqsat/congruence.h"
#include "seqsat/engine.h"

namespace seqsat::detail {

// decision levels a fact depends on, sorted
using dep_set = std::vector<std::uint32_t>;

void add_deps(dep_set& into, const dep_set& from);

// raised by a probe when a conclusion needs a variable that does not exist yet
struct needs_fresh {};

/*
  Rule conclusions are written against this interface. The committing
  implementation extends the configuration; the probing one only checks
  whether everything is already there.
*/
class emitter {
public:
    explicit emitter(term_manager& tm) : tm(tm) {}
    virtual ~emitter() = default;

    virtual term_id fresh(const std::string& key, const sort& s) = 0;
    virtual term_id len(term_id seq_var) = 0;
    virtual void eq(term_id a, term_id b) = 0;
    virtual void diseq(term_id a, term_id b) = 0;
    virtual void arith(const arith_constraint& c) = 0;
    // make t a term of S
    virtual void introduce(term_id t) = 0;

    linear_expr lvar(term_id v) { return linear_expr::of_var(v); }
    linear_expr llen(term_id seq_var) { return linear_expr::of_var(len(seq_var)); }

    term_manager& tm;
};

using branch_fn = std::function<void(emitter&)>;

struct application {
    std::string rule;
    std::vector<term_id> premises;
    std::string key;
    std::vector<branch_fn> branches;
    // levels the premises depend on
    dep_set deps;
};

struct class_info {
    term_id root = null_term;
    term_id alpha = null_term;
    bool has_empty = false;
    bool atomic = false;
    std::vector<term_id> concats;
    std::vector<term_id> units;
};

// derived from the current configuration and congruence state
struct view {
    std::map<term_id, class_info> classes; // Seq classes by root
    std::vector<term_id> seq_vars;
    std::vector<term_id> seq_apps;
    std::vector<s_literal> updates; // x = update(y, i, v), unmarked right-hand sides only
    std::vector<s_literal> nths;    // x = nth(y, i), unmarked
    std::vector<s_literal> extracts;
    std::vector<s_literal> seq_diseqs;
    std::vector<term_id> nth_terms; // unmarked nth terms of S
};

struct node {
    configuration cfg;
    lia_model model;
    std::size_t a_checked = 0;
    std::size_t s_asserted = 0;
    std::size_t a_vars_upto = 0;
    std::set<term_id> a_vars;
    std::set<std::string> redundant;
    std::set<term_id> marked;
    std::map<term_id, std::size_t> splits;
    nf_map nfs;
    // per class root: levels behind alpha = concat(nf)
    std::map<term_id, dep_set> nf_deps;
    bool nfs_complete = false;
    // aligned with cfg.S and cfg.A
    std::vector<dep_set> s_deps;
    std::vector<dep_set> a_deps;
    // first position of each literal
    std::map<s_literal, std::size_t> s_pos;
};

struct outcome {
    verdict status = verdict::unknown;
    std::optional<model> sat_model;
    std::optional<configuration> saturated;
    std::string reason;
    // unsat: levels the refutation depends on
    dep_set conflict;
};

struct split_choice {
    term_id y = null_term;
    term_id y2 = null_term;
    bool reverse = false;
};

class search {
public:
    search(term_manager& tm, const engine_options& opts, engine_stats& stats);

    outcome run(configuration cfg);

private:
    enum class sync_result { ok, s_conflict, a_conflict, a_unknown };

    outcome explore(node& n, std::size_t depth);
    sync_result sync(node& n, dep_set& conflict);
    bool commit(node& n, const application& app, std::size_t k, std::uint32_t level);
    void stamp(node& n, const dep_set& deps);
    dep_set lit_deps(const node& n, const s_literal& l) const;
    dep_set eq_deps(const node& n, term_id a, term_id b) const;
    // alpha(t) = t and the normal form of its class
    dep_set nf_deps_of(const node& n, term_id t) const;
    dep_set a_deps_of(const node& n, const std::vector<std::size_t>& positions) const;
    bool viable(node& n, const application& app);
    std::optional<application> next(node& n, bool& blocked);
    std::vector<std::size_t> branch_order(const node& n, const application& app);
    outcome saturated(node& n);
    std::set<term_id> shared_ints(const node& n) const;
    view build_view(node& n);
    void mark_congruent(node& n);
    void trace(const std::string& rule, const std::vector<term_id>& premises, std::size_t k, std::size_t n);
    std::optional<std::string> limit_reached() const;
    void check_normal_forms(const node& n);

    // core steps
    std::optional<application> step_lengths(node& n);
    std::optional<application> step_extract(node& n, const view& v);
    std::optional<application> step_unit_eq(node& n, const view& v);
    std::optional<application> step_split(node& n, const view& v, bool& blocked);
    std::optional<application> step_concat_eq(node& n, const view& v);
    std::optional<application> step_deq(node& n, const view& v);
    std::optional<application> step_reduce(node& n, const view& v);
    std::optional<application> step_arith_share(node& n, const view& v);

    // extended steps
    std::optional<application> step_distribute(node& n, const view& v);
    std::optional<application> step_array(node& n, const view& v);

    application c_split(const split_choice& s);
    // the application restricted to its arithmetically feasible branch, when there is exactly one
    std::optional<application> length_pruned(node& n, application app);
    std::optional<application> try_split(node& n, const std::vector<term_id>& a, const std::vector<term_id>& b,
                                         const dep_set& deps);
    application update_concat(const s_literal& l, const std::vector<term_id>& w, bool inverse);
    const std::vector<term_id>* nf_of(const node& n, term_id t) const;
    const class_info* class_of(const view& v, term_id t) const;

    term_manager& m_tm;
    const engine_options& m_opts;
    engine_stats& m_stats;
    congruence m_cc;
    std::set<arith_constraint> m_canon;
    bool m_canon_valid = false;
};

std::string key_of(const std::string& rule, const std::vector<term_id>& premises);

} // namespace seqsat::detail
