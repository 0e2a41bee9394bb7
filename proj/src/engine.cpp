#include "seqsat/engine.h"

#include <algorithm>
#include <sstream>

#include "engine_impl.h"
#include "seqsat/error.h"

namespace seqsat {

const char* to_string(verdict v) {
    switch (v) {
    case verdict::sat: return "sat";
    case verdict::unsat: return "unsat";
    default: return "unknown";
    }
}

const char* to_string(mode m) { return m == mode::base ? "base" : "ext"; }

engine::engine(term_manager& tm, engine_options opts) : m_tm(tm), m_opts(std::move(opts)) {}

engine::~engine() = default;

engine_result engine::run(configuration cfg) {
    detail::search s(m_tm, m_opts, m_stats);
    detail::outcome o = s.run(std::move(cfg));
    engine_result r;
    r.status = o.status;
    r.sat_model = std::move(o.sat_model);
    r.saturated = std::move(o.saturated);
    r.reason = std::move(o.reason);
    return r;
}

namespace detail {

namespace {

struct out_of_budget {
    std::string why;
};

class committer : public emitter {
public:
    committer(term_manager& tm, configuration& cfg) : emitter(tm), cfg(cfg) {}

    term_id fresh(const std::string& key, const sort& s) override {
        auto it = cfg.witnesses.find(key);
        if (it != cfg.witnesses.end())
            return it->second;
        term_id v = cfg.fresh(tm, s);
        cfg.witnesses.emplace(key, v);
        return v;
    }
    term_id len(term_id x) override { return cfg.len_var(tm, x); }
    void eq(term_id a, term_id b) override { cfg.add_eq(tm, a, b); }
    void diseq(term_id a, term_id b) override { cfg.add_diseq(tm, a, b); }
    void arith(const arith_constraint& c) override { cfg.add_arith(c); }
    void introduce(term_id t) override { cfg.name(tm, t); }

    configuration& cfg;
};

// succeeds only when every conclusion is already present
class probe : public emitter {
public:
    probe(term_manager& tm, const configuration& cfg, const congruence& cc, const std::set<arith_constraint>& canon)
        : emitter(tm), cfg(cfg), cc(cc), canon(canon) {}

    term_id fresh(const std::string& key, const sort&) override {
        auto it = cfg.witnesses.find(key);
        if (it == cfg.witnesses.end())
            throw needs_fresh{};
        return it->second;
    }
    term_id len(term_id x) override {
        auto it = cfg.len_vars.find(x);
        if (it == cfg.len_vars.end())
            throw needs_fresh{};
        return it->second;
    }
    void eq(term_id a, term_id b) override {
        term_id ra = resolve(a), rb = resolve(b);
        if (!cc.are_equal(ra, rb))
            throw needs_fresh{};
    }
    void diseq(term_id a, term_id b) override {
        term_id ra = resolve(a), rb = resolve(b);
        if (!cc.are_disequal(ra, rb))
            throw needs_fresh{};
    }
    void arith(const arith_constraint& c) override {
        auto n = c.normalized();
        if (!n || cfg.has(*n))
            return;
        auto r = arith_constraint(rename(*n)).normalized();
        if (!r || canon.count(*r))
            return;
        throw needs_fresh{};
    }
    void introduce(term_id t) override { resolve(t); }

    arith_constraint rename(const arith_constraint& c) const {
        arith_constraint r;
        for (auto const& a : c.disjuncts)
            r.disjuncts.push_back({a.expr.rename([&](term_id v) { return alias(v); }), a.r});
        return r;
    }

private:
    term_id alias(term_id v) const { return cc.is_registered(v) ? cc.alpha(v) : v; }

    term_id resolve(term_id t) {
        if (tm.is_var(t)) {
            if (!cc.is_registered(t))
                throw needs_fresh{};
            return t;
        }
        std::vector<term_id> ks;
        for (term_id k : tm.kids(t))
            ks.push_back(resolve(k));
        term_id f = ks.empty() ? t : tm.mk_app(tm.kind(t), ks);
        if (!cc.is_registered(f))
            throw needs_fresh{};
        return f;
    }

    const configuration& cfg;
    const congruence& cc;
    const std::set<arith_constraint>& canon;
};

// evaluates the arithmetic part of a branch against the current model
class model_check : public emitter {
public:
    model_check(term_manager& tm, const configuration& cfg, const lia_model& m) : emitter(tm), cfg(cfg), m(m) {}

    term_id fresh(const std::string& key, const sort&) override {
        auto it = cfg.witnesses.find(key);
        if (it == cfg.witnesses.end())
            throw needs_fresh{};
        return it->second;
    }
    term_id len(term_id x) override {
        auto it = cfg.len_vars.find(x);
        if (it == cfg.len_vars.end())
            throw needs_fresh{};
        return it->second;
    }
    void eq(term_id, term_id) override {}
    void diseq(term_id, term_id) override {}
    void introduce(term_id) override {}
    void arith(const arith_constraint& c) override {
        for (auto const& a : c.disjuncts)
            for (auto const& [v, k] : a.expr.coeffs)
                if (!m.count(v))
                    return;
        if (!seqsat::holds(c, m))
            ok = false;
    }

    const configuration& cfg;
    const lia_model& m;
    bool ok = true;
};

} // namespace

std::string key_of(const std::string& rule, const std::vector<term_id>& premises) {
    std::string k = rule;
    k += ':';
    for (std::size_t i = 0; i < premises.size(); ++i) {
        if (i)
            k += ',';
        k += std::to_string(premises[i]);
    }
    return k;
}

search::search(term_manager& tm, const engine_options& opts, engine_stats& stats)
    : m_tm(tm), m_opts(opts), m_stats(stats), m_cc(tm) {}

void add_deps(dep_set& into, const dep_set& from) {
    if (from.empty())
        return;
    dep_set out;
    out.reserve(into.size() + from.size());
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into = std::move(out);
}

void search::stamp(node& n, const dep_set& deps) {
    const configuration& cfg = n.cfg;
    for (std::size_t i = n.s_deps.size(); i < cfg.S.size(); ++i) {
        n.s_deps.push_back(deps);
        n.s_pos.emplace(cfg.S[i], i);
    }
    n.a_deps.resize(cfg.A.size(), deps);
}

dep_set search::lit_deps(const node& n, const s_literal& l) const {
    auto it = n.s_pos.find(l);
    if (it == n.s_pos.end())
        throw contract_error("premise is not a literal of S");
    return n.s_deps[it->second];
}

dep_set search::eq_deps(const node& n, term_id a, term_id b) const {
    dep_set d;
    for (congruence::reason r : m_cc.explain(a, b))
        add_deps(d, n.s_deps[r]);
    return d;
}

dep_set search::nf_deps_of(const node& n, term_id t) const {
    dep_set d = eq_deps(n, t, m_cc.alpha(t));
    auto it = n.nf_deps.find(m_cc.root(t));
    if (it != n.nf_deps.end())
        add_deps(d, it->second);
    return d;
}

dep_set search::a_deps_of(const node& n, const std::vector<std::size_t>& positions) const {
    dep_set d;
    for (std::size_t p : positions)
        if (p < n.a_deps.size())
            add_deps(d, n.a_deps[p]);
    return d;
}

outcome search::run(configuration cfg) {
    node n;
    n.cfg = std::move(cfg);
    stamp(n, {});
    try {
        return explore(n, 0);
    } catch (const out_of_budget& e) {
        outcome o;
        o.reason = e.why;
        return o;
    }
}

std::optional<std::string> search::limit_reached() const {
    if (m_stats.steps >= m_opts.step_limit)
        return std::string("step limit reached");
    if (m_opts.deadline && std::chrono::steady_clock::now() > *m_opts.deadline)
        return std::string("time limit reached");
    return std::nullopt;
}

void search::trace(const std::string& rule, const std::vector<term_id>& premises, std::size_t k, std::size_t n) {
    if (!m_opts.trace)
        return;
    std::ostream& out = *m_opts.trace;
    out << "RULE " << rule << " PREMISES ";
    if (premises.empty())
        out << '-';
    for (std::size_t i = 0; i < premises.size(); ++i)
        out << (i ? "," : "") << premises[i];
    out << " BRANCH " << k << '/' << n << '\n';
}

search::sync_result search::sync(node& n, dep_set& conflict) {
    configuration& cfg = n.cfg;
    auto s_conflict = [&] {
        for (congruence::reason r : m_cc.conflict_explanation())
            add_deps(conflict, n.s_deps[r]);
        return sync_result::s_conflict;
    };
    for (;;) {
        while (n.s_asserted < cfg.S.size()) {
            const std::size_t pos = n.s_asserted++;
            const s_literal l = cfg.S[pos];
            m_cc.register_term(l.lhs);
            m_cc.register_term(l.rhs);
            auto tag = static_cast<congruence::reason>(pos);
            bool ok = l.positive ? m_cc.assert_eq(l.lhs, l.rhs, tag) : m_cc.assert_diseq(l.lhs, l.rhs, tag);
            if (!ok)
                return s_conflict();
        }
        if (m_cc.in_conflict())
            return s_conflict();
        // S-Prop
        for (term_id t : m_cc.terms()) {
            if (!m_tm.is_var(t) || !m_tm.sort_of(t).is_int())
                continue;
            term_id a = m_cc.alpha(t);
            if (a != t && m_tm.is_var(a)) {
                std::size_t before = cfg.A.size();
                cfg.add_arith(arith_atom::eq(linear_expr::of_var(t), linear_expr::of_var(a)));
                if (cfg.A.size() != before)
                    stamp(n, eq_deps(n, t, a));
            }
        }
        if (n.s_asserted == cfg.S.size())
            break;
    }
    for (; n.a_vars_upto < cfg.A.size(); ++n.a_vars_upto)
        for (auto const& a : cfg.A[n.a_vars_upto].disjuncts)
            for (auto const& [v, c] : a.expr.coeffs)
                n.a_vars.insert(v);
    if (n.a_checked < cfg.A.size()) {
        bool ok = true;
        for (std::size_t i = n.a_checked; i < cfg.A.size() && ok; ++i)
            ok = seqsat::holds(cfg.A[i], n.model);
        if (!ok) {
            lia_result r = lia_check(cfg.A, m_opts.lia, &n.model);
            if (r.status == lia_status::unsat) {
                add_deps(conflict, a_deps_of(n, r.core));
                return sync_result::a_conflict;
            }
            if (r.status == lia_status::unknown)
                return sync_result::a_unknown;
            n.model = std::move(r.model);
        }
        n.a_checked = cfg.A.size();
    }
    return sync_result::ok;
}

bool search::commit(node& n, const application& app, std::size_t k, std::uint32_t level) {
    if (auto why = limit_reached())
        throw out_of_budget{*why};
    ++m_stats.steps;
    ++m_stats.rules[app.rule];
    trace(app.rule, app.premises, k + 1, app.branches.size());
    if (app.rule == "C-Split")
        for (term_id p : app.premises)
            ++n.splits[p];
    configuration& cfg = n.cfg;
    std::size_t s0 = cfg.S.size(), a0 = cfg.A.size(), w0 = cfg.witnesses.size();
    committer c(m_tm, cfg);
    app.branches[k](c);
    dep_set deps = app.deps;
    if (app.branches.size() > 1)
        add_deps(deps, {level});
    stamp(n, deps);
    bool changed = cfg.S.size() != s0 || cfg.A.size() != a0 || cfg.witnesses.size() != w0;
    if (!changed)
        n.redundant.insert(app.key);
    return changed;
}

bool search::viable(node& n, const application& app) {
    if (n.redundant.count(app.key))
        return false;
    if (!m_canon_valid) {
        m_canon.clear();
        probe p(m_tm, n.cfg, m_cc, m_canon);
        for (auto const& c : n.cfg.A)
            if (auto r = arith_constraint(p.rename(c)).normalized())
                m_canon.insert(*r);
        m_canon_valid = true;
    }
    for (auto const& b : app.branches) {
        probe p(m_tm, n.cfg, m_cc, m_canon);
        try {
            b(p);
        } catch (const needs_fresh&) {
            continue;
        }
        n.redundant.insert(app.key);
        return false;
    }
    return true;
}

std::vector<std::size_t> search::branch_order(const node& n, const application& app) {
    std::vector<std::size_t> first, rest;
    for (std::size_t k = 0; k < app.branches.size(); ++k) {
        model_check mc(m_tm, n.cfg, n.model);
        try {
            app.branches[k](mc);
        } catch (const needs_fresh&) {
        }
        (mc.ok ? first : rest).push_back(k);
    }
    first.insert(first.end(), rest.begin(), rest.end());
    return first;
}

outcome search::explore(node& n, std::size_t depth) {
    for (;;) {
        if (auto why = limit_reached())
            throw out_of_budget{*why};
        dep_set conflict;
        switch (sync(n, conflict)) {
        case sync_result::s_conflict:
            trace("S-Conf", {}, 1, 1);
            return {verdict::unsat, std::nullopt, std::nullopt, "", std::move(conflict)};
        case sync_result::a_conflict:
            trace("A-Conf", {}, 1, 1);
            return {verdict::unsat, std::nullopt, std::nullopt, "", std::move(conflict)};
        case sync_result::a_unknown:
            return {verdict::unknown, std::nullopt, std::nullopt, "arithmetic undecided"};
        case sync_result::ok: break;
        }
        bool blocked = false;
        std::optional<application> app = next(n, blocked);
        if (!app) {
            if (blocked)
                return {verdict::unknown, std::nullopt, std::nullopt, "normal form computation blocked"};
            return saturated(n);
        }
        if (app->branches.size() == 1) {
            commit(n, *app, 0, 0);
            continue;
        }
        if (depth >= m_opts.max_depth)
            return {verdict::unknown, std::nullopt, std::nullopt, "depth limit reached"};
        bool unknown = false;
        std::string reason;
        dep_set why;
        const auto level = static_cast<std::uint32_t>(depth);
        for (std::size_t k : branch_order(n, *app)) {
            node child = n;
            std::size_t mark = m_cc.mark();
            commit(child, *app, k, level);
            outcome o = explore(child, depth + 1);
            m_cc.undo_to(mark);
            if (o.status == verdict::sat)
                return o;
            if (o.status == verdict::unknown) {
                if (!unknown)
                    reason = o.reason;
                unknown = true;
                continue;
            }
            // the refutation does not use this case split, so it refutes every branch
            if (!std::binary_search(o.conflict.begin(), o.conflict.end(), level))
                return o;
            o.conflict.erase(std::lower_bound(o.conflict.begin(), o.conflict.end(), level));
            add_deps(why, o.conflict);
        }
        if (unknown)
            return {verdict::unknown, std::nullopt, std::nullopt, reason, {}};
        return {verdict::unsat, std::nullopt, std::nullopt, "", std::move(why)};
    }
}

outcome search::saturated(node& n) {
    if (m_opts.check_normal_forms)
        check_normal_forms(n);
    lia_model am = n.model;
    for (term_id v : shared_ints(n))
        am.emplace(v, 0);
    outcome o;
    try {
        model m = build_model(m_tm, n.cfg, m_cc, am, n.nfs);
        std::string why;
        if (!satisfies(m_tm, m, n.cfg, &why)) {
            o.reason = "constructed model violates " + why;
            return o;
        }
        o.status = verdict::sat;
        o.sat_model = std::move(m);
        o.saturated = n.cfg;
    } catch (const contract_error& e) {
        o.reason = std::string("model construction failed: ") + e.what();
    }
    return o;
}

std::set<term_id> search::shared_ints(const node& n) const {
    std::set<term_id> out;
    for (term_id t : m_cc.terms()) {
        op k = m_tm.kind(t);
        if (m_tm.is_var(t) && m_tm.sort_of(t).is_int() && n.a_vars.count(t))
            out.insert(t);
        if (k == op::nth || k == op::update)
            out.insert(m_tm.kid(t, 1));
    }
    return out;
}

void search::check_normal_forms(const node& n) {
    for (auto const& [root, nf] : n.nfs) {
        for (term_id x : m_cc.members(root)) {
            if (!m_tm.is_var(x))
                continue;
            ++m_stats.nf_checks;
            std::vector<std::vector<term_id>> got;
            try {
                got = derivable_normal_forms(m_tm, n.cfg, m_cc, x);
            } catch (const resource_error&) {
                ++m_stats.nf_mismatches;
                continue;
            }
            if (got.size() != 1 || got[0] != nf)
                ++m_stats.nf_mismatches;
        }
    }
}

void search::mark_congruent(node& n) {
    std::map<std::vector<term_id>, term_id> first;
    for (term_id t : m_cc.terms()) {
        op k = m_tm.kind(t);
        if (k != op::nth && k != op::update)
            continue;
        std::vector<term_id> sig{static_cast<term_id>(k)};
        for (term_id c : m_tm.kids(t))
            sig.push_back(m_cc.root(c));
        auto [it, fresh] = first.emplace(sig, t);
        if (fresh)
            continue;
        term_id keep = std::min(it->second, t), drop = std::max(it->second, t);
        it->second = keep;
        n.marked.insert(drop);
    }
}

view search::build_view(node& n) {
    view v;
    for (term_id t : m_cc.terms()) {
        const sort& s = m_tm.sort_of(t);
        op k = m_tm.kind(t);
        if (k == op::nth && !n.marked.count(t))
            v.nth_terms.push_back(t);
        if (!s.is_seq())
            continue;
        term_id r = m_cc.root(t);
        class_info& ci = v.classes[r];
        ci.root = r;
        switch (k) {
        case op::var: v.seq_vars.push_back(t); break;
        case op::empty: ci.has_empty = true; break;
        case op::concat: ci.concats.push_back(t); break;
        case op::unit: ci.units.push_back(t); break;
        default: v.seq_apps.push_back(t); break;
        }
    }
    for (auto& [r, ci] : v.classes) {
        ci.alpha = m_cc.alpha(r);
        ci.atomic = !ci.has_empty;
        for (term_id c : ci.concats) {
            std::size_t nonempty = 0;
            for (term_id k : m_tm.kids(c))
                nonempty += !v.classes[m_cc.root(k)].has_empty;
            if (nonempty > 1)
                ci.atomic = false;
        }
    }
    std::set<term_id> seen;
    for (auto const& l : n.cfg.S) {
        if (!l.positive) {
            if (m_tm.sort_of(l.lhs).is_seq())
                v.seq_diseqs.push_back(l);
            continue;
        }
        if (m_tm.is_var(l.rhs) || n.marked.count(l.rhs) || !seen.insert(l.rhs).second)
            continue;
        switch (m_tm.kind(l.rhs)) {
        case op::update: v.updates.push_back(l); break;
        case op::nth: v.nths.push_back(l); break;
        case op::extract: v.extracts.push_back(l); break;
        default: break;
        }
    }
    return v;
}

const class_info* search::class_of(const view& v, term_id t) const {
    auto it = v.classes.find(m_cc.root(t));
    return it == v.classes.end() ? nullptr : &it->second;
}

const std::vector<term_id>* search::nf_of(const node& n, term_id t) const {
    auto it = n.nfs.find(m_cc.root(t));
    return it == n.nfs.end() ? nullptr : &it->second;
}

std::optional<application> search::next(node& n, bool& blocked) {
    m_canon_valid = false;
    if (auto a = step_lengths(n))
        return a;
    mark_congruent(n);
    view v = build_view(n);
    if (auto a = step_extract(n, v))
        return a;
    if (auto a = step_unit_eq(n, v))
        return a;
    if (auto a = step_split(n, v, blocked))
        return a;
    if (blocked)
        return std::nullopt;
    if (auto a = step_concat_eq(n, v))
        return a;
    if (auto a = step_deq(n, v))
        return a;
    if (m_opts.calculus == mode::ext) {
        if (auto a = step_distribute(n, v))
            return a;
        if (auto a = step_array(n, v))
            return a;
    } else if (auto a = step_reduce(n, v)) {
        return a;
    }
    return step_arith_share(n, v);
}

} // namespace detail
} // namespace seqsat
