#include <algorithm>
#include <functional>

#include "engine_impl.h"
#include "seqsat/error.h"
#include "seqsat/rewrite.h"

namespace seqsat::detail {

namespace {

linear_expr var(term_id v) { return linear_expr::of_var(v); }
linear_expr num(long c) { return linear_expr::of_const(c); }
arith_constraint any(std::vector<arith_atom> as) { return arith_constraint(std::move(as)); }

linear_expr length_expr(emitter& e, term_id t) {
    switch (e.tm.kind(t)) {
    case op::int_const: return linear_expr::of_const(e.tm.node(t).value);
    case op::neg: return length_expr(e, e.tm.kid(t, 0)).scaled(-1);
    case op::add: return length_expr(e, e.tm.kid(t, 0)) + length_expr(e, e.tm.kid(t, 1));
    case op::len:
        if (e.tm.is_var(e.tm.kid(t, 0)))
            return e.llen(e.tm.kid(t, 0));
        break;
    default: break;
    }
    throw contract_error("unexpected length term " + e.tm.to_string(t));
}

bool occurs(term_id y, const std::vector<term_id>& v, std::size_t from, std::size_t to) {
    return std::find(v.begin() + from, v.begin() + to, y) != v.begin() + to;
}

} // namespace

std::optional<application> search::step_lengths(node& n) {
    const std::vector<term_id> terms = m_cc.terms();
    for (term_id t : terms) {
        if (!m_tm.sort_of(t).is_seq() || m_tm.is_var(t) || m_tm.kind(t) == op::extract)
            continue;
        auto d = n.cfg.def_vars.find(t);
        if (d == n.cfg.def_vars.end())
            continue;
        term_id x = d->second;
        term_id l = nf(m_tm, m_tm.mk_len(t));
        application app{"L-Intro", {t}, key_of("L-Intro", {t}), {}, lit_deps(n, {true, x, t})};
        app.branches.push_back(
            [x, l](emitter& e) { e.arith(arith_atom::eq(e.llen(x), length_expr(e, l))); });
        if (viable(n, app))
            return app;
    }
    for (term_id t : terms) {
        if (!m_tm.sort_of(t).is_seq() || !m_tm.is_var(t))
            continue;
        application app{"L-Valid", {t}, key_of("L-Valid", {t}), {}};
        app.branches.push_back([t](emitter& e) { e.eq(t, e.tm.mk_empty(e.tm.sort_of(t))); });
        app.branches.push_back([t](emitter& e) { e.arith(arith_atom::gt(e.llen(t), num(0))); });
        if (viable(n, app))
            return app;
    }
    return std::nullopt;
}

std::optional<application> search::step_extract(node& n, const view& v) {
    for (auto const& l : v.extracts) {
        term_id x = l.lhs, t = l.rhs;
        term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1), j = m_tm.kid(t, 2);
        std::string key = key_of("R-Extract", {x, t});
        application app{"R-Extract", {x, t}, key, {}, lit_deps(n, l)};
        app.branches.push_back([=](emitter& e) {
            e.arith(any({arith_atom::lt(var(i), num(0)), arith_atom::ge(var(i), e.llen(y)),
                         arith_atom::le(var(j), num(0))}));
            e.eq(x, e.tm.mk_empty(e.tm.sort_of(x)));
        });
        app.branches.push_back([=](emitter& e) {
            const sort s = e.tm.sort_of(y);
            term_id k = e.fresh(key + ":k", s), k2 = e.fresh(key + ":k2", s);
            linear_expr ly = e.llen(y), lx = e.llen(x);
            e.arith(arith_atom::ge(var(i), num(0)));
            e.arith(arith_atom::lt(var(i), ly));
            e.arith(arith_atom::gt(var(j), num(0)));
            e.arith(arith_atom::eq(e.llen(k), var(i)));
            e.arith(any({arith_atom::eq(lx, var(j)), arith_atom::eq(lx, ly - var(i))}));
            e.arith(arith_atom::le(lx, var(j)));
            e.arith(arith_atom::le(lx, ly - var(i)));
            e.arith(arith_atom::eq(e.llen(k2), ly - lx - var(i)));
            e.eq(y, e.tm.mk_concat({k, x, k2}, s));
        });
        if (viable(n, app))
            return app;
    }
    return std::nullopt;
}

std::optional<application> search::step_unit_eq(node& n, const view& v) {
    for (auto const& [r, ci] : v.classes) {
        for (std::size_t a = 1; a < ci.units.size(); ++a) {
            term_id u0 = ci.units[0], u1 = ci.units[a];
            term_id e0 = m_tm.kid(u0, 0), e1 = m_tm.kid(u1, 0);
            if (m_cc.are_equal(e0, e1))
                continue;
            application app{"U-Eq", {u0, u1}, key_of("U-Eq", {u0, u1}), {}, eq_deps(n, u0, u1)};
            app.branches.push_back([e0, e1](emitter& e) { e.eq(e0, e1); });
            if (viable(n, app))
                return app;
        }
    }
    return std::nullopt;
}

namespace {

// arithmetic premises of a branch, up to its first fresh symbol
class arith_collector : public emitter {
public:
    arith_collector(term_manager& tm, const configuration& cfg) : emitter(tm), cfg(cfg) {}
    term_id fresh(const std::string&, const sort&) override { throw needs_fresh{}; }
    term_id len(term_id x) override {
        auto it = cfg.len_vars.find(x);
        if (it == cfg.len_vars.end())
            throw needs_fresh{};
        return it->second;
    }
    void eq(term_id, term_id) override {}
    void diseq(term_id, term_id) override {}
    void introduce(term_id) override {}
    void arith(const arith_constraint& c) override { out.push_back(c); }

    const configuration& cfg;
    std::vector<arith_constraint> out;
};

} // namespace

std::optional<application> search::length_pruned(node& n, application app) {
    std::vector<branch_fn> keep;
    for (auto& b : app.branches) {
        arith_collector col(m_tm, n.cfg);
        try {
            b(col);
        } catch (const needs_fresh&) {
        }
        std::vector<arith_constraint> cs = n.cfg.A;
        cs.insert(cs.end(), col.out.begin(), col.out.end());
        lia_result r = lia_check(cs, m_opts.lia);
        if (r.status != lia_status::unsat)
            keep.push_back(b);
        else
            add_deps(app.deps, a_deps_of(n, r.core));
    }
    if (keep.size() != 1)
        return std::nullopt;
    app.branches = std::move(keep);
    app.key += ":p";
    if (!viable(n, app))
        return std::nullopt;
    return app;
}

application search::c_split(const split_choice& s) {
    term_id y = s.y, y2 = s.y2;
    if (y2 < y)
        std::swap(y, y2);
    bool rev = s.reverse;
    std::string key = key_of("C-Split", {y, y2}) + (rev ? ":r" : ":f");
    application app{"C-Split", {y, y2}, key, {}};
    app.branches.push_back([=](emitter& e) {
        const sort srt = e.tm.sort_of(y);
        e.arith(arith_atom::gt(e.llen(y), e.llen(y2)));
        term_id k = e.fresh(key + ":1", srt);
        e.eq(y, e.tm.mk_concat(rev ? std::vector<term_id>{k, y2} : std::vector<term_id>{y2, k}, srt));
    });
    app.branches.push_back([=](emitter& e) {
        const sort srt = e.tm.sort_of(y);
        e.arith(arith_atom::lt(e.llen(y), e.llen(y2)));
        term_id k = e.fresh(key + ":2", srt);
        e.eq(y2, e.tm.mk_concat(rev ? std::vector<term_id>{k, y} : std::vector<term_id>{y, k}, srt));
    });
    app.branches.push_back([=](emitter& e) {
        e.arith(arith_atom::eq(e.llen(y), e.llen(y2)));
        e.eq(y, y2);
    });
    return app;
}

std::optional<application> search::try_split(node& n, const std::vector<term_id>& a,
                                              const std::vector<term_id>& b, const dep_set& deps) {
    auto capped = [&](term_id y) {
        auto it = n.splits.find(y);
        return it != n.splits.end() && it->second >= m_opts.split_depth_cap;
    };
    std::size_t m = std::min(a.size(), b.size());
    std::size_t p = 0;
    while (p < m && a[p] == b[p])
        ++p;
    if (p < m) {
        term_id y = a[p], y2 = b[p];
        bool cyclic = occurs(y, b, p + 1, b.size()) || occurs(y2, a, p + 1, a.size());
        if (!capped(y) && !capped(y2)) {
            application app = c_split({y, y2, false});
            app.deps = deps;
            if (!cyclic && viable(n, app))
                return app;
            if (cyclic)
                if (auto pruned = length_pruned(n, std::move(app)))
                    return pruned;
        }
    }
    std::size_t q = 0;
    while (q < m && a[a.size() - 1 - q] == b[b.size() - 1 - q])
        ++q;
    if (q < m) {
        std::size_t pa = a.size() - 1 - q, pb = b.size() - 1 - q;
        term_id y = a[pa], y2 = b[pb];
        bool cyclic = occurs(y, b, 0, pb) || occurs(y2, a, 0, pa);
        if (!capped(y) && !capped(y2)) {
            application app = c_split({y, y2, true});
            app.deps = deps;
            if (!cyclic && viable(n, app))
                return app;
            if (cyclic)
                if (auto pruned = length_pruned(n, std::move(app)))
                    return pruned;
        }
    }
    return std::nullopt;
}

std::optional<application> search::step_split(node& n, const view& v, bool& blocked) {
    n.nfs.clear();
    n.nf_deps.clear();
    std::set<term_id> busy;
    std::optional<application> found;
    std::function<const std::vector<term_id>*(term_id)> compute = [&](term_id r) -> const std::vector<term_id>* {
        if (auto it = n.nfs.find(r); it != n.nfs.end())
            return &it->second;
        if (busy.count(r))
            return nullptr;
        const class_info& ci = v.classes.at(r);
        busy.insert(r);
        std::vector<std::vector<term_id>> cands;
        std::vector<dep_set> why;
        auto member = [&](op k) {
            for (term_id m : m_cc.members(r))
                if (m_tm.kind(m) == k)
                    return m;
            return null_term;
        };
        if (ci.has_empty) {
            cands.push_back({});
            why.push_back(eq_deps(n, ci.alpha, member(op::empty)));
        }
        if (ci.atomic) {
            cands.push_back({ci.alpha});
            why.emplace_back();
        }
        for (term_id c : ci.concats) {
            std::vector<term_id> out;
            dep_set d = eq_deps(n, ci.alpha, c);
            bool ok = true;
            for (term_id k : m_tm.kids(c)) {
                const std::vector<term_id>* sub = compute(m_cc.root(k));
                if (found) {
                    busy.erase(r);
                    return nullptr;
                }
                if (!sub) {
                    ok = false;
                    break;
                }
                out.insert(out.end(), sub->begin(), sub->end());
                add_deps(d, nf_deps_of(n, k));
            }
            if (ok && std::find(cands.begin(), cands.end(), out) == cands.end()) {
                cands.push_back(std::move(out));
                why.push_back(std::move(d));
            }
        }
        busy.erase(r);
        if (cands.empty()) {
            blocked = true;
            cands.push_back({ci.alpha});
            why.emplace_back();
        }
        for (std::size_t a = 0; a < cands.size() && !found; ++a)
            for (std::size_t b = a + 1; b < cands.size() && !found; ++b) {
                dep_set d = why[a];
                add_deps(d, why[b]);
                found = try_split(n, cands[a], cands[b], d);
            }
        if (found)
            return nullptr;
        if (cands.size() > 1)
            blocked = true;
        n.nf_deps[r] = why[0];
        return &(n.nfs[r] = cands[0]);
    };
    std::vector<std::pair<term_id, term_id>> order;
    for (auto const& [r, ci] : v.classes)
        order.emplace_back(ci.alpha, r);
    std::sort(order.begin(), order.end());
    for (auto const& [alpha, r] : order) {
        compute(r);
        if (found)
            return found;
    }
    return std::nullopt;
}

std::optional<application> search::step_concat_eq(node& n, const view& v) {
    std::vector<std::pair<term_id, term_id>> order;
    for (auto const& [r, ci] : v.classes)
        order.emplace_back(ci.alpha, r);
    std::sort(order.begin(), order.end());
    std::map<std::pair<sort, std::vector<term_id>>, term_id> seen;
    for (auto const& [alpha, r] : order) {
        auto it = n.nfs.find(r);
        if (it == n.nfs.end())
            continue;
        auto [pos, fresh] = seen.emplace(std::make_pair(m_tm.sort_of(alpha), it->second), alpha);
        if (fresh)
            continue;
        term_id a0 = pos->second;
        dep_set d = n.nf_deps[m_cc.root(a0)];
        add_deps(d, n.nf_deps[r]);
        application app{"C-Eq", {a0, alpha}, key_of("C-Eq", {a0, alpha}), {}, d};
        app.branches.push_back([a0, a1 = alpha](emitter& e) { e.eq(a0, a1); });
        if (viable(n, app))
            return app;
    }
    return std::nullopt;
}

std::optional<application> search::step_deq(node& n, const view& v) {
    for (auto const& l : v.seq_diseqs) {
        term_id x = l.lhs, y = l.rhs;
        std::string key = key_of("Deq-Ext", {x, y});
        application app{"Deq-Ext", {x, y}, key, {}, lit_deps(n, l)};
        app.branches.push_back([=](emitter& e) { e.arith(arith_atom::ne(e.llen(x), e.llen(y))); });
        app.branches.push_back([=](emitter& e) {
            const sort elem = e.tm.sort_of(x).element();
            linear_expr lx = e.llen(x);
            e.arith(arith_atom::eq(lx, e.llen(y)));
            term_id i = e.fresh(key + ":i", sort::int_sort());
            term_id w1 = e.fresh(key + ":w1", elem), w2 = e.fresh(key + ":w2", elem);
            e.arith(arith_atom::ge(var(i), num(0)));
            e.arith(arith_atom::lt(var(i), lx));
            e.eq(w1, e.tm.mk_nth(x, i));
            e.eq(w2, e.tm.mk_nth(y, i));
            e.diseq(w1, w2);
        });
        if (viable(n, app))
            return app;
    }
    return std::nullopt;
}

std::optional<application> search::step_reduce(node& n, const view& v) {
    for (auto const& l : v.updates) {
        term_id x = l.lhs, t = l.rhs;
        term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1), z = m_tm.kid(t, 2);
        std::string key = key_of("R-Update", {x, t});
        application app{"R-Update", {x, t}, key, {}, lit_deps(n, l)};
        app.branches.push_back([=](emitter& e) {
            e.arith(any({arith_atom::lt(var(i), num(0)), arith_atom::ge(var(i), e.llen(y))}));
            e.eq(x, y);
        });
        app.branches.push_back([=](emitter& e) {
            const sort s = e.tm.sort_of(y);
            e.arith(arith_atom::ge(var(i), num(0)));
            e.arith(arith_atom::lt(var(i), e.llen(y)));
            term_id k = e.fresh(key + ":k", s), k2 = e.fresh(key + ":k2", s), k3 = e.fresh(key + ":k3", s);
            e.arith(arith_atom::eq(e.llen(k), var(i)));
            e.arith(arith_atom::eq(e.llen(k2), num(1)));
            e.eq(y, e.tm.mk_concat({k, k2, k3}, s));
            e.eq(x, e.tm.mk_concat({k, e.tm.mk_unit(z), k3}, s));
        });
        if (viable(n, app))
            return app;
    }
    for (auto const& l : v.nths) {
        term_id x = l.lhs, t = l.rhs;
        term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1);
        std::string key = key_of("R-Nth", {x, t});
        application app{"R-Nth", {x, t}, key, {}, lit_deps(n, l)};
        app.branches.push_back([=](emitter& e) {
            e.arith(any({arith_atom::lt(var(i), num(0)), arith_atom::ge(var(i), e.llen(y))}));
        });
        app.branches.push_back([=](emitter& e) {
            const sort s = e.tm.sort_of(y);
            e.arith(arith_atom::ge(var(i), num(0)));
            e.arith(arith_atom::lt(var(i), e.llen(y)));
            term_id k = e.fresh(key + ":k", s), k2 = e.fresh(key + ":k2", s);
            e.arith(arith_atom::eq(e.llen(k), var(i)));
            e.eq(y, e.tm.mk_concat({k, e.tm.mk_unit(x), k2}, s));
        });
        if (viable(n, app))
            return app;
    }
    return std::nullopt;
}

std::optional<application> search::step_arith_share(node& n, const view&) {
    std::map<mpz_class, std::set<term_id>> groups;
    for (term_id v : shared_ints(n)) {
        term_id a = m_cc.alpha(v);
        auto it = n.model.find(a);
        groups[it == n.model.end() ? mpz_class(0) : it->second].insert(a);
    }
    for (auto const& [val, reps] : groups) {
        std::vector<term_id> rs(reps.begin(), reps.end());
        for (std::size_t p = 0; p < rs.size(); ++p) {
            for (std::size_t q = p + 1; q < rs.size(); ++q) {
                term_id a = rs[p], b = rs[q];
                if (m_cc.are_disequal(a, b))
                    continue;
                std::vector<arith_constraint> cs = n.cfg.A;
                cs.emplace_back(arith_atom::ne(var(a), var(b)));
                lia_result r = lia_check(cs, m_opts.lia);
                if (r.status == lia_status::unsat) {
                    application app{"A-Prop", {a, b}, key_of("A-Prop", {a, b}), {}, a_deps_of(n, r.core)};
                    app.branches.push_back([a, b](emitter& e) { e.eq(a, b); });
                    if (viable(n, app))
                        return app;
                    continue;
                }
                application app{"S-A", {a, b}, key_of("S-A", {a, b}), {}};
                app.branches.push_back([a, b](emitter& e) { e.eq(a, b); });
                app.branches.push_back([a, b](emitter& e) { e.diseq(a, b); });
                if (viable(n, app))
                    return app;
            }
        }
    }
    return std::nullopt;
}

} // namespace seqsat::detail
