#include "engine_impl.h"

namespace seqsat::detail {

namespace {

linear_expr var(term_id v) { return linear_expr::of_var(v); }
linear_expr num(long c) { return linear_expr::of_const(c); }
arith_constraint any(std::vector<arith_atom> as) { return arith_constraint(std::move(as)); }

std::string with_nf(std::string key, const std::vector<term_id>& w) {
    key += '|';
    for (term_id t : w)
        key += std::to_string(t) + ' ';
    return key;
}

} // namespace

application search::update_concat(const s_literal& l, const std::vector<term_id>& w, bool inverse) {
    term_id x = l.lhs, t = l.rhs;
    term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1), val = m_tm.kid(t, 2);
    const char* rule = inverse ? "Update-Concat-Inv" : "Update-Concat";
    std::string key = with_nf(key_of(rule, {x, t}), w);
    application app{rule, {x, t}, key, {}};
    app.branches.push_back([=](emitter& e) {
        const sort s = e.tm.sort_of(x);
        std::vector<term_id> zs;
        for (std::size_t k = 0; k < w.size(); ++k)
            zs.push_back(e.fresh(key + ":z" + std::to_string(k), s));
        e.eq(inverse ? y : x, e.tm.mk_concat(zs, s));
        linear_expr before;
        for (std::size_t k = 0; k < w.size(); ++k) {
            term_id idx = i;
            if (k > 0) {
                idx = e.fresh(key + ":p" + std::to_string(k), sort::int_sort());
                e.arith(arith_atom::eq(var(idx), var(i) - before));
            }
            if (inverse)
                e.eq(w[k], e.tm.mk_update(zs[k], idx, val));
            else
                e.eq(zs[k], e.tm.mk_update(w[k], idx, val));
            before = before + e.llen(w[k]);
        }
    });
    return app;
}

std::optional<application> search::step_distribute(node& n, const view& v) {
    for (auto const& l : v.updates) {
        term_id x = l.lhs, t = l.rhs;
        term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1), val = m_tm.kid(t, 2);
        const std::vector<term_id>* wy = nf_of(n, y);
        if (wy && wy->size() >= 2) {
            application app = update_concat(l, *wy, false);
            app.deps = lit_deps(n, l);
            add_deps(app.deps, nf_deps_of(n, y));
            if (viable(n, app))
                return app;
        }
        const std::vector<term_id>* wx = nf_of(n, x);
        if (wx && wx->size() >= 2) {
            application app = update_concat(l, *wx, true);
            app.deps = lit_deps(n, l);
            add_deps(app.deps, nf_deps_of(n, x));
            if (viable(n, app))
                return app;
        }
        const class_info* cy = class_of(v, y);
        if (cy && !cy->units.empty()) {
            term_id u = m_tm.kid(cy->units[0], 0);
            application app{"Update-Unit", {x, t}, key_of("Update-Unit", {x, t, u}), {}, lit_deps(n, l)};
            add_deps(app.deps, eq_deps(n, y, cy->units[0]));
            app.branches.push_back([=](emitter& e) {
                e.arith(any({arith_atom::lt(var(i), num(0)), arith_atom::gt(var(i), num(0))}));
                e.eq(x, e.tm.mk_unit(u));
            });
            app.branches.push_back([=](emitter& e) {
                e.arith(arith_atom::eq(var(i), num(0)));
                e.eq(x, e.tm.mk_unit(val));
            });
            if (viable(n, app))
                return app;
        }
    }
    for (auto const& l : v.nths) {
        term_id x = l.lhs, t = l.rhs;
        term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1);
        const std::vector<term_id>* wy = nf_of(n, y);
        if (wy && wy->size() >= 2) {
            std::vector<term_id> w = *wy;
            std::string key = with_nf(key_of("Nth-Concat", {x, t}), w);
            application app{"Nth-Concat", {x, t}, key, {}, lit_deps(n, l)};
            add_deps(app.deps, nf_deps_of(n, y));
            app.branches.push_back([=](emitter& e) {
                e.arith(any({arith_atom::lt(var(i), num(0)), arith_atom::ge(var(i), e.llen(y))}));
            });
            for (std::size_t k = 0; k < w.size(); ++k) {
                app.branches.push_back([=](emitter& e) {
                    linear_expr before;
                    for (std::size_t j = 0; j < k; ++j)
                        before = before + e.llen(w[j]);
                    e.arith(arith_atom::le(before, var(i)));
                    e.arith(arith_atom::lt(var(i), before + e.llen(w[k])));
                    term_id idx = i;
                    if (k > 0) {
                        idx = e.fresh(key + ":p" + std::to_string(k), sort::int_sort());
                        e.arith(arith_atom::eq(var(idx), var(i) - before));
                    }
                    e.eq(x, e.tm.mk_nth(w[k], idx));
                });
            }
            if (viable(n, app))
                return app;
            continue;
        }
        const class_info* cy = class_of(v, y);
        if (cy && !cy->units.empty()) {
            term_id u = m_tm.kid(cy->units[0], 0);
            application app{"Nth-Unit", {x, t}, key_of("Nth-Unit", {x, t, u}), {}, lit_deps(n, l)};
            add_deps(app.deps, eq_deps(n, y, cy->units[0]));
            app.branches.push_back([=](emitter& e) {
                e.arith(any({arith_atom::lt(var(i), num(0)), arith_atom::gt(var(i), num(0))}));
            });
            app.branches.push_back([=](emitter& e) {
                e.arith(arith_atom::eq(var(i), num(0)));
                e.eq(x, u);
            });
            if (viable(n, app))
                return app;
        }
    }
    return std::nullopt;
}

std::optional<application> search::step_array(node& n, const view& v) {
    auto atomic = [&](term_id s) {
        const class_info* c = class_of(v, s);
        return c && c->atomic;
    };
    std::vector<s_literal> ups;
    for (auto const& l : v.updates)
        if (atomic(l.lhs) && atomic(m_tm.kid(l.rhs, 0)))
            ups.push_back(l);
    for (auto const& l : ups) {
        term_id x = l.lhs, t = l.rhs;
        term_id y = m_tm.kid(t, 0), i = m_tm.kid(t, 1), val = m_tm.kid(t, 2);
        std::string key = key_of("Nth-Intro", {x, t});
        application intro{"Nth-Intro", {x, t}, key, {}};
        intro.branches.push_back([=](emitter& e) {
            const sort elem = e.tm.sort_of(y).element();
            term_id e1 = e.fresh(key + ":e", elem), e2 = e.fresh(key + ":e2", elem);
            e.eq(e1, e.tm.mk_nth(y, i));
            e.eq(e2, e.tm.mk_nth(x, i));
        });
        if (viable(n, intro))
            return intro;
        application bound{"Update-Bound", {x, t}, key_of("Update-Bound", {x, t}), {}, lit_deps(n, l)};
        bound.branches.push_back([=](emitter& e) {
            e.arith(arith_atom::ge(var(i), num(0)));
            e.arith(arith_atom::lt(var(i), e.llen(y)));
            e.diseq(e.tm.mk_nth(y, i), val);
        });
        bound.branches.push_back([=](emitter& e) { e.eq(x, y); });
        if (viable(n, bound))
            return bound;
    }
    for (term_id r : v.nth_terms) {
        term_id s = m_tm.kid(r, 0), j = m_tm.kid(r, 1);
        if (!atomic(s))
            continue;
        for (auto const& l : ups) {
            term_id y = l.lhs, t = l.rhs;
            term_id z = m_tm.kid(t, 0), i = m_tm.kid(t, 1), val = m_tm.kid(t, 2);
            if (!m_cc.are_equal(s, y) && !m_cc.are_equal(s, z))
                continue;
            application app{"Nth-Update", {r, y, t}, key_of("Nth-Update", {r, y, t}), {}, lit_deps(n, l)};
            add_deps(app.deps, eq_deps(n, s, m_cc.are_equal(s, y) ? y : z));
            app.branches.push_back([=](emitter& e) {
                e.arith(any({arith_atom::lt(var(j), num(0)), arith_atom::ge(var(j), e.llen(s))}));
            });
            app.branches.push_back([=](emitter& e) {
                e.eq(i, j);
                e.arith(arith_atom::ge(var(j), num(0)));
                e.arith(arith_atom::lt(var(j), e.llen(s)));
                e.eq(e.tm.mk_nth(y, j), val);
            });
            app.branches.push_back([=](emitter& e) {
                e.diseq(i, j);
                e.arith(arith_atom::ge(var(j), num(0)));
                e.arith(arith_atom::lt(var(j), e.llen(s)));
                e.eq(e.tm.mk_nth(y, j), e.tm.mk_nth(z, j));
            });
            if (viable(n, app))
                return app;
        }
    }
    for (std::size_t p = 0; p < v.nth_terms.size(); ++p) {
        term_id a = v.nth_terms[p];
        term_id x = m_tm.kid(a, 0);
        if (!atomic(x))
            continue;
        for (std::size_t q = p + 1; q < v.nth_terms.size(); ++q) {
            term_id b = v.nth_terms[q];
            term_id x2 = m_tm.kid(b, 0);
            if (!atomic(x2) || !m_cc.are_equal(m_tm.kid(a, 1), m_tm.kid(b, 1)))
                continue;
            if (m_cc.are_equal(x, x2) || m_cc.are_disequal(x, x2))
                continue;
            application app{"Nth-Split", {a, b}, key_of("Nth-Split", {a, b}), {}};
            app.branches.push_back([=](emitter& e) { e.eq(x, x2); });
            app.branches.push_back([=](emitter& e) { e.diseq(x, x2); });
            if (viable(n, app))
                return app;
        }
    }
    return std::nullopt;
}

} // namespace seqsat::detail
