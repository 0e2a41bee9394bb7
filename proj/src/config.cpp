#include "seqsat/config.h"

#include <sstream>

#include "seqsat/error.h"

namespace seqsat {

term_id configuration::fresh(term_manager& tm, const sort& s) {
    const char* prefix = s.is_seq() ? "_k" : s.is_int() ? "_i" : "_e";
    if (s.is_bool())
        throw contract_error("no fresh Boolean variables");
    term_id v = tm.mk_var(prefix + std::to_string(fresh_counter++), s);
    if (s.is_seq())
        len_var(tm, v);
    return v;
}

term_id configuration::len_var(term_manager& tm, term_id x) {
    auto it = len_vars.find(x);
    if (it != len_vars.end())
        return it->second;
    if (!tm.is_var(x) || !tm.sort_of(x).is_seq())
        throw contract_error("length variables exist only for sequence variables");
    term_id l = tm.mk_var("_i" + std::to_string(fresh_counter++), sort::int_sort());
    len_vars.emplace(x, l);
    push_s(tm, s_literal{true, l, tm.mk_len(x)});
    add_arith(arith_atom::ge(linear_expr::of_var(l), linear_expr::of_const(0)));
    return l;
}

bool configuration::is_arith(const term_manager& tm, term_id t) const {
    op k = tm.kind(t);
    return k == op::add || k == op::neg || k == op::int_const;
}

term_id configuration::flat(term_manager& tm, term_id t) {
    const std::vector<term_id> ks = tm.kids(t);
    if (ks.empty())
        return t;
    std::vector<term_id> nk;
    nk.reserve(ks.size());
    bool changed = false;
    for (term_id k : ks) {
        nk.push_back(name(tm, k));
        changed |= nk.back() != k;
    }
    return changed ? tm.mk_app(tm.kind(t), nk) : t;
}

term_id configuration::name(term_manager& tm, term_id t) {
    if (tm.is_var(t))
        return t;
    if (is_arith(tm, t)) {
        auto it = def_vars.find(t);
        if (it != def_vars.end())
            return it->second;
        linear_expr e = linearize(tm, t);
        term_id v = fresh(tm, sort::int_sort());
        def_vars.emplace(t, v);
        add_arith(arith_atom::eq(linear_expr::of_var(v), e));
        return v;
    }
    term_id f = flat(tm, t);
    auto it = def_vars.find(f);
    if (it != def_vars.end())
        return it->second;
    term_id v = fresh(tm, tm.sort_of(f));
    push_s(tm, s_literal{true, v, f});
    return v;
}

linear_expr configuration::linearize(term_manager& tm, term_id t) {
    switch (tm.kind(t)) {
    case op::int_const: return linear_expr::of_const(tm.node(t).value);
    case op::neg: return linearize(tm, tm.kid(t, 0)).scaled(-1);
    case op::add: return linearize(tm, tm.kid(t, 0)) + linearize(tm, tm.kid(t, 1));
    default: break;
    }
    if (!tm.sort_of(t).is_int())
        throw contract_error("cannot linearize non-integer term " + tm.to_string(t));
    return linear_expr::of_var(name(tm, t));
}

void configuration::push_s(term_manager& tm, s_literal l) {
    if (!m_s_set.insert(l).second)
        return;
    if (l.positive && !tm.is_var(l.rhs))
        def_vars.emplace(l.rhs, l.lhs);
    S.push_back(l);
    auto note = [&](term_id v) {
        if (tm.is_var(v) && tm.sort_of(v).is_seq())
            len_var(tm, v);
    };
    note(l.lhs);
    if (tm.is_var(l.rhs))
        note(l.rhs);
    else
        for (term_id k : tm.kids(l.rhs))
            note(k);
}

void configuration::add_eq(term_manager& tm, term_id s, term_id t) {
    const sort& srt = tm.sort_of(s);
    if (srt.is_int()) {
        if (!is_arith(tm, s) && !is_arith(tm, t)) {
            if (!tm.is_var(s) && tm.is_var(t))
                std::swap(s, t);
            term_id lhs = name(tm, s);
            term_id rhs = flat(tm, t);
            if (lhs != rhs)
                push_s(tm, s_literal{true, lhs, rhs});
        }
        add_arith(arith_atom::eq(linearize(tm, s), linearize(tm, t)));
        return;
    }
    if (!tm.is_var(s) && tm.is_var(t))
        std::swap(s, t);
    term_id lhs = name(tm, s);
    term_id rhs = flat(tm, t);
    if (lhs != rhs)
        push_s(tm, s_literal{true, lhs, rhs});
}

void configuration::add_diseq(term_manager& tm, term_id s, term_id t) {
    if (tm.sort_of(s).is_int()) {
        if (!is_arith(tm, s) && !is_arith(tm, t))
            push_s(tm, s_literal{false, name(tm, s), name(tm, t)});
        add_arith(arith_atom::ne(linearize(tm, s), linearize(tm, t)));
        return;
    }
    push_s(tm, s_literal{false, name(tm, s), name(tm, t)});
}

void configuration::add_arith(const arith_constraint& c) {
    auto n = c.normalized();
    if (!n)
        return;
    if (m_a_set.insert(*n).second)
        A.push_back(std::move(*n));
}

bool configuration::has(const arith_constraint& c) const {
    auto n = c.normalized();
    return !n || m_a_set.count(*n) > 0;
}

arith_atom configuration::to_atom(term_manager& tm, const literal& l) {
    term_id a = tm.kid(l.atom, 0), b = tm.kid(l.atom, 1);
    if (tm.kind(l.atom) == op::leq) {
        arith_atom at = arith_atom::le(linearize(tm, a), linearize(tm, b));
        return l.positive ? at : at.negate();
    }
    if (tm.kind(l.atom) == op::eq && tm.sort_of(a).is_int()) {
        arith_atom at = arith_atom::eq(linearize(tm, a), linearize(tm, b));
        return l.positive ? at : at.negate();
    }
    throw contract_error("not an arithmetic literal: " + tm.to_string(l.atom));
}

void configuration::add_literal(term_manager& tm, const literal& l) {
    op k = tm.kind(l.atom);
    if (k == op::leq) {
        add_arith(to_atom(tm, l));
        return;
    }
    if (k != op::eq)
        throw contract_error("not a theory literal: " + tm.to_string(l.atom));
    term_id a = tm.kid(l.atom, 0), b = tm.kid(l.atom, 1);
    if (l.positive)
        add_eq(tm, a, b);
    else
        add_diseq(tm, a, b);
}

void configuration::add_clause(term_manager& tm, const raw_clause& c) {
    if (c.size() == 1) {
        add_literal(tm, c[0]);
        return;
    }
    std::vector<arith_atom> ds;
    for (auto const& l : c)
        ds.push_back(to_atom(tm, l));
    add_arith(arith_constraint(std::move(ds)));
}

std::string configuration::to_string(const term_manager& tm) const {
    std::ostringstream out;
    out << "S:\n";
    for (auto const& l : S)
        out << "  " << tm.to_string(l.lhs) << (l.positive ? " = " : " != ") << tm.to_string(l.rhs) << '\n';
    out << "A:\n";
    for (auto const& c : A)
        out << "  " << c.to_string(&tm) << '\n';
    return out.str();
}

configuration flatten(term_manager& tm, const std::vector<literal>& raw_s, const std::vector<raw_clause>& raw_a) {
    configuration cfg;
    for (auto const& l : raw_s)
        cfg.add_literal(tm, l);
    for (auto const& c : raw_a)
        cfg.add_clause(tm, c);
    return cfg;
}

} // namespace seqsat
