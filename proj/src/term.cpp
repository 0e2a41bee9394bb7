#include "seqsat/term.h"

#include <algorithm>

#include "seqsat/error.h"

namespace seqsat {

const char* op_name(op o) {
    switch (o) {
    case op::var: return "var";
    case op::int_const: return "int";
    case op::add: return "+";
    case op::neg: return "-";
    case op::leq: return "<=";
    case op::eq: return "=";
    case op::empty: return "seq.empty";
    case op::unit: return "seq.unit";
    case op::len: return "seq.len";
    case op::nth: return "seq.nth";
    case op::update: return "seq.update";
    case op::extract: return "seq.extract";
    case op::concat: return "seq.++";
    case op::bool_const: return "bool";
    case op::bool_not: return "not";
    case op::bool_and: return "and";
    case op::bool_or: return "or";
    }
    return "?";
}

std::size_t term_manager::key_hash::operator()(const key& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
    for (term_id c : k.kids)
        h = (h ^ c) * 0x100000001b3ULL;
    h ^= std::hash<std::string>()(k.name) + (h << 6);
    h ^= static_cast<std::size_t>(k.value) * 1099511628211ULL;
    h ^= k.srt.hash();
    return h;
}

term_id term_manager::intern(term_node n) {
    key k{n.kind, n.srt, n.kids, n.name, n.value};
    auto it = m_table.find(k);
    if (it != m_table.end())
        return it->second;
    term_id id = static_cast<term_id>(m_nodes.size());
    m_nodes.push_back(std::move(n));
    m_table.emplace(std::move(k), id);
    return id;
}

term_id term_manager::mk_var(const std::string& name, const sort& s) {
    if (name.empty())
        throw sort_error("variable needs a name");
    term_node n{op::var, s, {}, name, 0};
    return intern(std::move(n));
}

term_id term_manager::find_var(const std::string& name, const sort& s) const {
    key k{op::var, s, {}, name, 0};
    auto it = m_table.find(k);
    return it == m_table.end() ? null_term : it->second;
}

term_id term_manager::mk_int(std::int64_t v) {
    if (v < 0) {
        if (v == INT64_MIN)
            throw sort_error("integer literal out of range");
        return mk_neg(mk_int(-v));
    }
    return intern(term_node{op::int_const, sort::int_sort(), {}, {}, v});
}

term_id term_manager::mk_bool(bool b) {
    return intern(term_node{op::bool_const, sort::bool_sort(), {}, {}, b ? 1 : 0});
}

term_id term_manager::mk_empty(const sort& seq_sort) {
    if (!seq_sort.is_seq())
        throw sort_error("seq.empty needs a sequence sort, got " + seq_sort.to_string());
    return intern(term_node{op::empty, seq_sort, {}, {}, 0});
}

term_id term_manager::mk_concat(const std::vector<term_id>& kids, const sort& seq_sort) {
    if (kids.empty())
        return mk_empty(seq_sort);
    if (kids.size() == 1)
        return kids[0];
    return mk_app(op::concat, kids);
}

term_id term_manager::mk_and(const std::vector<term_id>& kids) {
    if (kids.empty())
        return mk_bool(true);
    if (kids.size() == 1)
        return kids[0];
    return mk_app(op::bool_and, kids);
}

term_id term_manager::mk_or(const std::vector<term_id>& kids) {
    if (kids.empty())
        return mk_bool(false);
    if (kids.size() == 1)
        return kids[0];
    return mk_app(op::bool_or, kids);
}

term_id term_manager::mk_sum(const std::vector<term_id>& summands) {
    if (summands.empty())
        return mk_int(0);
    term_id r = summands[0];
    for (std::size_t i = 1; i < summands.size(); ++i)
        r = mk_add(r, summands[i]);
    return r;
}

static std::string ordinal(std::size_t i) {
    return "argument " + std::to_string(i + 1);
}

sort term_manager::check(op o, const std::vector<term_id>& kids) const {
    auto need_arity = [&](std::size_t n) {
        if (kids.size() != n)
            throw sort_error(std::string(op_name(o)) + " expects " + std::to_string(n) + " arguments, got " +
                             std::to_string(kids.size()));
    };
    for (term_id k : kids)
        if (k >= m_nodes.size())
            throw sort_error(std::string(op_name(o)) + ": unknown term id " + std::to_string(k));
    auto srt = [&](std::size_t i) -> const sort& { return m_nodes[kids[i]].srt; };
    auto expect = [&](std::size_t i, bool ok, const char* what) {
        if (!ok)
            throw sort_error(ordinal(i) + " of " + op_name(o) + " has sort " + srt(i).to_string() + ", expected " +
                             what);
    };
    switch (o) {
    case op::add:
        need_arity(2);
        expect(0, srt(0).is_int(), "Int");
        expect(1, srt(1).is_int(), "Int");
        return sort::int_sort();
    case op::neg:
        need_arity(1);
        expect(0, srt(0).is_int(), "Int");
        return sort::int_sort();
    case op::leq:
        need_arity(2);
        expect(0, srt(0).is_int(), "Int");
        expect(1, srt(1).is_int(), "Int");
        return sort::bool_sort();
    case op::eq:
        need_arity(2);
        if (srt(0) != srt(1))
            throw sort_error("arguments of = have different sorts " + srt(0).to_string() + " and " +
                             srt(1).to_string());
        return sort::bool_sort();
    case op::unit:
        need_arity(1);
        expect(0, srt(0).is_int() || srt(0).is_elem(), "an element sort");
        return sort::seq(srt(0));
    case op::len:
        need_arity(1);
        expect(0, srt(0).is_seq(), "a sequence sort");
        return sort::int_sort();
    case op::nth:
        need_arity(2);
        expect(0, srt(0).is_seq(), "a sequence sort");
        expect(1, srt(1).is_int(), "Int");
        return srt(0).element();
    case op::update:
        need_arity(3);
        expect(0, srt(0).is_seq(), "a sequence sort");
        expect(1, srt(1).is_int(), "Int");
        expect(2, srt(2) == srt(0).element(), srt(0).element().to_string().c_str());
        return srt(0);
    case op::extract:
        need_arity(3);
        expect(0, srt(0).is_seq(), "a sequence sort");
        expect(1, srt(1).is_int(), "Int");
        expect(2, srt(2).is_int(), "Int");
        return srt(0);
    case op::concat:
        if (kids.size() < 2)
            throw sort_error("seq.++ expects at least 2 arguments, got " + std::to_string(kids.size()));
        expect(0, srt(0).is_seq(), "a sequence sort");
        for (std::size_t i = 1; i < kids.size(); ++i)
            expect(i, srt(i) == srt(0), srt(0).to_string().c_str());
        return srt(0);
    case op::bool_not:
        need_arity(1);
        expect(0, srt(0).is_bool(), "Bool");
        return sort::bool_sort();
    case op::bool_and:
    case op::bool_or:
        if (kids.size() < 2)
            throw sort_error(std::string(op_name(o)) + " expects at least 2 arguments");
        for (std::size_t i = 0; i < kids.size(); ++i)
            expect(i, srt(i).is_bool(), "Bool");
        return sort::bool_sort();
    case op::var:
    case op::int_const:
    case op::empty:
    case op::bool_const:
        break;
    }
    throw sort_error(std::string("cannot build ") + op_name(o) + " with mk_app");
}

term_id term_manager::mk_app(op o, const std::vector<term_id>& kids) {
    sort s = check(o, kids);
    return intern(term_node{o, s, kids, {}, 0});
}

std::string term_manager::to_string(term_id t) const {
    const term_node& n = m_nodes[t];
    switch (n.kind) {
    case op::var: return n.name;
    case op::int_const: return std::to_string(n.value);
    case op::bool_const: return n.value ? "true" : "false";
    case op::empty: return "(as seq.empty " + n.srt.to_string() + ")";
    case op::neg: return "(- " + to_string(n.kids[0]) + ")";
    default: break;
    }
    std::string r = "(";
    r += op_name(n.kind);
    for (term_id k : n.kids) {
        r += ' ';
        r += to_string(k);
    }
    r += ')';
    return r;
}

unsigned term_manager::depth(term_id t) const {
    unsigned d = 0;
    for (term_id k : m_nodes[t].kids)
        d = std::max(d, depth(k));
    return d + 1;
}

std::size_t term_manager::tree_size(term_id t) const {
    std::size_t s = 1;
    for (term_id k : m_nodes[t].kids)
        s += tree_size(k);
    return s;
}

} // namespace seqsat
