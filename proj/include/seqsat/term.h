#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqsat/sort.h"

namespace seqsat {

using term_id = std::uint32_t;
constexpr term_id null_term = static_cast<term_id>(-1);

enum class op : std::uint8_t {
    var,
    int_const,
    add,
    neg,
    leq,
    eq,
    empty,
    unit,
    len,
    nth,
    update,
    extract,
    concat,
    // Boolean structure, only seen by the frontend
    bool_const,
    bool_not,
    bool_and,
    bool_or,
};

const char* op_name(op o);

struct term_node {
    op kind;
    sort srt;
    std::vector<term_id> kids;
    std::string name;      // var
    std::int64_t value = 0; // int_const (>= 0), bool_const (0/1)
};

/*
  Hash-consing term table. Construction checks arities and sorts;
  structurally equal terms share one id. Ids grow with creation order.
*/
class term_manager {
public:
    term_manager() = default;
    term_manager(const term_manager&) = delete;
    term_manager& operator=(const term_manager&) = delete;

    term_id mk_var(const std::string& name, const sort& s);
    // negative values become neg(int_const)
    term_id mk_int(std::int64_t v);
    term_id mk_bool(bool b);
    term_id mk_empty(const sort& seq_sort);

    // generic constructor; throws sort_error on arity or sort mismatch
    term_id mk_app(op o, const std::vector<term_id>& kids);

    term_id mk_add(term_id a, term_id b) { return mk_app(op::add, {a, b}); }
    term_id mk_neg(term_id a) { return mk_app(op::neg, {a}); }
    term_id mk_sub(term_id a, term_id b) { return mk_add(a, mk_neg(b)); }
    term_id mk_leq(term_id a, term_id b) { return mk_app(op::leq, {a, b}); }
    term_id mk_eq(term_id a, term_id b) { return mk_app(op::eq, {a, b}); }
    term_id mk_unit(term_id e) { return mk_app(op::unit, {e}); }
    term_id mk_len(term_id s) { return mk_app(op::len, {s}); }
    term_id mk_nth(term_id s, term_id i) { return mk_app(op::nth, {s, i}); }
    term_id mk_update(term_id s, term_id i, term_id v) { return mk_app(op::update, {s, i, v}); }
    term_id mk_extract(term_id s, term_id i, term_id j) { return mk_app(op::extract, {s, i, j}); }
    // zero children give the empty sequence of seq_sort, one child is returned as is
    term_id mk_concat(const std::vector<term_id>& kids, const sort& seq_sort);
    term_id mk_not(term_id a) { return mk_app(op::bool_not, {a}); }
    term_id mk_and(const std::vector<term_id>& kids);
    term_id mk_or(const std::vector<term_id>& kids);
    // left-associated sum; zero summands give 0
    term_id mk_sum(const std::vector<term_id>& summands);

    const term_node& node(term_id t) const { return m_nodes[t]; }
    op kind(term_id t) const { return m_nodes[t].kind; }
    const sort& sort_of(term_id t) const { return m_nodes[t].srt; }
    const std::vector<term_id>& kids(term_id t) const { return m_nodes[t].kids; }
    term_id kid(term_id t, unsigned i) const { return m_nodes[t].kids[i]; }
    bool is_var(term_id t) const { return m_nodes[t].kind == op::var; }
    const std::string& name(term_id t) const { return m_nodes[t].name; }
    std::size_t size() const { return m_nodes.size(); }

    // lookup without creating; null_term if absent
    term_id find_var(const std::string& name, const sort& s) const;

    std::string to_string(term_id t) const;

    unsigned depth(term_id t) const;
    std::size_t tree_size(term_id t) const;

private:
    struct key {
        op kind;
        sort srt;
        std::vector<term_id> kids;
        std::string name;
        std::int64_t value;
        bool operator==(const key& o) const {
            return kind == o.kind && value == o.value && kids == o.kids && name == o.name && srt == o.srt;
        }
    };
    struct key_hash {
        std::size_t operator()(const key& k) const;
    };

    term_id intern(term_node n);
    sort check(op o, const std::vector<term_id>& kids) const;

    std::vector<term_node> m_nodes;
    std::unordered_map<key, term_id, key_hash> m_table;
};

} // namespace seqsat
