#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace seqsat {

enum class sort_kind { int_sort, bool_sort, elem_sort, seq_sort };

/*
  Sorts are values. Element sorts are either Int or an uninterpreted sort
  identified by name. Sequences of sequences are rejected.
*/
class sort {
public:
    sort() = default;

    static sort int_sort() { return sort(sort_kind::int_sort, {}, false); }
    static sort bool_sort() { return sort(sort_kind::bool_sort, {}, false); }
    static sort elem(const std::string& name);
    // throws sort_error unless elem is Int or an uninterpreted sort
    static sort seq(const sort& elem);

    sort_kind kind() const { return m_kind; }
    bool is_int() const { return m_kind == sort_kind::int_sort; }
    bool is_bool() const { return m_kind == sort_kind::bool_sort; }
    bool is_elem() const { return m_kind == sort_kind::elem_sort; }
    bool is_seq() const { return m_kind == sort_kind::seq_sort; }

    // name of an uninterpreted sort, or of the element sort of a sequence
    const std::string& name() const { return m_name; }
    sort element() const;

    std::string to_string() const;

    bool operator==(const sort& o) const {
        return m_kind == o.m_kind && m_elem_int == o.m_elem_int && m_name == o.m_name;
    }
    bool operator!=(const sort& o) const { return !(*this == o); }
    bool operator<(const sort& o) const { return to_string() < o.to_string(); }

    std::size_t hash() const;

private:
    sort(sort_kind k, std::string name, bool elem_int) : m_kind(k), m_name(std::move(name)), m_elem_int(elem_int) {}

    sort_kind m_kind = sort_kind::int_sort;
    std::string m_name;
    bool m_elem_int = false;
};

} // namespace seqsat

template <>
struct std::hash<seqsat::sort> {
    std::size_t operator()(const seqsat::sort& s) const { return s.hash(); }
};
