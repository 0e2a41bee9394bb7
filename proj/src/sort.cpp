#include "seqsat/sort.h"

#include "seqsat/error.h"

namespace seqsat {

sort sort::elem(const std::string& name) {
    if (name.empty())
        throw sort_error("uninterpreted sort needs a name");
    return sort(sort_kind::elem_sort, name, false);
}

sort sort::seq(const sort& elem) {
    if (elem.is_int())
        return sort(sort_kind::seq_sort, {}, true);
    if (elem.is_elem())
        return sort(sort_kind::seq_sort, elem.m_name, false);
    throw sort_error("sequence element sort must be Int or an uninterpreted sort, got " + elem.to_string());
}

sort sort::element() const {
    if (!is_seq())
        throw sort_error("sort " + to_string() + " has no element sort");
    return m_elem_int ? int_sort() : elem(m_name);
}

std::string sort::to_string() const {
    switch (m_kind) {
    case sort_kind::int_sort: return "Int";
    case sort_kind::bool_sort: return "Bool";
    case sort_kind::elem_sort: return m_name;
    case sort_kind::seq_sort: return "(Seq " + (m_elem_int ? std::string("Int") : m_name) + ")";
    }
    return "?";
}

std::size_t sort::hash() const {
    return std::hash<std::string>()(m_name) * 31 + static_cast<std::size_t>(m_kind) * 7 + (m_elem_int ? 1 : 0);
}

} // namespace seqsat
