#include "seqsat/branches.h"

#include <algorithm>
#include <set>

#include "seqsat/error.h"

namespace seqsat {

namespace {

// one conjunction; items are clauses of one or two literals
using cube = std::vector<raw_clause>;

class dnf_builder {
public:
    dnf_builder(term_manager& tm, std::size_t cap) : m_tm(tm), m_cap(cap) {}

    std::vector<cube> run(term_id t, bool pos) {
        const term_node& n = m_tm.node(t);
        switch (n.kind) {
        case op::bool_not: return run(n.kids[0], !pos);
        case op::bool_const: return (n.value != 0) == pos ? std::vector<cube>{cube{}} : std::vector<cube>{};
        case op::bool_and:
        case op::bool_or: {
            bool conj = (n.kind == op::bool_and) == pos;
            if (!conj) {
                if (auto c = arith_pair(n.kids, pos))
                    return {cube{*c}};
                std::vector<cube> out;
                for (term_id k : n.kids) {
                    auto part = run(k, pos);
                    out.insert(out.end(), part.begin(), part.end());
                    check(out.size());
                }
                return out;
            }
            std::vector<cube> acc{cube{}};
            for (term_id k : n.kids) {
                auto part = run(k, pos);
                std::vector<cube> next;
                check(acc.size() * part.size());
                for (auto const& a : acc)
                    for (auto const& b : part) {
                        cube c = a;
                        c.insert(c.end(), b.begin(), b.end());
                        next.push_back(std::move(c));
                    }
                acc = std::move(next);
            }
            return acc;
        }
        default: return {cube{raw_clause{literal{pos, t}}}};
        }
    }

private:
    void check(std::size_t n) const {
        if (n > m_cap)
            throw resource_error("more than " + std::to_string(m_cap) + " Boolean branches");
    }

    bool is_arith_literal(term_id t) const {
        op k = m_tm.kind(t);
        if (k == op::bool_not)
            return is_arith_literal(m_tm.kid(t, 0));
        return k == op::leq || (k == op::eq && m_tm.sort_of(m_tm.kid(t, 0)).is_int());
    }

    literal as_literal(term_id t, bool pos) const {
        while (m_tm.kind(t) == op::bool_not) {
            t = m_tm.kid(t, 0);
            pos = !pos;
        }
        return literal{pos, t};
    }

    std::optional<raw_clause> arith_pair(const std::vector<term_id>& kids, bool pos) const {
        if (kids.size() != 2 || !is_arith_literal(kids[0]) || !is_arith_literal(kids[1]))
            return std::nullopt;
        return raw_clause{as_literal(kids[0], pos), as_literal(kids[1], pos)};
    }

    term_manager& m_tm;
    std::size_t m_cap;
};

} // namespace

branch_set to_branches(term_manager& tm, const std::vector<term_id>& assertions, std::size_t cap) {
    dnf_builder b(tm, cap);
    term_id all = tm.mk_and(assertions);
    std::vector<cube> cubes = b.run(all, true);
    branch_set out;
    std::set<std::vector<raw_clause>> seen;
    for (auto& c : cubes) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        branch br;
        bool dead = false;
        std::set<literal> units;
        for (auto const& cl : c)
            if (cl.size() == 1)
                units.insert(cl[0]);
        for (auto const& l : units)
            if (units.count(literal{!l.positive, l.atom}))
                dead = true;
        if (dead || !seen.insert(c).second)
            continue;
        for (auto const& cl : c) {
            if (cl.size() > 1) {
                br.A.push_back(cl);
                continue;
            }
            const literal& l = cl[0];
            op k = tm.kind(l.atom);
            if (k == op::var) {
                br.bools[l.atom] = l.positive;
            } else if (k == op::leq) {
                br.A.push_back(cl);
            } else if (k == op::eq && tm.sort_of(tm.kid(l.atom, 0)).is_int()) {
                br.S.push_back(l);
                br.A.push_back(cl);
            } else if (k == op::eq) {
                br.S.push_back(l);
            } else {
                throw contract_error("unexpected literal " + tm.to_string(l.atom));
            }
        }
        out.branches.push_back(std::move(br));
    }
    return out;
}

} // namespace seqsat
