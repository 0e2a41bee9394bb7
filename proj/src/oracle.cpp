#include "seqsat/oracle.h"

#include <functional>
#include <map>
#include <set>

#include "seqsat/error.h"

namespace seqsat {

const char* to_string(oracle_verdict v) {
    switch (v) {
    case oracle_verdict::sat: return "sat";
    case oracle_verdict::bounded_unsat: return "bounded-unsat";
    case oracle_verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<std::int64_t> small_ints(std::size_t count) {
    std::vector<std::int64_t> out;
    for (std::int64_t k = 0; out.size() < count; ++k) {
        out.push_back(k);
        if (k > 0 && out.size() < count)
            out.push_back(-k);
    }
    return out;
}

namespace {

struct check {
    std::vector<term_id> vars;
    std::function<bool(const model&)> fn;
};

struct state_cap_hit {};

class enumerator {
public:
    enumerator(const term_manager& tm, const bounds& b, std::vector<check> checks)
        : m_tm(tm), m_b(b), m_checks(std::move(checks)) {
        m_m.strict_oob = true;
        std::map<term_id, std::size_t> pos;
        for (auto const& c : m_checks)
            for (term_id v : c.vars)
                if (pos.emplace(v, m_vars.size()).second)
                    m_vars.push_back(v);
        m_ready.resize(m_vars.size() + 1);
        for (std::size_t k = 0; k < m_checks.size(); ++k) {
            std::size_t at = 0;
            for (term_id v : m_checks[k].vars)
                at = std::max(at, pos[v] + 1);
            m_ready[at].push_back(k);
        }
        m_int_elems = small_ints(b.max_elem);
        for (std::size_t e = 0; e < b.max_elem; ++e)
            m_u_elems.push_back(static_cast<std::int64_t>(e));
        m_ints = small_ints(2 * static_cast<std::size_t>(b.int_bound) + 1);
    }

    oracle_result run() {
        oracle_result r;
        try {
            bool found = checks_hold(0, [&] { return assign(0); });
            r.status = found ? oracle_verdict::sat : oracle_verdict::bounded_unsat;
            if (found) {
                m_m.strict_oob = false;
                r.witness = m_m;
            }
        } catch (const state_cap_hit&) {
            r.status = oracle_verdict::inconclusive;
        }
        r.states = m_states;
        return r;
    }

private:
    void tick() {
        if (++m_states > m_b.state_cap)
            throw state_cap_hit{};
    }

    const std::vector<std::int64_t>& elems(bool int_elems) const { return int_elems ? m_int_elems : m_u_elems; }

    const std::vector<seq_value>& seqs(bool int_elems) {
        auto& cache = int_elems ? m_int_seqs : m_u_seqs;
        if (!cache.empty())
            return cache;
        const auto& es = elems(int_elems);
        std::vector<seq_value> layer{{}};
        cache.push_back({});
        for (std::size_t l = 1; l <= m_b.max_len; ++l) {
            std::vector<seq_value> next;
            for (auto const& s : layer)
                for (std::int64_t e : es) {
                    seq_value t = s;
                    t.push_back(e);
                    next.push_back(std::move(t));
                }
            if (cache.size() + next.size() > m_b.state_cap)
                throw state_cap_hit{};
            cache.insert(cache.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return cache;
    }

    // evaluates checks[idx..] of one readiness bucket, choosing oob values on demand, then continues
    bool checks_hold(std::size_t at, const std::function<bool()>& cont) { return bucket(at, 0, cont); }

    bool bucket(std::size_t at, std::size_t k, const std::function<bool()>& cont) {
        const auto& cs = m_ready[at];
        for (; k < cs.size(); ++k) {
            bool ok;
            try {
                ok = m_checks[cs[k]].fn(m_m);
            } catch (const oob_miss& miss) {
                for (std::int64_t e : elems(miss.int_elems)) {
                    tick();
                    m_m.nth_oob[miss.key] = e;
                    if (bucket(at, k, cont))
                        return true;
                }
                m_m.nth_oob.erase(miss.key);
                return false;
            }
            if (!ok)
                return false;
        }
        return cont();
    }

    bool assign(std::size_t p) {
        if (p == m_vars.size())
            return true;
        term_id v = m_vars[p];
        auto next = [&] { return checks_hold(p + 1, [&] { return assign(p + 1); }); };
        const sort& s = m_tm.sort_of(v);
        switch (s.kind()) {
        case sort_kind::int_sort:
            for (std::int64_t x : m_ints) {
                tick();
                m_m.ints[v] = x;
                if (next())
                    return true;
            }
            m_m.ints.erase(v);
            return false;
        case sort_kind::bool_sort:
            for (bool x : {false, true}) {
                tick();
                m_m.bools[v] = x;
                if (next())
                    return true;
            }
            m_m.bools.erase(v);
            return false;
        case sort_kind::elem_sort:
            for (std::int64_t x : m_u_elems) {
                tick();
                m_m.elems[v] = x;
                if (next())
                    return true;
            }
            m_m.elems.erase(v);
            return false;
        case sort_kind::seq_sort:
            for (auto const& x : seqs(s.element().is_int())) {
                tick();
                m_m.seqs[v] = x;
                if (next())
                    return true;
            }
            m_m.seqs.erase(v);
            return false;
        }
        return false;
    }

    const term_manager& m_tm;
    bounds m_b;
    std::vector<check> m_checks;
    std::vector<term_id> m_vars;
    std::vector<std::vector<std::size_t>> m_ready;
    std::vector<std::int64_t> m_int_elems, m_u_elems, m_ints;
    std::vector<seq_value> m_int_seqs, m_u_seqs;
    model m_m;
    std::size_t m_states = 0;
};

void collect_vars(const term_manager& tm, term_id t, std::set<term_id>& seen, std::vector<term_id>& out) {
    if (tm.is_var(t)) {
        if (seen.insert(t).second)
            out.push_back(t);
        return;
    }
    for (term_id k : tm.kids(t))
        collect_vars(tm, k, seen, out);
}

std::vector<term_id> vars_of(const term_manager& tm, std::initializer_list<term_id> ts) {
    std::set<term_id> seen;
    std::vector<term_id> out;
    for (term_id t : ts)
        collect_vars(tm, t, seen, out);
    return out;
}

} // namespace

oracle_result oracle_solve(const term_manager& tm, const std::vector<term_id>& formulas, const bounds& b) {
    std::vector<check> cs;
    for (term_id f : formulas)
        cs.push_back({vars_of(tm, {f}), [&tm, f](const model& m) { return holds(tm, m, f); }});
    return enumerator(tm, b, std::move(cs)).run();
}

oracle_result oracle_solve(const term_manager& tm, const configuration& cfg, const bounds& b) {
    std::vector<check> cs;
    for (auto const& l : cfg.S)
        cs.push_back({vars_of(tm, {l.lhs, l.rhs}), [&tm, l](const model& m) {
                          return (evaluate(tm, m, l.lhs) == evaluate(tm, m, l.rhs)) == l.positive;
                      }});
    for (auto const& c : cfg.A) {
        std::vector<term_id> vs;
        std::set<term_id> seen;
        for (auto const& a : c.disjuncts)
            for (auto const& [v, k] : a.expr.coeffs)
                if (seen.insert(v).second)
                    vs.push_back(v);
        cs.push_back({vs, [c, vs](const model& m) {
                          lia_model im;
                          for (term_id v : vs)
                              im[v] = static_cast<long>(m.ints.at(v));
                          return holds(c, im);
                      }});
    }
    return enumerator(tm, b, std::move(cs)).run();
}

} // namespace seqsat
