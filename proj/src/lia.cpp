#include "seqsat/lia.h"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

namespace seqsat {

namespace {

struct out_of_work {};

struct budget {
    std::size_t left;
    void tick() {
        if (left == 0)
            throw out_of_work{};
        --left;
    }
};

using row = std::map<int, mpz_class>;

// sum a_j x_j + c
struct lin {
    row a;
    mpz_class c;
};

void add_scaled(lin& dst, const lin& src, const mpz_class& k) {
    for (auto const& [v, c] : src.a) {
        auto [it, fresh] = dst.a.emplace(v, c * k);
        if (!fresh) {
            it->second += c * k;
            if (it->second == 0)
                dst.a.erase(it);
        }
    }
    dst.c += src.c * k;
}

void substitute(lin& e, int x, const lin& def) {
    auto it = e.a.find(x);
    if (it == e.a.end())
        return;
    mpz_class k = it->second;
    e.a.erase(it);
    add_scaled(e, def, k);
}

mpz_class gcd_of(const row& a) {
    mpz_class g = 0;
    for (auto const& [v, c] : a)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// symmetric residue: a - m * floor(a/m + 1/2)
mpz_class mod_hat(const mpz_class& a, const mpz_class& m) {
    return a - m * floor_div(2 * a + m, 2 * m);
}

mpz_class floor_q(const mpq_class& q) {
    return floor_div(q.get_num(), q.get_den());
}

class simplex {
public:
    int add_var() {
        m_val.emplace_back(0);
        m_lo.emplace_back();
        m_hi.emplace_back();
        m_row_of.push_back(-1);
        return static_cast<int>(m_val.size()) - 1;
    }

    // new basic variable equal to sum a_j x_j over nonbasic x_j
    int add_row(const row& a) {
        int s = add_var();
        std::map<int, mpq_class> r;
        mpq_class v = 0;
        for (auto const& [x, c] : a) {
            mpq_class q(c);
            if (m_row_of[x] >= 0) {
                for (auto const& [y, d] : m_rows[m_row_of[x]])
                    acc(r, y, q * d);
            } else {
                acc(r, x, q);
            }
            v += q * m_val[x];
        }
        m_val[s] = v;
        m_row_of[s] = static_cast<int>(m_rows.size());
        m_basic.push_back(s);
        m_rows.push_back(std::move(r));
        return s;
    }

    const std::optional<mpq_class>& lower(int v) const { return m_lo[v]; }
    const std::optional<mpq_class>& upper(int v) const { return m_hi[v]; }

    void set_bounds(int v, std::optional<mpq_class> lo, std::optional<mpq_class> hi) {
        m_lo[v] = std::move(lo);
        m_hi[v] = std::move(hi);
        if (m_row_of[v] >= 0)
            return;
        if (m_lo[v] && m_val[v] < *m_lo[v])
            update(v, *m_lo[v]);
        else if (m_hi[v] && m_val[v] > *m_hi[v])
            update(v, *m_hi[v]);
    }

    void tighten_lower(int v, const mpq_class& b) {
        if (!m_lo[v] || *m_lo[v] < b)
            set_bounds(v, b, m_hi[v]);
    }
    void tighten_upper(int v, const mpq_class& b) {
        if (!m_hi[v] || *m_hi[v] > b)
            set_bounds(v, m_lo[v], b);
    }

    const mpq_class& value(int v) const { return m_val[v]; }
    int num_vars() const { return static_cast<int>(m_val.size()); }

    bool check(budget& bud) {
        for (;;) {
            bud.tick();
            int b = -1;
            for (int v = 0; v < num_vars(); ++v) {
                if (m_row_of[v] < 0)
                    continue;
                if ((m_lo[v] && m_val[v] < *m_lo[v]) || (m_hi[v] && m_val[v] > *m_hi[v])) {
                    b = v;
                    break;
                }
            }
            if (b < 0)
                return true;
            const auto& r = m_rows[m_row_of[b]];
            bool raise = m_lo[b] && m_val[b] < *m_lo[b];
            int pick = -1;
            for (auto const& [j, a] : r) {
                bool can_inc = !m_hi[j] || m_val[j] < *m_hi[j];
                bool can_dec = !m_lo[j] || m_val[j] > *m_lo[j];
                bool ok = raise ? ((a > 0 && can_inc) || (a < 0 && can_dec))
                                : ((a < 0 && can_inc) || (a > 0 && can_dec));
                if (ok) {
                    pick = j;
                    break;
                }
            }
            if (pick < 0)
                return false;
            pivot_and_update(b, pick, raise ? *m_lo[b] : *m_hi[b]);
        }
    }

private:
    static void acc(std::map<int, mpq_class>& r, int v, const mpq_class& c) {
        if (c == 0)
            return;
        auto [it, fresh] = r.emplace(v, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                r.erase(it);
        }
    }

    void update(int j, const mpq_class& v) {
        mpq_class delta = v - m_val[j];
        for (std::size_t r = 0; r < m_rows.size(); ++r) {
            auto it = m_rows[r].find(j);
            if (it != m_rows[r].end())
                m_val[m_basic[r]] += it->second * delta;
        }
        m_val[j] = v;
    }

    void pivot_and_update(int b, int j, const mpq_class& v) {
        int r = m_row_of[b];
        mpq_class a = m_rows[r].at(j);
        mpq_class theta = (v - m_val[b]) / a;
        m_val[b] = v;
        m_val[j] += theta;
        for (std::size_t k = 0; k < m_rows.size(); ++k) {
            if (static_cast<int>(k) == r)
                continue;
            auto it = m_rows[k].find(j);
            if (it != m_rows[k].end())
                m_val[m_basic[k]] += it->second * theta;
        }
        pivot(r, j);
    }

    void pivot(int r, int j) {
        int b = m_basic[r];
        std::map<int, mpq_class> old = std::move(m_rows[r]);
        mpq_class a = old.at(j);
        old.erase(j);
        std::map<int, mpq_class> nr;
        nr[b] = 1 / a;
        for (auto const& [l, c] : old)
            nr[l] = -c / a;
        for (std::size_t k = 0; k < m_rows.size(); ++k) {
            if (static_cast<int>(k) == r)
                continue;
            auto it = m_rows[k].find(j);
            if (it == m_rows[k].end())
                continue;
            mpq_class c = it->second;
            m_rows[k].erase(it);
            for (auto const& [l, d] : nr)
                acc(m_rows[k], l, c * d);
        }
        m_rows[r] = std::move(nr);
        m_basic[r] = j;
        m_row_of[j] = r;
        m_row_of[b] = -1;
    }

    std::vector<mpq_class> m_val;
    std::vector<std::optional<mpq_class>> m_lo, m_hi;
    std::vector<int> m_row_of;
    std::vector<int> m_basic;
    std::vector<std::map<int, mpq_class>> m_rows;
};

lia_status branch_and_bound(simplex& sx, int num_int, budget& bud) {
    if (!sx.check(bud))
        return lia_status::unsat;
    int v = -1;
    for (int i = 0; i < num_int; ++i) {
        if (sx.value(i).get_den() != 1) {
            v = i;
            break;
        }
    }
    if (v < 0)
        return lia_status::sat;
    bud.tick();
    auto lo = sx.lower(v);
    auto hi = sx.upper(v);
    mpz_class f = floor_q(sx.value(v));
    sx.tighten_upper(v, mpq_class(f));
    lia_status r1 = branch_and_bound(sx, num_int, bud);
    if (r1 == lia_status::sat)
        return r1;
    sx.set_bounds(v, lo, hi);
    sx.tighten_lower(v, mpq_class(f + 1));
    lia_status r2 = branch_and_bound(sx, num_int, bud);
    if (r2 == lia_status::sat)
        return r2;
    sx.set_bounds(v, lo, hi);
    return r1 == lia_status::unknown || r2 == lia_status::unknown ? lia_status::unknown : lia_status::unsat;
}

// conjunction of le/eq atoms
lia_status solve_conjunction(const std::vector<arith_atom>& atoms, lia_model& model, budget& bud) {
    std::unordered_map<term_id, int> index;
    std::vector<term_id> names;
    auto var_of = [&](term_id t) {
        auto [it, fresh] = index.emplace(t, static_cast<int>(names.size()));
        if (fresh)
            names.push_back(t);
        return it->second;
    };
    std::vector<lin> eqs, les;
    for (auto const& at : atoms) {
        lin l;
        for (auto const& [v, c] : at.expr.coeffs)
            l.a[var_of(v)] = c;
        l.c = at.expr.constant;
        (at.r == rel::eq ? eqs : les).push_back(std::move(l));
    }
    int next = static_cast<int>(names.size());
    std::vector<std::pair<int, lin>> subs;

    auto apply_sub = [&](int x, const lin& def) {
        for (auto& e : eqs)
            substitute(e, x, def);
        for (auto& e : les)
            substitute(e, x, def);
        subs.emplace_back(x, def);
    };

    while (!eqs.empty()) {
        bud.tick();
        lin e = std::move(eqs.back());
        eqs.pop_back();
        if (e.a.empty()) {
            if (e.c != 0)
                return lia_status::unsat;
            continue;
        }
        mpz_class g = gcd_of(e.a);
        if (e.c % g != 0)
            return lia_status::unsat;
        for (auto& [v, c] : e.a)
            c /= g;
        e.c /= g;
        int unit = -1;
        int smallest = -1;
        for (auto const& [v, c] : e.a) {
            if (abs(c) == 1) {
                unit = v;
                break;
            }
            if (smallest < 0 || abs(c) < abs(e.a.at(smallest)))
                smallest = v;
        }
        if (unit >= 0) {
            mpz_class a = e.a.at(unit);
            lin def;
            for (auto const& [v, c] : e.a)
                if (v != unit)
                    def.a[v] = -c * a;
            def.c = -e.c * a;
            apply_sub(unit, def);
            continue;
        }
        // reduce coefficients through a fresh variable
        int k = smallest;
        mpz_class ak = e.a.at(k);
        mpz_class m = abs(ak) + 1;
        int s = sgn(ak);
        int sigma = next++;
        lin def;
        def.a[sigma] = -s * m;
        for (auto const& [v, c] : e.a)
            if (v != k) {
                mpz_class r = s * mod_hat(c, m);
                if (r != 0)
                    def.a[v] = r;
            }
        def.c = s * mod_hat(e.c, m);
        substitute(e, k, def);
        apply_sub(k, def);
        eqs.push_back(std::move(e));
    }

    // variables left after elimination, dense for the simplex
    std::map<int, int> col;
    for (auto& e : les)
        for (auto const& [v, c] : e.a)
            col.emplace(v, 0);
    simplex sx;
    for (auto& [v, j] : col)
        j = sx.add_var();
    int num_int = sx.num_vars();
    std::map<row, int> slack;
    for (auto& e : les) {
        if (e.a.empty()) {
            if (e.c > 0)
                return lia_status::unsat;
            continue;
        }
        mpz_class g = gcd_of(e.a);
        row r;
        for (auto const& [v, c] : e.a)
            r[col.at(v)] = c / g;
        // sum r x <= -c/g, tightened to the floor
        mpz_class bound = floor_div(-e.c, g);
        bool flip = r.begin()->second < 0;
        if (flip) {
            for (auto& [v, c] : r)
                c = -c;
        }
        if (r.size() == 1) {
            auto [x, a] = *r.begin();
            // a * x <= bound, or a * x >= -bound when flipped
            if (!flip)
                sx.tighten_upper(x, mpq_class(floor_div(bound, a)));
            else
                sx.tighten_lower(x, mpq_class(ceil_div(-bound, a)));
            continue;
        }
        auto it = slack.find(r);
        int sv;
        if (it == slack.end()) {
            sv = sx.add_row(r);
            slack.emplace(r, sv);
        } else {
            sv = it->second;
        }
        if (!flip)
            sx.tighten_upper(sv, mpq_class(bound));
        else
            sx.tighten_lower(sv, mpq_class(-bound));
    }
    for (int v = 0; v < sx.num_vars(); ++v)
        if (sx.lower(v) && sx.upper(v) && *sx.lower(v) > *sx.upper(v))
            return lia_status::unsat;

    lia_status st = branch_and_bound(sx, num_int, bud);
    if (st != lia_status::sat)
        return st;

    std::unordered_map<int, mpz_class> val;
    for (auto const& [v, j] : col)
        val[v] = sx.value(j).get_num();
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        mpz_class r = it->second.c;
        for (auto const& [v, c] : it->second.a) {
            auto f = val.find(v);
            if (f != val.end())
                r += c * f->second;
        }
        val[it->first] = r;
    }
    model.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto f = val.find(static_cast<int>(i));
        model[names[i]] = f == val.end() ? mpz_class(0) : f->second;
    }
    return lia_status::sat;
}

lia_status combine(lia_status a, lia_status b) {
    if (a == lia_status::sat || b == lia_status::sat)
        return lia_status::sat;
    if (a == lia_status::unknown || b == lia_status::unknown)
        return lia_status::unknown;
    return lia_status::unsat;
}

lia_status search(std::vector<arith_atom>& conj, std::vector<arith_atom>& nes,
                  const std::vector<const arith_constraint*>& clauses, lia_model& model, budget& bud) {
    lia_status st = solve_conjunction(conj, model, bud);
    if (st != lia_status::sat)
        return st;
    for (auto const& ne : nes) {
        if (holds(ne, model))
            continue;
        lia_status res = lia_status::unsat;
        linear_expr below = ne.expr;
        below.constant += 1;
        linear_expr above = ne.expr.scaled(-1);
        above.constant += 1;
        for (auto const& e : {below, above}) {
            conj.push_back(arith_atom{e, rel::le});
            res = combine(res, search(conj, nes, clauses, model, bud));
            conj.pop_back();
            if (res == lia_status::sat)
                return res;
        }
        return res;
    }
    for (const arith_constraint* cl : clauses) {
        if (holds(*cl, model))
            continue;
        lia_status res = lia_status::unsat;
        for (auto const& d : cl->disjuncts) {
            auto& target = d.r == rel::ne ? nes : conj;
            target.push_back(d);
            res = combine(res, search(conj, nes, clauses, model, bud));
            target.pop_back();
            if (res == lia_status::sat)
                return res;
        }
        return res;
    }
    return lia_status::sat;
}

lia_result check_component(const std::vector<arith_constraint>& norm, const lia_options& opts) {
    std::vector<arith_atom> conj, nes;
    std::vector<const arith_constraint*> clauses;
    for (auto const& c : norm) {
        if (c.disjuncts.size() > 1)
            clauses.push_back(&c);
        else if (c.disjuncts[0].r == rel::ne)
            nes.push_back(c.disjuncts[0]);
        else
            conj.push_back(c.disjuncts[0]);
    }
    lia_result res;
    budget bud{opts.work_limit};
    try {
        res.status = search(conj, nes, clauses, res.model, bud);
    } catch (const out_of_work&) {
        res.status = lia_status::unknown;
    }
    if (res.status != lia_status::sat)
        res.model.clear();
    return res;
}

using component_cache = std::map<std::vector<arith_constraint>, lia_result>;

component_cache& cache() {
    thread_local component_cache c;
    return c;
}

constexpr std::size_t cache_limit = 50000;

} // namespace

lia_result lia_check(const std::vector<arith_constraint>& cs, const lia_options& opts, const lia_model* hint) {
    // normalized constraint -> first input position
    std::map<arith_constraint, std::size_t> norm;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto n = cs[i].normalized();
        if (!n)
            continue;
        if (n->is_false())
            return {lia_status::unsat, {}, {i}};
        norm.emplace(std::move(*n), i);
    }

    // independent groups of constraints by shared variables
    std::map<term_id, term_id> parent;
    std::function<term_id(term_id)> find = [&](term_id v) {
        term_id p = parent.emplace(v, v).first->second;
        if (p == v)
            return v;
        return parent[v] = find(p);
    };
    for (auto const& [c, pos] : norm) {
        std::optional<term_id> first;
        for (auto const& a : c.disjuncts)
            for (auto const& [v, k] : a.expr.coeffs) {
                term_id r = find(v);
                if (!first)
                    first = r;
                else if (find(*first) != r)
                    parent[r] = find(*first);
            }
    }
    struct group {
        std::vector<arith_constraint> cs;
        std::vector<std::size_t> pos;
    };
    std::map<term_id, group> groups;
    for (auto const& [c, pos] : norm) {
        term_id v = null_term;
        for (auto const& a : c.disjuncts)
            if (!a.expr.coeffs.empty())
                v = a.expr.coeffs.begin()->first;
        group& g = groups[v == null_term ? v : find(v)];
        g.cs.push_back(c);
        g.pos.push_back(pos);
    }

    lia_result res;
    res.status = lia_status::sat;
    for (auto const& [root, g] : groups) {
        if (hint) {
            bool ok = true;
            for (auto const& c : g.cs) {
                for (auto const& a : c.disjuncts)
                    for (auto const& [v, k] : a.expr.coeffs)
                        ok = ok && hint->count(v);
                ok = ok && holds(c, *hint);
                if (!ok)
                    break;
            }
            if (ok) {
                for (auto const& c : g.cs)
                    for (auto const& a : c.disjuncts)
                        for (auto const& [v, k] : a.expr.coeffs)
                            res.model[v] = hint->at(v);
                continue;
            }
        }
        auto& memo = cache();
        auto it = memo.find(g.cs);
        if (it == memo.end()) {
            if (memo.size() >= cache_limit)
                memo.clear();
            it = memo.emplace(g.cs, check_component(g.cs, opts)).first;
        }
        if (it->second.status == lia_status::unsat) {
            std::vector<std::size_t> core = g.pos;
            std::sort(core.begin(), core.end());
            return {lia_status::unsat, {}, std::move(core)};
        }
        if (it->second.status == lia_status::unknown)
            res.status = lia_status::unknown;
        for (auto const& [v, x] : it->second.model)
            res.model[v] = x;
    }
    if (res.status != lia_status::sat) {
        res.model.clear();
        return res;
    }
    // variables dropped during normalization still get a value
    for (auto const& c : cs)
        for (auto const& a : c.disjuncts)
            for (auto const& [v, k] : a.expr.coeffs)
                res.model.emplace(v, 0);
    return res;
}

entailment lia_entails(const std::vector<arith_constraint>& cs, const arith_constraint& c, const lia_options& opts) {
    std::vector<arith_constraint> q = cs;
    for (auto const& d : c.disjuncts)
        q.emplace_back(d.negate());
    lia_result r = lia_check(q, opts);
    switch (r.status) {
    case lia_status::unsat: return entailment::yes;
    case lia_status::sat: return entailment::no;
    default: return entailment::unknown;
    }
}

} // namespace seqsat
