#include "seqsat/model.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "seqsat/error.h"

namespace seqsat {

namespace {

std::int64_t narrow(const mpz_class& v) {
    if (!v.fits_slong_p())
        throw contract_error("integer value out of 64-bit range: " + v.get_str());
    return v.get_si();
}

value scalar(sort_kind k, std::int64_t v) {
    value r;
    r.kind = k;
    r.scalar = v;
    return r;
}

value seq_of(seq_value s) {
    value r;
    r.kind = sort_kind::seq_sort;
    r.seq = std::move(s);
    return r;
}

std::string elem_key(const term_manager& tm, term_id nth_term) { return tm.sort_of(nth_term).to_string(); }

} // namespace

value evaluate(const term_manager& tm, const model& m, term_id t) {
    const term_node& n = tm.node(t);
    auto kid = [&](unsigned i) { return evaluate(tm, m, n.kids[i]); };
    switch (n.kind) {
    case op::var: {
        auto missing = [&]() -> value { throw contract_error("model has no value for " + n.name); };
        switch (n.srt.kind()) {
        case sort_kind::int_sort: {
            auto it = m.ints.find(t);
            return it == m.ints.end() ? missing() : scalar(sort_kind::int_sort, it->second);
        }
        case sort_kind::elem_sort: {
            auto it = m.elems.find(t);
            return it == m.elems.end() ? missing() : scalar(sort_kind::elem_sort, it->second);
        }
        case sort_kind::bool_sort: {
            auto it = m.bools.find(t);
            return it == m.bools.end() ? missing() : scalar(sort_kind::bool_sort, it->second);
        }
        case sort_kind::seq_sort: {
            auto it = m.seqs.find(t);
            return it == m.seqs.end() ? missing() : seq_of(it->second);
        }
        }
        return missing();
    }
    case op::int_const: return scalar(sort_kind::int_sort, n.value);
    case op::bool_const: return scalar(sort_kind::bool_sort, n.value);
    case op::add: return scalar(sort_kind::int_sort, kid(0).scalar + kid(1).scalar);
    case op::neg: return scalar(sort_kind::int_sort, -kid(0).scalar);
    case op::leq: return scalar(sort_kind::bool_sort, kid(0).scalar <= kid(1).scalar);
    case op::eq: return scalar(sort_kind::bool_sort, kid(0) == kid(1));
    case op::bool_not: return scalar(sort_kind::bool_sort, !kid(0).scalar);
    case op::bool_and: {
        for (unsigned i = 0; i < n.kids.size(); ++i)
            if (!kid(i).scalar)
                return scalar(sort_kind::bool_sort, 0);
        return scalar(sort_kind::bool_sort, 1);
    }
    case op::bool_or: {
        for (unsigned i = 0; i < n.kids.size(); ++i)
            if (kid(i).scalar)
                return scalar(sort_kind::bool_sort, 1);
        return scalar(sort_kind::bool_sort, 0);
    }
    case op::empty: return seq_of({});
    case op::unit: return seq_of({kid(0).scalar});
    case op::len: return scalar(sort_kind::int_sort, static_cast<std::int64_t>(kid(0).seq.size()));
    case op::concat: {
        seq_value out;
        for (unsigned i = 0; i < n.kids.size(); ++i) {
            value v = kid(i);
            out.insert(out.end(), v.seq.begin(), v.seq.end());
        }
        return seq_of(std::move(out));
    }
    case op::nth: {
        value s = kid(0);
        std::int64_t i = kid(1).scalar;
        sort_kind k = n.srt.kind();
        if (i >= 0 && i < static_cast<std::int64_t>(s.seq.size()))
            return scalar(k, s.seq[i]);
        oob_key key{elem_key(tm, t), s.seq, i};
        auto it = m.nth_oob.find(key);
        if (it == m.nth_oob.end() && m.strict_oob)
            throw oob_miss{std::move(key), k == sort_kind::int_sort};
        return scalar(k, it == m.nth_oob.end() ? m.oob_default : it->second);
    }
    case op::update: {
        value s = kid(0);
        std::int64_t i = kid(1).scalar;
        if (i >= 0 && i < static_cast<std::int64_t>(s.seq.size()))
            s.seq[i] = kid(2).scalar;
        return s;
    }
    case op::extract: {
        value s = kid(0);
        std::int64_t i = kid(1).scalar, j = kid(2).scalar;
        std::int64_t len = static_cast<std::int64_t>(s.seq.size());
        if (i < 0 || i >= len || j <= 0)
            return seq_of({});
        std::int64_t take = std::min(j, len - i);
        return seq_of(seq_value(s.seq.begin() + i, s.seq.begin() + i + take));
    }
    }
    throw contract_error("cannot evaluate " + tm.to_string(t));
}

bool holds(const term_manager& tm, const model& m, term_id formula) {
    value v = evaluate(tm, m, formula);
    if (v.kind != sort_kind::bool_sort)
        throw contract_error("not a formula: " + tm.to_string(formula));
    return v.scalar != 0;
}

std::string print_value(const term_manager&, const sort& s, const value& v) {
    auto num = [](std::int64_t x) {
        std::string s = std::to_string(x);
        return x < 0 ? "(- " + s.substr(1) + ")" : s;
    };
    auto elem = [&](const sort& e, std::int64_t x) { return e.is_int() ? num(x) : "@u" + std::to_string(x); };
    switch (s.kind()) {
    case sort_kind::int_sort: return num(v.scalar);
    case sort_kind::bool_sort: return v.scalar ? "true" : "false";
    case sort_kind::elem_sort: return elem(s, v.scalar);
    case sort_kind::seq_sort: {
        if (v.seq.empty())
            return "(as seq.empty " + s.to_string() + ")";
        sort e = s.element();
        if (v.seq.size() == 1)
            return "(seq.unit " + elem(e, v.seq[0]) + ")";
        std::string out = "(seq.++";
        for (std::int64_t x : v.seq)
            out += " (seq.unit " + elem(e, x) + ")";
        return out + ")";
    }
    }
    return "";
}

std::string print_model(const term_manager& tm, const model& m,
                        const std::vector<std::pair<std::string, sort>>& decls) {
    std::ostringstream out;
    out << "(\n";
    for (auto const& [name, s] : decls) {
        term_id v = tm.find_var(name, s);
        if (v == null_term)
            throw contract_error("undeclared variable " + name);
        out << "  (define-fun " << name << " () " << s.to_string() << ' ' << print_value(tm, s, evaluate(tm, m, v))
            << ")\n";
    }
    out << ")\n";
    return out.str();
}

namespace {

struct union_find {
    std::map<term_id, term_id> parent;
    term_id find(term_id x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent.emplace(x, x);
            return x;
        }
        if (it->second == x)
            return x;
        term_id r = find(it->second);
        parent[x] = r;
        return r;
    }
    void unite(term_id a, term_id b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

class builder {
public:
    builder(const term_manager& tm, const configuration& cfg, const congruence& cc, const lia_model& arith,
            const nf_map& nfs)
        : tm(tm), cfg(cfg), cc(cc), arith(arith), nfs(nfs) {}

    model run() {
        for (auto const& [v, val] : arith) {
            m.ints[v] = narrow(val);
            used_ints.insert(m.ints[v]);
        }
        collect();
        scalars();
        atomic_seqs();
        other_seqs();
        for (term_id r : seq_roots)
            for (term_id t : cc.members(r))
                if (tm.is_var(t))
                    m.seqs[t] = seq_val.at(r);
        out_of_bounds();
        return std::move(m);
    }

private:
    struct seq_class {
        bool has_empty = false;
        bool atomic = true;
        std::vector<term_id> units;
        std::vector<term_id> concats;
        std::int64_t length = 0;
    };

    void collect() {
        std::set<term_id> seen;
        for (term_id t : cc.terms()) {
            term_id r = cc.root(t);
            const sort& s = tm.sort_of(t);
            if (s.is_seq()) {
                seq_class& c = seqs[r];
                if (seen.insert(r).second)
                    seq_roots.push_back(r);
                if (tm.kind(t) == op::empty)
                    c.has_empty = true;
                if (tm.kind(t) == op::unit)
                    c.units.push_back(t);
                if (tm.kind(t) == op::concat)
                    c.concats.push_back(t);
            } else if ((s.is_int() || s.is_elem()) && seen.insert(r).second) {
                scalar_roots.push_back(r);
            }
            if (tm.kind(t) == op::nth)
                nths.push_back(t);
            if (tm.kind(t) == op::update)
                updates.push_back(t);
        }
        auto by_alpha = [&](term_id a, term_id b) { return cc.alpha(a) < cc.alpha(b); };
        std::sort(seq_roots.begin(), seq_roots.end(), by_alpha);
        std::sort(scalar_roots.begin(), scalar_roots.end(), by_alpha);
        for (auto& [r, c] : seqs) {
            c.atomic = !c.has_empty;
            for (term_id t : c.concats) {
                std::size_t nonempty = 0;
                for (term_id k : tm.kids(t))
                    nonempty += !seqs[cc.root(k)].has_empty;
                if (nonempty > 1)
                    c.atomic = false;
            }
        }
    }

    std::int64_t fresh_int() {
        while (used_ints.count(next_int))
            ++next_int;
        used_ints.insert(next_int);
        return next_int;
    }

    std::int64_t fresh_elem(const sort& s) {
        if (s.is_int())
            return fresh_int();
        return next_elem[s.name()]++;
    }

    void scalars() {
        std::vector<term_id> pending;
        for (term_id r : scalar_roots) {
            const sort& s = tm.sort_of(r);
            if (s.is_elem()) {
                scalar_val[r] = next_elem[s.name()]++;
                continue;
            }
            std::optional<std::int64_t> v;
            for (term_id t : cc.members(r)) {
                auto it = m.ints.find(t);
                if (it == m.ints.end())
                    continue;
                if (v && *v != it->second)
                    throw contract_error("arithmetic model splits the class of " + tm.to_string(t));
                v = it->second;
            }
            if (v)
                scalar_val[r] = *v;
            else
                pending.push_back(r);
        }
        for (term_id r : pending)
            scalar_val[r] = fresh_int();
        for (term_id r : scalar_roots)
            for (term_id t : cc.members(r))
                if (tm.is_var(t)) {
                    if (tm.sort_of(t).is_elem())
                        m.elems[t] = scalar_val[r];
                    else
                        m.ints[t] = scalar_val[r];
                }
    }

    std::int64_t int_of(term_id v) {
        auto it = m.ints.find(v);
        if (it == m.ints.end())
            throw contract_error("no integer value for " + tm.to_string(v));
        return it->second;
    }

    void atomic_seqs() {
        std::int64_t total = 0;
        for (term_id r : seq_roots) {
            seq_class& c = seqs[r];
            if (!c.atomic)
                continue;
            term_id a = cc.alpha(r);
            auto lv = cfg.len_vars.find(a);
            if (lv == cfg.len_vars.end())
                throw contract_error("no length variable for " + tm.to_string(a));
            c.length = int_of(lv->second);
            if (c.length < 0)
                throw contract_error("negative length for " + tm.to_string(a));
            total += c.length;
            if (total > 10'000'000)
                throw contract_error("model too large");
            if (!c.units.empty()) {
                if (c.length != 1)
                    throw contract_error("unit class of length " + std::to_string(c.length));
                seq_val[r] = {scalar_val.at(cc.root(tm.kid(c.units[0], 0)))};
            }
        }
        // weak equivalence graph over atomic classes
        std::map<std::pair<term_id, term_id>, std::set<std::int64_t>> labels;
        for (term_id u : updates) {
            term_id a = cc.root(u), b = cc.root(tm.kid(u, 0));
            if (a == b || !seqs[a].atomic || !seqs[b].atomic || seqs[a].length != seqs[b].length)
                continue;
            std::int64_t k = scalar_val.at(cc.root(tm.kid(u, 1)));
            if (k < 0 || k >= seqs[a].length)
                continue;
            labels[{std::min(a, b), std::max(a, b)}].insert(k);
        }
        std::set<std::int64_t> special;
        for (auto const& [e, ls] : labels)
            special.insert(ls.begin(), ls.end());
        std::map<std::int64_t, std::vector<term_id>> reads;
        for (term_id r : nths) {
            term_id s = cc.root(tm.kid(r, 0));
            if (!seqs[s].atomic)
                continue;
            std::int64_t k = scalar_val.at(cc.root(tm.kid(r, 1)));
            if (k >= 0 && k < seqs[s].length) {
                special.insert(k);
                reads[k].push_back(r);
            }
        }
        auto components = [&](std::optional<std::int64_t> pos) {
            union_find uf;
            for (auto const& [e, ls] : labels) {
                bool other = !pos || ls.size() > 1 || !ls.count(*pos);
                if (other)
                    uf.unite(e.first, e.second);
            }
            return uf;
        };
        union_find generic = components(std::nullopt);
        std::int64_t max_len = 0;
        for (term_id r : seq_roots)
            if (seqs[r].atomic && seqs[r].units.empty()) {
                max_len = std::max(max_len, seqs[r].length);
                seq_val[r].assign(seqs[r].length, 0);
            }
        for (std::int64_t p = 0; p < max_len; ++p) {
            bool sp = special.count(p) > 0;
            union_find local = sp ? components(p) : union_find{};
            union_find& uf = sp ? local : generic;
            std::map<term_id, std::int64_t> comp_val;
            if (sp)
                for (term_id r : reads[p]) {
                    term_id comp = uf.find(cc.root(tm.kid(r, 0)));
                    std::int64_t v = scalar_val.at(cc.root(r));
                    auto [it, fresh] = comp_val.emplace(comp, v);
                    if (!fresh && it->second != v)
                        throw contract_error("conflicting reads at position " + std::to_string(p));
                }
            for (term_id r : seq_roots) {
                seq_class& c = seqs[r];
                if (!c.atomic || !c.units.empty() || p >= c.length)
                    continue;
                term_id comp = uf.find(r);
                auto it = comp_val.find(comp);
                if (it == comp_val.end())
                    it = comp_val.emplace(comp, fresh_elem(tm.sort_of(r).element())).first;
                seq_val[r][p] = it->second;
            }
        }
    }

    void other_seqs() {
        for (term_id r : seq_roots) {
            seq_class& c = seqs[r];
            if (c.atomic)
                continue;
            if (c.has_empty) {
                seq_val[r] = {};
                continue;
            }
            auto it = nfs.find(r);
            if (it == nfs.end())
                throw contract_error("no normal form for " + tm.to_string(cc.alpha(r)));
            seq_value out;
            for (term_id y : it->second) {
                auto v = seq_val.find(cc.root(y));
                if (v == seq_val.end() || !seqs[cc.root(y)].atomic)
                    throw contract_error("normal form component is not atomic: " + tm.to_string(y));
                out.insert(out.end(), v->second.begin(), v->second.end());
            }
            seq_val[r] = std::move(out);
        }
    }

    void out_of_bounds() {
        for (term_id r : nths) {
            const seq_value& s = seq_val.at(cc.root(tm.kid(r, 0)));
            std::int64_t k = scalar_val.at(cc.root(tm.kid(r, 1)));
            if (k >= 0 && k < static_cast<std::int64_t>(s.size()))
                continue;
            std::int64_t v = scalar_val.at(cc.root(r));
            auto [it, fresh] = m.nth_oob.emplace(oob_key{elem_key(tm, r), s, k}, v);
            if (!fresh && it->second != v)
                throw contract_error("conflicting out-of-bounds reads");
        }
    }

    const term_manager& tm;
    const configuration& cfg;
    const congruence& cc;
    const lia_model& arith;
    const nf_map& nfs;
    model m;
    std::map<term_id, seq_class> seqs;
    std::vector<term_id> seq_roots;
    std::vector<term_id> scalar_roots;
    std::vector<term_id> nths;
    std::vector<term_id> updates;
    std::map<term_id, std::int64_t> scalar_val;
    std::map<term_id, seq_value> seq_val;
    std::set<std::int64_t> used_ints;
    std::int64_t next_int = 0;
    std::map<std::string, std::int64_t> next_elem;
};

} // namespace

model build_model(const term_manager& tm, const configuration& cfg, const congruence& cc, const lia_model& arith,
                  const nf_map& nfs) {
    return builder(tm, cfg, cc, arith, nfs).run();
}

bool satisfies(const term_manager& tm, const model& m, const configuration& cfg, std::string* why) {
    auto fail = [&](const std::string& w) {
        if (why)
            *why = w;
        return false;
    };
    for (auto const& l : cfg.S) {
        value a = evaluate(tm, m, l.lhs), b = evaluate(tm, m, l.rhs);
        if ((a == b) != l.positive)
            return fail(tm.to_string(l.lhs) + (l.positive ? " = " : " != ") + tm.to_string(l.rhs));
    }
    lia_model im;
    for (auto const& [v, x] : m.ints)
        im[v] = static_cast<long>(x);
    for (auto const& c : cfg.A)
        if (!seqsat::holds(c, im))
            return fail(c.to_string(&tm));
    return true;
}

} // namespace seqsat
