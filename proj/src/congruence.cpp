#include "seqsat/congruence.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "seqsat/error.h"

namespace seqsat {

std::size_t congruence::key_hash::operator()(const std::vector<term_id>& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (term_id x : k)
        h = (h ^ x) * 1099511628211ULL;
    return h;
}

std::vector<term_id> congruence::signature(term_id t) const {
    const term_node& n = m_tm.node(t);
    std::vector<term_id> k;
    k.reserve(n.kids.size() + 1);
    k.push_back(static_cast<term_id>(n.kind));
    for (term_id c : n.kids)
        k.push_back(m_root[c]);
    return k;
}

void congruence::grow(term_id t) {
    if (t >= m_root.size()) {
        std::size_t n = std::max<std::size_t>(t + 1, m_root.size() * 2);
        m_root.resize(n, null_term);
        m_members.resize(n);
        m_uses.resize(n);
        m_alpha.resize(n, null_term);
        m_pf.resize(n, null_term);
        m_pj.resize(n);
    }
}

void congruence::register_term(term_id t) {
    if (is_registered(t))
        return;
    const term_node& n = m_tm.node(t);
    for (term_id c : n.kids)
        register_term(c);
    grow(t);
    m_root[t] = t;
    m_members[t] = {t};
    m_uses[t].clear();
    m_alpha[t] = n.kind == op::var ? t : null_term;
    m_pf[t] = null_term;
    m_pj[t] = {};
    m_terms.push_back(t);
    entry e{entry_kind::reg, t};
    if (!n.kids.empty()) {
        for (term_id c : n.kids)
            m_uses[m_root[c]].push_back(t);
        auto key = signature(t);
        auto it = m_sigs.find(key);
        if (it == m_sigs.end()) {
            m_sigs.emplace(key, t);
            e.key = key;
            m_trail.push_back(std::move(e));
        } else {
            m_trail.push_back(std::move(e));
            process(t, it->second, {no_reason, t, it->second});
            check_diseqs();
        }
        return;
    }
    m_trail.push_back(std::move(e));
}

void congruence::add_proof_edge(term_id a, term_id b, justification j, std::vector<pf_change>& log) {
    // make a the root of its proof tree, then hang it below b
    term_id prev = null_term;
    justification pj;
    for (term_id cur = a; cur != null_term;) {
        term_id next = m_pf[cur];
        justification nj = m_pj[cur];
        log.push_back({cur, m_pf[cur], m_pj[cur]});
        m_pf[cur] = prev;
        m_pj[cur] = pj;
        prev = cur;
        pj = nj;
        cur = next;
    }
    log.push_back({a, m_pf[a], m_pj[a]});
    m_pf[a] = b;
    m_pj[a] = j;
}

void congruence::process(term_id a0, term_id b0, justification j0) {
    std::vector<pending_eq> pending{{a0, b0, j0}};
    while (!pending.empty()) {
        auto [a, b, just] = pending.back();
        pending.pop_back();
        term_id ra = m_root[a], rb = m_root[b];
        if (ra == rb)
            continue;
        if (m_members[ra].size() < m_members[rb].size()) {
            std::swap(ra, rb);
            std::swap(a, b);
        }
        std::vector<term_id> parents = m_uses[rb];
        for (term_id p : parents) {
            auto key = signature(p);
            auto it = m_sigs.find(key);
            if (it != m_sigs.end() && it->second == p) {
                m_sigs.erase(it);
                m_trail.push_back(entry{entry_kind::sig_erase, p, null_term, 0, 0, null_term, std::move(key)});
            }
        }
        entry me{entry_kind::merge, ra, rb, m_members[ra].size(), m_uses[ra].size(), m_alpha[ra], {}, {}};
        add_proof_edge(b, a, just, me.proof);
        m_trail.push_back(std::move(me));
        for (term_id m : m_members[rb]) {
            m_root[m] = ra;
            m_members[ra].push_back(m);
        }
        if (m_alpha[rb] != null_term && (m_alpha[ra] == null_term || m_alpha[rb] < m_alpha[ra]))
            m_alpha[ra] = m_alpha[rb];
        for (term_id p : parents) {
            auto key = signature(p);
            auto it = m_sigs.find(key);
            if (it == m_sigs.end()) {
                m_sigs.emplace(key, p);
                m_trail.push_back(entry{entry_kind::sig_insert, p, null_term, 0, 0, null_term, std::move(key)});
            } else if (it->second != p) {
                pending.push_back({p, it->second, {no_reason, p, it->second}});
            }
            m_uses[ra].push_back(p);
        }
    }
}

void congruence::set_conflict(std::vector<reason> expl) {
    if (m_conflict)
        return;
    m_conflict = true;
    m_conflict_expl = std::move(expl);
    m_trail.push_back(entry{entry_kind::conflict});
}

void congruence::check_diseqs() {
    for (std::size_t k = 0; k < m_diseqs.size(); ++k) {
        auto [a, b] = m_diseqs[k];
        if (m_root[a] == m_root[b]) {
            std::vector<reason> expl = explain(a, b);
            if (m_diseq_reasons[k] != no_reason)
                expl.push_back(m_diseq_reasons[k]);
            set_conflict(std::move(expl));
            return;
        }
    }
}

bool congruence::assert_eq(term_id a, term_id b, reason r) {
    register_term(a);
    register_term(b);
    process(a, b, {r});
    check_diseqs();
    return !m_conflict;
}

bool congruence::assert_diseq(term_id a, term_id b, reason r) {
    register_term(a);
    register_term(b);
    m_diseqs.emplace_back(a, b);
    m_diseq_reasons.push_back(r);
    m_trail.push_back(entry{entry_kind::diseq});
    check_diseqs();
    return !m_conflict;
}

bool congruence::assert_literal(bool positive, term_id atom, reason r) {
    if (m_tm.kind(atom) != op::eq)
        throw contract_error("congruence literal must be an equality");
    term_id a = m_tm.kid(atom, 0), b = m_tm.kid(atom, 1);
    return positive ? assert_eq(a, b, r) : assert_diseq(a, b, r);
}

std::vector<congruence::reason> congruence::explain(term_id a0, term_id b0) const {
    std::set<reason> out;
    std::set<std::pair<term_id, term_id>> done;
    std::vector<std::pair<term_id, term_id>> work{{a0, b0}};
    auto edge = [&](term_id t) {
        const justification& j = m_pj[t];
        if (j.p == null_term) {
            if (j.tag != no_reason)
                out.insert(j.tag);
            return;
        }
        const auto& kp = m_tm.kids(j.p);
        const auto& kq = m_tm.kids(j.q);
        for (std::size_t i = 0; i < kp.size(); ++i)
            work.emplace_back(kp[i], kq[i]);
    };
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        if (a == b || !done.insert(std::minmax(a, b)).second)
            continue;
        if (!are_equal(a, b))
            throw contract_error("explain: terms are not equal");
        std::unordered_set<term_id> up;
        for (term_id t = a; t != null_term; t = m_pf[t])
            up.insert(t);
        term_id lca = b;
        while (!up.count(lca))
            lca = m_pf[lca];
        for (term_id t = a; t != lca; t = m_pf[t])
            edge(t);
        for (term_id t = b; t != lca; t = m_pf[t])
            edge(t);
    }
    return {out.begin(), out.end()};
}

bool congruence::are_equal(term_id a, term_id b) const {
    if (a == b)
        return true;
    return is_registered(a) && is_registered(b) && m_root[a] == m_root[b];
}

bool congruence::are_disequal(term_id a, term_id b) const {
    if (!is_registered(a) || !is_registered(b))
        return false;
    term_id ra = m_root[a], rb = m_root[b];
    for (auto const& [x, y] : m_diseqs) {
        term_id rx = m_root[x], ry = m_root[y];
        if ((rx == ra && ry == rb) || (rx == rb && ry == ra))
            return true;
    }
    return false;
}

term_id congruence::alpha(term_id t) const {
    term_id r = m_root[t];
    if (m_alpha[r] != null_term)
        return m_alpha[r];
    return *std::min_element(m_members[r].begin(), m_members[r].end());
}

std::vector<term_id> congruence::roots() const {
    std::vector<term_id> r;
    for (term_id t : m_terms)
        if (m_root[t] == t)
            r.push_back(t);
    return r;
}

void congruence::undo_to(std::size_t mark) {
    while (m_trail.size() > mark) {
        entry e = std::move(m_trail.back());
        m_trail.pop_back();
        switch (e.kind) {
        case entry_kind::reg: {
            term_id t = e.a;
            for (term_id c : m_tm.kids(t))
                m_uses[m_root[c]].pop_back();
            if (!e.key.empty())
                m_sigs.erase(e.key);
            m_root[t] = null_term;
            m_members[t].clear();
            m_alpha[t] = null_term;
            m_pf[t] = null_term;
            m_terms.pop_back();
            break;
        }
        case entry_kind::merge: {
            term_id ra = e.a, rb = e.b;
            for (std::size_t i = e.members_before; i < m_members[ra].size(); ++i)
                m_root[m_members[ra][i]] = rb;
            m_members[ra].resize(e.members_before);
            m_uses[ra].resize(e.uses_before);
            m_alpha[ra] = e.alpha_before;
            for (auto it = e.proof.rbegin(); it != e.proof.rend(); ++it) {
                m_pf[it->node] = it->parent;
                m_pj[it->node] = it->just;
            }
            break;
        }
        case entry_kind::sig_insert: m_sigs.erase(e.key); break;
        case entry_kind::sig_erase: m_sigs.emplace(std::move(e.key), e.a); break;
        case entry_kind::diseq:
            m_diseqs.pop_back();
            m_diseq_reasons.pop_back();
            break;
        case entry_kind::conflict:
            m_conflict = false;
            m_conflict_expl.clear();
            break;
        }
    }
}

} // namespace seqsat
