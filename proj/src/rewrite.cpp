#include "seqsat/rewrite.h"

#include <unordered_map>

namespace seqsat {

term_id rewrite_root(term_manager& tm, term_id t) {
    const term_node& n = tm.node(t);
    if (n.kind == op::len) {
        term_id s = n.kids[0];
        const term_node& a = tm.node(s);
        switch (a.kind) {
        case op::empty: return tm.mk_int(0);
        case op::unit: return tm.mk_int(1);
        case op::update: return tm.mk_len(a.kids[0]);
        case op::concat: {
            std::vector<term_id> lens;
            for (term_id c : a.kids)
                lens.push_back(tm.mk_len(c));
            return tm.mk_sum(lens);
        }
        default: return null_term;
        }
    }
    if (n.kind == op::concat) {
        const std::vector<term_id>& ks = n.kids;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            op k = tm.kind(ks[i]);
            if (k != op::empty && k != op::concat)
                continue;
            std::vector<term_id> out(ks.begin(), ks.begin() + static_cast<std::ptrdiff_t>(i));
            if (k == op::concat) {
                const std::vector<term_id>& inner = tm.kids(ks[i]);
                out.insert(out.end(), inner.begin(), inner.end());
            }
            out.insert(out.end(), ks.begin() + static_cast<std::ptrdiff_t>(i) + 1, ks.end());
            return tm.mk_concat(out, n.srt);
        }
    }
    return null_term;
}

namespace {

struct normalizer {
    term_manager& tm;
    std::size_t steps = 0;
    std::unordered_map<term_id, term_id> memo;

    term_id run(term_id t) {
        auto it = memo.find(t);
        if (it != memo.end())
            return it->second;
        term_id r = t;
        const std::vector<term_id> kids = tm.kids(t);
        if (!kids.empty()) {
            std::vector<term_id> nk;
            nk.reserve(kids.size());
            bool changed = false;
            for (term_id k : kids) {
                nk.push_back(run(k));
                changed |= nk.back() != k;
            }
            if (changed)
                r = tm.mk_app(tm.kind(t), nk);
        }
        term_id s = rewrite_root(tm, r);
        if (s != null_term) {
            ++steps;
            r = run(s);
        }
        memo[t] = r;
        return r;
    }
};

} // namespace

term_id nf(term_manager& tm, term_id t, std::size_t* steps) {
    normalizer n{tm, 0, {}};
    term_id r = n.run(t);
    if (steps)
        *steps = n.steps;
    return r;
}

} // namespace seqsat
