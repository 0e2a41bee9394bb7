#include <deque>
#include <set>

#include "seqsat/engine.h"
#include "seqsat/error.h"

namespace seqsat {

namespace {

bool has_empty(const term_manager& tm, const congruence& cc, term_id t) {
    for (term_id m : cc.members(cc.root(t)))
        if (tm.kind(m) == op::empty)
            return true;
    return false;
}

bool singular(const term_manager& tm, const congruence& cc, term_id c) {
    std::size_t nonempty = 0;
    for (term_id k : tm.kids(c))
        nonempty += !has_empty(tm, cc, k);
    return nonempty <= 1;
}

bool atomic(const term_manager& tm, const congruence& cc, term_id t) {
    if (has_empty(tm, cc, t))
        return false;
    for (term_id m : cc.members(cc.root(t)))
        if (tm.kind(m) == op::concat && !singular(tm, cc, m))
            return false;
    return true;
}

} // namespace

std::vector<std::vector<term_id>> derivable_normal_forms(const term_manager& tm, const configuration& cfg,
                                                         const congruence& cc, term_id x, std::size_t limit) {
    std::deque<std::vector<term_id>> work{{x}};
    for (auto const& l : cfg.S)
        if (l.positive && l.lhs == x && tm.kind(l.rhs) == op::concat)
            work.push_back(tm.kids(l.rhs));
    std::set<std::vector<term_id>> seen;
    std::set<std::vector<term_id>> out;
    while (!work.empty()) {
        std::vector<term_id> cur = std::move(work.front());
        work.pop_front();
        if (!seen.insert(cur).second)
            continue;
        if (seen.size() > limit)
            throw resource_error("normal form derivation limit exceeded");
        bool all_atomic = true;
        for (term_id y : cur)
            all_atomic = all_atomic && atomic(tm, cc, y);
        if (all_atomic) {
            std::vector<term_id> reps;
            for (term_id y : cur)
                reps.push_back(cc.alpha(y));
            out.insert(reps);
        }
        for (std::size_t p = 0; p < cur.size(); ++p) {
            for (term_id t : cc.members(cc.root(cur[p]))) {
                if (tm.kind(t) == op::empty) {
                    std::vector<term_id> next(cur.begin(), cur.begin() + p);
                    next.insert(next.end(), cur.begin() + p + 1, cur.end());
                    work.push_back(std::move(next));
                } else if (tm.kind(t) == op::concat && !singular(tm, cc, t)) {
                    std::vector<term_id> next(cur.begin(), cur.begin() + p);
                    next.insert(next.end(), tm.kids(t).begin(), tm.kids(t).end());
                    next.insert(next.end(), cur.begin() + p + 1, cur.end());
                    work.push_back(std::move(next));
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

} // namespace seqsat
