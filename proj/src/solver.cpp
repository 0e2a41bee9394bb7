#include "seqsat/solver.h"

#include "seqsat/branches.h"
#include "seqsat/error.h"

namespace seqsat {

namespace {

void complete(const term_manager& tm, const script& sc, const branch& b, model& m) {
    for (auto const& [v, val] : b.bools)
        m.bools[v] = val;
    for (auto const& [name, s] : sc.decls) {
        term_id v = tm.find_var(name, s);
        if (v == null_term)
            continue;
        switch (s.kind()) {
        case sort_kind::int_sort: m.ints.emplace(v, 0); break;
        case sort_kind::bool_sort: m.bools.emplace(v, false); break;
        case sort_kind::elem_sort: m.elems.emplace(v, 0); break;
        case sort_kind::seq_sort: m.seqs.emplace(v, seq_value{}); break;
        }
    }
}

} // namespace

solve_result solve(term_manager& tm, const script& sc, const solve_options& opts) {
    solve_result res;
    branch_set bs;
    try {
        bs = to_branches(tm, sc.assertions, opts.branch_cap);
    } catch (const resource_error& e) {
        res.reason = e.what();
        return res;
    }
    res.branches = bs.branches.size();
    engine eng(tm, opts.engine);
    bool unknown = false;
    for (auto const& b : bs.branches) {
        configuration cfg = flatten(tm, b.S, b.A);
        engine_result r = eng.run(std::move(cfg));
        if (r.status == verdict::unsat)
            continue;
        if (r.status == verdict::unknown) {
            if (!unknown)
                res.reason = r.reason;
            unknown = true;
            continue;
        }
        model m = std::move(*r.sat_model);
        complete(tm, sc, b, m);
        if (opts.validate_model) {
            std::string why;
            for (term_id a : sc.assertions) {
                try {
                    if (!holds(tm, m, a))
                        why = "assertion " + std::to_string(a) + " is false under the model";
                } catch (const contract_error& e) {
                    why = e.what();
                }
                if (!why.empty())
                    break;
            }
            if (!why.empty()) {
                if (opts.strict_validation)
                    throw model_error("model validation failed: " + why);
                if (!unknown)
                    res.reason = "model validation failed";
                unknown = true;
                continue;
            }
        }
        res.status = verdict::sat;
        res.sat_model = std::move(m);
        res.reason.clear();
        res.stats = eng.stats();
        return res;
    }
    res.status = unknown ? verdict::unknown : verdict::unsat;
    res.stats = eng.stats();
    return res;
}

solve_result solve_text(term_manager& tm, const std::string& smt2, const solve_options& opts) {
    return solve(tm, parse_script(tm, smt2), opts);
}

} // namespace seqsat
