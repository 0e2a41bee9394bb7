#include <algorithm>
#include <random>

#include "doctest.h"
#include "seqsat/congruence.h"
#include "support/cc_gen.h"
#include "support/cc_oracle.h"

using namespace seqsat;

TEST_SUITE("congruence") {

TEST_CASE("congruence of nth under equal indices") {
    term_manager tm;
    sort si = sort::seq(sort::int_sort());
    term_id s = tm.mk_var("s", si), i = tm.mk_var("i", sort::int_sort()), j = tm.mk_var("j", sort::int_sort());
    congruence cc(tm);
    term_id a = tm.mk_nth(s, i), b = tm.mk_nth(s, j);
    cc.register_term(a);
    cc.register_term(b);
    CHECK_FALSE(cc.are_equal(a, b));
    std::size_t m = cc.mark();
    cc.assert_eq(i, j);
    CHECK(cc.are_equal(a, b));
    cc.undo_to(m);
    CHECK_FALSE(cc.are_equal(a, b));
    CHECK(cc.are_equal(a, a));
}

TEST_CASE("conflicts and alpha") {
    term_manager tm;
    sort su = sort::elem("U");
    term_id x = tm.mk_var("x", su), y = tm.mk_var("y", su), z = tm.mk_var("z", su);
    congruence cc(tm);
    CHECK(cc.assert_diseq(x, z));
    CHECK(cc.are_disequal(z, x));
    std::size_t m = cc.mark();
    CHECK(cc.assert_eq(y, z));
    CHECK(cc.alpha(z) == x + 1);
    CHECK_FALSE(cc.assert_eq(x, y));
    CHECK(cc.in_conflict());
    CHECK(cc.alpha(z) == x);
    cc.undo_to(m);
    CHECK_FALSE(cc.in_conflict());
    CHECK(cc.members(cc.root(x)).size() == 1);
}

TEST_CASE("unit injectivity is not congruence") {
    term_manager tm;
    sort su = sort::elem("U");
    term_id a = tm.mk_var("a", su), b = tm.mk_var("b", su);
    congruence cc(tm);
    cc.assert_eq(tm.mk_unit(a), tm.mk_unit(b));
    CHECK_FALSE(cc.are_equal(a, b));
    cc.assert_eq(a, b);
    CHECK(cc.are_equal(tm.mk_unit(a), tm.mk_unit(b)));
}

TEST_CASE("random closures agree with naive fixpoint") {
    term_manager tm;
    std::mt19937_64 rng(3);
    congruence cc(tm);
    for (int n = 0; n < 300; ++n) {
        auto inst = testgen::random_cc_instance(tm, rng);
        std::size_t m = cc.mark();
        for (auto [a, b] : inst.eqs)
            cc.assert_eq(a, b);
        for (auto [a, b] : inst.diseqs)
            cc.assert_diseq(a, b);
        auto nc = oracle_cc::close(tm, inst.eqs, inst.diseqs);
        CHECK(cc.in_conflict() == nc.conflict);
        for (term_id s : nc.terms)
            for (term_id t : nc.terms)
                CHECK(cc.are_equal(s, t) == nc.equal(s, t));
        cc.undo_to(m);
        CHECK(cc.terms().empty());
    }
}

TEST_CASE("explanations entail what they explain") {
    term_manager tm;
    std::mt19937_64 rng(8);
    for (int n = 0; n < 300; ++n) {
        auto inst = testgen::random_cc_instance(tm, rng);
        congruence cc(tm);
        std::size_t ne = inst.eqs.size();
        for (std::size_t k = 0; k < ne; ++k)
            cc.assert_eq(inst.eqs[k].first, inst.eqs[k].second, static_cast<congruence::reason>(k));
        for (std::size_t k = 0; k < inst.diseqs.size(); ++k)
            cc.assert_diseq(inst.diseqs[k].first, inst.diseqs[k].second, static_cast<congruence::reason>(ne + k));
        auto replay = [&](const std::vector<congruence::reason>& rs, congruence& out) {
            for (auto r : rs) {
                if (r < ne)
                    out.assert_eq(inst.eqs[r].first, inst.eqs[r].second);
                else
                    out.assert_diseq(inst.diseqs[r - ne].first, inst.diseqs[r - ne].second);
            }
        };
        if (cc.in_conflict()) {
            congruence again(tm);
            replay(cc.conflict_explanation(), again);
            CHECK(again.in_conflict());
            continue;
        }
        std::vector<term_id> ts = cc.terms();
        for (std::size_t p = 0; p < ts.size(); p += 3)
            for (std::size_t q = p + 1; q < ts.size(); q += 2) {
                if (!cc.are_equal(ts[p], ts[q]))
                    continue;
                auto rs = cc.explain(ts[p], ts[q]);
                CHECK(std::is_sorted(rs.begin(), rs.end()));
                congruence again(tm);
                again.register_term(ts[p]);
                again.register_term(ts[q]);
                replay(rs, again);
                CHECK(again.are_equal(ts[p], ts[q]));
            }
    }
}

}
