#include "doctest.h"
#include "seqsat/engine.h"
#include "seqsat/error.h"
#include "seqsat/model.h"
#include "seqsat/smtlib.h"
#include "seqsat/solver.h"

using namespace seqsat;

namespace {

struct fixture {
    term_manager tm;
    sort si = sort::seq(sort::int_sort());
    term_id s = tm.mk_var("s", si);
    term_id i = tm.mk_var("i", sort::int_sort());
    model m;
    fixture() {
        m.seqs[s] = {5, 6, 7};
        m.ints[i] = 1;
    }
    seq_value seq(term_id t) { return evaluate(tm, m, t).seq; }
    std::int64_t num(term_id t) { return evaluate(tm, m, t).scalar; }
};

} // namespace

TEST_SUITE("model") {

TEST_CASE("evaluation of sequence operations") {
    fixture f;
    auto& tm = f.tm;
    CHECK(f.num(tm.mk_len(f.s)) == 3);
    CHECK(f.num(tm.mk_nth(f.s, f.i)) == 6);
    CHECK(f.seq(tm.mk_update(f.s, f.i, tm.mk_int(9))) == seq_value{5, 9, 7});
    CHECK(f.seq(tm.mk_update(f.s, tm.mk_int(3), tm.mk_int(9))) == seq_value{5, 6, 7});
    CHECK(f.seq(tm.mk_update(f.s, tm.mk_int(-1), tm.mk_int(9))) == seq_value{5, 6, 7});
    CHECK(f.seq(tm.mk_extract(f.s, f.i, tm.mk_int(5))) == seq_value{6, 7});
    CHECK(f.seq(tm.mk_extract(f.s, tm.mk_int(0), tm.mk_int(2))) == seq_value{5, 6});
    CHECK(f.seq(tm.mk_extract(f.s, tm.mk_int(3), tm.mk_int(1))).empty());
    CHECK(f.seq(tm.mk_extract(f.s, tm.mk_int(-1), tm.mk_int(2))).empty());
    CHECK(f.seq(tm.mk_extract(f.s, f.i, tm.mk_int(0))).empty());
    CHECK(f.seq(tm.mk_concat({f.s, tm.mk_unit(f.i), f.s}, f.si)) == seq_value{5, 6, 7, 1, 5, 6, 7});
    CHECK(f.num(tm.mk_sub(tm.mk_len(f.s), f.i)) == 2);
}

TEST_CASE("out of bounds reads") {
    fixture f;
    auto& tm = f.tm;
    term_id r = tm.mk_nth(f.s, tm.mk_int(4));
    CHECK(f.num(r) == f.m.oob_default);
    f.m.nth_oob[{"Int", {5, 6, 7}, 4}] = 42;
    CHECK(f.num(r) == 42);
    // the table is keyed by value, not by term
    term_id t = tm.mk_var("t", f.si);
    f.m.seqs[t] = {5, 6, 7};
    CHECK(f.num(tm.mk_nth(t, tm.mk_int(4))) == 42);
    f.m.strict_oob = true;
    CHECK_THROWS_AS(f.num(tm.mk_nth(t, tm.mk_int(8))), oob_miss);
}

TEST_CASE("missing variables are contract errors") {
    fixture f;
    term_id u = f.tm.mk_var("u", f.si);
    CHECK_THROWS_AS(evaluate(f.tm, f.m, u), contract_error);
}

TEST_CASE("formulas") {
    fixture f;
    auto& tm = f.tm;
    term_id a = tm.mk_eq(tm.mk_nth(f.s, f.i), tm.mk_int(6));
    term_id b = tm.mk_leq(tm.mk_len(f.s), f.i);
    CHECK(holds(tm, f.m, a));
    CHECK_FALSE(holds(tm, f.m, b));
    CHECK(holds(tm, f.m, tm.mk_or({b, a})));
    CHECK_FALSE(holds(tm, f.m, tm.mk_and({b, a})));
    CHECK(holds(tm, f.m, tm.mk_not(b)));
}

TEST_CASE("printing") {
    term_manager tm;
    sort su = sort::seq(sort::elem("U"));
    value v{sort_kind::seq_sort, 0, {0, 1}};
    CHECK(print_value(tm, su, v) == "(seq.++ (seq.unit @u0) (seq.unit @u1))");
    value e{sort_kind::seq_sort, 0, {}};
    CHECK(print_value(tm, sort::seq(sort::int_sort()), e) == "(as seq.empty (Seq Int))");
    value n{sort_kind::int_sort, -3, {}};
    CHECK(print_value(tm, sort::int_sort(), n) == "(- 3)");
}

TEST_CASE("constructed models satisfy their configuration") {
    const char* texts[] = {
        "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))(declare-fun i () Int)"
        "(assert (= y (seq.update x i 3)))(assert (= (seq.len x) 2))(assert (not (= x y)))",
        "(declare-sort U 0)(declare-fun x () (Seq U))(declare-fun y () (Seq U))(declare-fun e () U)"
        "(assert (not (= x y)))(assert (= (seq.len x) (seq.len y)))(assert (= (seq.nth x 0) e))",
        "(declare-fun x () (Seq Int))(declare-fun i () Int)(declare-fun j () Int)"
        "(assert (= (seq.nth x i) 1))(assert (= (seq.nth x j) 2))(assert (< (seq.len x) 1))",
    };
    for (const char* t : texts) {
        for (mode md : {mode::base, mode::ext}) {
            term_manager tm;
            script sc = parse_script(tm, t);
            solve_options o;
            o.engine.calculus = md;
            o.strict_validation = true;
            solve_result r = solve(tm, sc, o);
            INFO(t);
            REQUIRE(r.status == verdict::sat);
            for (term_id a : sc.assertions)
                CHECK(holds(tm, *r.sat_model, a));
        }
    }
}

TEST_CASE("saturated configuration check") {
    term_manager tm;
    script sc = parse_script(tm, "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))"
                                 "(assert (= x (seq.++ y (seq.unit 2))))(assert (= (seq.len y) 2))");
    solve_options o;
    solve_result r = solve(tm, sc, o);
    REQUIRE(r.status == verdict::sat);
    engine e(tm, o.engine);
    configuration cfg = flatten(tm, {{true, sc.assertions[0]}}, {});
    engine_result er = e.run(cfg);
    REQUIRE(er.status == verdict::sat);
    REQUIRE(er.saturated);
    std::string why;
    CHECK(satisfies(tm, *er.sat_model, *er.saturated, &why));
    model broken = *er.sat_model;
    for (auto& [t, v] : broken.seqs)
        v.push_back(9);
    CHECK_FALSE(satisfies(tm, broken, *er.saturated, &why));
    CHECK_FALSE(why.empty());
}

}
