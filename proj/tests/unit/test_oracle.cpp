#include "doctest.h"
#include "seqsat/error.h"
#include "seqsat/oracle.h"
#include "seqsat/smtlib.h"

using namespace seqsat;

namespace {

oracle_result check(term_manager& tm, const std::string& text, bounds b = {}) {
    return oracle_solve(tm, parse_script(tm, text).assertions, b);
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("integer order") {
    CHECK(small_ints(5) == std::vector<std::int64_t>{0, 1, -1, 2, -2});
    CHECK(small_ints(0).empty());
}

TEST_CASE("witnesses satisfy the input") {
    term_manager tm;
    std::string t = "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))(declare-fun i () Int)"
                    "(assert (= (seq.++ x (seq.unit 1)) (seq.++ (seq.unit 1) y)))(assert (= (seq.len x) 2))"
                    "(assert (= (seq.nth x i) (- 1)))";
    script sc = parse_script(tm, t);
    oracle_result r = oracle_solve(tm, sc.assertions);
    REQUIRE(r.status == oracle_verdict::sat);
    for (term_id a : sc.assertions)
        CHECK(holds(tm, *r.witness, a));
}

TEST_CASE("bounded unsat") {
    term_manager tm;
    CHECK(check(tm, "(declare-fun x () (Seq Int))(assert (= x (seq.++ (seq.unit 1) x)))").status ==
          oracle_verdict::bounded_unsat);
    term_manager tm2;
    // needs a sequence longer than the bound
    CHECK(check(tm2, "(declare-fun x () (Seq Int))(assert (= (seq.len x) 4))").status == oracle_verdict::bounded_unsat);
    term_manager tm3;
    bounds b;
    b.max_len = 4;
    CHECK(check(tm3, "(declare-fun x () (Seq Int))(assert (= (seq.len x) 4))", b).status == oracle_verdict::sat);
}

TEST_CASE("out of bounds reads are chosen freely") {
    term_manager tm;
    std::string t = "(declare-fun x () (Seq Int))(declare-fun i () Int)(declare-fun j () Int)"
                    "(assert (< (seq.len x) 1))(assert (= (seq.nth x i) 1))(assert (= (seq.nth x j) (- 1)))";
    script sc = parse_script(tm, t);
    oracle_result r = oracle_solve(tm, sc.assertions);
    REQUIRE(r.status == oracle_verdict::sat);
    for (term_id a : sc.assertions)
        CHECK(holds(tm, *r.witness, a));
    term_manager tm2;
    // same sequence value and index means the same read
    CHECK(check(tm2, "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))(assert (= x y))"
                     "(assert (not (= (seq.nth x 5) (seq.nth y 5))))")
              .status == oracle_verdict::bounded_unsat);
}

TEST_CASE("uninterpreted elements") {
    term_manager tm;
    bounds b;
    b.max_elem = 2;
    std::string t = "(declare-sort U 0)(declare-fun a () U)(declare-fun b () U)(declare-fun c () U)"
                    "(assert (distinct a b c))";
    CHECK(check(tm, t, b).status == oracle_verdict::bounded_unsat);
    term_manager tm2;
    b.max_elem = 3;
    CHECK(check(tm2, t, b).status == oracle_verdict::sat);
}

TEST_CASE("state cap") {
    term_manager tm;
    bounds b;
    b.state_cap = 50;
    std::string t = "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))(declare-fun z () (Seq Int))"
                    "(assert (= (seq.++ x y z) (seq.++ z y x (seq.unit 1))))";
    oracle_result r = check(tm, t, b);
    CHECK(r.status == oracle_verdict::inconclusive);
}

}
