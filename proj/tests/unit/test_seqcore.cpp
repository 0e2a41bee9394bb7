#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "seqsat/oracle.h"
#include "seqsat/solver.h"
#include "support/diff_gen.h"
#include "support/files.h"

using namespace seqsat;

namespace {

solve_result run(const std::string& text, mode m, std::ostream* trace = nullptr, std::size_t steps = 100000) {
    term_manager tm;
    solve_options o;
    o.engine.calculus = m;
    o.engine.trace = trace;
    o.engine.step_limit = steps;
    o.engine.check_normal_forms = true;
    return solve_text(tm, text, o);
}

} // namespace

TEST_SUITE("seqcore") {

TEST_CASE("word equations") {
    const char* pre = "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))(declare-fun z () (Seq Int))";
    CHECK(run(std::string(pre) + "(assert (= (seq.++ x (seq.unit 1)) (seq.++ (seq.unit 2) y)))", mode::base).status ==
          verdict::sat);
    CHECK(run(std::string(pre) + "(assert (= (seq.++ x (seq.unit 1)) (seq.++ y (seq.unit 2))))", mode::base).status ==
          verdict::unsat);
    CHECK(run(std::string(pre) + "(assert (= x (seq.++ (seq.unit 1) x)))", mode::base).status == verdict::unsat);
    CHECK(run(std::string(pre) + "(assert (= (seq.++ x y) (seq.++ y x)))(assert (not (= x y)))", mode::base).status ==
          verdict::sat);
    CHECK(run(std::string(pre) + "(assert (= (seq.len x) 3))(assert (= x (seq.++ y y)))", mode::base).status ==
          verdict::unsat);
}

TEST_CASE("disequalities") {
    const char* pre = "(declare-fun x () (Seq Int))(declare-fun y () (Seq Int))";
    CHECK(run(std::string(pre) + "(assert (not (= x y)))(assert (= (seq.len x) 0))(assert (= (seq.len y) 0))",
              mode::base)
              .status == verdict::unsat);
    auto r = run(std::string(pre) + "(assert (not (= x y)))(assert (= (seq.len x) 1))(assert (= (seq.len y) 1))",
                 mode::base);
    REQUIRE(r.status == verdict::sat);
    term_manager tm;
    sort si = sort::seq(sort::int_sort());
    term_id x = tm.mk_var("x", si), y = tm.mk_var("y", si);
    CHECK(r.sat_model->seqs.at(x) != r.sat_model->seqs.at(y));
}

TEST_CASE("cyclic concatenation closes by arithmetic conflicts") {
    std::ostringstream tr;
    auto r = run(testgen::data_file("cyclic_concat.smt2"), mode::base, &tr);
    CHECK(r.status == verdict::unsat);
    CHECK(tr.str().find("RULE A-Conf") != std::string::npos);
    CHECK(tr.str().find("RULE S-Conf") == std::string::npos);
}

TEST_CASE("trace lines are well formed") {
    std::ostringstream tr;
    run(testgen::data_file("swap.smt2"), mode::base, &tr);
    std::regex line(R"(RULE [A-Za-z-]+ PREMISES (-|\d+(,\d+)*) BRANCH \d+/\d+)");
    std::istringstream in(tr.str());
    std::string l;
    std::size_t n = 0;
    while (std::getline(in, l)) {
        CHECK(std::regex_match(l, line));
        ++n;
    }
    CHECK(n > 0);
}

TEST_CASE("limits give unknown") {
    auto r = run(testgen::data_file("swap.smt2"), mode::base, nullptr, 3);
    CHECK(r.status == verdict::unknown);
    CHECK_FALSE(r.reason.empty());
    auto h = run(testgen::data_file("hard.smt2"), mode::base);
    CHECK(h.status != verdict::unsat);
}

TEST_CASE("base agrees with the oracle") {
    std::mt19937_64 rng(21);
    testgen::diff_generator gen(rng);
    std::size_t decided = 0;
    for (int n = 0; n < 120; ++n) {
        std::string text = gen.next();
        term_manager tm;
        solve_options o;
        o.engine.calculus = mode::base;
        o.engine.check_normal_forms = true;
        solve_result r = solve_text(tm, text, o);
        CHECK(r.stats.nf_mismatches == 0);
        if (r.status == verdict::unknown)
            continue;
        ++decided;
        oracle_result orc = oracle_solve(tm, parse_script(tm, text).assertions);
        INFO(text);
        if (r.status == verdict::unsat)
            CHECK(orc.status != oracle_verdict::sat);
        else if (testgen::within(tm, *r.sat_model, {}))
            CHECK(orc.status != oracle_verdict::bounded_unsat);
    }
    CHECK(decided > 100);
}

}
