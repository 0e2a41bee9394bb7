#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "seqsat/bench.h"
#include "seqsat/error.h"
#include "seqsat/smtlib.h"
#include "seqsat/solver.h"
#include "support/files.h"

using namespace seqsat;

TEST_SUITE("bench") {

TEST_CASE("array translation") {
    std::string in = "(set-logic QF_AUFLIA)(declare-sort I 0)(declare-fun a () (Array I Int))(declare-fun k () I)"
                     "(assert (= (select (store a k 3) k) 3))(check-sat)";
    std::string out = translate_arrays(in);
    CHECK(out.find("seq.update") != std::string::npos);
    CHECK(out.find("seq.nth") != std::string::npos);
    CHECK(out.find("Array") == std::string::npos);
    CHECK(out.find("declare-sort I") == std::string::npos);
    term_manager tm;
    script sc = parse_script(tm, out);
    CHECK(sc.decls.size() == 2);
    CHECK(sc.decls[0].second == sort::seq(sort::int_sort()));
    CHECK(sc.decls[1].second == sort::int_sort());
}

TEST_CASE("unsupported array constructs") {
    CHECK_THROWS_AS(translate_arrays("(declare-fun a () (Array Int (Array Int Int)))"), translation_error);
    CHECK_THROWS_AS(translate_arrays("(declare-fun a () (Array Int Int))(assert (= a ((as const (Array Int Int)) 0)))"),
                    translation_error);
    CHECK_THROWS_AS(translate_arrays("(declare-sort I 0)(declare-sort J 0)(declare-fun a () (Array I Int))"
                                     "(declare-fun b () (Array J Int))"),
                    translation_error);
    CHECK_THROWS_AS(translate_arrays("(declare-fun a () (Array Int Int))(assert (forall ((k Int)) (= (select a k) 0)))"),
                    translation_error);
}

TEST_CASE("translated suite files parse") {
    for (auto const& e : std::filesystem::directory_iterator(std::string(SEQSAT_TEST_DATA) + "/arrays")) {
        term_manager tm;
        INFO(e.path().string());
        CHECK_NOTHROW(parse_script(tm, translate_arrays(testgen::read_file(e.path().string()))));
    }
}

TEST_CASE("suite runner and csv") {
    auto dir = std::filesystem::temp_directory_path() / "seqsat_bench_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "a.smt2") << "(declare-fun x () (Seq Int))(assert (= (seq.len x) 2))(check-sat)";
    std::ofstream(dir / "b.smt2") << "(declare-fun x () (Seq Int))(assert (< (seq.len x) 0))(check-sat)";
    std::ofstream(dir / "c.smt2") << "(assert (= x 1))";
    suite_options o;
    o.jobs = 2;
    auto rows = run_suite(dir.string(), o);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].file == "a.smt2");
    CHECK(rows[0].verdict == "sat");
    CHECK(rows[0].model_validated == std::optional<bool>(true));
    CHECK(rows[2].verdict == "unsat");
    CHECK(rows[4].verdict == "error");
    std::string csv = to_csv(rows, o.modes);
    CHECK(csv.rfind("file,mode,verdict,wall-ms,rule-applications,model-validated\n", 0) == 0);
    CHECK(csv.find("TOTAL,base,solved=2") != std::string::npos);
    CHECK(csv.find("TOTAL,ext,solved=2") != std::string::npos);
    std::filesystem::remove_all(dir);
}

}
