#include <random>

#include "doctest.h"
#include "seqsat/lia.h"
#include "support/lia_gen.h"
#include "support/lia_oracle.h"

using namespace seqsat;

namespace {

struct vars3 {
    term_manager tm;
    term_id x = tm.mk_var("x", sort::int_sort());
    term_id y = tm.mk_var("y", sort::int_sort());
    term_id z = tm.mk_var("z", sort::int_sort());
    linear_expr X = linear_expr::of_var(x), Y = linear_expr::of_var(y), Z = linear_expr::of_var(z);
    linear_expr k(long c) { return linear_expr::of_const(c); }
};

} // namespace

TEST_SUITE("lia") {

TEST_CASE("normalization tightens by gcd") {
    vars3 v;
    arith_atom a = arith_atom::le(v.X.scaled(2) + v.Y.scaled(4), v.k(3)).normalized();
    CHECK(a.expr.coeffs.at(v.x) == 1);
    CHECK(a.expr.coeffs.at(v.y) == 2);
    CHECK(a.expr.constant == -1);
    CHECK(arith_atom::eq(v.X.scaled(2), v.k(1)).normalized().constant_value() == false);
    CHECK(arith_atom::ne(v.X.scaled(2), v.k(1)).normalized().constant_value() == true);
}

TEST_CASE("basic verdicts") {
    vars3 v;
    std::vector<arith_constraint> cs = {arith_atom::le(v.X, v.Y), arith_atom::lt(v.Y, v.X)};
    CHECK(lia_check(cs).status == lia_status::unsat);
    cs = {arith_atom::eq(v.X.scaled(2) + v.Y.scaled(2), v.k(1))};
    CHECK(lia_check(cs).status == lia_status::unsat);
    cs = {arith_atom::eq(v.X.scaled(3) + v.Y.scaled(5), v.k(8)), arith_atom::ge(v.X, v.k(0)),
          arith_atom::ge(v.Y, v.k(0))};
    auto r = lia_check(cs);
    REQUIRE(r.status == lia_status::sat);
    CHECK(3 * r.model[v.x] + 5 * r.model[v.y] == 8);
    // no integer strictly between 0 and 1
    cs = {arith_atom::gt(v.X.scaled(3), v.k(0)), arith_atom::lt(v.X.scaled(3), v.k(3))};
    CHECK(lia_check(cs).status == lia_status::unsat);
    cs = {arith_atom::ne(v.X, v.Y), arith_atom::le(v.X, v.Y), arith_atom::ge(v.X, v.Y)};
    CHECK(lia_check(cs).status == lia_status::unsat);
    cs = {arith_constraint({arith_atom::eq(v.X, v.k(1)), arith_atom::eq(v.X, v.k(2))}), arith_atom::ne(v.X, v.k(1))};
    r = lia_check(cs);
    REQUIRE(r.status == lia_status::sat);
    CHECK(r.model[v.x] == 2);
}

TEST_CASE("entailment") {
    vars3 v;
    std::vector<arith_constraint> cs = {arith_atom::le(v.X, v.Y), arith_atom::le(v.Y, v.Z)};
    CHECK(lia_entails(cs, arith_atom::le(v.X, v.Z)) == entailment::yes);
    CHECK(lia_entails(cs, arith_atom::lt(v.X, v.Z)) == entailment::no);
}

TEST_CASE("random instances agree with grid enumeration") {
    term_manager tm;
    std::vector<term_id> vars;
    for (int i = 0; i < 4; ++i)
        vars.push_back(tm.mk_var("v" + std::to_string(i), sort::int_sort()));
    std::mt19937_64 rng(11);
    for (int n = 0; n < 150; ++n) {
        std::vector<term_id> vs(vars.begin(), vars.begin() + 1 + static_cast<long>(rng() % vars.size()));
        auto cs = testgen::random_lia_instance(vs, rng, 3);
        auto models = oracle_lia::enumerate(vs, cs, 3);
        auto r = lia_check(cs);
        REQUIRE(r.status != lia_status::unknown);
        CHECK((r.status == lia_status::sat) == !models.empty());
        if (r.status == lia_status::sat)
            for (auto const& c : cs)
                CHECK(holds(c, r.model));
        arith_atom q = testgen::random_atom(vs, rng);
        bool all = true;
        for (auto const& m : models)
            all &= holds(q, m);
        entailment e = lia_entails(cs, q);
        CHECK(e == (all ? entailment::yes : entailment::no));
    }
}

TEST_CASE("unsat cores are unsat") {
    term_manager tm;
    std::vector<term_id> vars;
    for (int i = 0; i < 4; ++i)
        vars.push_back(tm.mk_var("v" + std::to_string(i), sort::int_sort()));
    std::mt19937_64 rng(17);
    std::size_t unsat = 0;
    for (int n = 0; n < 300; ++n) {
        auto cs = testgen::random_lia_instance(vars, rng, 2);
        auto r = lia_check(cs);
        if (r.status != lia_status::unsat)
            continue;
        ++unsat;
        std::vector<arith_constraint> sub;
        for (std::size_t p : r.core) {
            REQUIRE(p < cs.size());
            sub.push_back(cs[p]);
        }
        CHECK(lia_check(sub).status == lia_status::unsat);
        CHECK(oracle_lia::enumerate(vars, sub, 2).empty() == true);
    }
    CHECK(unsat > 20);
}

TEST_CASE("hint values survive on untouched components") {
    vars3 v;
    std::vector<arith_constraint> cs = {arith_atom::le(v.X, v.k(10)), arith_atom::ge(v.Y, v.k(0))};
    lia_model hint{{v.x, 7}, {v.y, 3}};
    auto r = lia_check(cs, {}, &hint);
    REQUIRE(r.status == lia_status::sat);
    CHECK(r.model[v.x] == 7);
    CHECK(r.model[v.y] == 3);
}

}
