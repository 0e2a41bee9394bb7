#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqsat/term.h"

namespace seqsat {

// sum of coeff * var plus a constant, over Int variables
struct linear_expr {
    std::map<term_id, mpz_class> coeffs;
    mpz_class constant = 0;

    static linear_expr of_var(term_id v, const mpz_class& c = 1);
    static linear_expr of_const(const mpz_class& c);

    void add_var(term_id v, const mpz_class& c);
    void add(const linear_expr& o, const mpz_class& scale = 1);
    linear_expr operator+(const linear_expr& o) const;
    linear_expr operator-(const linear_expr& o) const;
    linear_expr scaled(const mpz_class& c) const;

    bool is_constant() const { return coeffs.empty(); }
    bool operator==(const linear_expr& o) const { return constant == o.constant && coeffs == o.coeffs; }
    bool operator<(const linear_expr& o) const;

    // variables are renamed through f; equal images merge
    template <class F>
    linear_expr rename(F&& f) const {
        linear_expr r;
        r.constant = constant;
        for (auto const& [v, c] : coeffs)
            r.add_var(f(v), c);
        return r;
    }

    std::string to_string(const term_manager* tm = nullptr) const;
};

enum class rel : std::uint8_t { le, eq, ne };

// expr rel 0
struct arith_atom {
    linear_expr expr;
    rel r = rel::le;

    // a <= b, a = b, a != b, a < b, a >= b ...
    static arith_atom le(const linear_expr& a, const linear_expr& b) { return {a - b, rel::le}; }
    static arith_atom lt(const linear_expr& a, const linear_expr& b);
    static arith_atom ge(const linear_expr& a, const linear_expr& b) { return le(b, a); }
    static arith_atom gt(const linear_expr& a, const linear_expr& b) { return lt(b, a); }
    static arith_atom eq(const linear_expr& a, const linear_expr& b) { return {a - b, rel::eq}; }
    static arith_atom ne(const linear_expr& a, const linear_expr& b) { return {a - b, rel::ne}; }

    // integer negation
    arith_atom negate() const;
    // gcd-normalized form; coefficients of eq/ne atoms start positive
    arith_atom normalized() const;
    // truth value when the atom has no variables
    std::optional<bool> constant_value() const;

    bool operator==(const arith_atom& o) const { return r == o.r && expr == o.expr; }
    bool operator<(const arith_atom& o) const;

    std::string to_string(const term_manager* tm = nullptr) const;
};

// disjunction of atoms; a single atom is the common case
struct arith_constraint {
    std::vector<arith_atom> disjuncts;

    arith_constraint() = default;
    arith_constraint(arith_atom a) { disjuncts.push_back(std::move(a)); }
    explicit arith_constraint(std::vector<arith_atom> ds) : disjuncts(std::move(ds)) {}

    // normalized atoms, sorted, duplicates and false atoms removed;
    // nullopt when some disjunct is trivially true
    std::optional<arith_constraint> normalized() const;
    bool is_false() const { return disjuncts.empty(); }

    bool operator==(const arith_constraint& o) const { return disjuncts == o.disjuncts; }
    bool operator<(const arith_constraint& o) const { return disjuncts < o.disjuncts; }

    std::string to_string(const term_manager* tm = nullptr) const;
};

using lia_model = std::map<term_id, mpz_class>;

// unassigned variables count as 0
mpz_class evaluate(const linear_expr& e, const lia_model& m);
bool holds(const arith_atom& a, const lia_model& m);
bool holds(const arith_constraint& c, const lia_model& m);

} // namespace seqsat
