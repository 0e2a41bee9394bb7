#include "seqsat/linear.h"

#include <algorithm>

namespace seqsat {

linear_expr linear_expr::of_var(term_id v, const mpz_class& c) {
    linear_expr e;
    e.add_var(v, c);
    return e;
}

linear_expr linear_expr::of_const(const mpz_class& c) {
    linear_expr e;
    e.constant = c;
    return e;
}

void linear_expr::add_var(term_id v, const mpz_class& c) {
    if (c == 0)
        return;
    auto [it, fresh] = coeffs.emplace(v, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            coeffs.erase(it);
    }
}

void linear_expr::add(const linear_expr& o, const mpz_class& scale) {
    for (auto const& [v, c] : o.coeffs)
        add_var(v, c * scale);
    constant += o.constant * scale;
}

linear_expr linear_expr::operator+(const linear_expr& o) const {
    linear_expr r = *this;
    r.add(o);
    return r;
}

linear_expr linear_expr::operator-(const linear_expr& o) const {
    linear_expr r = *this;
    r.add(o, -1);
    return r;
}

linear_expr linear_expr::scaled(const mpz_class& c) const {
    linear_expr r;
    r.add(*this, c);
    return r;
}

bool linear_expr::operator<(const linear_expr& o) const {
    if (coeffs != o.coeffs)
        return coeffs < o.coeffs;
    return constant < o.constant;
}

std::string linear_expr::to_string(const term_manager* tm) const {
    std::string r;
    for (auto const& [v, c] : coeffs) {
        if (!r.empty())
            r += " + ";
        if (c != 1)
            r += c.get_str() + "*";
        r += tm ? tm->to_string(v) : "v" + std::to_string(v);
    }
    if (constant != 0 || r.empty()) {
        if (!r.empty())
            r += " + ";
        r += constant.get_str();
    }
    return r;
}

arith_atom arith_atom::lt(const linear_expr& a, const linear_expr& b) {
    linear_expr e = a - b;
    e.constant += 1;
    return {e, rel::le};
}

arith_atom arith_atom::negate() const {
    switch (r) {
    case rel::le: {
        // not (e <= 0)  <=>  -e + 1 <= 0
        linear_expr e = expr.scaled(-1);
        e.constant += 1;
        return {e, rel::le};
    }
    case rel::eq: return {expr, rel::ne};
    case rel::ne: return {expr, rel::eq};
    }
    return *this;
}

std::optional<bool> arith_atom::constant_value() const {
    if (!expr.is_constant())
        return std::nullopt;
    const mpz_class& c = expr.constant;
    switch (r) {
    case rel::le: return c <= 0;
    case rel::eq: return c == 0;
    case rel::ne: return c != 0;
    }
    return std::nullopt;
}

static mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

arith_atom arith_atom::normalized() const {
    arith_atom res = *this;
    if (res.expr.is_constant()) {
        // canonical true is 0 = 0, canonical false is 1 = 0
        linear_expr k;
        k.constant = *res.constant_value() ? 0 : 1;
        return {k, rel::eq};
    }
    mpz_class g = 0;
    for (auto const& [v, c] : res.expr.coeffs)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (res.r == rel::le) {
        for (auto& [v, c] : res.expr.coeffs)
            c /= g;
        res.expr.constant = ceil_div(res.expr.constant, g);
        return res;
    }
    if (res.expr.constant % g != 0) {
        bool truth = res.r == rel::ne;
        linear_expr k;
        k.constant = truth ? 0 : 1;
        return {k, rel::eq};
    }
    bool flip = res.expr.coeffs.begin()->second < 0;
    if (flip)
        g = -g;
    for (auto& [v, c] : res.expr.coeffs)
        c /= g;
    res.expr.constant /= g;
    return res;
}

bool arith_atom::operator<(const arith_atom& o) const {
    if (r != o.r)
        return r < o.r;
    return expr < o.expr;
}

std::string arith_atom::to_string(const term_manager* tm) const {
    const char* s = r == rel::le ? " <= 0" : r == rel::eq ? " = 0" : " != 0";
    return expr.to_string(tm) + s;
}

std::optional<arith_constraint> arith_constraint::normalized() const {
    std::vector<arith_atom> out;
    for (auto const& a : disjuncts) {
        arith_atom n = a.normalized();
        if (auto v = n.constant_value()) {
            if (*v)
                return std::nullopt;
            continue;
        }
        out.push_back(std::move(n));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return arith_constraint(std::move(out));
}

std::string arith_constraint::to_string(const term_manager* tm) const {
    if (disjuncts.empty())
        return "false";
    std::string r;
    for (auto const& a : disjuncts) {
        if (!r.empty())
            r += " or ";
        r += a.to_string(tm);
    }
    return r;
}

mpz_class evaluate(const linear_expr& e, const lia_model& m) {
    mpz_class r = e.constant;
    for (auto const& [v, c] : e.coeffs) {
        auto it = m.find(v);
        if (it != m.end())
            r += c * it->second;
    }
    return r;
}

bool holds(const arith_atom& a, const lia_model& m) {
    mpz_class v = evaluate(a.expr, m);
    switch (a.r) {
    case rel::le: return v <= 0;
    case rel::eq: return v == 0;
    case rel::ne: return v != 0;
    }
    return false;
}

bool holds(const arith_constraint& c, const lia_model& m) {
    for (auto const& a : c.disjuncts)
        if (holds(a, m))
            return true;
    return false;
}

} // namespace seqsat
