#pragma once

// Random QF sequence scripts for differential testing against the oracle.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "seqsat/model.h"
#include "seqsat/oracle.h"
#include "seqsat/term.h"

namespace testgen {

struct diff_options {
    std::size_t max_seq_vars = 4;
    // concat, nth, update and extract occurrences per instance
    std::size_t max_ops = 3;
    std::size_t max_assertions = 4;
};

class diff_generator {
public:
    diff_generator(std::mt19937_64& rng, diff_options o = {}) : m_rng(rng), m_opts(o) {}

    std::string next() {
        m_ops = 0;
        m_uninterp = pick(3) == 0;
        m_nseq = 1 + pick(m_opts.max_seq_vars);
        m_nint = pick(3);
        m_nelem = m_uninterp ? 1 + pick(2) : 0;
        std::string elem = m_uninterp ? "U" : "Int";
        std::string out = "(set-logic QF_SLIA)\n";
        if (m_uninterp)
            out += "(declare-sort U 0)\n";
        for (std::size_t k = 0; k < m_nseq; ++k)
            out += "(declare-fun " + seqv(k) + " () (Seq " + elem + "))\n";
        for (std::size_t k = 0; k < m_nint; ++k)
            out += "(declare-fun " + intv(k) + " () Int)\n";
        for (std::size_t k = 0; k < m_nelem; ++k)
            out += "(declare-fun " + elemv(k) + " () U)\n";
        std::size_t n = 1 + pick(m_opts.max_assertions);
        for (std::size_t k = 0; k < n; ++k)
            out += "(assert " + assertion() + ")\n";
        out += "(check-sat)\n";
        return out;
    }

private:
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(m_rng() % n); }
    bool budget() const { return m_ops < m_opts.max_ops; }

    static std::string seqv(std::size_t k) { return std::string(1, "xyzw"[k]); }
    static std::string intv(std::size_t k) { return std::string(1, "ij"[k]); }
    static std::string elemv(std::size_t k) { return std::string(1, "ef"[k]); }

    std::string int_atom() {
        if (m_nint > 0 && pick(2) == 0)
            return intv(pick(m_nint));
        return std::to_string(pick(3));
    }

    std::string elem_term() {
        if (m_uninterp)
            return elemv(pick(m_nelem));
        if (budget() && pick(4) == 0) {
            ++m_ops;
            return "(seq.nth " + seqv(pick(m_nseq)) + " " + int_atom() + ")";
        }
        return int_atom();
    }

    std::string seq_term(bool composite) {
        if (!composite || !budget())
            return pick(6) == 0 ? "(seq.unit " + elem_term() + ")" : seqv(pick(m_nseq));
        ++m_ops;
        switch (pick(4)) {
        case 0: {
            std::string r = "(seq.++";
            for (std::size_t k = 0, n = 2 + pick(2); k < n; ++k)
                r += " " + seq_term(false);
            return r + ")";
        }
        case 1: return "(seq.update " + seqv(pick(m_nseq)) + " " + int_atom() + " " + elem_term() + ")";
        case 2: return "(seq.extract " + seqv(pick(m_nseq)) + " " + int_atom() + " " + int_atom() + ")";
        default: return "(seq.unit " + elem_term() + ")";
        }
    }

    std::string arith() {
        std::string len = "(seq.len " + seqv(pick(m_nseq)) + ")";
        switch (pick(5)) {
        case 0: return "(<= " + len + " " + int_atom() + ")";
        case 1: return "(= " + len + " " + int_atom() + ")";
        case 2: return "(< " + int_atom() + " " + len + ")";
        case 3: return "(<= 0 " + int_atom() + ")";
        default: return "(not (= " + int_atom() + " " + int_atom() + "))";
        }
    }

    std::string literal() {
        std::size_t c = pick(10);
        if (c < 4)
            return "(= " + seqv(pick(m_nseq)) + " " + seq_term(true) + ")";
        if (c < 6)
            return "(not (= " + seqv(pick(m_nseq)) + " " + seq_term(pick(2) == 0) + "))";
        if (c < 7 && budget()) {
            ++m_ops;
            std::string lhs = "(seq.nth " + seqv(pick(m_nseq)) + " " + int_atom() + ")";
            return (pick(3) == 0 ? "(not (= " + lhs + " " + elem_term() + "))" : "(= " + lhs + " " + elem_term() + ")");
        }
        return arith();
    }

    std::string assertion() {
        if (pick(6) == 0)
            return "(or " + literal() + " " + literal() + ")";
        return literal();
    }

    std::mt19937_64& m_rng;
    diff_options m_opts;
    std::size_t m_ops = 0;
    bool m_uninterp = false;
    std::size_t m_nseq = 1, m_nint = 0, m_nelem = 0;
};

// the model lies inside the oracle's search space
inline bool within(const seqsat::term_manager& tm, const seqsat::model& m, const seqsat::bounds& b) {
    auto ints = seqsat::small_ints(b.max_elem);
    auto elem_ok = [&](const seqsat::sort& s, std::int64_t v) {
        if (s.is_int())
            return std::find(ints.begin(), ints.end(), v) != ints.end();
        return v >= 0 && static_cast<std::size_t>(v) < b.max_elem;
    };
    for (auto const& [t, v] : m.ints)
        if (v < -b.int_bound || v > b.int_bound)
            return false;
    for (auto const& [t, v] : m.elems)
        if (!elem_ok(tm.sort_of(t), v))
            return false;
    for (auto const& [t, s] : m.seqs) {
        if (s.size() > b.max_len)
            return false;
        for (auto v : s)
            if (!elem_ok(tm.sort_of(t).element(), v))
                return false;
    }
    for (auto const& [k, v] : m.nth_oob)
        if (!elem_ok(k.elem_sort == "Int" ? seqsat::sort::int_sort() : seqsat::sort::elem(k.elem_sort), v))
            return false;
    return true;
}

} // namespace testgen
