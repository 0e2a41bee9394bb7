#include "seqsat/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "seqsat/error.h"
#include "seqsat/smtlib.h"
#include "seqsat/solver.h"

namespace seqsat {

namespace {

bool is_array(const sexpr& s) { return s.is_list() && s.items.size() == 3 && s.items[0].is("Array"); }

class array_translator {
public:
    explicit array_translator(std::vector<sexpr> cmds) : m_cmds(std::move(cmds)) {}

    std::string run() {
        for (auto const& c : m_cmds)
            find_index_sorts(c);
        if (m_index.size() > 1) {
            std::string names;
            for (auto const& s : m_index)
                names += " " + s;
            throw translation_error("more than one array index sort:" + names);
        }
        std::string out;
        for (auto const& c : m_cmds) {
            if (c.is_list() && !c.items.empty() && c.items[0].is("declare-sort") && c.items.size() >= 2 &&
                m_index.count(c.items[1].text))
                continue;
            out += command(c).to_string() + "\n";
        }
        return out;
    }

private:
    void find_index_sorts(const sexpr& s) {
        if (is_array(s)) {
            if (is_array(s.items[1]) || is_array(s.items[2]))
                throw translation_error("nested array sort " + s.to_string());
            if (!s.items[1].is("Int"))
                m_index.insert(s.items[1].to_string());
            return;
        }
        for (auto const& k : s.items)
            find_index_sorts(k);
    }

    sexpr sort_of(const sexpr& s) const {
        if (is_array(s)) {
            sexpr r;
            r.k = sexpr::kind::list;
            sexpr head;
            head.text = "Seq";
            r.items = {head, sort_of(s.items[2])};
            return r;
        }
        if (s.is_atom() && m_index.count(s.text)) {
            sexpr r = s;
            r.text = "Int";
            return r;
        }
        return s;
    }

    sexpr term(const sexpr& t) const {
        if (t.is_atom()) {
            if (t.is("store") || t.is("select"))
                throw translation_error(t.text + " used without arguments");
            return t;
        }
        if (!t.items.empty() && t.items[0].is_list()) {
            const sexpr& h = t.items[0];
            if (h.items.size() >= 2 && h.items[0].is("as") && h.items[1].is("const"))
                throw translation_error("constant array " + t.to_string());
            if (h.items.size() >= 2 && h.items[0].is("_"))
                throw translation_error("indexed array operator " + h.to_string());
        }
        if (t.items.size() >= 2 && t.items[0].is("as")) {
            if (t.items[1].is("const"))
                throw translation_error("constant array " + t.to_string());
            sexpr r = t;
            r.items[2] = sort_of(t.items[2]);
            return r;
        }
        sexpr r = t;
        if (!r.items.empty() && r.items[0].is_atom()) {
            if (r.items[0].is("store"))
                r.items[0].text = "seq.update";
            else if (r.items[0].is("select"))
                r.items[0].text = "seq.nth";
        }
        if (t.items.size() == 3 && (t.items[0].is("let") || t.items[0].is("forall") || t.items[0].is("exists")))
            throw translation_error("binder " + t.items[0].text);
        for (std::size_t k = 1; k < r.items.size(); ++k)
            r.items[k] = term(r.items[k]);
        return r;
    }

    sexpr command(const sexpr& c) const {
        if (!c.is_list() || c.items.empty())
            return c;
        sexpr r = c;
        const sexpr& h = c.items[0];
        if (h.is("declare-fun") && c.items.size() == 4) {
            for (auto& a : r.items[2].items)
                a = sort_of(a);
            r.items[3] = sort_of(c.items[3]);
        } else if (h.is("declare-const") && c.items.size() == 3) {
            r.items[2] = sort_of(c.items[2]);
        } else if (h.is("assert") && c.items.size() == 2) {
            r.items[1] = term(c.items[1]);
        } else if (h.is("define-fun") || h.is("define-sort") || h.is("define-fun-rec")) {
            throw translation_error(h.text + " is not supported");
        }
        return r;
    }

    std::vector<sexpr> m_cmds;
    std::set<std::string> m_index;
};

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in)
        throw error("cannot read " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

suite_row run_one(const std::filesystem::path& p, mode m, const suite_options& opts) {
    suite_row row;
    row.file = p.filename().string();
    row.calculus = m;
    auto start = std::chrono::steady_clock::now();
    try {
        std::string text = read_file(p);
        if (opts.translate)
            text = translate_arrays(text);
        term_manager tm;
        script sc = parse_script(tm, text);
        solve_options so;
        so.engine.calculus = m;
        so.engine.step_limit = opts.step_limit;
        so.engine.deadline = start + std::chrono::milliseconds(opts.time_limit_ms);
        solve_result res = solve(tm, sc, so);
        row.verdict = to_string(res.status);
        row.rules = res.stats.steps;
        row.rule_counts = res.stats.rules;
        row.message = res.reason;
        if (res.status == verdict::sat) {
            bool ok = true;
            for (term_id a : sc.assertions)
                ok = ok && holds(tm, *res.sat_model, a);
            row.model_validated = ok;
        }
    } catch (const std::exception& e) {
        row.verdict = "error";
        row.message = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::string fmt_ms(double ms) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(1) << ms;
    return o.str();
}

} // namespace

std::string translate_arrays(const std::string& smt2) { return array_translator(parse_sexprs(smt2)).run(); }

std::vector<suite_row> run_suite(const std::string& dir, const suite_options& opts) {
    std::vector<std::filesystem::path> files;
    for (auto const& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".smt2")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::filesystem::path, mode>> jobs;
    for (auto const& f : files)
        for (mode m : opts.modes)
            jobs.emplace_back(f, m);
    std::vector<suite_row> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < jobs.size();)
            rows[k] = run_one(jobs[k].first, jobs[k].second, opts);
    };
    unsigned n = std::max(1u, opts.jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return rows;
}

std::string to_csv(const std::vector<suite_row>& rows, const std::vector<mode>& modes) {
    std::string out = "file,mode,verdict,wall-ms,rule-applications,model-validated\n";
    for (auto const& r : rows) {
        std::string v = r.model_validated ? (*r.model_validated ? "yes" : "no") : "-";
        out += r.file + "," + to_string(r.calculus) + "," + r.verdict + "," + fmt_ms(r.wall_ms) + "," +
               std::to_string(r.rules) + "," + v + "\n";
    }
    for (mode m : modes) {
        std::size_t solved = 0, rules = 0;
        double ms = 0;
        for (auto const& r : rows) {
            if (r.calculus != m)
                continue;
            solved += r.verdict == "sat" || r.verdict == "unsat";
            rules += r.rules;
            ms += r.wall_ms;
        }
        out += std::string("TOTAL,") + to_string(m) + ",solved=" + std::to_string(solved) + "," + fmt_ms(ms) + "," +
               std::to_string(rules) + ",-\n";
    }
    return out;
}

} // namespace seqsat
