#include "seqsat/smtlib.h"

#include <cctype>
#include <limits>
#include <map>
#include <regex>
#include <set>

#include "seqsat/error.h"

namespace seqsat {

std::string sexpr::to_string() const {
    if (is_atom())
        return quoted ? "\"" + text + "\"" : text;
    std::string r = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            r += ' ';
        r += items[i].to_string();
    }
    return r + ")";
}

namespace {

class reader {
public:
    explicit reader(const std::string& t) : m_text(t) {}

    std::vector<sexpr> all() {
        std::vector<sexpr> out;
        for (;;) {
            skip();
            if (m_pos >= m_text.size())
                return out;
            out.push_back(read());
        }
    }

private:
    char peek() const { return m_text[m_pos]; }
    void advance() {
        if (m_text[m_pos] == '\n') {
            ++m_line;
            m_col = 1;
        } else {
            ++m_col;
        }
        ++m_pos;
    }
    void skip() {
        while (m_pos < m_text.size()) {
            char c = peek();
            if (c == ';') {
                while (m_pos < m_text.size() && peek() != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    sexpr read() {
        sexpr e;
        e.line = m_line;
        e.col = m_col;
        char c = peek();
        if (c == ')')
            throw parse_error("unexpected ')'", m_line, m_col);
        if (c == '(') {
            advance();
            e.k = sexpr::kind::list;
            for (;;) {
                skip();
                if (m_pos >= m_text.size())
                    throw parse_error("unterminated list", e.line, e.col);
                if (peek() == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == '"') {
            advance();
            e.quoted = true;
            for (;;) {
                if (m_pos >= m_text.size())
                    throw parse_error("unterminated string", e.line, e.col);
                if (peek() == '"') {
                    advance();
                    if (m_pos < m_text.size() && peek() == '"') {
                        e.text += '"';
                        advance();
                        continue;
                    }
                    return e;
                }
                e.text += peek();
                advance();
            }
        }
        if (c == '|') {
            advance();
            while (m_pos < m_text.size() && peek() != '|') {
                e.text += peek();
                advance();
            }
            if (m_pos >= m_text.size())
                throw parse_error("unterminated quoted symbol", e.line, e.col);
            advance();
            return e;
        }
        while (m_pos < m_text.size()) {
            char d = peek();
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"')
                break;
            e.text += d;
            advance();
        }
        return e;
    }

    const std::string& m_text;
    std::size_t m_pos = 0, m_line = 1, m_col = 1;
};

[[noreturn]] void fail(const sexpr& at, const std::string& msg) {
    throw parse_error(msg, at.line, at.col);
}

bool is_numeral(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return s.size() == 1 || s[0] != '0';
}

class script_parser {
public:
    script_parser(term_manager& tm, script& out) : m_tm(tm), m_script(out) {}

    void command(const sexpr& c) {
        if (!c.is_list() || c.items.empty() || !c.items[0].is_atom())
            fail(c, "expected a command");
        const std::string& head = c.items[0].text;
        if (head == "set-logic") {
            need(c, 2);
            m_script.logic = c.items[1].text;
        } else if (head == "set-info" || head == "set-option" || head == "exit") {
            return;
        } else if (head == "declare-sort") {
            if (c.items.size() < 2 || !c.items[1].is_atom())
                fail(c, "declare-sort expects a name");
            if (c.items.size() > 2 && !c.items[2].is("0"))
                fail(c.items[2], "only nullary sorts are supported");
            const std::string& n = c.items[1].text;
            if (n == "Int" || n == "Bool" || m_sorts.count(n))
                fail(c.items[1], "sort " + n + " already declared");
            m_sorts.insert(n);
            m_script.sorts.push_back(n);
        } else if (head == "declare-fun") {
            need(c, 4);
            if (!c.items[2].is_list() || !c.items[2].items.empty())
                fail(c.items[2], "only constants can be declared");
            declare(c.items[1], parse_sort(c.items[3]));
        } else if (head == "declare-const") {
            need(c, 3);
            declare(c.items[1], parse_sort(c.items[2]));
        } else if (head == "assert") {
            need(c, 2);
            term_id t = term(c.items[1]);
            if (!m_tm.sort_of(t).is_bool())
                fail(c.items[1], "assertion is not Boolean");
            m_script.assertions.push_back(t);
        } else if (head == "check-sat") {
            m_script.commands.push_back(command::check_sat);
        } else if (head == "get-model") {
            m_script.commands.push_back(command::get_model);
        } else {
            fail(c.items[0], "unsupported command " + head);
        }
    }

private:
    void need(const sexpr& c, std::size_t n) {
        if (c.items.size() != n)
            fail(c, c.items[0].text + " expects " + std::to_string(n - 1) + " arguments");
    }

    void declare(const sexpr& name, const sort& s) {
        if (!name.is_atom() || name.quoted)
            fail(name, "expected a symbol");
        if (m_vars.count(name.text))
            fail(name, "symbol " + name.text + " already declared");
        if (is_reserved_name(name.text))
            fail(name, "symbol " + name.text + " is reserved");
        m_vars.emplace(name.text, m_tm.mk_var(name.text, s));
        m_script.decls.emplace_back(name.text, s);
    }

    sort parse_sort(const sexpr& e) {
        if (e.is_atom()) {
            if (e.text == "Int")
                return sort::int_sort();
            if (e.text == "Bool")
                return sort::bool_sort();
            if (m_sorts.count(e.text))
                return sort::elem(e.text);
            fail(e, "unknown sort " + e.text);
        }
        if (e.items.size() == 2 && e.items[0].is("Seq")) {
            sort el = parse_sort(e.items[1]);
            try {
                return sort::seq(el);
            } catch (const sort_error& err) {
                fail(e, err.what());
            }
        }
        fail(e, "unsupported sort " + e.to_string());
    }

    term_id app(const sexpr& at, op o, const std::vector<term_id>& args) {
        try {
            return m_tm.mk_app(o, args);
        } catch (const sort_error& err) {
            fail(at, err.what());
        }
    }

    term_id term(const sexpr& e) {
        if (e.is_atom()) {
            if (e.quoted)
                fail(e, "string literals are not supported");
            if (is_numeral(e.text)) {
                if (e.text.size() > 18)
                    fail(e, "numeral out of range");
                return m_tm.mk_int(std::stoll(e.text));
            }
            if (e.text == "true")
                return m_tm.mk_bool(true);
            if (e.text == "false")
                return m_tm.mk_bool(false);
            auto it = m_vars.find(e.text);
            if (it == m_vars.end())
                fail(e, "undeclared symbol " + e.text);
            return it->second;
        }
        if (e.items.empty())
            fail(e, "empty application");
        const sexpr& h = e.items[0];
        if (h.is_list())
            fail(h, "unsupported application head");
        if (h.text == "as") {
            if (e.items.size() != 3 || !e.items[1].is("seq.empty"))
                fail(e, "unsupported as-expression");
            sort s = parse_sort(e.items[2]);
            if (!s.is_seq())
                fail(e.items[2], "seq.empty needs a sequence sort");
            return m_tm.mk_empty(s);
        }
        std::vector<term_id> args;
        for (std::size_t i = 1; i < e.items.size(); ++i)
            args.push_back(term(e.items[i]));
        const std::string& f = h.text;
        auto arity = [&](std::size_t n) {
            if (args.size() != n)
                fail(e, f + " expects " + std::to_string(n) + " arguments, got " + std::to_string(args.size()));
        };
        auto at_least = [&](std::size_t n) {
            if (args.size() < n)
                fail(e, f + " expects at least " + std::to_string(n) + " arguments, got " +
                            std::to_string(args.size()));
        };
        if (f == "seq.unit") {
            arity(1);
            return app(e, op::unit, args);
        }
        if (f == "seq.len") {
            arity(1);
            return app(e, op::len, args);
        }
        if (f == "seq.nth") {
            arity(2);
            return app(e, op::nth, args);
        }
        if (f == "seq.update") {
            arity(3);
            // the element may be given as a singleton sequence
            if (m_tm.sort_of(args[2]).is_seq() && m_tm.kind(args[2]) == op::unit)
                args[2] = m_tm.kid(args[2], 0);
            return app(e, op::update, args);
        }
        if (f == "seq.extract") {
            arity(3);
            return app(e, op::extract, args);
        }
        if (f == "seq.++" || f == "seq.concat") {
            at_least(2);
            return app(e, op::concat, args);
        }
        if (f == "+") {
            at_least(2);
            term_id r = args[0];
            for (std::size_t i = 1; i < args.size(); ++i)
                r = app(e, op::add, {r, args[i]});
            return r;
        }
        if (f == "-") {
            at_least(1);
            if (args.size() == 1)
                return app(e, op::neg, args);
            term_id r = args[0];
            for (std::size_t i = 1; i < args.size(); ++i)
                r = app(e, op::add, {r, app(e, op::neg, {args[i]})});
            return r;
        }
        if (f == "<=" || f == "<" || f == ">=" || f == ">") {
            at_least(2);
            std::vector<term_id> parts;
            for (std::size_t i = 0; i + 1 < args.size(); ++i) {
                term_id a = args[i], b = args[i + 1];
                if (f == "<=")
                    parts.push_back(app(e, op::leq, {a, b}));
                else if (f == ">=")
                    parts.push_back(app(e, op::leq, {b, a}));
                else if (f == "<")
                    parts.push_back(app(e, op::bool_not, {app(e, op::leq, {b, a})}));
                else
                    parts.push_back(app(e, op::bool_not, {app(e, op::leq, {a, b})}));
            }
            return m_tm.mk_and(parts);
        }
        if (f == "=") {
            at_least(2);
            std::vector<term_id> parts;
            for (std::size_t i = 0; i + 1 < args.size(); ++i)
                parts.push_back(equal(e, args[i], args[i + 1]));
            return m_tm.mk_and(parts);
        }
        if (f == "distinct") {
            at_least(2);
            std::vector<term_id> parts;
            for (std::size_t i = 0; i < args.size(); ++i)
                for (std::size_t j = i + 1; j < args.size(); ++j)
                    parts.push_back(app(e, op::bool_not, {equal(e, args[i], args[j])}));
            return m_tm.mk_and(parts);
        }
        if (f == "not") {
            arity(1);
            return app(e, op::bool_not, args);
        }
        if (f == "and" || f == "or") {
            if (args.size() == 1) {
                if (!m_tm.sort_of(args[0]).is_bool())
                    fail(e, f + " expects Boolean arguments");
                return args[0];
            }
            at_least(1);
            return app(e, f == "and" ? op::bool_and : op::bool_or, args);
        }
        if (f == "=>") {
            at_least(2);
            term_id r = args.back();
            for (std::size_t i = args.size() - 1; i-- > 0;)
                r = app(e, op::bool_or, {app(e, op::bool_not, {args[i]}), r});
            return r;
        }
        fail(h, "unsupported function " + f);
    }

    term_id equal(const sexpr& at, term_id a, term_id b) {
        if (m_tm.sort_of(a).is_bool() && m_tm.sort_of(b).is_bool()) {
            term_id both = app(at, op::bool_and, {a, b});
            term_id none = app(at, op::bool_and, {app(at, op::bool_not, {a}), app(at, op::bool_not, {b})});
            return app(at, op::bool_or, {both, none});
        }
        return app(at, op::eq, {a, b});
    }

    term_manager& m_tm;
    script& m_script;
    std::set<std::string> m_sorts;
    std::map<std::string, term_id> m_vars;
};

} // namespace

bool is_reserved_name(const std::string& name) {
    static const std::regex fresh("_[kie][0-9]+");
    return std::regex_match(name, fresh);
}

std::vector<sexpr> parse_sexprs(const std::string& text) {
    return reader(text).all();
}

script parse_script(term_manager& tm, const std::string& text) {
    script s;
    script_parser p(tm, s);
    for (auto const& c : parse_sexprs(text))
        p.command(c);
    return s;
}

std::string print_script(const term_manager& tm, const script& s) {
    std::string out;
    if (!s.logic.empty())
        out += "(set-logic " + s.logic + ")\n";
    for (auto const& n : s.sorts)
        out += "(declare-sort " + n + " 0)\n";
    for (auto const& [n, srt] : s.decls)
        out += "(declare-fun " + n + " () " + srt.to_string() + ")\n";
    for (term_id a : s.assertions)
        out += "(assert " + tm.to_string(a) + ")\n";
    for (command c : s.commands)
        out += c == command::check_sat ? "(check-sat)\n" : "(get-model)\n";
    return out;
}

} // namespace seqsat
