#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "seqsat/term.h"

namespace seqsat {

// s-expression with source position
struct sexpr {
    enum class kind { atom, list } k = kind::atom;
    std::string text;
    bool quoted = false; // string literal
    std::vector<sexpr> items;
    std::size_t line = 1, col = 1;

    bool is_atom() const { return k == kind::atom; }
    bool is_list() const { return k == kind::list; }
    bool is(const char* s) const { return is_atom() && !quoted && text == s; }
    std::string to_string() const;
};

std::vector<sexpr> parse_sexprs(const std::string& text);

enum class command { check_sat, get_model };

struct script {
    std::string logic;
    std::vector<std::string> sorts;
    std::vector<std::pair<std::string, sort>> decls;
    std::vector<term_id> assertions;
    std::vector<command> commands;

    bool operator==(const script& o) const {
        return logic == o.logic && sorts == o.sorts && decls == o.decls && assertions == o.assertions &&
               commands == o.commands;
    }
};

script parse_script(term_manager& tm, const std::string& text);
std::string print_script(const term_manager& tm, const script& s);

// true for names reserved for solver-introduced variables
bool is_reserved_name(const std::string& name);

} // namespace seqsat
