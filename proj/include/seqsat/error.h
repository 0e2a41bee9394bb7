#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqsat {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ill-sorted term construction
class sort_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t line, std::size_t col)
        : error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
          m_line(line), m_col(col) {}
    std::size_t line() const { return m_line; }
    std::size_t column() const { return m_col; }

private:
    std::size_t m_line;
    std::size_t m_col;
};

// a configured limit was exceeded (branch cap, oracle state cap, ...)
class resource_error : public error {
public:
    using error::error;
};

// violated precondition of a rule or of model construction
class contract_error : public error {
public:
    using error::error;
};

// model construction produced a model that does not satisfy the input
class model_error : public error {
public:
    using error::error;
};

class translation_error : public error {
public:
    using error::error;
};

} // namespace seqsat
