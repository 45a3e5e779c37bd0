#ifndef SUPERLIN_ERRORS_HPP
#define SUPERLIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace superlin {

// Base class for all library errors so callers can catch one type.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched variable counts, out-of-range indices, wrong matrix shapes.
struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

// Structurally well-formed input that violates a documented requirement
// (e.g. elementary generator of degree < 2, lift whose generator stack
// does not start with the coordinate functions).
struct validity_error : error {
    explicit validity_error(const std::string& msg) : error(msg) {}
};

// Exact elimination hit a zero pivot where an invertible matrix was required.
struct singular_matrix_error : error {
    explicit singular_matrix_error(const std::string& msg) : error(msg) {}
};

// A mathematical premise of a construction failed symbolically
// (e.g. projection witness identities do not hold).
struct premise_error : error {
    explicit premise_error(const std::string& msg) : error(msg) {}
};

// A hard enumeration cap was exceeded (not a budget-limited "inconclusive"
// answer; those are reported through result types, not exceptions).
struct budget_error : error {
    explicit budget_error(const std::string& msg) : error(msg) {}
};

// Floating-point trajectory left the representable range.
struct numeric_overflow_error : error {
    explicit numeric_overflow_error(const std::string& msg) : error(msg) {}
};

// Text input rejected by a parser; carries a 1-based source location.
struct parse_error : error {
    int line;
    int col;
    parse_error(const std::string& msg, int line_, int col_)
        : error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

} // namespace superlin

#endif
