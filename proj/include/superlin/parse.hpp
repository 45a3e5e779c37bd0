#ifndef SUPERLIN_PARSE_HPP
#define SUPERLIN_PARSE_HPP

#include <string>
#include <vector>

#include "superlin/automorphism.hpp"
#include "superlin/polymap.hpp"

namespace superlin {

// The textual formats carry variable names; parsers return them alongside
// the parsed object so outputs can be rendered in the caller's vocabulary.

struct ParsedSystem {
    std::vector<std::string> names;
    VectorField field;
};

struct ParsedAutomorphism {
    std::vector<std::string> names;
    TameAutomorphism phi;
};

struct ParsedPolyMap {
    std::vector<std::string> in_names;
    std::vector<std::string> out_names;
    PolyMap map;
};

// One polynomial over a fixed, already-named variable tuple. Terms are
// signed; a term is an optional rational coefficient (`p/q` or an integer)
// and variable powers `name^k`, all joined by explicit `*`. `#` starts a
// comment. Decimal literals are rejected with a hint to use fractions.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names);

// System file: a `vars <name>...` line, then exactly one `<name>' = <expr>`
// line per declared variable (any order). Reports undeclared variables,
// duplicate equations, and missing equations with source locations.
ParsedSystem parse_system(const std::string& text);

// Coordinate-change file: a `vars` line, then statements applied first to
// last, each either `affine [[row];...] ; [offset]` or `elem <name> : <expr>`.
ParsedAutomorphism parse_automorphism(const std::string& text);

// Polynomial-map file: a `vars` line over the inputs, then `<out> = <expr>`
// lines, one per output component in order.
ParsedPolyMap parse_polymap(const std::string& text);

} // namespace superlin

#endif
