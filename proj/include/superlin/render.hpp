#ifndef SUPERLIN_RENDER_HPP
#define SUPERLIN_RENDER_HPP

#include <string>
#include <vector>

#include "superlin/polymap.hpp"
#include "superlin/polynomial.hpp"

namespace superlin {

// "x1", "x2", ... (or another stem); the textual formats index from 1.
std::vector<std::string> default_names(int n, const std::string& stem = "x");

// Canonical rendering: terms in the canonical order, explicit "*" between
// factors, "^" only for exponents above 1, rational coefficients as "p/q".
// Parsing the output gives back the identical polynomial.
std::string render_polynomial(const Polynomial& p, const std::vector<std::string>& names);

// System file body: a "vars" line followed by one "<name>' = <expr>" line
// per component.
std::string render_system(const VectorField& f, const std::vector<std::string>& names);

// Map file body: a "vars" line over the inputs followed by one
// "<out_name> = <expr>" line per component.
std::string render_polymap(const PolyMap& m, const std::vector<std::string>& in_names,
                           const std::vector<std::string>& out_names);

} // namespace superlin

#endif
