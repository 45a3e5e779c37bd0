#include "superlin/render.hpp"

#include "superlin/errors.hpp"

namespace superlin {

std::vector<std::string> default_names(int n, const std::string& stem) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        names.push_back(stem + std::to_string(i + 1));
    return names;
}

namespace {

std::string render_factors(const Monomial& m, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t v = 0; v < m.exp.size(); ++v) {
        if (m.exp[v] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += names[v];
        if (m.exp[v] > 1)
            out += "^" + std::to_string(m.exp[v]);
    }
    return out;
}

} // namespace

std::string render_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != p.n_vars())
        throw dimension_error("name list does not match the variable count");
    if (p.is_zero())
        return "0";
    std::string out;
    for (const auto& t : p.terms()) {
        Rational mag = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
        if (out.empty())
            out += t.coeff < 0 ? "-" : "";
        else
            out += t.coeff < 0 ? " - " : " + ";
        std::string factors = render_factors(t.mono, names);
        if (factors.empty())
            out += rational_to_string(mag);
        else if (mag == 1)
            out += factors;
        else
            out += rational_to_string(mag) + "*" + factors;
    }
    return out;
}

namespace {

std::string render_vars_line(const std::vector<std::string>& names) {
    std::string out = "vars";
    for (const auto& n : names)
        out += " " + n;
    out += "\n";
    return out;
}

} // namespace

std::string render_system(const VectorField& f, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != f.n())
        throw dimension_error("name list does not match the system dimension");
    std::string out = render_vars_line(names);
    for (int i = 0; i < f.n(); ++i)
        out += names[static_cast<std::size_t>(i)] + "' = " + render_polynomial(f[i], names) + "\n";
    return out;
}

std::string render_polymap(const PolyMap& m, const std::vector<std::string>& in_names,
                           const std::vector<std::string>& out_names) {
    if (static_cast<int>(in_names.size()) != m.n_in() ||
        static_cast<int>(out_names.size()) != m.n_out())
        throw dimension_error("name lists do not match the map shape");
    std::string out = render_vars_line(in_names);
    for (int i = 0; i < m.n_out(); ++i)
        out += out_names[static_cast<std::size_t>(i)] + " = " + render_polynomial(m[i], in_names) + "\n";
    return out;
}

} // namespace superlin
