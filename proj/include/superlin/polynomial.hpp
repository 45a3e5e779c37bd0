#ifndef SUPERLIN_POLYNOMIAL_HPP
#define SUPERLIN_POLYNOMIAL_HPP

#include <cstdint>
#include <vector>

#include "superlin/rational.hpp"

namespace superlin {

// Exponent vector of a monomial over a fixed variable tuple.
struct Monomial {
    std::vector<std::uint32_t> exp;

    Monomial() = default;
    explicit Monomial(int n_vars) : exp(static_cast<std::size_t>(n_vars), 0) {}

    int degree() const;
    bool operator==(const Monomial& o) const { return exp == o.exp; }
    bool operator!=(const Monomial& o) const { return exp != o.exp; }
};

// Canonical term order used everywhere (storage, rendering, elimination
// pivots): ascending total degree; within a degree the variable-1-heavier
// monomial comes first (descending lexicographic on the exponent vector).
// Example in two variables: 1, x1, x2, x1^2, x1*x2, x2^2, ...
bool mono_before(const Monomial& a, const Monomial& b);

struct MonoBefore {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_before(a, b); }
};

struct Term {
    Monomial mono;
    Rational coeff;
};

// Sparse multivariate polynomial with exact rational coefficients over a
// fixed number of variables. Terms are kept sorted in the canonical order
// with no zero coefficients and no duplicate monomials, so structural
// equality of the term sequences is polynomial identity.
class Polynomial {
public:
    Polynomial() : n_vars_(0) {}

    static Polynomial zero(int n_vars);
    static Polynomial constant(int n_vars, const Rational& c);
    static Polynomial variable(int n_vars, int index);
    static Polynomial from_terms(int n_vars, std::vector<Term> terms); // normalizes

    int n_vars() const { return n_vars_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;             // degree <= 0
    int degree() const;                   // -1 for the zero polynomial
    int degree_in(int var) const;         // highest exponent of one variable
    Rational constant_term() const;
    Rational coefficient_of(const Monomial& m) const;
    const Term& leading_term() const;     // greatest term in canonical order

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial partial_derivative(int var) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    // Reinterprets the polynomial over a larger variable tuple; the existing
    // variables keep their positions, new ones are appended unused.
    Polynomial embedded(int n_vars_new) const;

    // Sends variable i to variable var_map[i] of an n_vars_new-variable ring.
    // var_map must be injective on the variables that actually occur.
    Polynomial with_remapped_vars(int n_vars_new, const std::vector<int>& var_map) const;

private:
    int n_vars_;
    std::vector<Term> terms_;

    void require_same_space(const Polynomial& o) const;
};

} // namespace superlin

#endif
