#ifndef SUPERLIN_LINEARIZER_HPP
#define SUPERLIN_LINEARIZER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "superlin/polymap.hpp"
#include "superlin/ratmat.hpp"

namespace superlin {

// Resource limits for the closure search. Exhaustion is reported as a
// diverging outcome, never an exception: running out of budget is evidence,
// not proof, that no finite linear realization exists.
struct Budget {
    std::size_t max_generators = 64;
    std::size_t max_degree = 24;
    std::size_t max_iterations = 64;

    void validate() const; // all limits must be positive
};

// Finite-dimensional linear realization of a polynomial field: with the
// generator stack w(x) = (x, p(x)), the identity
//
//     A * w(x) = (f(x), Dp(x) * f(x))
//
// holds componentwise, so z' = A z started at z0 = (x0, p(x0)) reproduces
// every trajectory of x' = f(x) in its first n slots.
struct Lift {
    int n = 0; // base dimension
    int k = 0; // number of observables
    RatMatrix a{0, 0};
    PolyMap observables;                         // R^n -> R^k
    std::vector<Polynomial> generator_functions; // (x_1..x_n, observables...)
    std::vector<std::string> provenance;         // free-form construction notes

    int total_dimension() const { return n + k; }
};

// Assembles a Lift from its matrix and observables; the generator list is
// always the base coordinates followed by the observable components.
Lift make_lift(int n, RatMatrix a, PolyMap observables,
               std::vector<std::string> provenance = {});

enum class ClosureStatus { stabilized, diverging };

struct ClosureOutcome {
    ClosureStatus status = ClosureStatus::diverging;
    std::optional<Lift> lift;         // engaged exactly when stabilized
    std::vector<int> dims;            // basis dimension after each pass
    int max_degree_seen = 0;          // largest total degree encountered
    std::vector<int> leading_degrees; // per-variable degree high-water marks

    bool stabilized() const { return status == ClosureStatus::stabilized; }
};

// Searches for a linear realization of f by closing the coordinate functions
// (plus the constant 1, to absorb affine drift) under the directional
// derivative along f. Each derivative is reduced exactly against the current
// basis; a nonzero residual joins the basis as a fresh generator. When every
// generator's derivative lies in the span the recorded reduction coefficients
// are exactly the rows of A. The constant generator is dropped from the
// final lift when no row references it.
ClosureOutcome scalar_closure(const VectorField& f, const Budget& budget = {});

// Ground truth for lift validity: checks the generator identity
// A*w(x) = (f(x), Dp(x)*f(x)) as an exact polynomial statement, plus the
// structural conventions (first n generators are the coordinates, the rest
// are the observables). By uniqueness of ODE solutions the identity implies
// the trajectory-projection property for every start point and horizon.
bool check_lift_symbolic(const VectorField& f, const Lift& lift);

// The literal derivative orbit (f, L_f f, ..., L_f^kmax f), exactly.
std::vector<VectorField> vector_closure_sequence(const VectorField& f, int kmax);

struct ProfilePoint {
    int dim;            // dim span{f, ..., L_f^k f}
    int leading_degree; // degree of component 2 of L_f^k f in the watched variable
};

// Divergence diagnostics for systems suspected to have no finite lift: how
// fast the orbit dimension grows and how the watched variable's degree in
// the second component climbs with k.
std::vector<ProfilePoint> divergence_profile(const VectorField& f, int kmax,
                                             int watch_var);

} // namespace superlin

#endif
