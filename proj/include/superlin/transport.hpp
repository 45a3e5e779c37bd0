#ifndef SUPERLIN_TRANSPORT_HPP
#define SUPERLIN_TRANSPORT_HPP

#include "superlin/automorphism.hpp"
#include "superlin/linearizer.hpp"

namespace superlin {

// The base field a lift realizes, read off its first n rows:
// f_i = sum_j A[i][j] * generator_j.
VectorField realized_field(const Lift& lift);

// Certificate that the flow of h on R^m, started on the graph of p, stays on
// the graph and projects onto the flow of f on R^n. The two differential
// identities
//
//     h_{1..n}(x, p(x)) = f(x)
//     Dp(x) * f(x)      = h_{n+1..m}(x, p(x))
//
// are verified symbolically at construction; by uniqueness of ODE solutions
// they imply the semantic statement for every start point.
class ProjectionWitness {
public:
    ProjectionWitness(VectorField h, VectorField f, PolyMap p);

    int m() const { return h_.n(); }
    int n() const { return f_.n(); }
    const VectorField& h() const { return h_; }
    const VectorField& f() const { return f_; }
    const PolyMap& p() const { return p_; }

private:
    VectorField h_;
    VectorField f_;
    PolyMap p_;
};

// Turns a lift of the ambient field into a lift of the projected field: the
// matrix is reused unchanged, the observables become (p(x), q(x, p(x))) with
// q the ambient observables. The trivial m == n witness returns the input.
Lift project_lift(const ProjectionWitness& w, const Lift& lift_h);

// Lift of the augmented field (f(x), g(x)) on R^{n+k}: each new state is an
// integrator v_j' = g_j(x). Every g_j is rewritten over the lift states and
// closed under differentiation; the closure is finite because the chain
// lives in the fixed-degree polynomial space of the linear lift dynamics.
Lift extend_lift(const Lift& lift_f, const PolyMap& g);

// Lift of the linearly conjugated field P f(P^{-1} z): the matrix is
// conjugated blockwise, the observables precomposed with P^{-1}.
Lift conjugate_lift(const Lift& lift_f, const RatMatrix& p);

// Lift of the shifted field h(z) = f(z + c). Observables are shifted; the
// affine drift this creates is absorbed by a constant generator, appended
// when the lift does not already carry one.
Lift translate_lift(const Lift& lift_f, const RatVector& c);

// Lift of the pushforward of the realized field through one shear acting on
// the last coordinate (retarget with conjugate_lift and a transposition
// first). Pipeline: extend by the shear target's time derivative, swap the
// new state into the target slot, project along the witness
// p(y) = y_n - g(y_1..y_{n-1}).
Lift elementary_transport(const Lift& lift_f, const ElementaryGen& gen);

// Folds a whole generator sequence: affine generators become a conjugation
// plus a translation, shears go through elementary_transport. The result is
// a lift of pushforward(realized field, phi).
Lift tame_transport(const Lift& lift_f, const TameAutomorphism& phi);

// Transport along a map that is only tame after stabilization: extend the
// state by the stabilizer graph, transport through the tame automorphism
// upstairs, then project back down. The result is a lift of the pushforward
// of the realized field through the induced map psi. Needs psi's inverse:
// taken from the witness when present, otherwise derived (affine induced
// maps, or a tame inverse that ignores the auxiliary coordinates).
Lift stably_tame_transport(const Lift& lift_f, const StablyTameWitness& w);

// Checks L_{f~}^k f~ = P (L_f^k f)(P^{-1} z) for f~(z) = P f(P^{-1} z) and
// all k <= kmax, exactly. True for every invertible P; exposed as a
// self-test of the conjugation calculus.
bool lie_conjugation_identity(const VectorField& f, const RatMatrix& p, int kmax);

} // namespace superlin

#endif
