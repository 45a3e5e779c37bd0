#ifndef SUPERLIN_NUMERICS_HPP
#define SUPERLIN_NUMERICS_HPP

#include <string>
#include <vector>

#include "superlin/linearizer.hpp"
#include "superlin/polymap.hpp"
#include "superlin/ratmat.hpp"

namespace superlin {

// Sampled solution curve: states[i] is the state at times[i], with
// times[0] == 0 and the grid strictly increasing.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;

    std::size_t size() const { return times.size(); }
};

// Classical fixed-step fourth-order Runge-Kutta from t = 0 to t_end.
// Coefficients are converted to binary64 once; the returned trajectory has
// steps + 1 samples including the initial state. Throws
// numeric_overflow_error naming the step if the state leaves the
// representable range.
Trajectory integrate(const VectorField& f, const std::vector<double>& x0,
                     double t_end, int steps);

// Same integrator for the linear dynamics z' = a z, so a lift and its base
// system share one numeric kernel and one truncation order.
Trajectory integrate(const RatMatrix& a, const std::vector<double>& x0,
                     double t_end, int steps);

// Error summary for one initial condition of verify_lift_numeric.
struct InitialConditionReport {
    std::vector<double> x0;
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
};

// Aggregate outcome of a numeric lift check; echoes the parameters so the
// report is self-describing when serialized.
struct VerificationReport {
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    std::vector<InitialConditionReport> per_x0;
    double t_end = 0.0;
    int steps = 0;
    double tol = 0.0;
    bool passed = false;
};

// Checks a lift along sampled trajectories: integrates the nonlinear field
// from each x0 and the linear lift dynamics from z0 = (x0, p(x0)) on the
// same grid, then compares the first n coordinates pointwise. The relative
// error uses |difference| / max(1, |reference|) so it degrades gracefully
// near zero. The lift must already pass the symbolic check; this routine
// enforces that before touching floating point.
VerificationReport verify_lift_numeric(const VectorField& f, const Lift& lift,
                                       const std::vector<std::vector<double>>& x0_set,
                                       double t_end, int steps, double tol);

// CSV with header `t,x1,...,xm` and one row per sample, printed with enough
// digits that parsing the text reproduces the exact binary64 values.
std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);

} // namespace superlin

#endif
