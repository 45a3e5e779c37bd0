#include "superlin/linearizer.hpp"

#include <algorithm>
#include <utility>

#include "superlin/errors.hpp"
#include "superlin/span.hpp"

namespace superlin {

void Budget::validate() const {
    if (max_generators == 0 || max_degree == 0 || max_iterations == 0)
        throw validity_error("budget limits must all be positive");
}

Lift make_lift(int n, RatMatrix a, PolyMap observables,
               std::vector<std::string> provenance) {
    if (n < 0)
        throw dimension_error("lift base dimension cannot be negative");
    if (observables.n_in() != n)
        throw dimension_error("lift observables must be functions of the base variables");
    int k = observables.n_out();
    if (a.rows() != n + k || a.cols() != n + k)
        throw dimension_error("lift matrix must be square of size n + k");
    Lift lift;
    lift.n = n;
    lift.k = k;
    lift.a = std::move(a);
    lift.generator_functions.reserve(static_cast<std::size_t>(n + k));
    for (int i = 0; i < n; ++i)
        lift.generator_functions.push_back(Polynomial::variable(n, i));
    for (int j = 0; j < k; ++j)
        lift.generator_functions.push_back(observables[j]);
    lift.observables = std::move(observables);
    lift.provenance = std::move(provenance);
    return lift;
}

bool check_lift_symbolic(const VectorField& f, const Lift& lift) {
    int n = f.n();
    if (lift.n != n)
        throw dimension_error("lift base dimension does not match the field");
    int m = lift.n + lift.k;
    if (lift.a.rows() != m || lift.a.cols() != m)
        throw dimension_error("lift matrix must be square of size n + k");
    if (lift.observables.n_in() != n || lift.observables.n_out() != lift.k)
        throw dimension_error("lift observables must map the base space to R^k");
    if (static_cast<int>(lift.generator_functions.size()) != m)
        throw dimension_error("lift must carry one generator function per state");

    // structural conventions: generators = (coordinates, observables)
    for (int i = 0; i < n; ++i)
        if (lift.generator_functions[static_cast<std::size_t>(i)] !=
            Polynomial::variable(n, i))
            return false;
    for (int j = 0; j < lift.k; ++j)
        if (lift.generator_functions[static_cast<std::size_t>(n + j)] !=
            lift.observables[j])
            return false;

    // left side: A applied to the generator stack; right side: the time
    // derivative of each generator along f.
    for (int i = 0; i < m; ++i) {
        Polynomial lhs = Polynomial::zero(n);
        for (int j = 0; j < m; ++j) {
            const Rational& c = lift.a.at(i, j);
            if (c != 0)
                lhs += lift.generator_functions[static_cast<std::size_t>(j)].scaled(c);
        }
        Polynomial rhs =
            i < n ? f[i]
                  : lie_derivative_scalar(f, lift.observables[i - n]);
        if (lhs != rhs)
            return false;
    }
    return true;
}

namespace {

// Removes state `drop` from a square closure matrix (its column must already
// be zero everywhere, so nothing references it).
RatMatrix erase_state(const RatMatrix& a, int drop) {
    RatMatrix out(a.rows() - 1, a.cols() - 1);
    for (int i = 0, oi = 0; i < a.rows(); ++i) {
        if (i == drop)
            continue;
        for (int j = 0, oj = 0; j < a.cols(); ++j) {
            if (j == drop)
                continue;
            out.at(oi, oj) = a.at(i, j);
            ++oj;
        }
        ++oi;
    }
    return out;
}

} // namespace

ClosureOutcome scalar_closure(const VectorField& f, const Budget& budget) {
    budget.validate();
    int n = f.n();

    std::vector<Polynomial> gens;
    PolySpan span(n, 1);
    for (int i = 0; i < n; ++i) {
        gens.push_back(Polynomial::variable(n, i));
        span.add({gens.back()});
    }
    gens.push_back(Polynomial::constant(n, 1));
    span.add({gens.back()});
    const int constant_id = n;

    ClosureOutcome out;
    out.leading_degrees.assign(static_cast<std::size_t>(n), 0);
    auto note_degrees = [&](const Polynomial& p) {
        out.max_degree_seen = std::max(out.max_degree_seen, p.degree());
        for (int v = 0; v < n; ++v) {
            int d = p.degree_in(v);
            auto& slot = out.leading_degrees[static_cast<std::size_t>(v)];
            slot = std::max(slot, d);
        }
    };
    for (const Polynomial& g : gens)
        note_degrees(g);
    out.dims.push_back(static_cast<int>(gens.size()));

    // rows[i] holds the reduction coefficients of L_f gens[i]; padded to the
    // final generator count once the basis stops growing.
    std::vector<std::vector<Rational>> rows;
    std::size_t processed = 0;
    bool exhausted = false;

    for (std::size_t pass = 0; pass < budget.max_iterations; ++pass) {
        std::size_t wave_end = gens.size();
        for (std::size_t i = processed; i < wave_end; ++i) {
            Polynomial deriv = lie_derivative_scalar(f, gens[i]);
            note_degrees(deriv);
            if (deriv.degree() > static_cast<int>(budget.max_degree)) {
                exhausted = true;
                break;
            }
            PolySpan::Reduction red = span.reduce({deriv});
            std::vector<Rational> row = std::move(red.coeffs);
            if (!polyvec_is_zero(red.residual)) {
                if (gens.size() >= budget.max_generators) {
                    exhausted = true;
                    break;
                }
                note_degrees(red.residual[0]);
                gens.push_back(red.residual[0]);
                int id = span.add_reduced(std::move(red.residual));
                row.resize(static_cast<std::size_t>(id) + 1);
                row[static_cast<std::size_t>(id)] = 1;
            }
            rows.push_back(std::move(row));
        }
        processed = wave_end;
        out.dims.push_back(static_cast<int>(gens.size()));
        if (exhausted)
            break;
        if (gens.size() == wave_end && processed == gens.size()) {
            // nothing new appeared and everything has been differentiated
            std::size_t total = gens.size();
            RatMatrix a(static_cast<int>(total), static_cast<int>(total));
            for (std::size_t i = 0; i < total; ++i)
                for (std::size_t j = 0; j < rows[i].size(); ++j)
                    a.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];

            bool constant_used = false;
            for (std::size_t i = 0; i < total; ++i)
                if (a.at(static_cast<int>(i), constant_id) != 0) {
                    constant_used = true;
                    break;
                }
            std::vector<Polynomial> observables;
            for (std::size_t j = static_cast<std::size_t>(n); j < total; ++j) {
                if (static_cast<int>(j) == constant_id && !constant_used)
                    continue;
                observables.push_back(gens[j]);
            }
            if (!constant_used)
                a = erase_state(a, constant_id);

            Lift lift = make_lift(n, std::move(a),
                                  PolyMap(n, std::move(observables)),
                                  {"scalar closure"});
            if (!check_lift_symbolic(f, lift))
                throw error("internal defect: closure assembled a lift that fails "
                            "its own symbolic check");
            out.status = ClosureStatus::stabilized;
            out.lift = std::move(lift);
            return out;
        }
    }

    out.status = ClosureStatus::diverging;
    return out;
}

std::vector<VectorField> vector_closure_sequence(const VectorField& f, int kmax) {
    if (kmax < 0)
        throw validity_error("derivative orbit length cannot be negative");
    std::vector<VectorField> orbit;
    orbit.reserve(static_cast<std::size_t>(kmax) + 1);
    orbit.push_back(f);
    for (int k = 1; k <= kmax; ++k)
        orbit.push_back(lie_derivative_field(f, orbit.back()));
    return orbit;
}

std::vector<ProfilePoint> divergence_profile(const VectorField& f, int kmax,
                                             int watch_var) {
    if (kmax < 0)
        throw validity_error("profile length cannot be negative");
    int n = f.n();
    if (watch_var < 0 || watch_var >= n)
        throw dimension_error("watched variable is out of range");
    if (n < 2)
        throw dimension_error("profile reports on component 2; need at least "
                              "two states");

    std::vector<ProfilePoint> profile;
    PolySpan span(n, n);
    VectorField current = f;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0)
            current = lie_derivative_field(f, current);
        span.add(current.components());
        profile.push_back({span.dim(), current[1].degree_in(watch_var)});
    }
    return profile;
}

} // namespace superlin
