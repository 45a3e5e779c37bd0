#include "superlin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

#include "superlin/errors.hpp"

namespace superlin {

namespace {

// One term with its coefficient already rounded to binary64, so the hot
// loop never touches exact arithmetic.
struct CompiledTerm {
    double coeff;
    std::vector<std::uint32_t> exp;
};

using CompiledPoly = std::vector<CompiledTerm>;

CompiledPoly compile_poly(const Polynomial& p) {
    CompiledPoly out;
    out.reserve(p.terms().size());
    for (const Term& t : p.terms())
        out.push_back({to_double(t.coeff), t.mono.exp});
    return out;
}

double eval_compiled(const CompiledPoly& p, const std::vector<double>& x) {
    double acc = 0.0;
    for (const CompiledTerm& t : p) {
        double v = t.coeff;
        for (std::size_t i = 0; i < t.exp.size(); ++i) {
            double base = x[i];
            for (std::uint32_t e = 0; e < t.exp[i]; ++e)
                v *= base;
        }
        acc += v;
    }
    return acc;
}

void require_grid(double t_end, int steps) {
    if (steps < 1)
        throw validity_error("integration needs at least one step");
    if (!(t_end > 0.0))
        throw validity_error("integration horizon must be positive");
}

void require_finite(const std::vector<double>& state, int step, int steps) {
    for (double v : state)
        if (!std::isfinite(v))
            throw numeric_overflow_error("non-finite state at step " + std::to_string(step) +
                                         " of " + std::to_string(steps));
}

// Classical RK4 with a fixed grid; `rhs(state, out)` fills the derivative.
template <typename Rhs>
Trajectory run_rk4(const Rhs& rhs, std::vector<double> x, double t_end, int steps) {
    require_grid(t_end, steps);
    const std::size_t dim = x.size();
    const double h = t_end / static_cast<double>(steps);

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    require_finite(x, 0, steps);
    traj.times.push_back(0.0);
    traj.states.push_back(x);

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), probe(dim);
    for (int step = 1; step <= steps; ++step) {
        rhs(x, k1);
        for (std::size_t i = 0; i < dim; ++i)
            probe[i] = x[i] + 0.5 * h * k1[i];
        rhs(probe, k2);
        for (std::size_t i = 0; i < dim; ++i)
            probe[i] = x[i] + 0.5 * h * k2[i];
        rhs(probe, k3);
        for (std::size_t i = 0; i < dim; ++i)
            probe[i] = x[i] + h * k3[i];
        rhs(probe, k4);
        for (std::size_t i = 0; i < dim; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        require_finite(x, step, steps);
        traj.times.push_back(h * static_cast<double>(step));
        traj.states.push_back(x);
    }
    return traj;
}

} // namespace

Trajectory integrate(const VectorField& f, const std::vector<double>& x0,
                     double t_end, int steps) {
    if (static_cast<int>(x0.size()) != f.n())
        throw dimension_error("initial state has wrong length for the field");
    std::vector<CompiledPoly> comps;
    comps.reserve(x0.size());
    for (const Polynomial& p : f.components())
        comps.push_back(compile_poly(p));
    auto rhs = [&comps](const std::vector<double>& state, std::vector<double>& out) {
        for (std::size_t i = 0; i < comps.size(); ++i)
            out[i] = eval_compiled(comps[i], state);
    };
    return run_rk4(rhs, x0, t_end, steps);
}

Trajectory integrate(const RatMatrix& a, const std::vector<double>& x0,
                     double t_end, int steps) {
    if (a.rows() != a.cols())
        throw dimension_error("linear dynamics need a square matrix");
    if (static_cast<int>(x0.size()) != a.rows())
        throw dimension_error("initial state has wrong length for the matrix");
    const int m = a.rows();
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m),
                                          std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_double(a.at(i, j));
    auto rhs = [&rows, m](const std::vector<double>& state, std::vector<double>& out) {
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            const std::vector<double>& row = rows[static_cast<std::size_t>(i)];
            for (int j = 0; j < m; ++j)
                acc += row[static_cast<std::size_t>(j)] * state[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = acc;
        }
    };
    return run_rk4(rhs, x0, t_end, steps);
}

VerificationReport verify_lift_numeric(const VectorField& f, const Lift& lift,
                                       const std::vector<std::vector<double>>& x0_set,
                                       double t_end, int steps, double tol) {
    if (!check_lift_symbolic(f, lift))
        throw validity_error("numeric verification requires a lift that passes the symbolic check");
    require_grid(t_end, steps);

    std::vector<CompiledPoly> observables;
    observables.reserve(static_cast<std::size_t>(lift.k));
    for (const Polynomial& p : lift.observables.components())
        observables.push_back(compile_poly(p));

    VerificationReport report;
    report.t_end = t_end;
    report.steps = steps;
    report.tol = tol;

    int index = 0;
    for (const std::vector<double>& x0 : x0_set) {
        if (static_cast<int>(x0.size()) != lift.n)
            throw dimension_error("initial condition has wrong length for the field");
        std::vector<double> z0 = x0;
        for (const CompiledPoly& p : observables)
            z0.push_back(eval_compiled(p, x0));

        Trajectory base, lifted;
        try {
            base = integrate(f, x0, t_end, steps);
            lifted = integrate(lift.a, z0, t_end, steps);
        } catch (const numeric_overflow_error& e) {
            throw numeric_overflow_error("initial condition " + std::to_string(index) + ": " +
                                         e.what());
        }

        InitialConditionReport entry;
        entry.x0 = x0;
        for (std::size_t s = 0; s < base.size(); ++s) {
            for (int j = 0; j < lift.n; ++j) {
                double ref = base.states[s][static_cast<std::size_t>(j)];
                double got = lifted.states[s][static_cast<std::size_t>(j)];
                double abs_err = std::fabs(got - ref);
                double rel_err = abs_err / std::max(1.0, std::fabs(ref));
                entry.max_abs_error = std::max(entry.max_abs_error, abs_err);
                entry.max_rel_error = std::max(entry.max_rel_error, rel_err);
            }
        }
        report.max_abs_error = std::max(report.max_abs_error, entry.max_abs_error);
        report.max_rel_error = std::max(report.max_rel_error, entry.max_rel_error);
        report.per_x0.push_back(std::move(entry));
        ++index;
    }
    report.passed = report.max_rel_error <= tol;
    return report;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string trajectory_to_csv(const Trajectory& traj) {
    if (traj.times.size() != traj.states.size())
        throw dimension_error("trajectory times and states disagree in length");
    std::string out = "t";
    const std::size_t m = traj.states.empty() ? 0 : traj.states.front().size();
    for (std::size_t j = 1; j <= m; ++j)
        out += ",x" + std::to_string(j);
    out += "\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        out += format_double(traj.times[s]);
        for (double v : traj.states[s])
            out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
    Trajectory traj;
    std::size_t pos = 0;
    int line_no = 0;
    std::size_t m = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        ++line_no;

        std::vector<std::string> fields;
        std::vector<int> cols; // 1-based start column of each field
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            cols.push_back(static_cast<int>(start) + 1);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }

        if (line_no == 1) {
            if (fields.empty() || fields[0] != "t")
                throw parse_error("trajectory header must start with 't'", 1, 1);
            for (std::size_t j = 1; j < fields.size(); ++j)
                if (fields[j] != "x" + std::to_string(j))
                    throw parse_error("trajectory header column must be 'x" + std::to_string(j) + "'",
                                      1, cols[j]);
            m = fields.size() - 1;
        } else if (!line.empty()) {
            if (fields.size() != m + 1)
                throw parse_error("trajectory row has " + std::to_string(fields.size()) +
                                      " fields, expected " + std::to_string(m + 1),
                                  line_no, 1);
            std::vector<double> values;
            values.reserve(fields.size());
            for (std::size_t j = 0; j < fields.size(); ++j) {
                const std::string& field = fields[j];
                char* end = nullptr;
                double v = std::strtod(field.c_str(), &end);
                if (field.empty() || end != field.c_str() + field.size())
                    throw parse_error("malformed number '" + field + "'", line_no, cols[j]);
                values.push_back(v);
            }
            traj.times.push_back(values[0]);
            traj.states.emplace_back(values.begin() + 1, values.end());
        }
        pos = eol + 1;
    }
    if (traj.times.empty())
        throw parse_error("trajectory has no samples", line_no == 0 ? 1 : line_no, 1);
    if (traj.times.front() != 0.0)
        throw parse_error("trajectory must start at t = 0", 2, 1);
    for (std::size_t s = 1; s < traj.times.size(); ++s)
        if (!(traj.times[s] > traj.times[s - 1]))
            throw parse_error("trajectory times must increase strictly",
                              static_cast<int>(s) + 2, 1);
    return traj;
}

} // namespace superlin
