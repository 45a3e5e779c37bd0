#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "superlin/errors.hpp"
#include "superlin/fixtures.hpp"
#include "superlin/jsonio.hpp"
#include "superlin/linearizer.hpp"
#include "superlin/numerics.hpp"
#include "superlin/parse.hpp"
#include "superlin/render.hpp"
#include "superlin/transport.hpp"
#include "superlin/wdg.hpp"

using namespace superlin;

namespace {

// 0 success/true, 1 checked condition false, 2 parse/usage, 3 inconclusive
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good())
        throw validity_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good())
        throw validity_error("cannot write file: " + path);
    out << contents;
}

// stdout or --out, so machine output composes in pipelines either way
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        spill(out_path, text);
}

std::vector<double> parse_x0(const std::string& csv) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string field = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        char* end = nullptr;
        double v = std::strtod(field.c_str(), &end);
        if (field.empty() || end != field.c_str() + field.size())
            throw validity_error("malformed start point entry '" + field + "' in '" + csv + "'");
        out.push_back(v);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

int variable_index(const std::vector<std::string>& names, const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<int>(i);
    throw validity_error("unknown variable '" + name + "'");
}

// A name not colliding with any base variable (the stabilized state).
std::string fresh_name(const std::vector<std::string>& taken, std::string stem) {
    bool collides = true;
    while (collides) {
        collides = false;
        for (const std::string& t : taken)
            if (t == stem) {
                stem += "_";
                collides = true;
                break;
            }
    }
    return stem;
}

// The linear part of x' = Ax; rejects anything nonlinear or affine.
RatMatrix linear_matrix_of(const VectorField& f) {
    int n = f.n();
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        const Polynomial& row = f[i];
        if (row.degree() > 1)
            throw validity_error("stabilization needs a linear system; component " +
                                 std::to_string(i + 1) + " has degree " +
                                 std::to_string(row.degree()));
        if (row.constant_term() != 0)
            throw validity_error("stabilization needs a homogeneous linear system");
        for (int j = 0; j < n; ++j) {
            Monomial m(n);
            m.exp[static_cast<std::size_t>(j)] = 1;
            a.at(i, j) = row.coefficient_of(m);
        }
    }
    return a;
}

int run_check_wdg(const std::string& sys_path, const std::string& dot_path, bool as_json) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    WdgReport report = check_wdg(sys.field);
    if (!dot_path.empty())
        spill(dot_path, dot_export(report.graph, sys.names, &report.cycles));
    if (as_json)
        std::cout << wdg_report_to_json(report, sys.names);
    if (report.satisfied) {
        std::cerr << "condition satisfied: all " << report.cycles.size()
                  << " cycle products are constant\n";
        return kExitTrue;
    }
    std::cerr << "condition violated: cycle product "
              << render_polynomial(report.offending->product, sys.names)
              << " is not constant\n";
    return kExitFalse;
}

int run_lift(const std::string& sys_path, const std::string& out_path) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    ClosureOutcome outcome = scalar_closure(sys.field);
    if (!outcome.stabilized()) {
        std::cerr << "closure diverged within budget; dimensions per pass:";
        for (int d : outcome.dims)
            std::cerr << " " << d;
        std::cerr << "\n";
        emit(closure_outcome_to_json(outcome), out_path);
        return kExitInconclusive;
    }
    emit(lift_to_json(*outcome.lift, sys.names), out_path);
    return kExitTrue;
}

int run_check_lift(const std::string& sys_path, const std::string& lift_path) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    NamedLift named = lift_from_json(slurp(lift_path));
    bool ok = check_lift_symbolic(sys.field, named.lift);
    std::cerr << (ok ? "lift identity holds\n" : "lift identity fails\n");
    return ok ? kExitTrue : kExitFalse;
}

int run_pushforward(const std::string& sys_path, const std::string& map_path,
                    const std::string& out_path) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    ParsedAutomorphism map = parse_automorphism(slurp(map_path));
    VectorField pushed = pushforward(sys.field, map.phi);
    emit(render_system(pushed, sys.names), out_path);
    return kExitTrue;
}

int run_transport(const std::string& sys_path, const std::string& lift_path,
                  const std::string& map_path, const std::string& stabilizer_path,
                  const std::string& psi_inverse_path, const std::string& out_path) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    NamedLift named = lift_from_json(slurp(lift_path));
    ParsedAutomorphism map = parse_automorphism(slurp(map_path));

    Lift moved;
    if (stabilizer_path.empty()) {
        moved = tame_transport(named.lift, map.phi);
    } else {
        ParsedPolyMap stab = parse_polymap(slurp(stabilizer_path));
        std::optional<PolyMap> psi_inverse;
        if (!psi_inverse_path.empty())
            psi_inverse = parse_polymap(slurp(psi_inverse_path)).map;
        StablyTameWitness witness =
            make_stably_tame(map.phi, stab.map, std::move(psi_inverse));
        moved = stably_tame_transport(named.lift, witness);
    }
    emit(lift_to_json(moved, sys.names), out_path);
    return kExitTrue;
}

int run_stabilize(const std::string& sys_path, const std::string& map_path,
                  const std::string& out_path) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    ParsedAutomorphism map = parse_automorphism(slurp(map_path));
    if (map.phi.generators().size() != 1)
        throw validity_error("stabilization expects a single elementary shear");
    const ElementaryGen* gen = std::get_if<ElementaryGen>(&map.phi.generators()[0]);
    if (!gen)
        throw validity_error("stabilization expects a single elementary shear");

    StabilizedSystem result = wdg_stabilize(linear_matrix_of(sys.field), *gen);

    // lifted layout: first n-1 coordinates, the fresh observable, then the
    // last coordinate
    std::vector<std::string> lifted_names(sys.names.begin(), sys.names.end() - 1);
    lifted_names.push_back(fresh_name(sys.names, "w"));
    lifted_names.push_back(sys.names.back());

    nlohmann::ordered_json j;
    j["format"] = 1;
    j["observable"] = render_polynomial(result.observable, sys.names);
    j["vars"] = lifted_names;
    nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
    for (int i = 0; i < result.lifted.n(); ++i)
        eqs.push_back(render_polynomial(result.lifted[i], lifted_names));
    j["system"] = std::move(eqs);
    j["report"] =
        nlohmann::ordered_json::parse(wdg_report_to_json(result.report, lifted_names));
    emit(j.dump(2) + "\n", out_path);
    return result.report.satisfied ? kExitTrue : kExitFalse;
}

int run_verify(const std::string& sys_path, const std::string& lift_path,
               const std::vector<std::string>& x0_csv, double t_end, int steps, double tol,
               const std::string& trace_dir) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    NamedLift named = lift_from_json(slurp(lift_path));
    if (x0_csv.empty())
        throw validity_error("verify needs at least one --x0 start point");
    std::vector<std::vector<double>> x0_set;
    for (const std::string& csv : x0_csv)
        x0_set.push_back(parse_x0(csv));

    VerificationReport report;
    try {
        report = verify_lift_numeric(sys.field, named.lift, x0_set, t_end, steps, tol);
    } catch (const numeric_overflow_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitFalse;
    }

    if (!trace_dir.empty()) {
        std::filesystem::create_directories(trace_dir);
        for (std::size_t i = 0; i < x0_set.size(); ++i) {
            Trajectory base = integrate(sys.field, x0_set[i], t_end, steps);
            std::vector<double> z0 = x0_set[i];
            for (const Polynomial& p : named.lift.observables.components())
                z0.push_back(p.evaluate_double(x0_set[i]));
            Trajectory lifted = integrate(named.lift.a, z0, t_end, steps);
            std::string stem = trace_dir + "/x0_" + std::to_string(i);
            spill(stem + "_base.csv", trajectory_to_csv(base));
            spill(stem + "_lift.csv", trajectory_to_csv(lifted));
        }
    }

    std::cout << verification_report_to_json(report);
    return report.passed ? kExitTrue : kExitFalse;
}

int run_closure_profile(const std::string& sys_path, int kmax, const std::string& watch) {
    ParsedSystem sys = parse_system(slurp(sys_path));
    int watch_var = variable_index(sys.names, watch);
    std::vector<ProfilePoint> profile = divergence_profile(sys.field, kmax, watch_var);
    std::cout << profile_to_json(profile, watch);
    return kExitTrue;
}

int run_demo(const std::string& name, const std::string& out_path) {
    const Fixture* fx = find_fixture(name);
    if (!fx) {
        std::string known;
        for (const Fixture& f : bundled_fixtures())
            known += (known.empty() ? "" : ", ") + f.name;
        throw validity_error("unknown demo '" + name + "'; bundled: " + known);
    }
    emit(fx->contents, out_path);
    return kExitTrue;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lifts of polynomial dynamics: construction, transport, checking"};
    app.require_subcommand(1);

    std::string sys_path, lift_path, map_path, out_path, dot_path;
    std::string stabilizer_path, psi_inverse_path, trace_dir, watch, demo_name;
    std::vector<std::string> x0_csv;
    bool as_json = false;
    double t_end = 1.0, tol = 1e-6;
    int steps = 1000, kmax = 8;

    CLI::App* c_wdg = app.add_subcommand("check-wdg", "check the constant-cycle condition");
    c_wdg->add_option("sys", sys_path, "system file")->required();
    c_wdg->add_option("--dot", dot_path, "write the dependency graph in DOT form");
    c_wdg->add_flag("--json", as_json, "print the full report as JSON");

    CLI::App* c_lift = app.add_subcommand("lift", "search for a finite linear realization");
    c_lift->add_option("sys", sys_path, "system file")->required();
    c_lift->add_option("--out", out_path, "write the result here instead of stdout");

    CLI::App* c_check = app.add_subcommand("check-lift", "check a lift against a system");
    c_check->add_option("sys", sys_path, "system file")->required();
    c_check->add_option("lift", lift_path, "lift JSON file")->required();

    CLI::App* c_push = app.add_subcommand("pushforward", "change coordinates of a system");
    c_push->add_option("sys", sys_path, "system file")->required();
    c_push->add_option("map", map_path, "coordinate-change file")->required();
    c_push->add_option("--out", out_path, "write the result here instead of stdout");

    CLI::App* c_trans = app.add_subcommand("transport", "move a lift through a coordinate change");
    c_trans->add_option("sys", sys_path, "system file")->required();
    c_trans->add_option("lift", lift_path, "lift JSON file")->required();
    c_trans->add_option("map", map_path, "coordinate-change file")->required();
    c_trans->add_option("--stabilizer", stabilizer_path,
                        "auxiliary polynomial map making the change tame upstairs");
    c_trans->add_option("--psi-inverse", psi_inverse_path,
                        "explicit inverse of the induced base map");
    c_trans->add_option("--out", out_path, "write the result here instead of stdout");

    CLI::App* c_stab = app.add_subcommand("stabilize", "repair the cycle condition of a sheared linear system");
    c_stab->add_option("sys", sys_path, "linear system file")->required();
    c_stab->add_option("map", map_path, "single-shear coordinate-change file")->required();
    c_stab->add_option("--out", out_path, "write the result here instead of stdout");

    CLI::App* c_verify = app.add_subcommand("verify", "compare lift and system trajectories");
    c_verify->add_option("sys", sys_path, "system file")->required();
    c_verify->add_option("lift", lift_path, "lift JSON file")->required();
    c_verify->add_option("--x0", x0_csv, "start point as comma-separated values (repeatable)")
        ->required();
    c_verify->add_option("--t-end", t_end, "integration horizon (default 1)");
    c_verify->add_option("--steps", steps, "number of integrator steps (default 1000)");
    c_verify->add_option("--tol", tol, "relative-error tolerance (default 1e-6)");
    c_verify->add_option("--trace", trace_dir, "directory for trajectory CSV files");

    CLI::App* c_prof = app.add_subcommand("closure-profile", "growth diagnostics of the derivative orbit");
    c_prof->add_option("sys", sys_path, "system file")->required();
    c_prof->add_option("--k", kmax, "number of derivative steps (default 8)");
    c_prof->add_option("--watch", watch, "variable whose degree growth is tracked")->required();

    CLI::App* c_demo = app.add_subcommand("demo", "print a bundled input file");
    c_demo->add_option("name", demo_name, "fixture name")->required();
    c_demo->add_option("--out", out_path, "write the result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_wdg)
            return run_check_wdg(sys_path, dot_path, as_json);
        if (*c_lift)
            return run_lift(sys_path, out_path);
        if (*c_check)
            return run_check_lift(sys_path, lift_path);
        if (*c_push)
            return run_pushforward(sys_path, map_path, out_path);
        if (*c_trans)
            return run_transport(sys_path, lift_path, map_path, stabilizer_path,
                                 psi_inverse_path, out_path);
        if (*c_stab)
            return run_stabilize(sys_path, map_path, out_path);
        if (*c_verify)
            return run_verify(sys_path, lift_path, x0_csv, t_end, steps, tol, trace_dir);
        if (*c_prof)
            return run_closure_profile(sys_path, kmax, watch);
        if (*c_demo)
            return run_demo(demo_name, out_path);
    } catch (const budget_error& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
