#include "superlin/jsonio.hpp"

#include <utility>

#include "json.hpp"

#include "superlin/errors.hpp"
#include "superlin/parse.hpp"
#include "superlin/render.hpp"

namespace superlin {

using ordered_json = nlohmann::ordered_json;

std::string lift_to_json(const Lift& lift, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != lift.n)
        throw dimension_error("name list does not match the lift's base dimension");

    ordered_json j;
    j["format"] = 1;
    j["n"] = lift.n;
    j["k"] = lift.k;
    j["vars"] = names;

    ordered_json rows = ordered_json::array();
    for (int i = 0; i < lift.total_dimension(); ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < lift.total_dimension(); ++c)
            row.push_back(rational_to_string(lift.a.at(i, c)));
        rows.push_back(std::move(row));
    }
    j["A"] = std::move(rows);

    ordered_json obs = ordered_json::array();
    for (const Polynomial& p : lift.observables.components())
        obs.push_back(render_polynomial(p, names));
    j["observables"] = std::move(obs);

    ordered_json gens = ordered_json::array();
    for (const Polynomial& p : lift.generator_functions)
        gens.push_back(render_polynomial(p, names));
    j["generators"] = std::move(gens);

    if (!lift.provenance.empty())
        j["provenance"] = lift.provenance;
    return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void bad_lift(const std::string& what) {
    throw validity_error("lift JSON: " + what);
}

ordered_json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validity_error(what + ": " + e.what());
    }
}

} // namespace

NamedLift lift_from_json(const std::string& text) {
    ordered_json j = parse_json_text(text, "lift JSON");
    if (!j.is_object())
        bad_lift("top level must be an object");
    if (!j.contains("format") || !j["format"].is_number_integer() || j["format"].get<int>() != 1)
        bad_lift("unsupported or missing format (expected 1)");
    for (const char* key : {"n", "k", "vars", "A", "observables", "generators"})
        if (!j.contains(key))
            bad_lift(std::string("missing field '") + key + "'");

    if (!j["n"].is_number_integer() || !j["k"].is_number_integer())
        bad_lift("'n' and 'k' must be integers");
    int n = j["n"].get<int>();
    int k = j["k"].get<int>();
    if (n < 1 || k < 0)
        bad_lift("need n >= 1 and k >= 0");
    int total = n + k;

    if (!j["vars"].is_array() || static_cast<int>(j["vars"].size()) != n)
        bad_lift("'vars' must list one name per base variable");
    std::vector<std::string> names;
    for (const auto& v : j["vars"]) {
        if (!v.is_string())
            bad_lift("'vars' entries must be strings");
        names.push_back(v.get<std::string>());
    }

    if (!j["A"].is_array() || static_cast<int>(j["A"].size()) != total)
        bad_lift("'A' must have n + k rows");
    RatMatrix a(total, total);
    for (int i = 0; i < total; ++i) {
        const auto& row = j["A"][static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != total)
            bad_lift("'A' rows must each have n + k entries");
        for (int c = 0; c < total; ++c) {
            const auto& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_string())
                bad_lift("'A' entries must be exact rational strings");
            try {
                a.at(i, c) = rational_from_string(cell.get<std::string>());
            } catch (const validity_error&) {
                bad_lift("entry '" + cell.get<std::string>() + "' is not a rational");
            }
        }
    }

    auto parse_exprs = [&](const char* key, int expected) {
        const auto& arr = j[key];
        if (!arr.is_array() || static_cast<int>(arr.size()) != expected)
            bad_lift(std::string("'") + key + "' must list " + std::to_string(expected) +
                     " expressions");
        std::vector<Polynomial> out;
        for (const auto& e : arr) {
            if (!e.is_string())
                bad_lift(std::string("'") + key + "' entries must be strings");
            try {
                out.push_back(parse_polynomial(e.get<std::string>(), names));
            } catch (const parse_error& pe) {
                bad_lift(std::string("in '") + key + "': " + pe.what());
            }
        }
        return out;
    };

    std::vector<Polynomial> observables = parse_exprs("observables", k);
    std::vector<Polynomial> generators = parse_exprs("generators", total);

    std::vector<std::string> provenance;
    if (j.contains("provenance")) {
        if (!j["provenance"].is_array())
            bad_lift("'provenance' must be an array of strings");
        for (const auto& p : j["provenance"]) {
            if (!p.is_string())
                bad_lift("'provenance' entries must be strings");
            provenance.push_back(p.get<std::string>());
        }
    }

    Lift lift = make_lift(n, a, PolyMap(n, observables), provenance);
    for (int i = 0; i < total; ++i)
        if (lift.generator_functions[static_cast<std::size_t>(i)] !=
            generators[static_cast<std::size_t>(i)])
            bad_lift("'generators' must be the coordinates followed by the observables");
    return {std::move(lift), std::move(names)};
}

std::string wdg_report_to_json(const WdgReport& report, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != report.graph.n)
        throw dimension_error("name list does not match the graph");

    auto cycle_json = [&](const Cycle& c) {
        ordered_json out;
        ordered_json nodes = ordered_json::array();
        for (int v : c.nodes)
            nodes.push_back(names[static_cast<std::size_t>(v)]);
        out["nodes"] = std::move(nodes);
        out["product"] = render_polynomial(c.product, names);
        out["constant"] = c.product.is_constant();
        return out;
    };

    ordered_json j;
    j["format"] = 1;
    j["vars"] = names;
    j["satisfied"] = report.satisfied;
    ordered_json edges = ordered_json::array();
    for (const DepEdge& e : report.graph.edges) {
        ordered_json edge;
        edge["from"] = names[static_cast<std::size_t>(e.from)];
        edge["to"] = names[static_cast<std::size_t>(e.to)];
        edge["weight"] = render_polynomial(e.weight, names);
        edges.push_back(std::move(edge));
    }
    j["edges"] = std::move(edges);
    ordered_json cycles = ordered_json::array();
    for (const Cycle& c : report.cycles)
        cycles.push_back(cycle_json(c));
    j["cycles"] = std::move(cycles);
    j["offending"] = report.offending ? cycle_json(*report.offending) : ordered_json(nullptr);
    return j.dump(2) + "\n";
}

std::string verification_report_to_json(const VerificationReport& report) {
    ordered_json j;
    j["format"] = 1;
    j["passed"] = report.passed;
    j["max_abs_error"] = report.max_abs_error;
    j["max_rel_error"] = report.max_rel_error;
    j["t_end"] = report.t_end;
    j["steps"] = report.steps;
    j["tol"] = report.tol;
    ordered_json per = ordered_json::array();
    for (const InitialConditionReport& e : report.per_x0) {
        ordered_json entry;
        entry["x0"] = e.x0;
        entry["max_abs_error"] = e.max_abs_error;
        entry["max_rel_error"] = e.max_rel_error;
        per.push_back(std::move(entry));
    }
    j["per_x0"] = std::move(per);
    return j.dump(2) + "\n";
}

std::string closure_outcome_to_json(const ClosureOutcome& outcome) {
    ordered_json j;
    j["format"] = 1;
    j["status"] = outcome.stabilized() ? "stabilized" : "diverging";
    j["dims"] = outcome.dims;
    j["max_degree_seen"] = outcome.max_degree_seen;
    j["leading_degrees"] = outcome.leading_degrees;
    return j.dump(2) + "\n";
}

std::string profile_to_json(const std::vector<ProfilePoint>& profile,
                            const std::string& watch_name) {
    ordered_json j;
    j["format"] = 1;
    j["watch"] = watch_name;
    ordered_json points = ordered_json::array();
    for (const ProfilePoint& p : profile) {
        ordered_json point;
        point["dim"] = p.dim;
        point["leading_degree"] = p.leading_degree;
        points.push_back(std::move(point));
    }
    j["profile"] = std::move(points);
    return j.dump(2) + "\n";
}

} // namespace superlin
