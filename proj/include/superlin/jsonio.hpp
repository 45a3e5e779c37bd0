#ifndef SUPERLIN_JSONIO_HPP
#define SUPERLIN_JSONIO_HPP

#include <string>
#include <vector>

#include "superlin/linearizer.hpp"
#include "superlin/numerics.hpp"
#include "superlin/wdg.hpp"

namespace superlin {

// All JSON outputs carry `"format": 1`, keep their keys in a fixed order,
// and print rationals as exact `p/q` strings, so serializing the same value
// twice yields identical bytes.

struct NamedLift {
    Lift lift;
    std::vector<std::string> names; // base variable names, length lift.n
};

std::string lift_to_json(const Lift& lift, const std::vector<std::string>& names);

// Inverse of lift_to_json; validates the schema, re-derives the generator
// stack from the coordinates and observables, and rejects files whose
// generator list disagrees with it.
NamedLift lift_from_json(const std::string& text);

std::string wdg_report_to_json(const WdgReport& report, const std::vector<std::string>& names);

std::string verification_report_to_json(const VerificationReport& report);

// Divergence diagnostics of a budget-limited closure run.
std::string closure_outcome_to_json(const ClosureOutcome& outcome);

// Growth profile of iterated derivatives, tagged with the watched variable.
std::string profile_to_json(const std::vector<ProfilePoint>& profile,
                            const std::string& watch_name);

} // namespace superlin

#endif
