"""Exact linear realizations of polynomial dynamics.

Thin convenience layer over the compiled module: systems and coordinate
changes travel as their file-format text, lifts as JSON, and the report
helpers return parsed dictionaries.
"""

import json

try:
    from . import _superlin as _core
except ImportError:  # build-tree layout: extension next to the package
    import _superlin as _core

Automorphism = _core.Automorphism
ClosureResult = _core.ClosureResult
Error = _core.Error
Lift = _core.Lift
ParseError = _core.ParseError
System = _core.System

fixture = _core.fixture
fixture_names = _core.fixture_names
integrate_system = _core.integrate_system
lift_system = _core.lift_system
check_lift = _core.check_lift
pushforward_system = _core.pushforward_system
transport_lift = _core.transport_lift
stably_transport_lift = _core.stably_transport_lift


def check_wdg(system):
    """Constant-cycle condition report as a dictionary."""
    return json.loads(_core.check_wdg_json(system))


def verify_lift(system, lift, x0_set, t_end=1.0, steps=1000, tol=1e-6):
    """Numeric trajectory comparison as a dictionary."""
    return json.loads(_core.verify_lift_json(system, lift, x0_set, t_end, steps, tol))


def divergence_profile(system, k, watch):
    """Derivative-orbit growth diagnostics as a dictionary."""
    return json.loads(_core.divergence_profile_json(system, k, watch))


__all__ = [
    "Automorphism",
    "ClosureResult",
    "Error",
    "Lift",
    "ParseError",
    "System",
    "check_lift",
    "check_wdg",
    "divergence_profile",
    "fixture",
    "fixture_names",
    "integrate_system",
    "lift_system",
    "pushforward_system",
    "stably_transport_lift",
    "transport_lift",
    "verify_lift",
]
