#include "superlin/fixtures.hpp"

#include "superlin/jsonio.hpp"
#include "superlin/linearizer.hpp"
#include "superlin/parse.hpp"

namespace superlin {

namespace {

// Four coupled states; the last one is driven quadratically by the first
// and third, yet every cycle weight product stays constant.
const char* kExample2 = R"(vars x1 x2 x3 x4
x1' = -x1 + x3
x2' = 2*x1 + x3
x3' = 2*x2
x4' = x1^2 + x3^2
)";

// The free particle pushed through the shear (x1, x2 - x1^2): it has a
// three-state linear realization but a non-constant cycle product.
const char* kCounterexample = R"(vars y1 y2
y1' = y2 + y1^2
y2' = -2*y1*y2 - 2*y1^3
)";

// The same dynamics with the conserved combination y2 + y1^2 carried as a
// third state; the cycle products become constant again.
const char* kStabilized3 = R"(vars y1 y2 y3
y1' = y3
y2' = -2*y1*y3
y3' = 0
)";

// Polynomial encoding of the hyperbolic-sine system: z are the states,
// q and r carry the transcendental quantities. Its derivative span grows
// without bound, so the closure search diverges by design.
const char* kSinh6 = R"(vars z1 z2 q1 q2 r1 r2
z1' = q2*r1
z2' = q1*r2
q1' = q2
q2' = q1
r1' = z1*q2
r2' = z2*q1
)";

std::string intro_lift_json() {
    RatMatrix a({{Rational(1), Rational(0), Rational(0)},
                 {Rational(0), Rational(1), Rational(1)},
                 {Rational(0), Rational(0), Rational(2)}});
    Polynomial x1 = Polynomial::variable(2, 0);
    Lift lift = make_lift(2, a, PolyMap(2, {x1 * x1}));
    return lift_to_json(lift, {"x1", "x2"});
}

std::vector<Fixture> build_fixtures() {
    return {
        {"example2", "example2.sys", kExample2},
        {"counterexample", "counterexample.sys", kCounterexample},
        {"stabilized3", "stabilized3.sys", kStabilized3},
        {"sinh6", "sinh6.sys", kSinh6},
        {"intro-lift", "intro-lift.json", intro_lift_json()},
    };
}

} // namespace

const std::vector<Fixture>& bundled_fixtures() {
    static const std::vector<Fixture> fixtures = build_fixtures();
    return fixtures;
}

const Fixture* find_fixture(const std::string& name) {
    for (const Fixture& f : bundled_fixtures())
        if (f.name == name)
            return &f;
    return nullptr;
}

} // namespace superlin
