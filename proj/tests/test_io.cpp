#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

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

#include "corpus.hpp"
#include "rng.hpp"

using namespace superlin;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("polynomial expressions parse to exact structures") {
    std::vector<std::string> names{"x1", "x2"};
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);

    CHECK(parse_polynomial("0", names) == Polynomial::zero(2));
    CHECK(parse_polynomial("x1", names) == x1);
    CHECK(parse_polynomial("-x1", names) == -x1);
    CHECK(parse_polynomial("+x2", names) == x2);
    CHECK(parse_polynomial("3/2", names) == Polynomial::constant(2, Rational(3, 2)));
    CHECK(parse_polynomial("3/2*x1^2*x2 - x2 + 1", names) ==
          (x1 * x1 * x2).scaled(Rational(3, 2)) - x2 + Polynomial::constant(2, 1));
    CHECK_THROWS_AS(parse_polynomial("x1 - - 0", names), parse_error); // one sign per term
    CHECK(parse_polynomial("x1^3", names) == x1 * x1 * x1);
    CHECK(parse_polynomial("  x1 \t+ x2  # trailing comment", names) == x1 + x2);
    CHECK(parse_polynomial("x2 + x1^2", names) == x2 + x1 * x1);
}

TEST_CASE("the expression parser reports precise locations") {
    std::vector<std::string> names{"x1", "x2"};

    auto location_of = [&](const std::string& text) {
        try {
            parse_polynomial(text, names);
        } catch (const parse_error& e) {
            return std::pair<int, int>{e.line, e.col};
        }
        FAIL("expected parse_error for: ", text);
        return std::pair<int, int>{0, 0};
    };

    CHECK(location_of("1.5*x1") == std::pair<int, int>{1, 1});
    CHECK(location_of("x1 + 2.0") == std::pair<int, int>{1, 6});
    CHECK(location_of("x1 + @") == std::pair<int, int>{1, 6});
    CHECK(location_of("2x1") == std::pair<int, int>{1, 2});
    CHECK(location_of("x1^") == std::pair<int, int>{1, 4});
    CHECK(location_of("1/0") == std::pair<int, int>{1, 3});
    CHECK(location_of("x1 * ") == std::pair<int, int>{1, 6});
    CHECK(location_of("y1") == std::pair<int, int>{1, 1}); // undeclared

    try {
        parse_polynomial("1.5*x1", names);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("p/q") != std::string::npos);
    }
}

TEST_CASE("system files parse with order-independent equations") {
    ParsedSystem sys = parse_system("vars a b\n\nb' = a^2 # quadratic drive\na' = -b\n");
    CHECK(sys.names == std::vector<std::string>{"a", "b"});
    Polynomial a = Polynomial::variable(2, 0);
    Polynomial b = Polynomial::variable(2, 1);
    CHECK(sys.field == VectorField(2, {-b, a * a}));

    ParsedSystem tiny = parse_system("vars x\nx' = 0");
    CHECK(tiny.field == VectorField(1, {Polynomial::zero(1)}));
}

TEST_CASE("system files reject structural mistakes with locations") {
    auto location_of = [&](const std::string& text) {
        try {
            parse_system(text);
        } catch (const parse_error& e) {
            return std::pair<int, int>{e.line, e.col};
        }
        FAIL("expected parse_error for: ", text);
        return std::pair<int, int>{0, 0};
    };

    CHECK(location_of("vars x x\nx' = 0\n") == std::pair<int, int>{1, 8});
    CHECK(location_of("vars x\nx' = 0\nx' = x\n") == std::pair<int, int>{3, 1});
    CHECK(location_of("vars x y\nx' = 0\n") == std::pair<int, int>{3, 1}); // y missing
    CHECK(location_of("vars x\ny' = 0\n") == std::pair<int, int>{2, 1});
    CHECK(location_of("vars x\nx' = z\n") == std::pair<int, int>{2, 6});
    CHECK(location_of("vars x\nx = 0\n") == std::pair<int, int>{2, 3}); // missing prime
    CHECK(location_of("x' = 0\n") == std::pair<int, int>{1, 1});        // missing vars
}

TEST_CASE("the worked four-state system parses to the documented field") {
    const Fixture* fx = find_fixture("example2");
    REQUIRE(fx != nullptr);
    ParsedSystem sys = parse_system(fx->contents);
    REQUIRE(sys.field.n() == 4);
    Polynomial x1 = Polynomial::variable(4, 0);
    Polynomial x3 = Polynomial::variable(4, 2);
    CHECK(sys.field[3] == x1 * x1 + x3 * x3);
    CHECK(check_wdg(sys.field).satisfied);
}

TEST_CASE("the six-state encoding parses to the documented field") {
    const Fixture* fx = find_fixture("sinh6");
    REQUIRE(fx != nullptr);
    ParsedSystem sys = parse_system(fx->contents);
    CHECK(sys.names == std::vector<std::string>{"z1", "z2", "q1", "q2", "r1", "r2"});
    CHECK(sys.field == corpus::sixvar_field());
}

TEST_CASE("automorphism files apply statements first to last") {
    ParsedAutomorphism shear = parse_automorphism("vars x1 x2\nelem x2 : -1*x1^2\n");
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);
    CHECK(shear.phi.forward() == PolyMap(2, {x1, x2 - x1 * x1}));
    CHECK(shear.phi.inverse() == PolyMap(2, {x1, x2 + x1 * x1}));

    ParsedAutomorphism ident = parse_automorphism("vars x1 x2\n");
    CHECK(ident.phi.forward() == identity_map(2));

    ParsedAutomorphism both = parse_automorphism(
        "vars x1 x2\naffine [[0, 1], [1, 0]] ; [2, -1/3]\nelem x2 : x1^3\n");
    RatMatrix swap = RatMatrix::permutation({1, 0});
    TameAutomorphism manual(
        2, {make_affine(swap, RatVector{Rational(2), Rational(-1, 3)}),
            make_elementary(2, 1, x1 * x1 * x1)});
    CHECK(both.phi.forward() == manual.forward());
    CHECK(both.phi.inverse() == manual.inverse());
}

TEST_CASE("automorphism files propagate generator validity failures") {
    CHECK_THROWS_AS(parse_automorphism("vars x1 x2\naffine [[1, 1], [1, 1]] ; [0, 0]\n"),
                    singular_matrix_error);
    CHECK_THROWS_AS(parse_automorphism("vars x1 x2\nelem x2 : x1\n"), validity_error);
    CHECK_THROWS_AS(parse_automorphism("vars x1 x2\nelem x2 : x2^2\n"), validity_error);
    CHECK_THROWS_AS(parse_automorphism("vars x1 x2\nshear x2 : x1^2\n"), parse_error);
    CHECK_THROWS_AS(parse_automorphism("vars x1 x2\naffine [[1, 0], [0, 1]] ; [0]\n"),
                    parse_error);
}

TEST_CASE("polynomial map files parse components in order") {
    ParsedPolyMap pm = parse_polymap("vars x1 x2\nw = x1^2\nv = x1*x2 - 1/2\n");
    CHECK(pm.in_names == std::vector<std::string>{"x1", "x2"});
    CHECK(pm.out_names == std::vector<std::string>{"w", "v"});
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);
    CHECK(pm.map == PolyMap(2, {x1 * x1, x1 * x2 - Polynomial::constant(2, Rational(1, 2))}));
}

TEST_CASE("rendering then parsing is the identity on random systems") {
    TestRng rng(0x7a005706);
    for (int iter = 0; iter < 25; ++iter) {
        int n = static_cast<int>(rng.range(1, 4));
        VectorField f = corpus::random_field(rng, n, 3, 4);
        std::vector<std::string> names = default_names(n);
        ParsedSystem back = parse_system(render_system(f, names));
        CHECK(back.field == f);
        CHECK(back.names == names);
    }
}

TEST_CASE("parsing then rendering reproduces every bundled fixture byte for byte") {
    for (const Fixture& fx : bundled_fixtures()) {
        if (fx.filename.find(".sys") == std::string::npos)
            continue;
        ParsedSystem sys = parse_system(fx.contents);
        CHECK(render_system(sys.field, sys.names) == fx.contents);
    }
}

TEST_CASE("bundled fixtures byte-match the files shipped in the repository") {
    for (const Fixture& fx : bundled_fixtures()) {
        std::string disk = slurp(std::string(SUPERLIN_FIXTURE_DIR) + "/" + fx.filename);
        CHECK(disk == fx.contents);
    }
    CHECK(bundled_fixtures().size() == 5);
    CHECK(find_fixture("no-such-fixture") == nullptr);
}

TEST_CASE("lift JSON round-trips bit for bit") {
    const Fixture* fx = find_fixture("intro-lift");
    REQUIRE(fx != nullptr);
    NamedLift named = lift_from_json(fx->contents);
    CHECK(named.lift.n == 2);
    CHECK(named.lift.k == 1);
    CHECK(named.names == std::vector<std::string>{"x1", "x2"});
    Polynomial x1 = Polynomial::variable(2, 0);
    CHECK(named.lift.observables[0] == x1 * x1);
    CHECK(lift_to_json(named.lift, named.names) == fx->contents);
    CHECK(check_lift_symbolic(corpus::intro_field(), named.lift));
}

TEST_CASE("lift JSON survives a transported lift with fractional entries") {
    VectorField f = corpus::intro_field();
    ClosureOutcome closed = scalar_closure(f);
    REQUIRE(closed.stabilized());
    RatMatrix p({{Rational(1, 3), Rational(0)}, {Rational(1), Rational(-2)}});
    Lift moved = translate_lift(conjugate_lift(*closed.lift, p),
                                RatVector{Rational(2, 7), Rational(0)});
    std::string text = lift_to_json(moved, {"u", "v"});
    NamedLift back = lift_from_json(text);
    CHECK(back.lift.a == moved.a);
    CHECK(back.lift.observables == moved.observables);
    CHECK(back.lift.provenance == moved.provenance);
    CHECK(lift_to_json(back.lift, back.names) == text);
}

TEST_CASE("lift JSON rejects malformed documents") {
    const std::string good = find_fixture("intro-lift")->contents;

    CHECK_THROWS_AS(lift_from_json("{"), validity_error);
    CHECK_THROWS_AS(lift_from_json("[]"), validity_error);

    nlohmann::ordered_json j = nlohmann::ordered_json::parse(good);
    j["format"] = 2;
    CHECK_THROWS_AS(lift_from_json(j.dump()), validity_error);

    j = nlohmann::ordered_json::parse(good);
    j.erase("A");
    CHECK_THROWS_AS(lift_from_json(j.dump()), validity_error);

    j = nlohmann::ordered_json::parse(good);
    j["A"][0][0] = "0.5";
    CHECK_THROWS_AS(lift_from_json(j.dump()), validity_error);

    j = nlohmann::ordered_json::parse(good);
    j["A"][0].erase(2);
    CHECK_THROWS_AS(lift_from_json(j.dump()), validity_error);

    j = nlohmann::ordered_json::parse(good);
    j["generators"][2] = "x2^2";
    CHECK_THROWS_AS(lift_from_json(j.dump()), validity_error);

    j = nlohmann::ordered_json::parse(good);
    j["observables"][0] = "x1^"; // cut off mid-expression
    CHECK_THROWS_AS(lift_from_json(j.dump()), validity_error);
}

TEST_CASE("condition reports serialize with verdict and cycle detail") {
    ParsedSystem sys = parse_system(find_fixture("example2")->contents);
    WdgReport report = check_wdg(sys.field);
    std::string text = wdg_report_to_json(report, sys.names);
    auto j = nlohmann::ordered_json::parse(text);
    CHECK(j["format"] == 1);
    CHECK(j["satisfied"] == true);
    CHECK(j["offending"].is_null());
    CHECK(j["edges"].size() == report.graph.edges.size());
    CHECK(j["cycles"].size() == report.cycles.size());
    for (const auto& c : j["cycles"])
        CHECK(c["constant"] == true);

    ParsedSystem bad = parse_system(find_fixture("counterexample")->contents);
    WdgReport worse = check_wdg(bad.field);
    auto jb = nlohmann::ordered_json::parse(wdg_report_to_json(worse, bad.names));
    CHECK(jb["satisfied"] == false);
    CHECK(jb["offending"].is_object());
    CHECK(jb["offending"]["constant"] == false);
}

TEST_CASE("closure outcomes and profiles serialize deterministically") {
    ClosureOutcome diverging = scalar_closure(corpus::sixvar_field());
    REQUIRE(!diverging.stabilized());
    auto j = nlohmann::ordered_json::parse(closure_outcome_to_json(diverging));
    CHECK(j["format"] == 1);
    CHECK(j["status"] == "diverging");
    CHECK(j["dims"].size() == diverging.dims.size());

    ClosureOutcome fine = scalar_closure(corpus::intro_field());
    auto js = nlohmann::ordered_json::parse(closure_outcome_to_json(fine));
    CHECK(js["status"] == "stabilized");

    auto profile = divergence_profile(corpus::sixvar_field(), 4, 2);
    auto jp = nlohmann::ordered_json::parse(profile_to_json(profile, "q1"));
    CHECK(jp["watch"] == "q1");
    REQUIRE(jp["profile"].size() == 5);
    CHECK(jp["profile"][4]["leading_degree"] == 5);
}

TEST_CASE("verification reports serialize their breakdown") {
    VectorField f = corpus::intro_field();
    ClosureOutcome closed = scalar_closure(f);
    VerificationReport report =
        verify_lift_numeric(f, *closed.lift, {{1.0, 0.0}, {0.0, 1.0}}, 1.0, 200, 1e-6);
    auto j = nlohmann::ordered_json::parse(verification_report_to_json(report));
    CHECK(j["format"] == 1);
    CHECK(j["passed"] == true);
    CHECK(j["steps"] == 200);
    REQUIRE(j["per_x0"].size() == 2);
    CHECK(j["per_x0"][1]["x0"] == nlohmann::ordered_json::array({0.0, 1.0}));
}
