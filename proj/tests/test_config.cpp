#include <doctest.h>

#include <cmath>
#include <string>

#include "cpt/config.hpp"
#include "cpt/errors.hpp"

using namespace cpt;

TEST_CASE("minimal config resolves every documented default") {
    Scenario s = parse_config("kind = profile\n");
    CHECK(s.kind == ScenarioKind::profile);
    CHECK(s.out_prefix == "run");
    CHECK(s.grid.wavelengths == 1);
    CHECK(s.grid.samples == 720);
    CHECK(s.fields.r_form);
    CHECK(s.fields.r == 16.0);
    CHECK(s.fields.omega_p == 1.0);
    CHECK(s.fields.omega_s == 4.0);
    CHECK(s.fields.delta == 0.0);
    CHECK(s.fields.gamma == 5.0);
    CHECK(s.fields.branch_to_2 == 0.5);
    CHECK(s.momentum.p_min == -12.0);
    CHECK(s.momentum.p_max == 12.0);
    CHECK(s.momentum.p_step == 0.05);
    CHECK(s.momentum.mode == AmplitudeMode::as_written);
    CHECK(s.scales.margin == 0.1);
    CHECK(s.scales.p_max_order == 10);
    CHECK(s.scales.recoil == doctest::Approx(2 * pi * 0.004).epsilon(1e-15));
    CHECK(s.scales.rabi_reference == doctest::Approx(2 * pi * 10).epsilon(1e-15));
}

TEST_CASE("explicit keys override defaults") {
    Scenario s = parse_config(
        "kind = profile\n"
        "out = data/demo\n"
        "[grid]\n"
        "wavelengths = 2\n"
        "samples = 1440\n"
        "[fields]\n"
        "R = 100\n"
        "gamma = 3\n");
    CHECK(s.out_prefix == "data/demo");
    CHECK(s.grid.wavelengths == 2);
    CHECK(s.grid.samples == 1440);
    CHECK(s.fields.r == 100.0);
    CHECK(s.fields.omega_s == 10.0);
    CHECK(s.fields.gamma == 3.0);
}

TEST_CASE("comments, blank lines, spacing are tolerated") {
    Scenario s = parse_config(
        "# leading comment\n"
        "\n"
        "kind = momentum   # trailing comment\n"
        "   [fields]   \n"
        "  R   =   4  \n"
        "\n");
    CHECK(s.kind == ScenarioKind::momentum);
    CHECK(s.fields.r == 4.0);
}

TEST_CASE("omega pair form resolves the ratio") {
    Scenario s = parse_config(
        "kind = profile\n"
        "[fields]\n"
        "omega_p = 2\n"
        "omega_s = 4\n");
    CHECK_FALSE(s.fields.r_form);
    CHECK(s.fields.r == doctest::Approx(4.0).epsilon(1e-15));
    std::string rendered = render_config(s);
    CHECK(rendered.find("omega_p = 2") != std::string::npos);
    CHECK(rendered.find("\nR = ") == std::string::npos);
}

TEST_CASE("render/parse round trip is exact") {
    const char* texts[] = {
        "kind = profile\n",
        "kind = momentum\n[momentum]\np_min = -8\np_max = 8\np_step = 0.1\nmode = "
        "sqrt_mode\n",
        "kind = multizone\n[multizone]\nzones = 4\n[fields]\nR = 25\n",
        "kind = profile\n[fields]\nomega_p = 0.5\nomega_s = 3\ndelta = -2\n",
        "kind = dynamics\n[fields]\nR = 4\ndelta = 20\n[probe]\nshape = gaussian\n"
        "[control]\nshape = gaussian\n[dynamics]\nkx = 0.5\nt_end = 300\n",
        "kind = dynamics\n[dynamics]\ndt = 0.001\nsteady_window = 15\n",
        "kind = sweep\n[sweep]\nkind = momentum\nparameter = R\nvalues = 0, 16, 100, "
        "1600\n",
        "kind = sweep\n[sweep]\nkind = multizone\nparameter = zones\nvalues = 1 2 4\n"
        "[fields]\nR = 16\n",
        "kind = sweep\n[sweep]\nkind = profile\nparameter = R\nvalues = 0.5, 1, 2\n"
        "[grid]\nsamples = 720\n",
    };
    for (const char* text : texts) {
        Scenario s = parse_config(text);
        Scenario again = parse_config(render_config(s));
        CHECK(again == s);
        // and rendering is a fixed point
        CHECK(render_config(again) == render_config(s));
    }
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_config("kind = profile\n[grid\nsamples = 720\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 1);
    }
    try {
        parse_config("kind = profile\n  junk line\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
    CHECK_THROWS_AS(parse_config("kind = profile\nkind = momentum\n"), ParseError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[fields]\nR =\n"), ParseError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[]\n"), ParseError);
    CHECK_THROWS_AS(parse_config("= 4\n"), ParseError);
}

TEST_CASE("schema violations name the offending key") {
    CHECK_THROWS_AS(parse_config(""), ValidationError);
    CHECK_THROWS_AS(parse_config("out = x\n"), ValidationError);

    try {
        parse_config("kind = profile\n[grid]\nsample = 720\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("grid.sample") != std::string::npos);
    }
    try {
        parse_config("kind = profile\n[fields]\nR = -1\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("fields.R") != std::string::npos);
    }
    // sections that do not belong to the kind
    CHECK_THROWS_AS(parse_config("kind = profile\n[probe]\nomega0 = 1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = dynamics\n[grid]\nsamples = 720\n"),
                    ValidationError);
    // value type mismatches
    CHECK_THROWS_AS(parse_config("kind = profile\n[grid]\nsamples = many\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = banana\n"), ValidationError);
}

TEST_CASE("range checks") {
    CHECK_THROWS_AS(parse_config("kind = profile\n[grid]\nsamples = 8\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[grid]\nwavelengths = 0\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[fields]\nbranch_to_2 = 1.5\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[fields]\ngamma = -1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[scales]\nmargin = 0\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[momentum]\np_step = 0\n"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = profile\n[momentum]\np_min = 3\np_max = -3\n"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = profile\n[momentum]\np_min = 0\np_max = 1\np_step = 0.3\n"),
        ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[momentum]\nmode = fancy\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = multizone\n"), ValidationError); // zones required
    CHECK_THROWS_AS(parse_config("kind = multizone\n[multizone]\nzones = 0\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[fields]\nR = 1\nomega_p = 1\n"
                                 "omega_s = 1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[fields]\nomega_p = 1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config("kind = profile\n[fields]\nomega_p = 0\nomega_s = 1\n"),
                    ValidationError);
}

TEST_CASE("sweep validation") {
    CHECK_THROWS_AS(parse_config("kind = sweep\n"), ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = sweep\n[sweep]\nkind = dynamics\nparameter = R\nvalues = 1\n"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = sweep\n[sweep]\nkind = momentum\nparameter = zones\n"
                     "values = 1, 2\n"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = sweep\n[sweep]\nkind = momentum\nparameter = R\n"
                     "values = 4, 4\n"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = sweep\n[sweep]\nkind = multizone\nparameter = zones\n"
                     "values = 1.5, 2\n"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config("kind = sweep\n[sweep]\nkind = momentum\nparameter = R\n"
                     "values = -1\n"),
        ValidationError);
    // zones sweeps must not also pin a zone count
    CHECK_THROWS_AS(
        parse_config("kind = sweep\n[sweep]\nkind = multizone\nparameter = zones\n"
                     "values = 1, 2\n[multizone]\nzones = 4\n"),
        ValidationError);

    Scenario s = parse_config(
        "kind = sweep\n[sweep]\nkind = multizone\nparameter = R\nvalues = 9, 16\n"
        "[multizone]\nzones = 2\n");
    CHECK(s.sweep.member_kind == ScenarioKind::multizone);
    CHECK(s.sweep.parameter == SweepParameter::finesse);
    CHECK(s.zones == 2);
    REQUIRE(s.sweep.values.size() == 2);
    CHECK(s.sweep.values[0] == 9.0);
}

TEST_CASE("dynamics stepping resolution") {
    Scenario s = parse_config("kind = dynamics\n");
    // defaults: R = 16 -> control peak 4, gamma 5 -> bound 0.002, t_end 200
    CHECK(s.dynamics.t_end == 200.0);
    CHECK(s.dynamics.steady_window == 20.0);
    CHECK(s.dynamics.dt == 0.002);
    CHECK(s.dynamics.record_stride == 50);
    CHECK(s.probe.omega0 == 1.0);
    CHECK(s.control.omega0 == 4.0);
    CHECK(s.probe.shape == PulseShape::flattop);
    CHECK(s.probe.t2 > s.dynamics.t_end); // default plateau outlives the run
    CHECK_NOTHROW(s.make_evolution_config());
    CHECK_NOTHROW(s.probe.to_envelope());
    CHECK_NOTHROW(s.control.to_envelope());

    Scenario fine = parse_config("kind = dynamics\n[dynamics]\ndt = 0.001\n");
    CHECK(fine.dynamics.dt == 0.001);
    CHECK(fine.dynamics.record_stride == 100);

    // explicit dt above the stability bound
    CHECK_THROWS_AS(parse_config("kind = dynamics\n[dynamics]\ndt = 0.1\n"),
                    ValidationError);
    // stride must divide the step count
    CHECK_THROWS_AS(
        parse_config("kind = dynamics\n[dynamics]\ndt = 0.002\nrecord_stride = 30000\n"),
        ValidationError);
    // window vs t_end invariant
    CHECK_THROWS_AS(
        parse_config("kind = dynamics\n[dynamics]\nt_end = 50\nsteady_window = 10\n"),
        ValidationError);
    // gaussian keys rejected for flattop envelope
    CHECK_THROWS_AS(parse_config("kind = dynamics\n[probe]\nt0 = 10\n"), ValidationError);
    Scenario gsn = parse_config("kind = dynamics\n[probe]\nshape = gaussian\nt0 = 10\n");
    CHECK(gsn.probe.t0 == 10.0);
    CHECK(gsn.probe.w == doctest::Approx(200.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("momentum grid construction hits integers exactly") {
    Scenario s = parse_config("kind = momentum\n");
    auto p = s.momentum.build_p_grid();
    REQUIRE(p.size() == 481);
    CHECK(p[0] == -12.0);
    CHECK(p[240] == 0.0);
    CHECK(p[280] == 2.0);
    CHECK(p[480] == 12.0);
    for (size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);

    // a step that is not a whole number of hundredths still works
    Scenario odd = parse_config(
        "kind = momentum\n[momentum]\np_min = 0\np_max = 1\np_step = 0.125\n");
    auto q = odd.momentum.build_p_grid();
    REQUIRE(q.size() == 9);
    CHECK(q[0] == 0.0);
    CHECK(q[8] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("scenario helpers build validated objects") {
    Scenario s = parse_config("kind = profile\n[fields]\nR = 4\ndelta = 20\n");
    LambdaSystem sys = s.make_system();
    CHECK(sys.finesse() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sys.delta == 20.0);
    CHECK(sys.decay.gamma_total == 5.0);
    PhysicalScales sc = s.make_scales();
    CHECK(sc.recoil_frequency == doctest::Approx(2 * pi * 0.004).epsilon(1e-15));
}
