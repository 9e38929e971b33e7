#ifndef CPT_CONFIG_HPP
#define CPT_CONFIG_HPP

#include <string>
#include <vector>

#include "cpt/core.hpp"
#include "cpt/dynamics.hpp"
#include "cpt/momentum.hpp"

namespace cpt {

// Scenario files use a line-oriented format: optional top-level keys, then
// [section] headers with key = value lines. '#' starts a comment, blank
// lines are ignored. parse_config fills every optional key with its
// documented default, so the returned Scenario is fully resolved and
// render_config(parse_config(text)) reproduces an equivalent scenario.

enum class ScenarioKind { profile, dynamics, momentum, multizone, sweep };
enum class SweepParameter { finesse, zones };

const char* kind_name(ScenarioKind kind);
const char* sweep_parameter_name(SweepParameter parameter);
const char* amplitude_mode_name(AmplitudeMode mode);
const char* pulse_shape_name(PulseShape shape);

struct GridSpec {
    int wavelengths = 1;
    int samples = 720; // per wavelength; scenario layer demands >= 16
    bool operator==(const GridSpec&) const = default;
};

struct FieldSpec {
    // Couplings are configured either as the intensity ratio R (probe
    // normalized to 1) or as an explicit omega_p / omega_s pair; both views
    // are resolved after parsing and r_form records which one renders back.
    bool r_form = true;
    double r = 16.0;
    double omega_p = 1.0;
    double omega_s = 4.0;
    double delta = 0.0;
    double gamma = 5.0;
    double branch_to_2 = 0.5;
    bool operator==(const FieldSpec&) const = default;
};

struct EnvelopeSpec {
    PulseShape shape = PulseShape::flattop;
    double omega0 = 0.0;
    double t0 = 0.0; // gaussian center
    double w = 1.0;  // gaussian 1/e half width
    double t1 = 0.0; // flattop switch-on center
    double r1 = 1.0; // flattop rise time
    double t2 = 0.0; // flattop switch-off center
    double r2 = 1.0; // flattop fall time
    bool operator==(const EnvelopeSpec&) const = default;
    PulseEnvelope to_envelope() const;
};

struct DynamicsSpec {
    double kx = pi / 4;
    double dt = 0.0;                 // resolved from the stability bound when omitted
    double t_end = 200.0;
    double steady_tolerance = 1e-6;
    double steady_window = 20.0; // defaults to t_end / 10
    long long record_stride = 0; // resolved so ~2000 samples are kept
    bool operator==(const DynamicsSpec&) const = default;
};

struct MomentumSpec {
    double p_min = -12.0;
    double p_max = 12.0;
    double p_step = 0.05;
    AmplitudeMode mode = AmplitudeMode::as_written;
    bool operator==(const MomentumSpec&) const = default;
    // Inclusive grid p_min, p_min+p_step, ..., p_max. When the endpoints and
    // step are exact multiples of 0.01 the nodes are built from integer
    // hundredths so that nominally integer p values land exactly on the
    // integers (the transform nulls there are sharp).
    std::vector<double> build_p_grid() const;
};

struct ScalesSpec {
    double recoil = 2 * pi * 0.004;      // rad/us (4 kHz recoil shift)
    double rabi_reference = 2 * pi * 10; // rad/us (10 MHz reference coupling)
    double margin = 0.1;
    int p_max_order = 10;
    bool operator==(const ScalesSpec&) const = default;
};

struct SweepSpec {
    ScenarioKind member_kind = ScenarioKind::momentum;
    SweepParameter parameter = SweepParameter::finesse;
    std::vector<double> values;
    bool operator==(const SweepSpec&) const = default;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::profile;
    std::string out_prefix = "run";
    GridSpec grid;
    FieldSpec fields;
    ScalesSpec scales;
    MomentumSpec momentum;
    EnvelopeSpec probe;
    EnvelopeSpec control;
    DynamicsSpec dynamics;
    int zones = 1;
    SweepSpec sweep;
    bool operator==(const Scenario&) const = default;

    LambdaSystem make_system() const;
    PhysicalScales make_scales() const;
    EvolutionConfig make_evolution_config() const;
};

// Throws ParseError (with 1-based line/column) on malformed text and
// ValidationError naming the offending key when a value is out of range,
// unknown, missing, or inconsistent with the scenario kind.
Scenario parse_config(const std::string& text);

// Canonical serialization; parse_config(render_config(s)) == s.
std::string render_config(const Scenario& s);

} // namespace cpt

#endif
