#include "cpt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cpt/errors.hpp"
#include "cpt/format.hpp"

namespace cpt {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string qualified(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

struct RawEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
    int column = 0;
    bool used = false;
};

// Line-oriented tokenizer. Columns are 1-based and point at the first
// non-blank character of the offending line.
std::vector<RawEntry> tokenize(const std::string& text) {
    std::vector<RawEntry> entries;
    std::string section;
    std::set<std::pair<std::string, std::string>> seen;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line =
            nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string body = trim(line);
        if (!body.empty()) {
            int col = static_cast<int>(line.find_first_not_of(" \t\r")) + 1;
            if (body.front() == '[') {
                if (body.size() < 3 || body.back() != ']')
                    throw ParseError("malformed section header", line_no, col);
                section = trim(body.substr(1, body.size() - 2));
                if (section.empty())
                    throw ParseError("empty section name", line_no, col);
            } else {
                size_t eq = body.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected 'key = value'", line_no, col);
                std::string key = trim(body.substr(0, eq));
                std::string value = trim(body.substr(eq + 1));
                if (key.empty()) throw ParseError("empty key", line_no, col);
                if (value.empty())
                    throw ParseError("empty value for '" + key + "'", line_no, col);
                if (!seen.insert({section, key}).second)
                    throw ParseError("duplicate key '" + qualified(section, key) + "'",
                                     line_no, col);
                entries.push_back({section, key, value, line_no, col, false});
            }
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return entries;
}

class EntrySet {
  public:
    explicit EntrySet(std::vector<RawEntry> entries) : entries_(std::move(entries)) {}

    const RawEntry* find(const std::string& section, const std::string& key) {
        for (auto& e : entries_)
            if (e.section == section && e.key == key) {
                e.used = true;
                return &e;
            }
        return nullptr;
    }

    // Every key a scenario kind does not consume is a schema violation.
    void reject_unused(ScenarioKind kind) const {
        for (const auto& e : entries_)
            if (!e.used)
                throw ValidationError("unrecognized key '" + qualified(e.section, e.key) +
                                      "' for scenario kind '" + std::string(kind_name(kind)) +
                                      "'");
    }

  private:
    std::vector<RawEntry> entries_;
};

[[noreturn]] void fail_key(const std::string& section, const std::string& key,
                           const std::string& what) {
    throw ValidationError("key '" + qualified(section, key) + "': " + what);
}

double parse_double_value(const RawEntry& e) {
    double out = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc() || res.ptr != last)
        fail_key(e.section, e.key, "expected a number, got '" + e.value + "'");
    return out;
}

long long parse_int_value(const RawEntry& e) {
    long long out = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc() || res.ptr != last)
        fail_key(e.section, e.key, "expected an integer, got '" + e.value + "'");
    return out;
}

double get_double(EntrySet& es, const std::string& section, const std::string& key,
                  double fallback) {
    const RawEntry* e = es.find(section, key);
    return e ? parse_double_value(*e) : fallback;
}

long long get_int(EntrySet& es, const std::string& section, const std::string& key,
                  long long fallback) {
    const RawEntry* e = es.find(section, key);
    return e ? parse_int_value(*e) : fallback;
}

ScenarioKind kind_from_name(const RawEntry& e) {
    if (e.value == "profile") return ScenarioKind::profile;
    if (e.value == "dynamics") return ScenarioKind::dynamics;
    if (e.value == "momentum") return ScenarioKind::momentum;
    if (e.value == "multizone") return ScenarioKind::multizone;
    if (e.value == "sweep") return ScenarioKind::sweep;
    fail_key(e.section, e.key,
             "expected one of profile, dynamics, momentum, multizone, sweep; got '" +
                 e.value + "'");
}

std::vector<double> parse_value_list(const RawEntry& e) {
    std::string blanked = e.value;
    std::replace(blanked.begin(), blanked.end(), ',', ' ');
    std::istringstream in(blanked);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            fail_key(e.section, e.key, "expected numbers, got '" + tok + "'");
        if (!std::isfinite(v)) fail_key(e.section, e.key, "values must be finite");
        out.push_back(v);
    }
    return out;
}

void require_finite(const std::string& section, const std::string& key, double v) {
    if (!std::isfinite(v)) fail_key(section, key, "must be finite");
}

// Picks the number of steps and the recording stride so that the stride
// divides the step count, roughly 2000 states get stored, and at least two
// samples fall inside the steady-state window.
void resolve_time_stepping(Scenario& s, bool dt_given, bool stride_given) {
    DynamicsSpec& d = s.dynamics;
    double bound = 0.01 / std::max({s.probe.omega0, s.control.omega0,
                                    std::fabs(s.fields.delta), s.fields.gamma, 1.0});
    const long long target_samples = 2000;
    long long steps = 0;
    if (!dt_given) {
        auto steps0 =
            static_cast<long long>(std::ceil(d.t_end / bound - 1e-12));
        steps0 = std::max(steps0, target_samples);
        long long stride =
            stride_given ? d.record_stride : (steps0 + target_samples - 1) / target_samples;
        steps = ((steps0 + stride - 1) / stride) * stride;
        d.dt = d.t_end / static_cast<double>(steps);
        if (!stride_given) d.record_stride = stride;
    } else {
        if (d.dt > bound * (1.0 + 1e-12))
            fail_key("dynamics", "dt",
                     "must be at most 0.01 divided by the largest rate (here " +
                         format_g17(bound) + ")");
        double raw = d.t_end / d.dt;
        steps = std::llround(raw);
        if (steps < 1 || std::fabs(raw - static_cast<double>(steps)) > 1e-9 * raw)
            fail_key("dynamics", "dt", "t_end must be an integer number of steps");
        if (!stride_given) {
            long long want = (steps + target_samples - 1) / target_samples;
            long long stride = want;
            while (stride > 1 && steps % stride != 0) --stride;
            d.record_stride = stride;
        }
    }
    if (d.record_stride < 1) fail_key("dynamics", "record_stride", "must be >= 1");
    if (steps % d.record_stride != 0)
        fail_key("dynamics", "record_stride", "must divide the step count " +
                                                  std::to_string(steps));
    long long samples = steps / d.record_stride;
    if (samples + 1 > 5000000)
        fail_key("dynamics", "record_stride",
                 "would store " + std::to_string(samples + 1) + " states; reduce t_end/dt");
    double sample_dt = d.dt * static_cast<double>(d.record_stride);
    if (sample_dt > d.steady_window / 2 * (1.0 + 1e-12))
        fail_key("dynamics", "record_stride",
                 "sampling too coarse for steady_window (need >= 2 samples per window)");
}

} // namespace

const char* kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::profile: return "profile";
        case ScenarioKind::dynamics: return "dynamics";
        case ScenarioKind::momentum: return "momentum";
        case ScenarioKind::multizone: return "multizone";
        case ScenarioKind::sweep: return "sweep";
    }
    return "?";
}

const char* sweep_parameter_name(SweepParameter parameter) {
    return parameter == SweepParameter::finesse ? "R" : "zones";
}

const char* amplitude_mode_name(AmplitudeMode mode) {
    return mode == AmplitudeMode::as_written ? "as_written" : "sqrt_mode";
}

const char* pulse_shape_name(PulseShape shape) {
    return shape == PulseShape::gaussian ? "gaussian" : "flattop";
}

PulseEnvelope EnvelopeSpec::to_envelope() const {
    if (shape == PulseShape::gaussian) return PulseEnvelope::gaussian(omega0, t0, w);
    return PulseEnvelope::flattop(omega0, t1, r1, t2, r2);
}

std::vector<double> MomentumSpec::build_p_grid() const {
    double span = p_max - p_min;
    auto n = std::llround(span / p_step);
    if (n < 1 || std::fabs(span - static_cast<double>(n) * p_step) > 1e-9 * p_step)
        throw ValidationError("key 'momentum.p_step': p range must be a whole number of steps");
    std::vector<double> p(static_cast<size_t>(n) + 1);
    double min100 = p_min * 100.0;
    double step100 = p_step * 100.0;
    auto m = std::llround(min100);
    auto st = std::llround(step100);
    if (std::fabs(min100 - static_cast<double>(m)) <= 1e-9 &&
        std::fabs(step100 - static_cast<double>(st)) <= 1e-9 && st >= 1) {
        // Hundredth-exact grid: nominally integer p values (where the
        // transform has exact nulls) land on the integers to the last bit.
        for (long long k = 0; k <= n; ++k)
            p[static_cast<size_t>(k)] = static_cast<double>(m + k * st) / 100.0;
    } else {
        for (long long k = 0; k <= n; ++k)
            p[static_cast<size_t>(k)] = p_min + static_cast<double>(k) * p_step;
    }
    return p;
}

LambdaSystem Scenario::make_system() const {
    return LambdaSystem(Complex(fields.omega_p, 0.0), Complex(fields.omega_s, 0.0),
                        fields.delta, DecayModel(fields.gamma, fields.branch_to_2));
}

PhysicalScales Scenario::make_scales() const {
    return PhysicalScales(scales.recoil, scales.rabi_reference);
}

EvolutionConfig Scenario::make_evolution_config() const {
    return EvolutionConfig(dynamics.dt, dynamics.t_end, dynamics.steady_tolerance,
                           dynamics.steady_window, dynamics.record_stride);
}

Scenario parse_config(const std::string& text) {
    EntrySet es(tokenize(text));
    Scenario s;

    const RawEntry* kind_e = es.find("", "kind");
    if (!kind_e) throw ValidationError("missing required key 'kind'");
    s.kind = kind_from_name(*kind_e);

    if (const RawEntry* out_e = es.find("", "out")) s.out_prefix = out_e->value;

    // The member kind decides which sections are meaningful below.
    ScenarioKind member = s.kind;
    bool sweep_over_zones = false;
    if (s.kind == ScenarioKind::sweep) {
        const RawEntry* mk = es.find("sweep", "kind");
        if (!mk) throw ValidationError("missing required key 'sweep.kind'");
        s.sweep.member_kind = kind_from_name(*mk);
        if (s.sweep.member_kind == ScenarioKind::sweep ||
            s.sweep.member_kind == ScenarioKind::dynamics)
            fail_key("sweep", "kind", "members must be profile, momentum, or multizone");
        member = s.sweep.member_kind;

        const RawEntry* pe = es.find("sweep", "parameter");
        if (!pe) throw ValidationError("missing required key 'sweep.parameter'");
        if (pe->value == "R")
            s.sweep.parameter = SweepParameter::finesse;
        else if (pe->value == "zones")
            s.sweep.parameter = SweepParameter::zones;
        else
            fail_key("sweep", "parameter", "expected R or zones, got '" + pe->value + "'");

        const RawEntry* ve = es.find("sweep", "values");
        if (!ve) throw ValidationError("missing required key 'sweep.values'");
        s.sweep.values = parse_value_list(*ve);
        if (s.sweep.values.empty()) fail_key("sweep", "values", "must list at least one value");
        if (s.sweep.values.size() > 1000) fail_key("sweep", "values", "at most 1000 values");
        for (size_t i = 0; i < s.sweep.values.size(); ++i)
            for (size_t j = i + 1; j < s.sweep.values.size(); ++j)
                if (s.sweep.values[i] == s.sweep.values[j])
                    fail_key("sweep", "values",
                             "duplicate value " + format_short(s.sweep.values[i]));
        if (s.sweep.parameter == SweepParameter::zones) {
            if (member != ScenarioKind::multizone)
                fail_key("sweep", "parameter", "zones sweeps require sweep.kind = multizone");
            sweep_over_zones = true;
            for (double v : s.sweep.values) {
                auto z = std::llround(v);
                if (std::fabs(v - static_cast<double>(z)) > 1e-9 || z < 1 || z > 64)
                    fail_key("sweep", "values", "zone counts must be integers in [1, 64]");
            }
        } else {
            for (double v : s.sweep.values)
                if (v < 0.0) fail_key("sweep", "values", "R values must be >= 0");
        }
    }

    // [fields]: R form and omega form are mutually exclusive.
    {
        const RawEntry* re = es.find("fields", "R");
        const RawEntry* pe = es.find("fields", "omega_p");
        const RawEntry* se = es.find("fields", "omega_s");
        if (re && (pe || se))
            fail_key("fields", "R", "mutually exclusive with omega_p/omega_s");
        if ((pe == nullptr) != (se == nullptr))
            throw ValidationError(
                "keys 'fields.omega_p' and 'fields.omega_s' must be given together");
        if (pe) {
            s.fields.r_form = false;
            s.fields.omega_p = parse_double_value(*pe);
            s.fields.omega_s = parse_double_value(*se);
            require_finite("fields", "omega_p", s.fields.omega_p);
            require_finite("fields", "omega_s", s.fields.omega_s);
            if (s.fields.omega_p <= 0.0) fail_key("fields", "omega_p", "must be > 0");
            if (s.fields.omega_s < 0.0) fail_key("fields", "omega_s", "must be >= 0");
            double q = s.fields.omega_s / s.fields.omega_p;
            s.fields.r = q * q;
        } else {
            s.fields.r_form = true;
            if (re) s.fields.r = parse_double_value(*re);
            require_finite("fields", "R", s.fields.r);
            if (s.fields.r < 0.0) fail_key("fields", "R", "must be >= 0");
            s.fields.omega_p = 1.0;
            s.fields.omega_s = std::sqrt(s.fields.r);
        }
        s.fields.delta = get_double(es, "fields", "delta", s.fields.delta);
        require_finite("fields", "delta", s.fields.delta);
        s.fields.gamma = get_double(es, "fields", "gamma", s.fields.gamma);
        require_finite("fields", "gamma", s.fields.gamma);
        if (s.fields.gamma < 0.0) fail_key("fields", "gamma", "must be >= 0");
        s.fields.branch_to_2 = get_double(es, "fields", "branch_to_2", s.fields.branch_to_2);
        if (!(s.fields.branch_to_2 >= 0.0 && s.fields.branch_to_2 <= 1.0))
            fail_key("fields", "branch_to_2", "must lie in [0, 1]");
    }

    // [grid]: node placement; the parser is stricter than the raw grid type.
    if (member != ScenarioKind::dynamics) {
        auto wl = get_int(es, "grid", "wavelengths", s.grid.wavelengths);
        if (wl < 1 || wl > 1000) fail_key("grid", "wavelengths", "must lie in [1, 1000]");
        auto sp = get_int(es, "grid", "samples", s.grid.samples);
        if (sp < 16 || sp > 1000000) fail_key("grid", "samples", "must lie in [16, 1000000]");
        if (wl * sp > 5000000) fail_key("grid", "samples", "grid would exceed 5e6 points");
        s.grid.wavelengths = static_cast<int>(wl);
        s.grid.samples = static_cast<int>(sp);
    }

    // [momentum]: transform grid, used by every kind that produces a profile.
    if (member != ScenarioKind::dynamics) {
        MomentumSpec& m = s.momentum;
        m.p_min = get_double(es, "momentum", "p_min", m.p_min);
        m.p_max = get_double(es, "momentum", "p_max", m.p_max);
        m.p_step = get_double(es, "momentum", "p_step", m.p_step);
        require_finite("momentum", "p_min", m.p_min);
        require_finite("momentum", "p_max", m.p_max);
        require_finite("momentum", "p_step", m.p_step);
        if (!(m.p_step > 0.0)) fail_key("momentum", "p_step", "must be > 0");
        if (!(m.p_min < m.p_max)) fail_key("momentum", "p_min", "must be < p_max");
        double span = m.p_max - m.p_min;
        auto n = std::llround(span / m.p_step);
        if (n < 1 || std::fabs(span - static_cast<double>(n) * m.p_step) > 1e-9 * m.p_step)
            fail_key("momentum", "p_step", "p range must be a whole number of steps");
        if (n + 1 > 2000000) fail_key("momentum", "p_step", "grid would exceed 2e6 points");
        if (const RawEntry* me = es.find("momentum", "mode")) {
            if (me->value == "as_written")
                m.mode = AmplitudeMode::as_written;
            else if (me->value == "sqrt_mode")
                m.mode = AmplitudeMode::sqrt_mode;
            else
                fail_key("momentum", "mode",
                         "expected as_written or sqrt_mode, got '" + me->value + "'");
        }
    }

    // [multizone]
    if (member == ScenarioKind::multizone && !sweep_over_zones) {
        const RawEntry* ze = es.find("multizone", "zones");
        if (!ze) throw ValidationError("missing required key 'multizone.zones'");
        auto z = parse_int_value(*ze);
        if (z < 1 || z > 64) fail_key("multizone", "zones", "must lie in [1, 64]");
        s.zones = static_cast<int>(z);
    }

    // [probe], [control], [dynamics]
    if (member == ScenarioKind::dynamics) {
        DynamicsSpec& d = s.dynamics;
        d.kx = get_double(es, "dynamics", "kx", d.kx);
        require_finite("dynamics", "kx", d.kx);
        d.t_end = get_double(es, "dynamics", "t_end", d.t_end);
        require_finite("dynamics", "t_end", d.t_end);
        if (!(d.t_end > 0.0 && d.t_end <= 1e7))
            fail_key("dynamics", "t_end", "must lie in (0, 1e7]");
        d.steady_tolerance = get_double(es, "dynamics", "steady_tolerance", d.steady_tolerance);
        if (!(d.steady_tolerance > 0.0) || !std::isfinite(d.steady_tolerance))
            fail_key("dynamics", "steady_tolerance", "must be > 0");
        d.steady_window = get_double(es, "dynamics", "steady_window", d.t_end / 10.0);
        if (!(d.steady_window > 0.0) || !std::isfinite(d.steady_window))
            fail_key("dynamics", "steady_window", "must be > 0");
        if (d.t_end < 10.0 * d.steady_window * (1.0 - 1e-12))
            fail_key("dynamics", "steady_window", "t_end must be >= 10 * steady_window");

        auto parse_envelope = [&](const std::string& sec, EnvelopeSpec& env,
                                  double default_omega0) {
            if (const RawEntry* se = es.find(sec, "shape")) {
                if (se->value == "gaussian")
                    env.shape = PulseShape::gaussian;
                else if (se->value == "flattop")
                    env.shape = PulseShape::flattop;
                else
                    fail_key(sec, "shape",
                             "expected gaussian or flattop, got '" + se->value + "'");
            }
            env.omega0 = get_double(es, sec, "omega0", default_omega0);
            require_finite(sec, "omega0", env.omega0);
            if (env.omega0 < 0.0) fail_key(sec, "omega0", "must be >= 0");
            if (env.shape == PulseShape::gaussian) {
                env.t0 = get_double(es, sec, "t0", d.t_end / 2.0);
                env.w = get_double(es, sec, "w", d.t_end / 6.0);
                require_finite(sec, "t0", env.t0);
                if (!(env.w > 0.0) || !std::isfinite(env.w))
                    fail_key(sec, "w", "must be > 0");
            } else {
                // Default plateau spans the whole evolution: fast rise near
                // the start, fall centered past t_end.
                env.t1 = get_double(es, sec, "t1", d.t_end / 40.0);
                env.r1 = get_double(es, sec, "r1", d.t_end / 100.0);
                env.t2 = get_double(es, sec, "t2", d.t_end * 1.1);
                env.r2 = get_double(es, sec, "r2", d.t_end / 100.0);
                require_finite(sec, "t1", env.t1);
                require_finite(sec, "t2", env.t2);
                if (!(env.r1 > 0.0) || !std::isfinite(env.r1))
                    fail_key(sec, "r1", "must be > 0");
                if (!(env.r2 > 0.0) || !std::isfinite(env.r2))
                    fail_key(sec, "r2", "must be > 0");
                if (!(env.t2 > env.t1)) fail_key(sec, "t2", "must be > t1");
            }
            env.to_envelope(); // full factory validation
        };
        parse_envelope("probe", s.probe, s.fields.omega_p);
        parse_envelope("control", s.control, s.fields.omega_s);

        bool dt_given = false;
        if (const RawEntry* de = es.find("dynamics", "dt")) {
            d.dt = parse_double_value(*de);
            if (!(d.dt > 0.0) || !std::isfinite(d.dt)) fail_key("dynamics", "dt", "must be > 0");
            dt_given = true;
        }
        bool stride_given = false;
        if (const RawEntry* re = es.find("dynamics", "record_stride")) {
            auto st = parse_int_value(*re);
            if (st < 1) fail_key("dynamics", "record_stride", "must be >= 1");
            d.record_stride = st;
            stride_given = true;
        }
        resolve_time_stepping(s, dt_given, stride_given);
        s.make_evolution_config(); // final invariant check
    }

    // [scales]
    {
        ScalesSpec& sc = s.scales;
        sc.recoil = get_double(es, "scales", "recoil", sc.recoil);
        if (!(sc.recoil > 0.0) || !std::isfinite(sc.recoil))
            fail_key("scales", "recoil", "must be > 0");
        sc.rabi_reference = get_double(es, "scales", "rabi_reference", sc.rabi_reference);
        if (!(sc.rabi_reference > 0.0) || !std::isfinite(sc.rabi_reference))
            fail_key("scales", "rabi_reference", "must be > 0");
        sc.margin = get_double(es, "scales", "margin", sc.margin);
        if (!(sc.margin > 0.0 && sc.margin <= 1.0))
            fail_key("scales", "margin", "must lie in (0, 1]");
        auto po = get_int(es, "scales", "p_max_order", sc.p_max_order);
        if (po < 0 || po > 100000) fail_key("scales", "p_max_order", "must lie in [0, 100000]");
        sc.p_max_order = static_cast<int>(po);
    }

    es.reject_unused(s.kind);
    return s;
}

std::string render_config(const Scenario& s) {
    std::ostringstream o;
    ScenarioKind member = s.kind == ScenarioKind::sweep ? s.sweep.member_kind : s.kind;
    bool sweep_over_zones =
        s.kind == ScenarioKind::sweep && s.sweep.parameter == SweepParameter::zones;

    o << "kind = " << kind_name(s.kind) << "\n";
    o << "out = " << s.out_prefix << "\n";
    if (s.kind == ScenarioKind::sweep) {
        o << "[sweep]\n";
        o << "kind = " << kind_name(s.sweep.member_kind) << "\n";
        o << "parameter = " << sweep_parameter_name(s.sweep.parameter) << "\n";
        o << "values = ";
        for (size_t i = 0; i < s.sweep.values.size(); ++i)
            o << (i ? ", " : "") << format_g17(s.sweep.values[i]);
        o << "\n";
    }
    o << "[fields]\n";
    if (s.fields.r_form) {
        o << "R = " << format_g17(s.fields.r) << "\n";
    } else {
        o << "omega_p = " << format_g17(s.fields.omega_p) << "\n";
        o << "omega_s = " << format_g17(s.fields.omega_s) << "\n";
    }
    o << "delta = " << format_g17(s.fields.delta) << "\n";
    o << "gamma = " << format_g17(s.fields.gamma) << "\n";
    o << "branch_to_2 = " << format_g17(s.fields.branch_to_2) << "\n";
    if (member != ScenarioKind::dynamics) {
        o << "[grid]\n";
        o << "wavelengths = " << s.grid.wavelengths << "\n";
        o << "samples = " << s.grid.samples << "\n";
        o << "[momentum]\n";
        o << "p_min = " << format_g17(s.momentum.p_min) << "\n";
        o << "p_max = " << format_g17(s.momentum.p_max) << "\n";
        o << "p_step = " << format_g17(s.momentum.p_step) << "\n";
        o << "mode = " << amplitude_mode_name(s.momentum.mode) << "\n";
    }
    if (member == ScenarioKind::multizone && !sweep_over_zones) {
        o << "[multizone]\n";
        o << "zones = " << s.zones << "\n";
    }
    if (member == ScenarioKind::dynamics) {
        auto envelope_block = [&](const char* name, const EnvelopeSpec& env) {
            o << "[" << name << "]\n";
            o << "shape = " << pulse_shape_name(env.shape) << "\n";
            o << "omega0 = " << format_g17(env.omega0) << "\n";
            if (env.shape == PulseShape::gaussian) {
                o << "t0 = " << format_g17(env.t0) << "\n";
                o << "w = " << format_g17(env.w) << "\n";
            } else {
                o << "t1 = " << format_g17(env.t1) << "\n";
                o << "r1 = " << format_g17(env.r1) << "\n";
                o << "t2 = " << format_g17(env.t2) << "\n";
                o << "r2 = " << format_g17(env.r2) << "\n";
            }
        };
        envelope_block("probe", s.probe);
        envelope_block("control", s.control);
        o << "[dynamics]\n";
        o << "kx = " << format_g17(s.dynamics.kx) << "\n";
        o << "dt = " << format_g17(s.dynamics.dt) << "\n";
        o << "t_end = " << format_g17(s.dynamics.t_end) << "\n";
        o << "steady_tolerance = " << format_g17(s.dynamics.steady_tolerance) << "\n";
        o << "steady_window = " << format_g17(s.dynamics.steady_window) << "\n";
        o << "record_stride = " << s.dynamics.record_stride << "\n";
    }
    o << "[scales]\n";
    o << "recoil = " << format_g17(s.scales.recoil) << "\n";
    o << "rabi_reference = " << format_g17(s.scales.rabi_reference) << "\n";
    o << "margin = " << format_g17(s.scales.margin) << "\n";
    o << "p_max_order = " << s.scales.p_max_order << "\n";
    return o.str();
}

} // namespace cpt
