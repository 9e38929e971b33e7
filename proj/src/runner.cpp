#include "cpt/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "cpt/analytic.hpp"
#include "cpt/dynamics.hpp"
#include "cpt/errors.hpp"
#include "cpt/format.hpp"
#include "cpt/momentum.hpp"
#include "cpt/multizone.hpp"
#include "cpt/version.hpp"

namespace cpt {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

const char* bool_name(bool b) { return b ? "true" : "false"; }

std::string error_class_name(const Error& e) {
    switch (exit_code_for(e)) {
        case exit_parse: return "parse";
        case exit_validation: return "validation";
        case exit_io: return "io";
        default: return "numerical";
    }
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body;
    out.flush();
    if (!out.good()) throw IoError("failed while writing '" + path + "'");
}

std::string base_name(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

double fwhm_formula_or_nan(double r) {
    try {
        return fwhm_formula(FinesseRatio(r));
    } catch (const NoPeaksError&) {
        return quiet_nan;
    }
}

double fwhm_numeric_or_nan(const SpatialProfile& profile) {
    try {
        return fwhm_numeric(profile);
    } catch (const NoPeaksError&) {
        return quiet_nan;
    } catch (const ResolutionError&) {
        return quiet_nan;
    }
}

// One row of a sweep summary; doubles are NaN where the quantity is not
// defined for the member.
struct SummaryRow {
    double r = quiet_nan;
    int n_zones = 1;
    double fwhm_formula_value = quiet_nan;
    double fwhm_numeric_value = quiet_nan;
    double second_moment_value = quiet_nan;
    bool rna = false;
};

struct KindOutput {
    std::vector<std::pair<std::string, std::string>> derived;
    std::vector<std::string> files;
    SummaryRow row;
};

size_t index_of_smallest_abs_p(const std::vector<double>& p) {
    size_t best = 0;
    for (size_t i = 1; i < p.size(); ++i)
        if (std::fabs(p[i]) < std::fabs(p[best])) best = i;
    return best;
}

std::string momentum_csv(const MomentumSpectrum& spec) {
    size_t i0 = index_of_smallest_abs_p(spec.p_values);
    double norm = spec.intensities[i0];
    std::ostringstream csv;
    csv << "p,intensity,intensity_normalized\n";
    for (size_t i = 0; i < spec.p_values.size(); ++i) {
        double scaled = norm > 0.0 ? spec.intensities[i] / norm : quiet_nan;
        csv << format_g17(spec.p_values[i]) << ',' << format_g17(spec.intensities[i])
            << ',' << format_g17(scaled) << '\n';
    }
    return csv.str();
}

bool scenario_rna(const Scenario& s) {
    return rna_valid(s.scales.p_max_order, s.make_scales(), s.fields.omega_p,
                     s.fields.omega_s, s.scales.margin);
}

void push_common_derived(KindOutput& out, const Scenario& s) {
    out.derived.emplace_back("R", format_g17(s.fields.r));
    out.derived.emplace_back("fwhm_formula", format_g17(out.row.fwhm_formula_value));
    out.derived.emplace_back("fwhm_numeric", format_g17(out.row.fwhm_numeric_value));
    out.derived.emplace_back("second_moment", format_g17(out.row.second_moment_value));
    out.derived.emplace_back("rna_valid", bool_name(out.row.rna));
}

KindOutput run_profile_kind(const Scenario& s, const std::string& prefix) {
    SpatialGrid grid = make_grid(s.grid.wavelengths, s.grid.samples);
    FinesseRatio r(s.fields.r);
    SpatialProfile prof = rho22_profile(r, grid);
    auto coherence = rho23_profile(Complex(s.fields.omega_p, 0.0),
                                   Complex(s.fields.omega_s, 0.0), grid);
    SpatialProfile rf = rf_readout_profile(s.fields.omega_p, s.fields.omega_s, grid);

    std::ostringstream csv;
    csv << "kx,rho22,rho23_real,rho23_imag,rf_readout\n";
    for (size_t i = 0; i < grid.kx_values.size(); ++i)
        csv << format_g17(grid.kx_values[i]) << ',' << format_g17(prof.values[i]) << ','
            << format_g17(coherence.first.values[i]) << ','
            << format_g17(coherence.second.values[i]) << ',' << format_g17(rf.values[i])
            << '\n';
    std::string path = prefix + "_profile.csv";
    write_text_file(path, csv.str());

    MomentumSpectrum spec =
        momentum_distribution(prof, s.momentum.build_p_grid(), s.momentum.mode);

    KindOutput out;
    out.row.r = s.fields.r;
    out.row.n_zones = 1;
    out.row.fwhm_formula_value = fwhm_formula_or_nan(s.fields.r);
    out.row.fwhm_numeric_value = fwhm_numeric_or_nan(prof);
    out.row.second_moment_value = second_moment(spec);
    out.row.rna = scenario_rna(s);
    push_common_derived(out, s);
    out.files.push_back(path);
    return out;
}

KindOutput run_momentum_kind(const Scenario& s, const std::string& prefix) {
    SpatialGrid grid = make_grid(s.grid.wavelengths, s.grid.samples);
    SpatialProfile prof = rho22_profile(FinesseRatio(s.fields.r), grid);
    std::vector<double> p = s.momentum.build_p_grid();
    MomentumSpectrum spec = momentum_distribution(prof, p, s.momentum.mode);

    std::string path = prefix + "_momentum.csv";
    write_text_file(path, momentum_csv(spec));

    KindOutput out;
    out.row.r = s.fields.r;
    out.row.n_zones = 1;
    out.row.fwhm_formula_value = fwhm_formula_or_nan(s.fields.r);
    out.row.fwhm_numeric_value = fwhm_numeric_or_nan(prof);
    out.row.second_moment_value = second_moment(spec);
    out.row.rna = scenario_rna(s);
    push_common_derived(out, s);
    out.derived.emplace_back(
        "p0_intensity",
        format_g17(spec.intensities[index_of_smallest_abs_p(spec.p_values)]));
    out.files.push_back(path);
    return out;
}

KindOutput run_multizone_kind(const Scenario& s, const std::string& prefix) {
    SpatialGrid grid = make_grid(s.grid.wavelengths, s.grid.samples);
    std::vector<double> p = s.momentum.build_p_grid();
    ZoneSequenceResult res = run_zone_sequence(FinesseRatio(s.fields.r), s.zones, grid, p);
    MomentumSpectrum spec = s.momentum.mode == AmplitudeMode::as_written
                                ? res.spectrum
                                : momentum_distribution(res.profile, p, s.momentum.mode);

    std::ostringstream csv;
    csv << "kx,profile\n";
    for (size_t i = 0; i < grid.kx_values.size(); ++i)
        csv << format_g17(grid.kx_values[i]) << ',' << format_g17(res.profile.values[i])
            << '\n';
    std::string zpath = prefix + "_zones.csv";
    write_text_file(zpath, csv.str());
    std::string mpath = prefix + "_zones_momentum.csv";
    write_text_file(mpath, momentum_csv(spec));

    double requiv = quiet_nan;
    try {
        requiv = equivalent_finesse(res.r, res.n_zones);
    } catch (const OutOfDomainError&) {
    }

    KindOutput out;
    out.row.r = s.fields.r;
    out.row.n_zones = res.n_zones;
    out.row.fwhm_formula_value = fwhm_formula_or_nan(s.fields.r);
    out.row.fwhm_numeric_value = res.fwhm;
    out.row.second_moment_value = second_moment(spec);
    out.row.rna = scenario_rna(s);
    out.derived.emplace_back("n_zones", std::to_string(res.n_zones));
    out.derived.emplace_back("equivalent_finesse", format_g17(requiv));
    push_common_derived(out, s);
    out.files.push_back(zpath);
    out.files.push_back(mpath);
    return out;
}

KindOutput run_dynamics_kind(const Scenario& s, const std::string& prefix) {
    LambdaSystem system = s.make_system();
    PulseEnvelope probe = s.probe.to_envelope();
    PulseEnvelope control = s.control.to_envelope();
    EvolutionConfig cfg = s.make_evolution_config();
    DensityMatrix3 initial = DensityMatrix3::basis(1); // start in ground |2>
    Trajectory traj = evolve(system, probe, control, s.dynamics.kx, initial, cfg);

    std::ostringstream csv;
    csv << "t,rho11,rho22,rho33,rho23_abs\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix3& st = traj.states[i];
        csv << format_g17(traj.times[i]) << ',' << format_g17(st.at(0, 0).real()) << ','
            << format_g17(st.at(1, 1).real()) << ',' << format_g17(st.at(2, 2).real())
            << ',' << format_g17(std::abs(st.at(1, 2))) << '\n';
    }
    std::string path = prefix + "_dynamics.csv";
    write_text_file(path, csv.str());

    bool steady = steady_state_reached(traj, cfg);
    const DensityMatrix3& fin = traj.states.back();

    // Localization target at this kx, from the envelope plateau amplitudes.
    double op = s.probe.omega0;
    double os = s.control.omega0 * std::sin(s.dynamics.kx);
    double denom = op * op + os * os;
    double analytic = denom > 0.0 ? op * op / denom : quiet_nan;
    double fidelity = quiet_nan;
    try {
        StateVector3 dark = dark_state(Complex(op, 0.0), Complex(os, 0.0));
        fidelity = dark_state_fidelity(fin, dark);
    } catch (const DegenerateInputError&) {
    }

    KindOutput out;
    out.row.r = s.fields.r;
    out.row.rna = scenario_rna(s);
    out.derived.emplace_back("steady_state_reached", bool_name(steady));
    out.derived.emplace_back("final_rho11", format_g17(fin.at(0, 0).real()));
    out.derived.emplace_back("final_rho22", format_g17(fin.at(1, 1).real()));
    out.derived.emplace_back("final_rho33", format_g17(fin.at(2, 2).real()));
    out.derived.emplace_back("rho22_analytic", format_g17(analytic));
    out.derived.emplace_back(
        "rho22_error",
        format_g17(std::isfinite(analytic) ? std::fabs(fin.at(1, 1).real() - analytic)
                                           : quiet_nan));
    out.derived.emplace_back("dark_state_fidelity", format_g17(fidelity));
    out.derived.emplace_back("rna_valid", bool_name(out.row.rna));
    out.files.push_back(path);
    return out;
}

KindOutput run_kind(const Scenario& s, const std::string& prefix) {
    switch (s.kind) {
        case ScenarioKind::profile: return run_profile_kind(s, prefix);
        case ScenarioKind::momentum: return run_momentum_kind(s, prefix);
        case ScenarioKind::multizone: return run_multizone_kind(s, prefix);
        case ScenarioKind::dynamics: return run_dynamics_kind(s, prefix);
        case ScenarioKind::sweep: break;
    }
    throw ValidationError("sweep scenarios must go through run_sweep");
}

std::string manifest_text(const RunManifest& m, const Scenario& s) {
    std::ostringstream o;
    char dur[40];
    std::snprintf(dur, sizeof dur, "%.3f", m.duration_seconds);
    o << "[run]\n";
    o << "tool = cptloc\n";
    o << "version = " << version_string << "\n";
    o << "status = " << m.status << "\n";
    o << "duration_seconds = " << dur << "\n";
    if (m.status != "ok") {
        o << "error_class = " << m.error_class << "\n";
        o << "error = " << m.error_message << "\n";
    }
    o << "[derived]\n";
    for (const auto& kv : m.derived) o << kv.first << " = " << kv.second << "\n";
    o << "[files]\n";
    for (size_t i = 0; i < m.files.size(); ++i)
        o << "file_" << i + 1 << " = " << base_name(m.files[i]) << "\n";
    if (!m.members.empty()) {
        o << "[members]\n";
        for (size_t i = 0; i < m.members.size(); ++i)
            o << "member_" << i + 1 << " = " << m.members[i].first << " "
              << m.members[i].second << "\n";
    }
    o << "[scenario]\n";
    o << render_config(s);
    return o.str();
}

void finish_manifest(RunManifest& m, const Scenario& s,
                     std::chrono::steady_clock::time_point t0) {
    m.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.files.push_back(m.manifest_path);
    write_text_file(m.manifest_path, manifest_text(m, s));
}

// Member scenario: same base, overridden parameter, reset sweep block.
Scenario member_scenario(const Scenario& base, double value) {
    Scenario member = base;
    member.kind = base.sweep.member_kind;
    member.sweep = SweepSpec{};
    if (base.sweep.parameter == SweepParameter::finesse) {
        member.fields.r_form = true;
        member.fields.r = value;
        member.fields.omega_p = 1.0;
        member.fields.omega_s = std::sqrt(value);
    } else {
        member.zones = static_cast<int>(std::llround(value));
    }
    return member;
}

std::string member_label(const Scenario& base, double value) {
    if (base.sweep.parameter == SweepParameter::finesse)
        return std::string("R=") + format_short(value);
    return std::string("zones=") + format_short(value);
}

std::string member_suffix(const Scenario& base, double value) {
    if (base.sweep.parameter == SweepParameter::finesse)
        return std::string("_R") + format_short(value);
    return std::string("_zones") + format_short(value);
}

} // namespace

std::string resolve_out_prefix(const std::string& prefix) {
    namespace fs = std::filesystem;
    fs::path p(prefix);
    if (p.is_relative()) {
        const char* base = std::getenv("CPTLOC_OUT_DIR");
        if (base != nullptr && *base != '\0') p = fs::path(base) / p;
    }
    fs::path dir = p.parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir))
            throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    return p.string();
}

RunManifest run_scenario(const Scenario& s) {
    auto t0 = std::chrono::steady_clock::now();
    std::string prefix = resolve_out_prefix(s.out_prefix);
    RunManifest m;
    m.manifest_path = prefix + "_manifest.txt";
    try {
        KindOutput out = run_kind(s, prefix);
        m.derived = std::move(out.derived);
        m.files = std::move(out.files);
    } catch (const Error& e) {
        m.status = "error";
        m.error_class = error_class_name(e);
        m.error_message = e.what();
        finish_manifest(m, s, t0);
        throw;
    }
    finish_manifest(m, s, t0);
    return m;
}

RunManifest run_sweep(const Scenario& s, int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    std::string prefix = resolve_out_prefix(s.out_prefix);
    RunManifest m;
    m.manifest_path = prefix + "_manifest.txt";

    const size_t n = s.sweep.values.size();
    std::vector<Scenario> members(n);
    std::vector<std::string> prefixes(n);
    std::set<std::string> distinct;
    for (size_t i = 0; i < n; ++i) {
        members[i] = member_scenario(s, s.sweep.values[i]);
        prefixes[i] = prefix + member_suffix(s, s.sweep.values[i]);
        if (!distinct.insert(prefixes[i]).second)
            throw ValidationError("sweep values collide in file labels ('" + prefixes[i] +
                                  "'); use more separated values");
    }

    std::vector<KindOutput> outputs(n);
    std::vector<std::exception_ptr> failures(n);
    int workers = std::clamp(jobs, 1, 64);
    workers = static_cast<int>(std::min<size_t>(static_cast<size_t>(workers), n));
    std::atomic<size_t> cursor{0};
    auto work = [&] {
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= n) break;
            try {
                outputs[i] = run_kind(members[i], prefixes[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::ostringstream summary;
    summary << "R,n_zones,fwhm_formula,fwhm_numeric,second_moment,rna_valid\n";
    std::exception_ptr first_failure;
    for (size_t i = 0; i < n; ++i) {
        std::string label = member_label(s, s.sweep.values[i]);
        if (failures[i]) {
            if (!first_failure) first_failure = failures[i];
            std::string message = "error";
            try {
                std::rethrow_exception(failures[i]);
            } catch (const Error& e) {
                message = "error(" + error_class_name(e) + "): " + e.what();
            } catch (const std::exception& e) {
                message = std::string("error: ") + e.what();
            }
            m.members.emplace_back(label, message);
            continue;
        }
        const SummaryRow& row = outputs[i].row;
        summary << format_g17(row.r) << ',' << row.n_zones << ','
                << format_g17(row.fwhm_formula_value) << ','
                << format_g17(row.fwhm_numeric_value) << ','
                << format_g17(row.second_moment_value) << ',' << bool_name(row.rna)
                << '\n';
        m.members.emplace_back(label, "ok");
        for (const auto& f : outputs[i].files) m.files.push_back(f);
    }
    std::string summary_path = prefix + "_summary.csv";
    write_text_file(summary_path, summary.str());
    m.files.push_back(summary_path);

    if (first_failure) {
        m.status = "error";
        try {
            std::rethrow_exception(first_failure);
        } catch (const Error& e) {
            m.error_class = error_class_name(e);
            m.error_message = e.what();
        } catch (const std::exception& e) {
            m.error_class = "numerical";
            m.error_message = e.what();
        }
        finish_manifest(m, s, t0);
        std::rethrow_exception(first_failure);
    }
    finish_manifest(m, s, t0);
    return m;
}

RunManifest run_any(const Scenario& s, int jobs) {
    if (s.kind == ScenarioKind::sweep) return run_sweep(s, jobs);
    return run_scenario(s);
}

} // namespace cpt
