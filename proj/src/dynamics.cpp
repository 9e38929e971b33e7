#include "cpt/dynamics.hpp"

#include <cmath>
#include <string>

namespace cpt {

PulseEnvelope PulseEnvelope::gaussian(double omega0, double t0, double w) {
    if (!(omega0 >= 0.0) || !std::isfinite(omega0))
        throw ValidationError("PulseEnvelope: omega0 must be finite and >= 0");
    if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(t0))
        throw ValidationError("PulseEnvelope: gaussian needs finite t0 and w > 0");
    PulseEnvelope e;
    e.shape = PulseShape::gaussian;
    e.omega0 = omega0;
    e.t0 = t0;
    e.w = w;
    return e;
}

PulseEnvelope PulseEnvelope::flattop(double omega0, double t1, double r1,
                                     double t2, double r2) {
    if (!(omega0 >= 0.0) || !std::isfinite(omega0))
        throw ValidationError("PulseEnvelope: omega0 must be finite and >= 0");
    if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(t1) || !std::isfinite(t2))
        throw ValidationError("PulseEnvelope: flattop needs finite edges and r1, r2 > 0");
    if (!(t2 > t1))
        throw ValidationError("PulseEnvelope: flattop needs t2 > t1");
    PulseEnvelope e;
    e.shape = PulseShape::flattop;
    e.omega0 = omega0;
    e.t1 = t1;
    e.r1 = r1;
    e.t2 = t2;
    e.r2 = r2;
    return e;
}

double gaussian_envelope(double t, const PulseEnvelope& env) {
    if (env.shape != PulseShape::gaussian)
        throw ValidationError("gaussian_envelope: envelope shape is not gaussian");
    double u = (t - env.t0) / env.w;
    return env.omega0 * std::exp(-u * u);
}

double flattop_envelope(double t, const PulseEnvelope& env) {
    if (env.shape != PulseShape::flattop)
        throw ValidationError("flattop_envelope: envelope shape is not flattop");
    return 0.5 * env.omega0
           * (std::tanh((t - env.t1) / env.r1) - std::tanh((t - env.t2) / env.r2));
}

double envelope_value(double t, const PulseEnvelope& env) {
    return env.shape == PulseShape::gaussian ? gaussian_envelope(t, env)
                                             : flattop_envelope(t, env);
}

EvolutionConfig::EvolutionConfig(double dt, double t_end, double steady_tolerance,
                                 double steady_window, long long record_stride)
    : dt(dt), t_end(t_end), steady_tolerance(steady_tolerance),
      steady_window(steady_window), record_stride(record_stride) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("EvolutionConfig: dt must be > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw ValidationError("EvolutionConfig: t_end must be > 0");
    if (!(steady_tolerance > 0.0))
        throw ValidationError("EvolutionConfig: steady_tolerance must be > 0");
    if (!(steady_window > 0.0))
        throw ValidationError("EvolutionConfig: steady_window must be > 0");
    if (!(t_end >= 10.0 * steady_window - 1e-12))
        throw ValidationError("EvolutionConfig: t_end must be >= 10 * steady_window");
    if (record_stride < 1)
        throw ValidationError("EvolutionConfig: record_stride must be >= 1");
}

Mat3 hamiltonian_matrix(Complex omega_p_t, Complex omega_s_xt, double delta) {
    Mat3 h{};
    h[mat_at(0, 0)] = -delta;
    h[mat_at(0, 1)] = -std::conj(omega_s_xt);
    h[mat_at(0, 2)] = -std::conj(omega_p_t);
    h[mat_at(1, 0)] = -omega_s_xt;
    h[mat_at(2, 0)] = -omega_p_t;
    return h;
}

namespace {

// Hermitian state in 9 real parameters: populations d1, d2, d3 and lower
// coherences o21 = rho_21, o31 = rho_31, o32 = rho_32.
struct Rho9 {
    double d1, d2, d3;
    double o21r, o21i, o31r, o31i, o32r, o32i;
};

inline Rho9 from_matrix(const Mat3& m) {
    // Hermitian part of m; the constructor-side validation has already
    // bounded the asymmetry.
    auto sym = [&](int r, int c) {
        return 0.5 * (m[mat_at(r, c)] + std::conj(m[mat_at(c, r)]));
    };
    Complex o21 = sym(1, 0), o31 = sym(2, 0), o32 = sym(2, 1);
    return {m[mat_at(0, 0)].real(), m[mat_at(1, 1)].real(), m[mat_at(2, 2)].real(),
            o21.real(), o21.imag(), o31.real(), o31.imag(), o32.real(), o32.imag()};
}

inline Mat3 to_matrix(const Rho9& r) {
    Mat3 m{};
    m[mat_at(0, 0)] = r.d1;
    m[mat_at(1, 1)] = r.d2;
    m[mat_at(2, 2)] = r.d3;
    m[mat_at(1, 0)] = {r.o21r, r.o21i};
    m[mat_at(0, 1)] = {r.o21r, -r.o21i};
    m[mat_at(2, 0)] = {r.o31r, r.o31i};
    m[mat_at(0, 2)] = {r.o31r, -r.o31i};
    m[mat_at(2, 1)] = {r.o32r, r.o32i};
    m[mat_at(1, 2)] = {r.o32r, -r.o32i};
    return m;
}

// -i[H, rho] + decay, written out in the 9 real parameters for real field
// amplitudes a = Omega_s(x,t), b = Omega_p(t). Equivalent to the dense
// matrix form (asserted by a unit test); trace is conserved identically.
inline Rho9 rhs(const Rho9& y, double a, double b, double delta, double gamma,
                double b2) {
    Rho9 d;
    d.d1 = -2.0 * a * y.o21i - 2.0 * b * y.o31i - gamma * y.d1;
    d.d2 = 2.0 * a * y.o21i + gamma * b2 * y.d1;
    d.d3 = 2.0 * b * y.o31i + gamma * (1.0 - b2) * y.d1;

    double hg = 0.5 * gamma;
    // o21: -i(a(d2-d1) + Delta*o21 + b*conj(o32)) - (gamma/2) o21
    double ure = a * (y.d2 - y.d1) + delta * y.o21r + b * y.o32r;
    double uim = delta * y.o21i - b * y.o32i;
    d.o21r = uim - hg * y.o21r;
    d.o21i = -ure - hg * y.o21i;
    // o31: -i(b(d3-d1) + Delta*o31 + a*o32) - (gamma/2) o31
    double vre = b * (y.d3 - y.d1) + delta * y.o31r + a * y.o32r;
    double vim = delta * y.o31i + a * y.o32i;
    d.o31r = vim - hg * y.o31r;
    d.o31i = -vre - hg * y.o31i;
    // o32: -i(-b*conj(o21) + a*o31), undamped
    double wre = -b * y.o21r + a * y.o31r;
    double wim = b * y.o21i + a * y.o31i;
    d.o32r = wim;
    d.o32i = -wre;
    return d;
}

inline Rho9 axpy(const Rho9& y, double h, const Rho9& k) {
    return {y.d1 + h * k.d1,  y.d2 + h * k.d2,   y.d3 + h * k.d3,
            y.o21r + h * k.o21r, y.o21i + h * k.o21i, y.o31r + h * k.o31r,
            y.o31i + h * k.o31i, y.o32r + h * k.o32r, y.o32i + h * k.o32i};
}

} // namespace

Trajectory evolve(const LambdaSystem& system, const PulseEnvelope& probe,
                  const PulseEnvelope& control, double kx,
                  const DensityMatrix3& initial, const EvolutionConfig& config) {
    initial.validate();

    const double gamma = system.decay.gamma_total;
    const double b2 = system.decay.branch_to_2;
    const double delta = system.delta;

    double scale = std::max({probe.omega0, control.omega0, std::abs(delta), gamma, 1.0});
    if (config.dt > 0.01 / scale * (1.0 + 1e-12))
        throw ValidationError("evolve: dt " + std::to_string(config.dt)
                              + " violates the stability bound 0.01/max(peak Rabi, |Delta|, gamma, 1) = "
                              + std::to_string(0.01 / scale));

    const long long steps = std::llround(config.t_end / config.dt);
    if (steps < 1 || std::abs(steps * config.dt - config.t_end) > 1e-9 * config.t_end)
        throw ValidationError("evolve: t_end must be an integer number of dt steps");
    if (steps % config.record_stride != 0)
        throw ValidationError("evolve: record_stride must divide the step count "
                              + std::to_string(steps));

    const double sinkx = std::sin(kx);
    const double h = config.dt;

    Trajectory traj;
    traj.sample_dt = h * static_cast<double>(config.record_stride);
    const long long n_samples = steps / config.record_stride + 1;
    traj.times.reserve(static_cast<size_t>(n_samples));
    traj.states.reserve(static_cast<size_t>(n_samples));

    Rho9 y = from_matrix(initial.elements);

    auto store = [&](long long step) {
        double t = static_cast<double>(step) * h;
        DensityMatrix3 state(to_matrix(y));
        double tr = state.trace_real();
        if (std::abs(tr - 1.0) > 1e-6)
            throw InstabilityError("evolve: trace drifted to " + std::to_string(tr)
                                   + " at t = " + std::to_string(t));
        double eig = state.min_eigenvalue();
        if (eig < -1e-6)
            throw InstabilityError("evolve: eigenvalue " + std::to_string(eig)
                                   + " at t = " + std::to_string(t));
        traj.times.push_back(t);
        traj.states.push_back(state);
    };

    store(0);
    for (long long step = 0; step < steps; ++step) {
        double t = static_cast<double>(step) * h;
        double tm = t + 0.5 * h, tp = t + h;
        double b_0 = envelope_value(t, probe), a_0 = envelope_value(t, control) * sinkx;
        double b_m = envelope_value(tm, probe), a_m = envelope_value(tm, control) * sinkx;
        double b_p = envelope_value(tp, probe), a_p = envelope_value(tp, control) * sinkx;

        Rho9 k1 = rhs(y, a_0, b_0, delta, gamma, b2);
        Rho9 k2 = rhs(axpy(y, 0.5 * h, k1), a_m, b_m, delta, gamma, b2);
        Rho9 k3 = rhs(axpy(y, 0.5 * h, k2), a_m, b_m, delta, gamma, b2);
        Rho9 k4 = rhs(axpy(y, h, k3), a_p, b_p, delta, gamma, b2);

        double c = h / 6.0;
        y = {y.d1 + c * (k1.d1 + 2.0 * k2.d1 + 2.0 * k3.d1 + k4.d1),
             y.d2 + c * (k1.d2 + 2.0 * k2.d2 + 2.0 * k3.d2 + k4.d2),
             y.d3 + c * (k1.d3 + 2.0 * k2.d3 + 2.0 * k3.d3 + k4.d3),
             y.o21r + c * (k1.o21r + 2.0 * k2.o21r + 2.0 * k3.o21r + k4.o21r),
             y.o21i + c * (k1.o21i + 2.0 * k2.o21i + 2.0 * k3.o21i + k4.o21i),
             y.o31r + c * (k1.o31r + 2.0 * k2.o31r + 2.0 * k3.o31r + k4.o31r),
             y.o31i + c * (k1.o31i + 2.0 * k2.o31i + 2.0 * k3.o31i + k4.o31i),
             y.o32r + c * (k1.o32r + 2.0 * k2.o32r + 2.0 * k3.o32r + k4.o32r),
             y.o32i + c * (k1.o32i + 2.0 * k2.o32i + 2.0 * k3.o32i + k4.o32i)};

        if ((step + 1) % config.record_stride == 0) store(step + 1);
    }
    return traj;
}

bool steady_state_reached(const Trajectory& traj, const EvolutionConfig& config) {
    if (traj.times.size() < 2)
        throw ValidationError("steady_state_reached: trajectory has fewer than 2 samples");
    double span = traj.times.back() - traj.times.front();
    if (span < 2.0 * config.steady_window - 1e-12)
        throw ValidationError("steady_state_reached: trajectory span "
                              + std::to_string(span) + " is shorter than twice the window");

    double t_cut = traj.times.back() - config.steady_window;
    const Mat3& last = traj.states.back().elements;
    size_t in_window = 0;
    double worst = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] < t_cut - 1e-12) continue;
        ++in_window;
        const Mat3& m = traj.states[i].elements;
        for (int e = 0; e < 9; ++e)
            worst = std::max(worst, std::abs(m[static_cast<size_t>(e)]
                                             - last[static_cast<size_t>(e)]));
    }
    if (in_window < 2)
        throw ValidationError("steady_state_reached: sampling too coarse to "
                              "resolve the steady window");
    return worst < config.steady_tolerance;
}

double dark_state_fidelity(const DensityMatrix3& rho, const StateVector3& dark) {
    Vec3 w = mat_apply(rho.elements, dark.amplitudes);
    Complex f = 0.0;
    for (int i = 0; i < 3; ++i) f += std::conj(dark.amplitudes[i]) * w[i];
    return f.real();
}

bool rna_valid(int p_max, const PhysicalScales& scales, double omega_p,
               double omega_s_peak, double margin) {
    if (p_max < 0)
        throw ValidationError("rna_valid: p_max must be >= 0");
    if (!(margin > 0.0 && margin <= 1.0))
        throw ValidationError("rna_valid: margin must be in (0, 1]");
    double kinetic = static_cast<double>(p_max) * static_cast<double>(p_max)
                     * scales.recoil_frequency;
    double interaction = std::min(std::abs(omega_p), std::abs(omega_s_peak))
                         * scales.rabi_reference;
    return kinetic <= margin * interaction;
}

} // namespace cpt
