#ifndef CPT_DYNAMICS_HPP
#define CPT_DYNAMICS_HPP

#include <vector>

#include "cpt/core.hpp"

// Time-dependent master-equation integration of the driven Lambda atom:
//
//   drho/dt = -i[H(t), rho] + gamma*b2*D[|2><1|]rho + gamma*(1-b2)*D[|3><1|]rho
//
// with D[L]rho = L rho L^dag - (L^dag L rho + rho L^dag L)/2 and H(t) built
// from the pulse-envelope values, Omega_s(x,t) = envelope_control(t)*sin(kx).
// The frame rotates at the field frequencies, so the explicit exp(-i Delta t)
// factors become a -Delta entry on the |1> diagonal and H is constant between
// envelope updates; two-photon resonance is built in because both legs share
// the same Delta.

namespace cpt {

enum class PulseShape { gaussian, flattop };

// Time profile of one beam. Gaussian: omega0*exp(-((t-t0)/w)^2). Flat-top:
// (omega0/2)*[tanh((t-t1)/r1) - tanh((t-t2)/r2)]. Parameters are validated;
// values are never clamped (a flat-top with r1 > r2 undershoots zero by a
// sliver in the far tail, which is the formula's own behavior).
struct PulseEnvelope {
    static PulseEnvelope gaussian(double omega0, double t0, double w);
    static PulseEnvelope flattop(double omega0, double t1, double r1, double t2, double r2);

    PulseShape shape = PulseShape::gaussian;
    double omega0 = 0.0;
    double t0 = 0.0, w = 1.0;                       // gaussian
    double t1 = 0.0, r1 = 1.0, t2 = 1.0, r2 = 1.0;  // flattop

  private:
    PulseEnvelope() = default;
};

double gaussian_envelope(double t, const PulseEnvelope& env);
double flattop_envelope(double t, const PulseEnvelope& env);

// Shape-dispatching evaluation.
double envelope_value(double t, const PulseEnvelope& env);

// Fixed-step integration controls. The stability bound dt <= 0.01/max(peak
// Rabi values, |Delta|, gamma, 1) is checked by evolve, which knows the
// system; record_stride thins the stored trajectory (every stride-th step).
struct EvolutionConfig {
    EvolutionConfig(double dt, double t_end, double steady_tolerance,
                    double steady_window, long long record_stride = 1);
    double dt;
    double t_end;
    double steady_tolerance;
    double steady_window;
    long long record_stride;
};

// Stored states sampled uniformly every sample_dt = record_stride * dt,
// always including t = 0 and t = t_end.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix3> states;
    double sample_dt = 0.0;
};

// Rotating-frame interaction Hamiltonian (hbar = 1), basis (|1>,|2>,|3>):
// diagonal (-Delta, 0, 0), <1|H|2> = -Omega_s^*, <1|H|3> = -Omega_p^*, plus
// conjugates. Annihilates the dark state for any Delta.
Mat3 hamiltonian_matrix(Complex omega_p_t, Complex omega_s_xt, double delta);

// Classical 4th-order Runge-Kutta on the master equation, envelopes sampled
// at the substep times. The state is carried in a Hermitian-by-construction
// representation (3 real populations + 3 complex coherences), so Hermiticity
// cannot drift; trace and positivity of every stored sample are checked and
// violations (drift > 1e-6, eigenvalue < -1e-6) raise InstabilityError
// naming the failing time. t_end must be an integer number of steps and
// record_stride must divide the step count.
Trajectory evolve(const LambdaSystem& system, const PulseEnvelope& probe,
                  const PulseEnvelope& control, double kx,
                  const DensityMatrix3& initial, const EvolutionConfig& config);

// True iff every stored sample in the trailing steady_window differs from
// the final sample by less than steady_tolerance in every element.
bool steady_state_reached(const Trajectory& traj, const EvolutionConfig& config);

// <Psi| rho |Psi>, in [0, 1] up to roundoff.
double dark_state_fidelity(const DensityMatrix3& rho, const StateVector3& dark);

// Raman-Nath validity: the kinetic energy picked up at momentum order p_max
// must stay well under the interaction energy,
//   p_max^2 * recoil_frequency <= margin * min(|Omega_p|, |Omega_s|) * rabi_reference.
// margin in (0, 1]; the default 0.1 encodes "much less than".
bool rna_valid(int p_max, const PhysicalScales& scales, double omega_p,
               double omega_s_peak, double margin = 0.1);

} // namespace cpt

#endif
