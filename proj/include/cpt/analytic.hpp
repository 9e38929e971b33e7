#ifndef CPT_ANALYTIC_HPP
#define CPT_ANALYTIC_HPP

#include <utility>

#include "cpt/core.hpp"

// Closed-form coherent-population-trapping quantities for the driven Lambda
// atom: the dark state, the localization profile 1/(1 + R sin^2 kx) and its
// width laws, the ground-state coherence, the rf readout transform, and the
// multi-zone composition.

namespace cpt {

// R = |Omega_s|^2 / |Omega_p|^2. R = 0 means probe only (uniform profile).
struct FinesseRatio {
    explicit FinesseRatio(double r);
    double r;
};

// |Psi> = (Omega_p |2> - Omega_s(x) |3>) / Omega with
// Omega = sqrt(|Omega_p|^2 + |Omega_s(x)|^2). No |1> component: the driven
// Hamiltonian annihilates it, so decay pumps the atom into it and leaves it
// there. Both couplings zero -> DegenerateInputError.
StateVector3 dark_state(Complex omega_p, Complex omega_s_x);

// rho22(x) = 1/(1 + R sin^2 kx): the |2> population of the dark state, i.e.
// the localization profile. Peaks (value 1) at the standing-wave nodes,
// floor 1/(1+R) at the antinodes.
double rho22_at(FinesseRatio r, double kx);
SpatialProfile rho22_profile(FinesseRatio r, const SpatialGrid& grid);

// Ground-state coherence of the dark state: rho23 = -Omega_p Omega_s^*(x) / Omega^2.
Complex rho23_at(Complex omega_p, Complex omega_s_x);

// rho23 sampled on a grid with Omega_s(x) = omega_s_peak * sin(kx);
// returned as (real part, imaginary part) profiles.
std::pair<SpatialProfile, SpatialProfile> rho23_profile(Complex omega_p,
                                                        Complex omega_s_peak,
                                                        const SpatialGrid& grid);

// Small-angle width law k*dx = 2/sqrt(R). r = 0 has no peaks.
double fwhm_formula(FinesseRatio r);

// Measured full width at half of the central peak maximum (the antinode
// floor is not subtracted; only this convention reproduces 2/sqrt(R)).
// The peak is the unique sample maximum inside the open central period
// (-pi/2, pi/2); each half-maximum crossing is bracketed on the monotone
// flank and located by bisection to 1e-10 on a 4-point cubic interpolant.
// Errors: flat or crossing-free profile -> NoPeaksError; fewer than 3
// samples above half maximum -> ResolutionError (grid too coarse).
double fwhm_numeric(const SpatialProfile& profile);

// Airy-type transmission 1/(1 + coefficient * sin^2 kx), the Fabry-Perot
// analogue of the localization profile; bit-identical to rho22_profile with
// r = coefficient.
SpatialProfile fabry_perot_reference(double coefficient, const SpatialGrid& grid);

// Population in |2> after an rf pi/2 pulse mixes the ground states:
// P2 = 1/2 - Omega_p Omega_s sin(kx) / (Omega_p^2 + Omega_s^2 sin^2 kx).
// Reads out the ground-state coherence; exactly 1/2 at the nodes.
SpatialProfile rf_readout_profile(double omega_p, double omega_s_peak,
                                  const SpatialGrid& grid);

// [rho22(x)]^n: conditional probability of detecting |2> after each of
// n successive localization zones (independent zones, re-prepared input).
SpatialProfile multizone_profile(FinesseRatio r, int n_zones, const SpatialGrid& grid);

} // namespace cpt

#endif
