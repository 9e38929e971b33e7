#ifndef CPT_MOMENTUM_HPP
#define CPT_MOMENTUM_HPP

#include <utility>
#include <vector>

#include "cpt/core.hpp"

// Far-zone momentum distribution of the detected atoms: the squared Fourier
// transform of a localization profile over the grid window,
//
//   P2(p) = | integral g(kx) * exp(i p kx) d(kx) |^2
//
// with g the profile itself (as_written) or its square root (sqrt_mode, the
// amplitude a uniform center-of-mass wavefunction actually carries; see
// ComDistribution). p is dimensionless (units of hbar k), conjugate to kx;
// no 2pi normalization is applied, so absolute scale is set by the window
// and plots normalize to the p = 0 value.

namespace cpt {

struct MomentumSpectrum {
    std::vector<double> p_values;
    std::vector<double> intensities;
};

// The center-of-mass wavefunction used throughout: f(x) = 1 across the
// window (uniform illumination). Its uniformity is why the transform acts on
// the internal-state profile alone.
struct ComDistribution {
    double amplitude_at(double /*kx*/) const { return 1.0; }
};

enum class AmplitudeMode { as_written, sqrt_mode };

// Complex Fourier integral of the (possibly square-rooted) profile at one p,
// composite Simpson over the uniform grid (a 3/8-rule tail absorbs an odd
// interval count). Summation order is fixed and ascending, so results are
// reproducible bit-for-bit and p values may be evaluated in parallel.
Complex fourier_amplitude(const SpatialProfile& profile, double p, AmplitudeMode mode);

// |fourier_amplitude|^2 on a strictly increasing p grid.
// Profile values must lie in [0, 1] and the grid must be uniform.
MomentumSpectrum momentum_distribution(const SpatialProfile& profile,
                                       const std::vector<double>& p_values,
                                       AmplitudeMode mode = AmplitudeMode::as_written);

// Strict interior local maxima in index order, plateau-aware: a flat run
// counts once when both flanks fall away, reported at its smallest-|p|
// sample. Boundary samples never qualify. May be empty.
std::vector<std::pair<double, double>> spectrum_peaks(const MomentumSpectrum& spectrum);

// Suppression of alternate diffraction orders relative to an unlocalized
// baseline (the R = 0 spectrum on the same grid). Baseline peaks at p >= 0
// are indexed ascending from p = 0; each contributes the normalized height
// ratio h = (S(p)/S(0)) / (B(p)/B(0)), and the result is
// mean(h at odd indices) / mean(h at even indices). Values well below 1 mean
// the odd orders are dying out.
double alternate_suppression(const MomentumSpectrum& spectrum,
                             const MomentumSpectrum& baseline);

// Intensity-weighted <p^2> over the grid: sum p^2 I(p) / sum I(p).
double second_moment(const MomentumSpectrum& spectrum);

} // namespace cpt

#endif
