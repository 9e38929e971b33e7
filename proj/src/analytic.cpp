#include "cpt/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace cpt {

FinesseRatio::FinesseRatio(double r) : r(r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw ValidationError("FinesseRatio: r must be finite and >= 0");
}

StateVector3 dark_state(Complex omega_p, Complex omega_s_x) {
    double omega2 = std::norm(omega_p) + std::norm(omega_s_x);
    if (!(omega2 > 0.0))
        throw DegenerateInputError("dark_state: both couplings are zero");
    double omega = std::sqrt(omega2);
    return StateVector3({Complex(0.0), omega_p / omega, -omega_s_x / omega});
}

double rho22_at(FinesseRatio r, double kx) {
    double s = std::sin(kx);
    return 1.0 / (1.0 + r.r * s * s);
}

SpatialProfile rho22_profile(FinesseRatio r, const SpatialGrid& grid) {
    SpatialProfile p;
    p.grid = grid;
    p.values.reserve(grid.kx_values.size());
    for (double kx : grid.kx_values) p.values.push_back(rho22_at(r, kx));
    return p;
}

Complex rho23_at(Complex omega_p, Complex omega_s_x) {
    double omega2 = std::norm(omega_p) + std::norm(omega_s_x);
    if (!(omega2 > 0.0))
        throw DegenerateInputError("rho23_at: both couplings are zero");
    return -omega_p * std::conj(omega_s_x) / omega2;
}

std::pair<SpatialProfile, SpatialProfile> rho23_profile(Complex omega_p,
                                                        Complex omega_s_peak,
                                                        const SpatialGrid& grid) {
    SpatialProfile re, im;
    re.grid = grid;
    im.grid = grid;
    re.values.reserve(grid.kx_values.size());
    im.values.reserve(grid.kx_values.size());
    for (double kx : grid.kx_values) {
        Complex osx = omega_s_peak * std::sin(kx);
        Complex c = (std::norm(omega_p) + std::norm(osx)) > 0.0
                        ? -omega_p * std::conj(osx) / (std::norm(omega_p) + std::norm(osx))
                        : Complex(0.0);
        re.values.push_back(c.real());
        im.values.push_back(c.imag());
    }
    return {re, im};
}

double fwhm_formula(FinesseRatio r) {
    if (!(r.r > 0.0))
        throw NoPeaksError("fwhm_formula: r = 0 profile is flat, no peaks");
    return 2.0 / std::sqrt(r.r);
}

namespace {

// Lagrange cubic through the 4 samples around index i (clamped at the ends).
double interp_cubic(const std::vector<double>& xs, const std::vector<double>& ys,
                    long long i0, double x) {
    long long n = static_cast<long long>(xs.size());
    long long lo = std::clamp(i0 - 1, 0LL, n - 4);
    double acc = 0.0;
    for (long long a = lo; a < lo + 4; ++a) {
        double term = ys[static_cast<size_t>(a)];
        for (long long b = lo; b < lo + 4; ++b) {
            if (a == b) continue;
            term *= (x - xs[static_cast<size_t>(b)])
                    / (xs[static_cast<size_t>(a)] - xs[static_cast<size_t>(b)]);
        }
        acc += term;
    }
    return acc;
}

// Bisection for interp(x) = level inside [a_idx, b_idx] sample bracket,
// where the profile sits above the level at a and at or below it at b.
double cross_bisect(const std::vector<double>& xs, const std::vector<double>& ys,
                    long long above_idx, long long below_idx, double level) {
    double a = xs[static_cast<size_t>(std::min(above_idx, below_idx))];
    double b = xs[static_cast<size_t>(std::max(above_idx, below_idx))];
    bool right_flank = below_idx > above_idx;
    long long stencil = std::min(above_idx, below_idx);
    // Keep the invariant: f(toward peak) > 0 >= f(away from peak).
    for (int it = 0; it < 64 && (b - a) > 1e-10; ++it) {
        double mid = 0.5 * (a + b);
        double f = interp_cubic(xs, ys, stencil, mid) - level;
        bool mid_above = f > 0.0;
        if (right_flank == mid_above) a = mid;
        else b = mid;
    }
    return 0.5 * (a + b);
}

} // namespace

double fwhm_numeric(const SpatialProfile& profile) {
    const auto& xs = profile.grid.kx_values;
    const auto& ys = profile.values;
    if (xs.size() != ys.size() || xs.size() < 5)
        throw ValidationError("fwhm_numeric: malformed profile");

    double vmax = *std::max_element(ys.begin(), ys.end());
    double vmin = *std::min_element(ys.begin(), ys.end());
    if (vmax - vmin < 1e-12)
        throw NoPeaksError("fwhm_numeric: profile is flat");

    // Unique maximum inside the open central period (-pi/2, pi/2).
    long long peak = -1;
    double peak_val = -1.0;
    for (long long i = 0; i < static_cast<long long>(xs.size()); ++i) {
        double x = xs[static_cast<size_t>(i)];
        if (!(x > -pi / 2.0 && x < pi / 2.0)) continue;
        if (ys[static_cast<size_t>(i)] > peak_val) {
            peak_val = ys[static_cast<size_t>(i)];
            peak = i;
        }
    }
    if (peak < 0) throw ValidationError("fwhm_numeric: grid has no interior central samples");
    for (long long i = 0; i < static_cast<long long>(xs.size()); ++i) {
        double x = xs[static_cast<size_t>(i)];
        if (!(x > -pi / 2.0 && x < pi / 2.0) || std::llabs(i - peak) <= 1) continue;
        if (peak_val - ys[static_cast<size_t>(i)] < 1e-12)
            throw NoPeaksError("fwhm_numeric: central maximum is not unique");
    }

    const double half = peak_val / 2.0;

    // The peak must be resolved by more than a lone sample.
    long long above = 1;
    for (long long i = peak + 1; i < static_cast<long long>(ys.size())
                                 && ys[static_cast<size_t>(i)] > half; ++i) ++above;
    for (long long i = peak - 1; i >= 0 && ys[static_cast<size_t>(i)] > half; --i) ++above;
    if (above < 3)
        throw ResolutionError("fwhm_numeric: peak narrower than the grid resolves "
                              "(fewer than 3 samples above half maximum)");

    // Walk each flank to the first sample at or below half maximum. Hitting a
    // rising sample or the grid edge first means the profile never crosses.
    auto find_cross = [&](int dir) -> double {
        long long i = peak;
        while (true) {
            long long j = i + dir;
            if (j < 0 || j >= static_cast<long long>(ys.size()))
                throw NoPeaksError("fwhm_numeric: flank leaves the grid before "
                                   "reaching half maximum");
            double vj = ys[static_cast<size_t>(j)];
            if (vj <= half) return cross_bisect(xs, ys, i, j, half);
            if (vj > ys[static_cast<size_t>(i)])
                throw NoPeaksError("fwhm_numeric: flank rises again before "
                                   "reaching half maximum (contrast below 2)");
            i = j;
        }
    };

    double right = find_cross(+1);
    double left = find_cross(-1);
    return right - left;
}

SpatialProfile fabry_perot_reference(double coefficient, const SpatialGrid& grid) {
    if (!(coefficient >= 0.0) || !std::isfinite(coefficient))
        throw ValidationError("fabry_perot_reference: coefficient must be finite and >= 0");
    // Same formula, same code path: bit-identical to rho22_profile.
    return rho22_profile(FinesseRatio(coefficient), grid);
}

SpatialProfile rf_readout_profile(double omega_p, double omega_s_peak,
                                  const SpatialGrid& grid) {
    if (!(omega_p > 0.0))
        throw ValidationError("rf_readout_profile: omega_p must be > 0");
    SpatialProfile p;
    p.grid = grid;
    p.values.reserve(grid.kx_values.size());
    for (double kx : grid.kx_values) {
        double osx = omega_s_peak * std::sin(kx);
        double omega2 = omega_p * omega_p + osx * osx;
        p.values.push_back(0.5 - omega_p * osx / omega2);
    }
    return p;
}

SpatialProfile multizone_profile(FinesseRatio r, int n_zones, const SpatialGrid& grid) {
    if (n_zones < 1)
        throw ValidationError("multizone_profile: n_zones must be >= 1");
    SpatialProfile p;
    p.grid = grid;
    p.values.reserve(grid.kx_values.size());
    for (double kx : grid.kx_values) {
        double base = rho22_at(r, kx);
        double v = base;
        for (int n = 1; n < n_zones; ++n) v *= base;
        p.values.push_back(v);
    }
    return p;
}

} // namespace cpt
