#include "cpt/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cpt {

namespace {

void check_uniform_grid(const SpatialProfile& profile) {
    const auto& xs = profile.grid.kx_values;
    if (xs.size() < 2 || xs.size() != profile.values.size())
        throw ValidationError("momentum: profile needs >= 2 samples with matching grid");
    double h = xs[1] - xs[0];
    if (!(h > 0.0))
        throw ValidationError("momentum: grid must be strictly increasing");
    for (size_t j = 1; j + 1 < xs.size(); ++j) {
        double hj = xs[j + 1] - xs[j];
        if (std::abs(hj - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw ValidationError("momentum: grid must be uniform");
    }
}

// Quadrature weights for a uniform grid with M intervals: composite Simpson
// when M is even; Simpson over the first M-3 plus a 3/8-rule tail when M is
// odd (both 4th order). M = 1 degrades to the trapezoid.
std::vector<double> quadrature_weights(size_t n_points, double h) {
    size_t m = n_points - 1;
    std::vector<double> w(n_points, 0.0);
    if (m == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    size_t simpson_m = (m % 2 == 0) ? m : m - 3;
    if (m % 2 != 0 && m < 3)
        throw ValidationError("momentum: grid too short for quadrature");
    if (simpson_m > 0) {
        w[0] += h / 3.0;
        w[simpson_m] += h / 3.0;
        for (size_t j = 1; j < simpson_m; ++j) w[j] += (j % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
    if (m % 2 != 0) {
        double c = 3.0 * h / 8.0;
        w[m - 3] += c;
        w[m - 2] += 3.0 * c;
        w[m - 1] += 3.0 * c;
        w[m] += c;
    }
    return w;
}

} // namespace

Complex fourier_amplitude(const SpatialProfile& profile, double p, AmplitudeMode mode) {
    check_uniform_grid(profile);
    if (!std::isfinite(p))
        throw ValidationError("fourier_amplitude: p must be finite");
    for (double v : profile.values)
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("fourier_amplitude: profile values must lie in [0, 1]");

    const auto& xs = profile.grid.kx_values;
    double h = xs[1] - xs[0];
    std::vector<double> w = quadrature_weights(xs.size(), h);

    double re = 0.0, im = 0.0;
    for (size_t j = 0; j < xs.size(); ++j) {
        double g = profile.values[j];
        if (mode == AmplitudeMode::sqrt_mode) g = std::sqrt(g);
        double wg = w[j] * g;
        re += wg * std::cos(p * xs[j]);
        im += wg * std::sin(p * xs[j]);
    }
    return {re, im};
}

MomentumSpectrum momentum_distribution(const SpatialProfile& profile,
                                       const std::vector<double>& p_values,
                                       AmplitudeMode mode) {
    if (p_values.empty())
        throw ValidationError("momentum_distribution: empty p grid");
    for (size_t i = 0; i + 1 < p_values.size(); ++i)
        if (!(p_values[i] < p_values[i + 1]))
            throw ValidationError("momentum_distribution: p grid must be strictly increasing");

    MomentumSpectrum s;
    s.p_values = p_values;
    s.intensities.reserve(p_values.size());
    for (double p : p_values) s.intensities.push_back(std::norm(fourier_amplitude(profile, p, mode)));
    return s;
}

std::vector<std::pair<double, double>> spectrum_peaks(const MomentumSpectrum& spectrum) {
    const auto& ps = spectrum.p_values;
    const auto& is = spectrum.intensities;
    if (ps.size() != is.size() || ps.size() < 3)
        throw ValidationError("spectrum_peaks: need >= 3 samples");

    std::vector<std::pair<double, double>> peaks;
    size_t n = is.size();
    size_t i = 1;
    while (i + 1 < n) {
        if (!(is[i] > is[i - 1])) { ++i; continue; }
        size_t j = i;
        while (j + 1 < n && is[j + 1] == is[j]) ++j; // plateau run
        if (j + 1 < n && is[j + 1] < is[j]) {
            size_t best = i;
            for (size_t k = i + 1; k <= j; ++k)
                if (std::abs(ps[k]) < std::abs(ps[best])) best = k;
            peaks.emplace_back(ps[best], is[best]);
        }
        i = j + 1;
    }
    return peaks;
}

double alternate_suppression(const MomentumSpectrum& spectrum,
                             const MomentumSpectrum& baseline) {
    if (spectrum.p_values.size() != baseline.p_values.size())
        throw ValidationError("alternate_suppression: spectra sampled on different grids");
    for (size_t i = 0; i < spectrum.p_values.size(); ++i)
        if (std::abs(spectrum.p_values[i] - baseline.p_values[i]) > 1e-12)
            throw ValidationError("alternate_suppression: spectra sampled on different grids");

    // Normalize each spectrum by its value nearest p = 0.
    size_t zero_idx = 0;
    for (size_t i = 1; i < spectrum.p_values.size(); ++i)
        if (std::abs(spectrum.p_values[i]) < std::abs(spectrum.p_values[zero_idx])) zero_idx = i;
    double s0 = spectrum.intensities[zero_idx];
    double b0 = baseline.intensities[zero_idx];
    if (!(s0 > 0.0) || !(b0 > 0.0))
        throw DegenerateInputError("alternate_suppression: zero intensity at p = 0");

    auto base_peaks = spectrum_peaks(baseline);
    double odd_sum = 0.0, even_sum = 0.0;
    size_t odd_n = 0, even_n = 0;
    size_t order = 0;
    for (const auto& [p, b_height] : base_peaks) {
        if (p < -1e-12) continue; // nonnegative orders, ascending from p = 0
        // Same grid, so the paired spectrum value sits at the same index.
        size_t idx = static_cast<size_t>(
            std::lower_bound(baseline.p_values.begin(), baseline.p_values.end(), p - 1e-15)
            - baseline.p_values.begin());
        double h = (spectrum.intensities[idx] / s0) / (b_height / b0);
        if (order % 2 == 1) { odd_sum += h; ++odd_n; }
        else { even_sum += h; ++even_n; }
        ++order;
    }
    if (odd_n == 0 || even_n == 0)
        throw NoPeaksError("alternate_suppression: baseline has too few peaks at p >= 0");
    double even_mean = even_sum / static_cast<double>(even_n);
    if (!(even_mean > 0.0))
        throw DegenerateInputError("alternate_suppression: even orders carry no weight");
    return (odd_sum / static_cast<double>(odd_n)) / even_mean;
}

double second_moment(const MomentumSpectrum& spectrum) {
    if (spectrum.p_values.size() != spectrum.intensities.size() || spectrum.p_values.empty())
        throw ValidationError("second_moment: malformed spectrum");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < spectrum.p_values.size(); ++i) {
        num += spectrum.p_values[i] * spectrum.p_values[i] * spectrum.intensities[i];
        den += spectrum.intensities[i];
    }
    if (!(den > 0.0))
        throw DegenerateInputError("second_moment: zero total intensity");
    return num / den;
}

} // namespace cpt
