#include "cpt/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cpt {

PhysicalScales::PhysicalScales(double recoil_frequency, double rabi_reference)
    : recoil_frequency(recoil_frequency), rabi_reference(rabi_reference) {
    if (!(recoil_frequency > 0.0) || !std::isfinite(recoil_frequency))
        throw ValidationError("PhysicalScales: recoil_frequency must be > 0");
    if (!(rabi_reference > 0.0) || !std::isfinite(rabi_reference))
        throw ValidationError("PhysicalScales: rabi_reference must be > 0");
}

DecayModel::DecayModel(double gamma_total, double branch_to_2)
    : gamma_total(gamma_total), branch_to_2(branch_to_2) {
    if (!(gamma_total >= 0.0) || !std::isfinite(gamma_total))
        throw ValidationError("DecayModel: gamma_total must be >= 0");
    if (!(branch_to_2 >= 0.0 && branch_to_2 <= 1.0))
        throw ValidationError("DecayModel: branch_to_2 must be in [0, 1]");
}

LambdaSystem::LambdaSystem(Complex omega_p, Complex omega_s_peak, double delta,
                           DecayModel decay)
    : omega_p(omega_p), omega_s_peak(omega_s_peak), delta(delta), decay(decay) {
    if (!(std::abs(omega_p) > 0.0))
        throw ValidationError("LambdaSystem: |omega_p| must be > 0 (finesse must stay finite)");
    if (!std::isfinite(delta))
        throw ValidationError("LambdaSystem: delta must be finite");
}

double LambdaSystem::finesse() const {
    return std::norm(omega_s_peak) / std::norm(omega_p);
}

StateVector3::StateVector3(Vec3 amps) : amplitudes(amps) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw ValidationError("StateVector3: amplitudes must be normalized (|norm - 1| <= 1e-12)");
}

double DensityMatrix3::trace_real() const {
    return (elements[0] + elements[4] + elements[8]).real();
}

double DensityMatrix3::hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double d = std::abs(elements[mat_at(r, c)] - std::conj(elements[mat_at(c, r)]));
            worst = std::max(worst, d);
        }
    return worst;
}

double DensityMatrix3::min_eigenvalue() const {
    return hermitian_eigenvalues(elements)[0];
}

void DensityMatrix3::validate(double herm_tol, double trace_tol, double eig_floor) const {
    double h = hermiticity_defect();
    if (h > herm_tol)
        throw ValidationError("DensityMatrix3: Hermiticity defect " + std::to_string(h));
    double t = trace_real();
    if (std::abs(t - 1.0) > trace_tol)
        throw ValidationError("DensityMatrix3: trace " + std::to_string(t) + " != 1");
    double e = min_eigenvalue();
    if (e < eig_floor)
        throw ValidationError("DensityMatrix3: negative eigenvalue " + std::to_string(e));
}

DensityMatrix3 DensityMatrix3::pure(const StateVector3& psi) {
    Mat3 m{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m[mat_at(r, c)] = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
    return DensityMatrix3(m);
}

DensityMatrix3 DensityMatrix3::basis(int level) {
    if (level < 0 || level > 2)
        throw ValidationError("DensityMatrix3::basis: level must be 0, 1 or 2");
    Mat3 m{};
    m[mat_at(level, level)] = 1.0;
    return DensityMatrix3(m);
}

std::array<double, 3> hermitian_eigenvalues(const Mat3& m) {
    // Symmetrize first so roundoff asymmetry cannot push the cubic complex.
    double a11 = m[0].real(), a22 = m[4].real(), a33 = m[8].real();
    Complex a12 = 0.5 * (m[mat_at(0, 1)] + std::conj(m[mat_at(1, 0)]));
    Complex a13 = 0.5 * (m[mat_at(0, 2)] + std::conj(m[mat_at(2, 0)]));
    Complex a23 = 0.5 * (m[mat_at(1, 2)] + std::conj(m[mat_at(2, 1)]));

    double q = (a11 + a22 + a33) / 3.0;
    double p2 = (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + (a33 - q) * (a33 - q)
                + 2.0 * (std::norm(a12) + std::norm(a13) + std::norm(a23));
    if (p2 <= 0.0) return {q, q, q}; // already scalar
    double p = std::sqrt(p2 / 6.0);

    // det(B) with B = (A - qI)/p, Laplace expansion along the first row;
    // Hermiticity makes the result real up to roundoff.
    double b11 = (a11 - q) / p, b22 = (a22 - q) / p, b33 = (a33 - q) / p;
    Complex b12 = a12 / p, b13 = a13 / p, b23 = a23 / p;
    Complex det = b11 * (b22 * b33 - b23 * std::conj(b23))
                  - b12 * (std::conj(b12) * b33 - b23 * std::conj(b13))
                  + b13 * (std::conj(b12) * std::conj(b23) - b22 * std::conj(b13));
    double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;

    double e_hi = q + 2.0 * p * std::cos(phi);
    double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * pi / 3.0);
    double e_mid = 3.0 * q - e_hi - e_lo;
    return {e_lo, e_mid, e_hi};
}

SpatialGrid make_grid(int n_wavelengths, int samples_per_wavelength) {
    if (n_wavelengths < 1)
        throw ValidationError("make_grid: n_wavelengths must be >= 1");
    if (samples_per_wavelength < 1)
        throw ValidationError("make_grid: samples_per_wavelength must be >= 1");
    SpatialGrid g;
    g.n_wavelengths = n_wavelengths;
    g.samples_per_wavelength = samples_per_wavelength;
    const long long n_points = static_cast<long long>(n_wavelengths) * samples_per_wavelength;
    g.kx_values.resize(static_cast<size_t>(n_points) + 1);
    for (long long j = 0; j <= n_points; ++j) {
        // (2j - N)/samples is exact for the dyadic fractions that matter
        // (0, +-1/2, +-1), so nodes and antinodes land exactly on grid.
        double frac = static_cast<double>(2 * j - n_points)
                      / static_cast<double>(samples_per_wavelength);
        g.kx_values[static_cast<size_t>(j)] = pi * frac;
    }
    return g;
}

Complex standing_wave_at(const LambdaSystem& system, double kx) {
    return system.omega_s_peak * std::sin(kx);
}

} // namespace cpt
