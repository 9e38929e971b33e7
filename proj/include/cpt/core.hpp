#ifndef CPT_CORE_HPP
#define CPT_CORE_HPP

#include <array>
#include <complex>
#include <vector>

#include "cpt/errors.hpp"

// Domain types and unit conventions shared by every module.
//
// Units: all frequencies (Rabi, detuning, decay) are dimensionless multiples
// of one reference frequency; PhysicalScales maps that reference to rad/us
// only where a physical magnitude matters (the Raman-Nath check). Position
// enters exclusively as the dimensionless kx; time as the dimensionless
// product of the reference frequency and lab time. Basis order throughout is
// (|1>, |2>, |3>) with |1> the excited state and |2>, |3> the two ground
// states of the Lambda configuration, so matrix index 0 is |1>.

namespace cpt {

using Complex = std::complex<double>;
using Vec3 = std::array<Complex, 3>;
using Mat3 = std::array<Complex, 9>; // row-major 3x3

inline constexpr double pi = 3.14159265358979323846;

constexpr int mat_at(int row, int col) { return 3 * row + col; }

inline Vec3 mat_apply(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (int r = 0; r < 3; ++r) {
        Complex s = 0.0;
        for (int c = 0; c < 3; ++c) s += m[mat_at(r, c)] * v[c];
        out[r] = s;
    }
    return out;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Complex s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[mat_at(r, k)] * b[mat_at(k, c)];
            out[mat_at(r, c)] = s;
        }
    return out;
}

inline Mat3 mat_dagger(const Mat3& m) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[mat_at(r, c)] = std::conj(m[mat_at(c, r)]);
    return out;
}

// Physical magnitudes for the one place dimensions matter: recoil_frequency
// is (hbar k_a^2 / 2m) as an angular frequency in rad/us; rabi_reference is
// the angular frequency assigned to the dimensionless unit Rabi frequency.
struct PhysicalScales {
    PhysicalScales(double recoil_frequency, double rabi_reference);
    double recoil_frequency;
    double rabi_reference;
};

// Decay of the excited state |1>: total rate plus the fraction branching to
// |2> (the remainder feeds |3>). Dimensionless, like every other rate here.
struct DecayModel {
    DecayModel(double gamma_total, double branch_to_2);
    double gamma_total;
    double branch_to_2;
};

// The driven Lambda atom: probe Omega_p on |1>-|3>, standing-wave peak
// Omega_s on |1>-|2>, common detuning Delta (two-photon resonance is built
// in), and the decay channels. Complex couplings are allowed because the
// ground-state coherence involves Omega_s^*(x); every shipped scenario uses
// real positive values.
struct LambdaSystem {
    LambdaSystem(Complex omega_p, Complex omega_s_peak, double delta, DecayModel decay);
    Complex omega_p;
    Complex omega_s_peak;
    double delta;
    DecayModel decay;

    // R = |Omega_s|^2 / |Omega_p|^2, the localization finesse.
    double finesse() const;
};

// Uniform kx grid covering [-n*pi, n*pi] inclusive.
struct SpatialGrid {
    std::vector<double> kx_values;
    int n_wavelengths = 0;
    int samples_per_wavelength = 0;

    double spacing() const { return 2.0 * pi / samples_per_wavelength; }
};

// Real-valued function sampled on a grid (populations, readouts).
struct SpatialProfile {
    SpatialGrid grid;
    std::vector<double> values;
};

// Pure internal state. The constructor validates normalization (1e-12)
// rather than silently rescaling.
struct StateVector3 {
    explicit StateVector3(Vec3 amplitudes);
    Vec3 amplitudes;
};

// 3x3 density matrix with its defining invariants checkable on demand:
// Hermitian to 1e-10, unit trace to 1e-10, eigenvalues >= -1e-8.
struct DensityMatrix3 {
    explicit DensityMatrix3(Mat3 elements) : elements(elements) {}
    Mat3 elements;

    Complex at(int row, int col) const { return elements[mat_at(row, col)]; }
    double trace_real() const;
    double hermiticity_defect() const; // max |m - m^dagger| element
    double min_eigenvalue() const;

    // Throws ValidationError naming the violated invariant.
    void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                  double eig_floor = -1e-8) const;

    static DensityMatrix3 pure(const StateVector3& psi);
    static DensityMatrix3 basis(int level); // level in {0,1,2} = (|1>,|2>,|3>)
};

// Eigenvalues of a Hermitian 3x3 matrix, ascending. Closed-form trigonometric
// solution of the characteristic cubic; only the Hermitian part of m is used.
std::array<double, 3> hermitian_eigenvalues(const Mat3& m);

// Uniform grid on [-n*pi, n*pi] with n_wavelengths*samples_per_wavelength + 1
// points. Points are generated as pi*(2j - N)/samples so that the nodes and
// antinodes (0, +-pi/2, +-pi, ...) land exactly on grid.
SpatialGrid make_grid(int n_wavelengths, int samples_per_wavelength);

// Omega_s(x) = Omega_s sin(kx): the standing-wave coupling at position kx.
Complex standing_wave_at(const LambdaSystem& system, double kx);

} // namespace cpt

#endif
