#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpt/analytic.hpp"
#include "cpt/errors.hpp"
#include "cpt/momentum.hpp"
#include "oracles.hpp"

using namespace cpt;

namespace {

std::vector<double> centi_grid(long long min100, long long max100, long long step100) {
    std::vector<double> p;
    for (long long k = min100; k <= max100; k += step100)
        p.push_back(static_cast<double>(k) / 100.0);
    return p;
}

std::vector<double> default_p_grid() { return centi_grid(-1200, 1200, 5); }

size_t index_of(const std::vector<double>& p, double v) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] == v) return i;
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("uniform profile transforms to the bare window pattern") {
    SpatialGrid g = make_grid(1, 720);
    SpatialProfile flat = rho22_profile(FinesseRatio(0.0), g);
    auto p = default_p_grid();
    MomentumSpectrum spec = momentum_distribution(flat, p);

    size_t i0 = index_of(p, 0.0);
    CHECK(std::fabs(spec.intensities[i0] - 4.0 * pi * pi) <= 1e-9);

    // exact nulls at every nonzero integer p
    for (double ip : {1.0, -1.0, 2.0, 5.0, -7.0, 12.0})
        CHECK(spec.intensities[index_of(p, ip)] <= 1e-12);

    // frozen reference: first side lobe height of |2 sin(pi p)/p|^2 at the
    // grid point p = 1.45 nearest the true lobe center
    double lobe = spec.intensities[index_of(p, 1.45)];
    double direct = std::pow(2.0 * std::sin(pi * 1.45) / 1.45, 2.0);
    CHECK(lobe == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("localized profile: frozen intensities and closed-form p = 0") {
    SpatialGrid g = make_grid(1, 720);
    SpatialProfile prof = rho22_profile(FinesseRatio(16.0), g);
    auto p = default_p_grid();
    MomentumSpectrum spec = momentum_distribution(prof, p);

    // P(0) = (2 pi / sqrt(1 + R))^2
    double want0 = std::pow(2.0 * pi / std::sqrt(17.0), 2.0);
    CHECK(std::fabs(spec.intensities[index_of(p, 0.0)] - want0) <= 1e-6);

    // frozen values on this exact grid
    CHECK(spec.intensities[index_of(p, 2.0)] ==
          doctest::Approx(0.863013402902).epsilon(1e-9));
    CHECK(spec.intensities[index_of(p, 4.0)] ==
          doctest::Approx(0.320718687306).epsilon(1e-9));
    CHECK(spec.intensities[index_of(p, 6.0)] ==
          doctest::Approx(0.119187576973).epsilon(1e-9));
    CHECK(spec.intensities[index_of(p, 1.45)] ==
          doctest::Approx(0.028097231270).epsilon(1e-8));
    CHECK(spec.intensities[index_of(p, 2.45)] ==
          doctest::Approx(0.633485232613).epsilon(1e-9));

    // the profile has period pi, so odd-integer components vanish
    CHECK(spec.intensities[index_of(p, 1.0)] <= 1e-12);
    CHECK(spec.intensities[index_of(p, 3.0)] <= 1e-12);

    // even in p, bit for bit on the symmetric grid
    for (size_t i = 0; i < p.size(); ++i)
        CHECK(spec.intensities[i] == spec.intensities[p.size() - 1 - i]);

    // transform of an even real profile is real
    for (double pp : {0.45, 1.3, 2.0, 3.7})
        CHECK(std::fabs(fourier_amplitude(prof, pp, AmplitudeMode::as_written).imag()) <=
              1e-12);
}

TEST_CASE("quadrature agrees with an independent Riemann oracle") {
    auto check_against_oracle = [](int spw, double r, double p, double tol) {
        SpatialGrid g = make_grid(1, spw);
        SpatialProfile prof = rho22_profile(FinesseRatio(r), g);
        Complex got = fourier_amplitude(prof, p, AmplitudeMode::as_written);
        auto want = oracles::fourier_riemann(
            [&](double x) {
                double s = std::sin(x);
                return 1.0 / (1.0 + r * s * s);
            },
            p);
        CHECK(std::abs(got - Complex(want.real(), want.imag())) <= tol);
    };
    check_against_oracle(720, 16.0, 0.0, 1e-7);
    check_against_oracle(720, 16.0, 2.0, 1e-7);
    check_against_oracle(720, 4.0, 0.45, 1e-8);
    check_against_oracle(2880, 100.0, 1.0, 1e-8);
}

TEST_CASE("quadrature handles odd interval counts at the same order") {
    // 33 and 66 samples per wavelength exercise the odd-count tail rule and
    // the plain even case; both must converge at fourth order.
    double r = 1.0, p = 0.45;
    auto err_at = [&](int spw) {
        SpatialGrid g = make_grid(1, spw);
        SpatialProfile prof = rho22_profile(FinesseRatio(r), g);
        Complex got = fourier_amplitude(prof, p, AmplitudeMode::as_written);
        auto want = oracles::fourier_riemann(
            [&](double x) {
                double s = std::sin(x);
                return 1.0 / (1.0 + r * s * s);
            },
            p);
        return std::abs(got - Complex(want.real(), want.imag()));
    };
    double coarse = err_at(33);
    double fine = err_at(66);
    CHECK(coarse < 5e-3);
    CHECK(fine < coarse / 8.0);
}

TEST_CASE("doubling the spatial resolution leaves the spectrum in place") {
    auto p = default_p_grid();
    for (double r : {0.0, 4.0}) {
        MomentumSpectrum a =
            momentum_distribution(rho22_profile(FinesseRatio(r), make_grid(1, 720)), p);
        MomentumSpectrum b =
            momentum_distribution(rho22_profile(FinesseRatio(r), make_grid(1, 1440)), p);
        for (size_t i = 0; i < p.size(); ++i)
            CHECK(std::fabs(a.intensities[i] - b.intensities[i]) <= 1e-7);
    }
    for (double r : {16.0, 100.0}) {
        MomentumSpectrum a =
            momentum_distribution(rho22_profile(FinesseRatio(r), make_grid(1, 2880)), p);
        MomentumSpectrum b =
            momentum_distribution(rho22_profile(FinesseRatio(r), make_grid(1, 5760)), p);
        for (size_t i = 0; i < p.size(); ++i)
            CHECK(std::fabs(a.intensities[i] - b.intensities[i]) <= 1e-8);
    }
}

TEST_CASE("square-root amplitude mode") {
    SpatialGrid g = make_grid(1, 720);
    SpatialProfile prof = rho22_profile(FinesseRatio(16.0), g);
    auto p = default_p_grid();
    MomentumSpectrum spec = momentum_distribution(prof, p, AmplitudeMode::sqrt_mode);
    CHECK(spec.intensities[index_of(p, 0.0)] ==
          doctest::Approx(7.5390833046).epsilon(1e-8));
    CHECK(second_moment(spec) == doctest::Approx(5.72623361).epsilon(1e-6));
    // sqrt mode keeps more weight near p = 0 than the squared profile does
    MomentumSpectrum plain = momentum_distribution(prof, p, AmplitudeMode::as_written);
    CHECK(second_moment(spec) < second_moment(plain));
}

TEST_CASE("input validation: grids and ranges") {
    SpatialGrid g = make_grid(1, 720);
    SpatialProfile prof = rho22_profile(FinesseRatio(16.0), g);

    CHECK_THROWS_AS(fourier_amplitude(prof, std::nan(""), AmplitudeMode::as_written),
                    ValidationError);

    SpatialProfile bad = prof;
    bad.values[3] = 1.5;
    CHECK_THROWS_AS(fourier_amplitude(bad, 0.0, AmplitudeMode::as_written),
                    ValidationError);

    SpatialProfile warped = prof;
    warped.grid.kx_values[5] += 1e-3;
    CHECK_THROWS_AS(fourier_amplitude(warped, 0.0, AmplitudeMode::as_written),
                    ValidationError);

    CHECK_THROWS_AS(momentum_distribution(prof, {}, AmplitudeMode::as_written),
                    ValidationError);
    CHECK_THROWS_AS(momentum_distribution(prof, {0.0, 0.0}, AmplitudeMode::as_written),
                    ValidationError);
    CHECK_THROWS_AS(momentum_distribution(prof, {1.0, 0.0}, AmplitudeMode::as_written),
                    ValidationError);
}

TEST_CASE("spectrum peaks: synthetic shapes") {
    MomentumSpectrum saw;
    saw.p_values = {-2.0, -1.0, 0.0, 1.0, 2.0};
    saw.intensities = {0.0, 1.0, 0.0, 1.0, 0.0};
    auto peaks = spectrum_peaks(saw);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].first == -1.0);
    CHECK(peaks[1].first == 1.0);

    MomentumSpectrum plateau;
    plateau.p_values = {0.0, 1.0, 2.0, 3.0};
    plateau.intensities = {0.0, 1.0, 1.0, 0.0};
    auto pp = spectrum_peaks(plateau);
    REQUIRE(pp.size() == 1);
    CHECK(pp[0].first == 1.0);
    CHECK(pp[0].second == 1.0);

    MomentumSpectrum ramp;
    ramp.p_values = {0.0, 1.0, 2.0};
    ramp.intensities = {0.0, 0.5, 1.0}; // boundary max never counts
    CHECK(spectrum_peaks(ramp).empty());

    MomentumSpectrum tiny;
    tiny.p_values = {0.0, 1.0};
    tiny.intensities = {0.0, 1.0};
    CHECK_THROWS_AS(spectrum_peaks(tiny), ValidationError);
}

TEST_CASE("spectrum peaks: real localization spectra sit on even orders") {
    SpatialGrid g = make_grid(1, 720);
    auto p = default_p_grid();
    MomentumSpectrum spec =
        momentum_distribution(rho22_profile(FinesseRatio(16.0), g), p);
    auto peaks = spectrum_peaks(spec);
    REQUIRE(!peaks.empty());
    // the central peak is exact; the first side lobe sits near the second
    // diffraction order, pulled slightly outward by the finite window
    bool saw_zero = false, saw_second_order = false;
    for (auto& [pp, height] : peaks) {
        if (pp == 0.0) saw_zero = true;
        if (std::fabs(pp - 2.0) <= 0.25) saw_second_order = true;
        (void)height;
    }
    CHECK(saw_zero);
    CHECK(saw_second_order);
    // peak positions come in +-p pairs
    for (auto& [pp, height] : peaks) {
        bool mirrored = false;
        for (auto& [qq, hq] : peaks)
            if (qq == -pp && hq == height) mirrored = true;
        CHECK(mirrored);
    }
}

TEST_CASE("alternate-order suppression deepens with finesse") {
    SpatialGrid g = make_grid(1, 720);
    auto p = default_p_grid();
    MomentumSpectrum base = momentum_distribution(rho22_profile(FinesseRatio(0.0), g), p);
    MomentumSpectrum s4 = momentum_distribution(rho22_profile(FinesseRatio(4.0), g), p);
    MomentumSpectrum s16 = momentum_distribution(rho22_profile(FinesseRatio(16.0), g), p);
    MomentumSpectrum s100 =
        momentum_distribution(rho22_profile(FinesseRatio(100.0), g), p);

    double a4 = alternate_suppression(s4, base);
    double a16 = alternate_suppression(s16, base);
    double a100 = alternate_suppression(s100, base);
    CHECK(a4 == doctest::Approx(0.4790264380).epsilon(1e-6));
    CHECK(a16 == doctest::Approx(0.1968992759).epsilon(1e-6));
    CHECK(a100 == doctest::Approx(0.0203427878).epsilon(1e-6));
    CHECK(a16 < a4);
    CHECK(a100 < a16);

    MomentumSpectrum other = base;
    other.p_values[0] += 1e-6;
    CHECK_THROWS_AS(alternate_suppression(s16, other), ValidationError);

    // too narrow a window to find baseline peaks
    std::vector<double> short_p = centi_grid(-40, 40, 5);
    MomentumSpectrum bshort =
        momentum_distribution(rho22_profile(FinesseRatio(0.0), g), short_p);
    MomentumSpectrum sshort =
        momentum_distribution(rho22_profile(FinesseRatio(16.0), g), short_p);
    CHECK_THROWS_AS(alternate_suppression(sshort, bshort), NoPeaksError);
}

TEST_CASE("second moment: frozen values and spreading with finesse") {
    SpatialGrid g = make_grid(1, 720);
    auto p = default_p_grid();
    auto m = [&](double r) {
        return second_moment(momentum_distribution(rho22_profile(FinesseRatio(r), g), p));
    };
    CHECK(m(0.0) == doctest::Approx(1.22620426).epsilon(1e-6));
    CHECK(m(16.0) == doctest::Approx(12.58049814).epsilon(1e-6));
    CHECK(m(100.0) == doctest::Approx(25.73751412).epsilon(1e-6));
    CHECK(m(1600.0) == doctest::Approx(40.79647446).epsilon(1e-6));

    MomentumSpectrum zero;
    zero.p_values = {-1.0, 0.0, 1.0};
    zero.intensities = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(second_moment(zero), DegenerateInputError);

    MomentumSpectrum malformed;
    malformed.p_values = {0.0, 1.0};
    malformed.intensities = {1.0};
    CHECK_THROWS_AS(second_moment(malformed), ValidationError);
}

TEST_CASE("uniform center-of-mass amplitude") {
    ComDistribution com;
    CHECK(com.amplitude_at(0.0) == 1.0);
    CHECK(com.amplitude_at(-2.7) == 1.0);
}
