#include "cpt/multizone.hpp"

#include <cmath>

namespace cpt {

ZoneSequenceResult run_zone_sequence(FinesseRatio r, int n_zones,
                                     const SpatialGrid& grid,
                                     const std::vector<double>& p_values) {
    if (!(r.r > 0.0))
        throw ValidationError("run_zone_sequence: r must be > 0 (a flat profile has no width)");
    SpatialProfile profile = multizone_profile(r, n_zones, grid);
    double width = fwhm_numeric(profile);
    MomentumSpectrum spectrum = momentum_distribution(profile, p_values);
    return {n_zones, r, std::move(profile), width, std::move(spectrum)};
}

double equivalent_finesse(FinesseRatio r, int n_zones) {
    if (!(r.r > 0.0))
        throw ValidationError("equivalent_finesse: r must be > 0");
    if (n_zones < 1)
        throw ValidationError("equivalent_finesse: n_zones must be >= 1");
    double arg = (std::pow(2.0, 1.0 / n_zones) - 1.0) / r.r;
    if (arg > 1.0)
        throw OutOfDomainError("equivalent_finesse: finesse too small for "
                               + std::to_string(n_zones) + " zones (arcsin argument > 1)");
    double half = std::asin(std::sqrt(arg));
    return 1.0 / (half * half);
}

} // namespace cpt
