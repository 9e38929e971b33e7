#ifndef CPT_MULTIZONE_HPP
#define CPT_MULTIZONE_HPP

#include <vector>

#include "cpt/analytic.hpp"
#include "cpt/momentum.hpp"

// Repeated localization zones at moderate finesse: running an atom through n
// identical zones (perfect re-preparation in between, free flight ignored)
// sharpens the detection profile to [rho22(x)]^n, a cheaper route to narrow
// features than raising the finesse itself.

namespace cpt {

struct ZoneSequenceResult {
    int n_zones;
    FinesseRatio r;
    SpatialProfile profile;
    double fwhm;
    MomentumSpectrum spectrum;
};

// Compose the n-zone profile, its measured width, and its momentum
// distribution (as_written amplitude convention) into one record.
ZoneSequenceResult run_zone_sequence(FinesseRatio r, int n_zones,
                                     const SpatialGrid& grid,
                                     const std::vector<double>& p_values);

// The single-zone finesse R' whose width law matches the n-zone measured
// width: solving 2 arcsin(sqrt((2^(1/n) - 1)/r)) = 2/sqrt(R') gives
// R' = 1 / arcsin^2(sqrt((2^(1/n) - 1)/r)). Raises OutOfDomainError when r
// is too small for the requested zone count (arcsin argument above 1).
double equivalent_finesse(FinesseRatio r, int n_zones);

} // namespace cpt

#endif
