#pragma once

#include <span>
#include <vector>

#include "exttype/scmap.hpp"

namespace exttype {

/// Atom + absolutely-continuous decomposition of the extremal zero-counting
/// measure mu on [0, inf): one atom of mass c at radius 1, then a density
/// supported on (k, inf). mu[0, x] = (2/pi) * Re phi0(x+0).
struct CountingFunction {
    double atom_location;    ///< = 1
    double atom_mass;        ///< = c
    double ac_support_start; ///< = k
    ExtremalMap map;

    double total_on(double x) const;    ///< mu[0, x], right-continuous
    double ac_density(double x) const;  ///< d/dx of total_on for x > k
};

struct DensityProfile {
    std::vector<double> radii;
    std::vector<double> ratio;  ///< n(r)/r values
};

CountingFunction make_counting_function(const ExtremalMap& map);

/// mu[0, x] = (2/pi) * Re phi0(x+0). Zero below the atom, c on [1, k),
/// then growing with asymptotic slope 2/pi.
double counting_function(double x, const ExtremalMap& map);

/// Density of the absolutely continuous part, (2/pi) x sqrt(x^2-k^2)/(x^2-1),
/// defined for x > k only.
double ac_density(double x, const ExtremalMap& map);

/// Mass of the a.c. part between x_lo and x_hi (both >= k), integrated by the
/// kernel under the band-edge substitution x = sqrt(k^2 + t^2).
double ac_mass(double x_lo, double x_hi, const ExtremalMap& map, double tol = 1e-11);

/// ratio[i] = counting_function(r_i)/r_i over a positive increasing grid
/// that must contain r = 1 (where the ratio attains its maximum, c).
DensityProfile density_profile(std::span<const double> r_grid, const ExtremalMap& map);

}  // namespace exttype
