#pragma once

#include <span>
#include <utility>
#include <vector>

#include "exttype/constants.hpp"
#include "exttype/numerics.hpp"

namespace exttype {

/// Evaluator state for the extremal conformal map
///
///   phi0(z) = (1/2) * integral from 0 to z^2 of sqrt(zeta - k^2)/(zeta - 1) dzeta,
///
/// mapping the closed upper half-plane onto the plane slit along
/// {Re = 0, Im <= 0} and bounded by {Re = +-b, Im <= 0} and {Im = 0, |Re| >= b}.
///
/// Branch convention: sqrt(zeta - k^2) is cut along the real ray (-inf, k^2];
/// on the upper edge of the cut its value is +i*sqrt(k^2 - zeta), the
/// principal branch elsewhere. Real-axis values are the limits from above,
/// and the real part at a jump point means the limit from the right.
struct ExtremalMap {
    ExtremalConstants constants;
    double pole_detour_radius = 0.25;  ///< detour half-width around zeta = 1; in (0, min(1, k^2-1)/2)
    double quad_tol = 1e-10;
};

/// Solve the constants and assemble a map evaluator.
ExtremalMap make_extremal_map(double tol = 1e-8);

/// phi0(z) for z in the closed upper half-plane, z != +-1.
Complex eval_phi(Complex z, const ExtremalMap& map);

/// p.v. integral from 0 to k^2 of sqrt(k^2 - zeta)/(zeta - 1) dzeta -- the
/// imaginary part of the map integral along the upper edge of the cut.
/// Vanishes exactly at the extremal k; this is the parameter problem.
double pv_residual(double k_trial, double tol = 1e-10);

/// Root of pv_residual on [1.2, 3]: the preimage parameter k, solved
/// independently of the transcendental-equation route.
double solve_parameter(double tol);

/// Extrapolated two-sided limit of the real part of the (un-halved) map
/// integral across the pole preimage: Re I((1+eps)^2) - Re I((1-eps)^2)
/// as eps -> 0. Equals pi*c; the phi0 jump is half of it.
double jump_at_one(const ExtremalMap& map, std::span<const double> eps_sequence);

enum class BoundarySegment {
    central_slit,     ///< preimages in (0, 1), image on {Re = 0, Im <= 0}
    right_slit_edge,  ///< preimages in (1, k), image on {Re = b, Im <= 0}
    real_axis_tail,   ///< preimages in (k, 3k), image on {Im = 0, Re >= b}
};

struct BoundaryTrace {
    BoundarySegment segment;
    std::vector<std::pair<double, Complex>> samples;  ///< (preimage, image), preimages increasing
    std::vector<double> residuals;  ///< distance of each image to the labelled boundary component
};

BoundaryTrace trace_boundary(const ExtremalMap& map, BoundarySegment segment, int n);

namespace detail {

/// sqrt(zeta - k2) under the map's branch convention.
Complex slit_sqrt(Complex zeta, double k2);

/// Generic two-sided real-part jump at the pole preimage for an arbitrary
/// integrand, used by jump_at_one and by its pole-free degenerate check.
/// Each one-sided value is computed on a lifted polyline ending at (1+-eps)^2.
double extrapolated_real_jump(const ComplexFn& f, std::span<const double> eps_sequence,
                              double quad_tol);

}  // namespace detail

}  // namespace exttype
