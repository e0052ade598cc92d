#pragma once

#include <span>
#include <vector>

#include "exttype/density.hpp"
#include "exttype/scmap.hpp"

namespace exttype {

/// Finite even zero configuration at scale T: each entry x_j is the modulus
/// of a zero pair +-x_j of f(z) = prod_j (1 - z^2/x_j^2), so the disc
/// counting function of f is n(r) = 2 * #{j : x_j <= r} and f(0) = 1.
struct ZeroConfig {
    std::vector<double> radii;  ///< pair moduli, ascending, all <= truncation_radius
    double scale = 0.0;         ///< T
    double truncation_radius = 0.0;
};

struct IndicatorProfile {
    std::vector<double> thetas;
    std::vector<double> h_est;       ///< growth-rate estimates, h(theta) <= |sin theta| + o(1)
    std::vector<double> radii_used;  ///< scaled radii the sup was taken over
};

/// Build the near-extremal configuration at scale T: floor(c*T/2) pairs at
/// radius exactly T realise the atom (floor(c*T) zeros of f), and the a.c.
/// part of mu is sampled at mass quantiles (one pair per mass 2/T) out to
/// truncation_radius = r_max_factor * k * T. The zero count of f then tracks
/// T * mu[0, r/T] within one pair everywhere.
ZeroConfig place_zeros(double T, const ExtremalMap& map, double r_max_factor);

/// v_T(z) = T^-1 * sum_j log|1 - (Tz)^2/x_j^2|, the rescaled log-modulus of
/// the witness. Evaluation exactly at a zero returns -infinity (a sentinel,
/// not an error). Converges to Im phi0 as T grows.
double scaled_log_modulus(const ZeroConfig& config, Complex z);

/// Grid evaluation of scaled_log_modulus; work is split across threads
/// (EXTTYPE_THREADS caps the pool) with a deterministic result.
std::vector<double> scaled_log_modulus_grid(const ZeroConfig& config, std::span<const Complex> zs);

/// h_est(theta) = max over the given scaled radii of v_T(r e^{i theta})/r.
/// Radii must lie in (0.2, 0.8 * truncation_radius / T), thetas in
/// [0.01, pi - 0.01].
IndicatorProfile indicator_estimate(const ZeroConfig& config, std::span<const double> thetas,
                                    std::span<const double> radii);

/// |circle mean of log|f| at radius r  -  sum over pairs x_j < r of 2 log(r/x_j)|.
/// Jensen's formula makes this an identity; the residual measures quadrature
/// error only. n_panels = 0 chooses the adaptive circle mean; a positive
/// value forces a fixed trapezoid panel count.
double jensen_residual(const ZeroConfig& config, double r, int n_panels = 0);

/// Moduli |zeta_j| of an arbitrary finite configuration, sorted ascending.
/// Counting functions in discs are preserved exactly.
std::vector<double> radial_project(std::span<const Complex> zeros);

/// Rescaled log-modulus of a configuration of complex zero pairs +-zeta_j:
/// T^-1 * sum_j log|1 - (Tz)^2/zeta_j^2|. Used to probe the radial-projection
/// inequality on non-real configurations.
double pair_potential(std::span<const Complex> pair_zeros, double scale, Complex z);

}  // namespace exttype
