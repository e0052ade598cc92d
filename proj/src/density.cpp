#include "exttype/density.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace exttype {

namespace {

// eval_phi rejects a hair-thin band around the atom preimage; counting values
// there are the one-sided limits the map already determines.
constexpr double kAtomGuard = 1e-9;

}  // namespace

double counting_function(double x, const ExtremalMap& map) {
    if (!(x >= 0.0)) throw std::invalid_argument("counting_function: x must be nonnegative");
    double x_eval = x;
    if (x >= 1.0 && x < 1.0 + kAtomGuard) x_eval = 1.0 + kAtomGuard;  // right limit at the atom
    if (x < 1.0 && x > 1.0 - kAtomGuard) x_eval = 1.0 - kAtomGuard;
    const Complex w = eval_phi(Complex{x_eval, 0.0}, map);
    return (2.0 / std::numbers::pi) * w.real();
}

double ac_density(double x, const ExtremalMap& map) {
    const double k = map.constants.k;
    if (!(x > k)) {
        std::ostringstream msg;
        msg << "ac_density: defined for x > k = " << k
            << " only (the measure below is the atom plus a gap), got " << x;
        throw std::invalid_argument(msg.str());
    }
    return (2.0 / std::numbers::pi) * x * std::sqrt(x * x - k * k) / (x * x - 1.0);
}

double ac_mass(double x_lo, double x_hi, const ExtremalMap& map, double tol) {
    const double k = map.constants.k;
    const double c2 = map.constants.c * map.constants.c;
    if (!(x_lo >= k && x_hi >= x_lo)) {
        std::ostringstream msg;
        msg << "ac_mass: need k <= x_lo <= x_hi, got [" << x_lo << ", " << x_hi << "]";
        throw std::invalid_argument(msg.str());
    }
    // band-edge substitution x = sqrt(k^2 + t^2) turns the density into the
    // smooth (2/pi) t^2/(t^2 + c^2)
    const double t_lo = std::sqrt(std::max(x_lo * x_lo - k * k, 0.0));
    const double t_hi = std::sqrt(std::max(x_hi * x_hi - k * k, 0.0));
    const QuadResult q = detail::adaptive_gk(
        [c2](double t) {
            return Complex{(2.0 / std::numbers::pi) * t * t / (t * t + c2), 0.0};
        },
        t_lo, t_hi, tol);
    return q.value.real();
}

DensityProfile density_profile(std::span<const double> r_grid, const ExtremalMap& map) {
    if (r_grid.empty()) throw std::invalid_argument("density_profile: empty grid");
    bool has_one = false;
    for (size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0))
            throw std::invalid_argument("density_profile: grid radii must be positive");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw std::invalid_argument("density_profile: grid must be strictly increasing");
        if (std::abs(r_grid[i] - 1.0) < 1e-12) has_one = true;
    }
    if (!has_one)
        throw std::invalid_argument("density_profile: grid must contain r = 1 (the density peak)");

    DensityProfile profile;
    profile.radii.assign(r_grid.begin(), r_grid.end());
    profile.ratio.reserve(r_grid.size());
    for (double r : r_grid) profile.ratio.push_back(counting_function(r, map) / r);
    return profile;
}

double CountingFunction::total_on(double x) const { return counting_function(x, map); }

double CountingFunction::ac_density(double x) const { return exttype::ac_density(x, map); }

CountingFunction make_counting_function(const ExtremalMap& map) {
    CountingFunction cf;
    cf.atom_location = 1.0;
    cf.atom_mass = map.constants.c;
    cf.ac_support_start = map.constants.k;
    cf.map = map;
    return cf;
}

}  // namespace exttype
