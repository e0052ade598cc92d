#include "exttype/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace exttype {

namespace {

size_t worker_count() {
    size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    n = std::min<size_t>(n, 8);
    if (const char* env = std::getenv("EXTTYPE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min<size_t>(n, static_cast<size_t>(cap));
    }
    return n;
}

// Deterministic parallel map over [0, n): contiguous chunks, results written
// by index, so the outcome is independent of the thread count.
template <class Fn>
void parallel_for(size_t n, const Fn& fn) {
    const size_t workers = std::min(worker_count(), n == 0 ? size_t{1} : n);
    if (workers <= 1 || n < 32) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t lo = w * chunk;
        const size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

double potential_term(Complex w, double radius_sq) {
    // log |1 - w/x^2| for w = (Tz)^2
    return std::log(std::abs(1.0 - w / radius_sq));
}

}  // namespace

ZeroConfig place_zeros(double T, const ExtremalMap& map, double r_max_factor) {
    if (!(T >= 50.0)) throw std::invalid_argument("place_zeros: need scale T >= 50");
    if (!(r_max_factor >= 5.0)) throw std::invalid_argument("place_zeros: need r_max_factor >= 5");

    const double c = map.constants.c;
    const double k = map.constants.k;
    const double s_max = r_max_factor * k;  // scaled truncation radius

    ZeroConfig config;
    config.scale = T;
    config.truncation_radius = s_max * T;

    // the atom at scaled radius 1 carries mass c: floor(c*T/2) coincident
    // pairs, i.e. floor(c*T) zeros of f up to pair parity
    const long atom_pairs = static_cast<long>(std::floor(c * T / 2.0 + 1e-9));
    config.radii.assign(atom_pairs, T);

    // a.c. part: one pair per mass 2/T at the quantile midpoints, inverted on
    // the band-edge substitution t = sqrt(s^2 - k^2) where the cumulative mass
    // has the smooth density (2/pi) t^2/(t^2 + c^2)
    const double c2 = c * c;
    const double t_max = std::sqrt(s_max * s_max - k * k);
    auto mass_rate = [c2](double t) {
        return Complex{(2.0 / std::numbers::pi) * t * t / (t * t + c2), 0.0};
    };

    constexpr int kPanels = 2048;
    std::vector<double> grid_t(kPanels + 1), grid_m(kPanels + 1);
    grid_t[0] = 0.0;
    grid_m[0] = 0.0;
    for (int i = 1; i <= kPanels; ++i) {
        grid_t[i] = t_max * static_cast<double>(i) / kPanels;
        grid_m[i] = grid_m[i - 1] +
                    detail::adaptive_gk(mass_rate, grid_t[i - 1], grid_t[i], 1e-13).value.real();
    }
    const double total_mass = grid_m.back();
    const long ac_pairs = static_cast<long>(std::floor(total_mass * T / 2.0 + 1e-9));
    config.radii.reserve(atom_pairs + ac_pairs);

    auto mass_at = [&](double t, int panel) {
        return grid_m[panel] +
               detail::adaptive_gk(mass_rate, grid_t[panel], t, 1e-13).value.real();
    };

    double t_guess = grid_t[1];
    for (long j = 1; j <= ac_pairs; ++j) {
        const double target = (2.0 * j - 1.0) / T;
        const auto it = std::upper_bound(grid_m.begin(), grid_m.end(), target);
        const int panel = std::max<int>(0, static_cast<int>(it - grid_m.begin()) - 1);
        double lo = grid_t[panel];
        double hi = (panel + 1 <= kPanels) ? grid_t[panel + 1] : t_max;

        double t = std::clamp(t_guess, lo, hi);
        bool converged = false;
        for (int iter = 0; iter < 60; ++iter) {
            const double f = mass_at(t, panel) - target;
            if (std::abs(f) < 1e-12) {
                converged = true;
                break;
            }
            if (f > 0.0) hi = t; else lo = t;
            const double slope = mass_rate(t).real();
            const double step = (slope > 0.0) ? t - f / slope : 0.5 * (lo + hi);
            t = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "place_zeros: quantile inversion stalled at mass " << target;
            throw std::runtime_error(msg.str());
        }
        t_guess = t;
        config.radii.push_back(T * std::sqrt(k * k + t * t));
    }

    std::sort(config.radii.begin(), config.radii.end());
    return config;
}

double scaled_log_modulus(const ZeroConfig& config, Complex z) {
    const double T = config.scale;
    const Complex w = (T * z) * (T * z);
    double sum = 0.0;
    for (double x : config.radii) {
        const double term = potential_term(w, x * x);
        if (term == -std::numeric_limits<double>::infinity()) return term;  // exact zero hit
        sum += term;
    }
    return sum / T;
}

std::vector<double> scaled_log_modulus_grid(const ZeroConfig& config, std::span<const Complex> zs) {
    std::vector<double> out(zs.size());
    parallel_for(zs.size(), [&](size_t i) { out[i] = scaled_log_modulus(config, zs[i]); });
    return out;
}

IndicatorProfile indicator_estimate(const ZeroConfig& config, std::span<const double> thetas,
                                    std::span<const double> radii) {
    const double r_hi = 0.8 * config.truncation_radius / config.scale;
    for (double r : radii) {
        if (!(r > 0.2 && r < r_hi)) {
            std::ostringstream msg;
            msg << "indicator_estimate: scaled radius " << r << " outside (0.2, " << r_hi << ")";
            throw std::invalid_argument(msg.str());
        }
    }
    for (double th : thetas) {
        if (!(th >= 0.01 && th <= std::numbers::pi - 0.01))
            throw std::invalid_argument(
                "indicator_estimate: thetas must keep distance >= 0.01 from 0 and pi");
    }

    IndicatorProfile profile;
    profile.thetas.assign(thetas.begin(), thetas.end());
    profile.radii_used.assign(radii.begin(), radii.end());
    profile.h_est.assign(thetas.size(), 0.0);

    parallel_for(thetas.size(), [&](size_t i) {
        const double th = profile.thetas[i];
        double best = -std::numeric_limits<double>::infinity();
        for (double r : radii) {
            const Complex z{r * std::cos(th), r * std::sin(th)};
            best = std::max(best, scaled_log_modulus(config, z) / r);
        }
        profile.h_est[i] = best;
    });
    return profile;
}

double jensen_residual(const ZeroConfig& config, double r, int n_panels) {
    if (!(r > 0.0)) throw std::invalid_argument("jensen_residual: radius must be positive");
    for (double x : config.radii) {
        if (std::abs(x - r) < 1e-9 * std::max(1.0, r)) {
            std::ostringstream msg;
            msg << "jensen_residual: r = " << r << " coincides with a zero radius";
            throw std::invalid_argument(msg.str());
        }
    }

    auto log_mod = [&config](Complex z) {
        const Complex zz = z * z;
        double sum = 0.0;
        for (double x : config.radii) sum += std::log(std::abs(1.0 - zz / (x * x)));
        return sum;
    };

    double lhs;
    if (n_panels > 0) {
        lhs = circle_mean(log_mod, r, n_panels, 1e-10, 0);
    } else {
        lhs = circle_mean(log_mod, r, 1024, 1e-9, 16);
    }

    double rhs = 0.0;
    for (double x : config.radii) {
        if (x < r) rhs += 2.0 * std::log(r / x);  // each pair contributes both of +-x
    }
    return std::abs(lhs - rhs);
}

std::vector<double> radial_project(std::span<const Complex> zeros) {
    std::vector<double> moduli;
    moduli.reserve(zeros.size());
    for (Complex z : zeros) moduli.push_back(std::abs(z));
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

double pair_potential(std::span<const Complex> pair_zeros, double scale, Complex z) {
    const Complex w = (scale * z) * (scale * z);
    double sum = 0.0;
    for (Complex zeta : pair_zeros) {
        const double term = std::log(std::abs(1.0 - w / (zeta * zeta)));
        if (term == -std::numeric_limits<double>::infinity()) return term;
        sum += term;
    }
    return sum / scale;
}

}  // namespace exttype
