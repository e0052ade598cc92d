#pragma once

// Independent reference values and closed forms for the test suites. The
// formulas here come from elementary antiderivatives of the map integrand
// (substitutions u = sqrt(k^2 -+ s^2)); none of them share code with the
// quadrature-based implementation they check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

// Root of log(sqrt(c^2+1)+c) = sqrt(1+c^-2) and its derived companions,
// frozen from a 40-digit offline solve.
constexpr double kC = 1.5088795615383199;
constexpr double kK = 1.8101705806989773;
constexpr double kB = 2.3701424728402871;
constexpr double kPiC = 4.7402849456805742;
constexpr double kSineDensity = 0.63661977236758134;   // 2/pi
constexpr double kJensenBound = 1.7305119588645302;    // 2e/pi

// p.v. integral of sqrt(k^2 - z)/(z - 1) over [0, k^2]:
// 2 sqrt(k^2-1) log(k + sqrt(k^2-1)) - 2k.
inline double pv_closed_form(double k) {
    const double c = std::sqrt(k * k - 1.0);
    return 2.0 * c * std::log(k + c) - 2.0 * k;
}

// Im phi0 on [0, k] \ {1} (boundary values from above):
// G(u) = u + (c/2) log(|u-c|/(u+c)) evaluated at u = sqrt(k^2 - x^2), minus G(k).
inline double im_phi_slit(double x, double c = kC, double k = kK) {
    auto G = [c](double u) { return u + 0.5 * c * std::log(std::abs(u - c) / (u + c)); };
    return G(std::sqrt(k * k - x * x)) - G(k);
}

// Im phi0 on the positive imaginary axis: same antiderivative continued past
// u = k, evaluated at u = sqrt(y^2 + k^2).
inline double im_phi_imag_axis(double y, double c = kC, double k = kK) {
    auto W = [c](double u) { return u + 0.5 * c * std::log((u - c) / (u + c)); };
    return W(std::sqrt(y * y + k * k)) - W(k);
}

// Re phi0 on the real-axis tail x > k.
inline double re_phi_tail(double x, double c = kC, double k = kK) {
    const double u = std::sqrt(x * x - k * k);
    return std::numbers::pi * c / 2.0 + u - c * std::atan(u / c);
}

// Mass of the a.c. part of mu between k and x.
inline double ac_mass_closed(double x, double c = kC, double k = kK) {
    const double u = std::sqrt(x * x - k * k);
    return (2.0 / std::numbers::pi) * (u - c * std::atan(u / c));
}

// Brute-force midpoint Riemann sum along a polyline; deliberately naive.
inline std::complex<double> riemann_polyline(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::span<const std::complex<double>> path, long n_per_segment) {
    std::complex<double> total{0.0, 0.0};
    for (size_t s = 0; s + 1 < path.size(); ++s) {
        const std::complex<double> dz = path[s + 1] - path[s];
        for (long i = 0; i < n_per_segment; ++i) {
            const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n_per_segment);
            total += f(path[s] + t * dz) * dz / static_cast<double>(n_per_segment);
        }
    }
    return total;
}

// Brute-force symmetric-epsilon principal value by midpoint sums.
inline double pv_riemann(const std::function<double(double)>& f, double a, double b, double s,
                         double eps, long n) {
    auto chunk = [&](double lo, double hi) {
        double acc = 0.0;
        const double h = (hi - lo) / static_cast<double>(n);
        for (long i = 0; i < n; ++i) acc += f(lo + (static_cast<double>(i) + 0.5) * h) * h;
        return acc;
    };
    return chunk(a, s - eps) + chunk(s + eps, b);
}

}  // namespace oracle
