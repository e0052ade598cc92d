#include "exttype/scmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace exttype {

namespace detail {

Complex slit_sqrt(Complex zeta, double k2) {
    const Complex w = zeta - k2;
    if (w.imag() == 0.0) {
        // on the cut take the upper-edge limit, +i*sqrt(k^2 - zeta)
        const double x = w.real();
        return x < 0.0 ? Complex{0.0, std::sqrt(-x)} : Complex{std::sqrt(x), 0.0};
    }
    return std::sqrt(w);
}

}  // namespace detail

namespace {

void validate_map(const ExtremalMap& map) {
    const double k2 = map.constants.k * map.constants.k;
    const double limit = 0.5 * std::min(1.0, k2 - 1.0);
    if (!(map.constants.c > 0.0) || !(map.constants.k > 1.0))
        throw std::invalid_argument("ExtremalMap: constants not solved");
    if (!(map.pole_detour_radius > 0.0 && map.pole_detour_radius < limit)) {
        std::ostringstream msg;
        msg << "ExtremalMap: pole_detour_radius must lie in (0, " << limit << "), got "
            << map.pole_detour_radius;
        throw std::invalid_argument(msg.str());
    }
    if (!(map.quad_tol > 0.0)) throw std::invalid_argument("ExtremalMap: quad_tol must be positive");
}

Complex sc_integrand(Complex zeta, double k2) {
    return detail::slit_sqrt(zeta, k2) / (zeta - 1.0);
}

// Integral of the map integrand from 0 to X along the upper edge of the cut,
// X real in [0, 1). Values are purely imaginary there.
QuadResult upper_edge_below_pole(double X, double k2, double tol) {
    const std::vector<Complex> path{{0.0, 0.0}, {X, 0.0}};
    return integrate_contour([k2](Complex z) { return sc_integrand(z, k2); }, path, tol);
}

// Integral from 0 to X real > 1 along the upper edge, detouring over the pole
// on a rectangle of half-width rho. Segments beyond a = (1+k^2)/2 are folded
// by the band-edge substitutions zeta = k^2 -+ t^2 so the square-root branch
// point at k^2 never meets the quadrature directly.
QuadResult upper_edge_above_pole(double X, const ExtremalMap& map) {
    const double k2 = map.constants.k * map.constants.k;
    const double c2 = k2 - 1.0;
    const double rho = map.pole_detour_radius;
    const double a_sub = 0.5 * (1.0 + k2);
    const double tol = map.quad_tol;
    auto f = [k2](Complex z) { return sc_integrand(z, k2); };

    QuadResult total;
    auto add = [&total](const QuadResult& part) {
        total.value += part.value;
        total.err_estimate += part.err_estimate;
        total.evaluations += part.evaluations;
    };

    // 0 -> 1-rho on the edge, then over the pole to 1+rho
    const std::vector<Complex> head{{0.0, 0.0}, {1.0 - rho, 0.0}, {1.0 - rho, rho},
                                    {1.0 + rho, rho}, {1.0 + rho, 0.0}};
    add(integrate_contour(f, head, tol));

    // 1+rho -> min(X, a_sub); runs backwards when X < 1+rho, which is still a
    // valid deformation (the overshoot retraces the smooth edge)
    const double mid_end = std::min(X, a_sub);
    const std::vector<Complex> mid{{1.0 + rho, 0.0}, {mid_end, 0.0}};
    add(integrate_contour(f, mid, tol));

    if (X > a_sub) {
        // a_sub -> min(X, k^2): zeta = k^2 - t^2, integrand 2i t^2/(c^2 - t^2)
        const double upper = std::min(X, k2);
        const double t_hi = std::sqrt(k2 - a_sub);
        const double t_lo = std::sqrt(std::max(k2 - upper, 0.0));
        // integration direction in zeta is forward, in t downward; the sign
        // flip is absorbed by ordering the t-limits upward
        add(detail::adaptive_gk(
            [c2](double t) { return Complex{0.0, 2.0 * t * t / (c2 - t * t)}; }, t_lo, t_hi, tol));
        if (X > k2) {
            // k^2 -> X: zeta = k^2 + t^2, integrand 2 t^2/(t^2 + c^2)
            const double t_end = std::sqrt(X - k2);
            add(detail::adaptive_gk(
                [c2](double t) { return Complex{2.0 * t * t / (t * t + c2), 0.0}; }, 0.0, t_end,
                tol));
        }
    }
    return total;
}

// phi0 on the positive real axis (limit from above; x != 1).
Complex phi_on_positive_axis(double x, const ExtremalMap& map) {
    const double X = x * x;
    if (X < 1.0) return 0.5 * upper_edge_below_pole(X, map.constants.k * map.constants.k, map.quad_tol).value;
    return 0.5 * upper_edge_above_pole(X, map).value;
}

// phi0 on the nonnegative imaginary axis: target z^2 = -y^2 lies on the cut,
// reached along its upper edge.
Complex phi_on_imaginary_axis(double y, const ExtremalMap& map) {
    const double k2 = map.constants.k * map.constants.k;
    const std::vector<Complex> path{{0.0, 0.0}, {-y * y, 0.0}};
    const QuadResult q =
        integrate_contour([k2](Complex z) { return sc_integrand(z, k2); }, path, map.quad_tol);
    return 0.5 * q.value;
}

}  // namespace

ExtremalMap make_extremal_map(double tol) {
    ExtremalMap map;
    map.constants = solve_extremal_constant(tol);
    validate_map(map);
    return map;
}

Complex eval_phi(Complex z, const ExtremalMap& map) {
    validate_map(map);
    if (z.imag() < 0.0)
        throw std::invalid_argument("eval_phi: z must lie in the closed upper half-plane");
    if (std::abs(z - Complex{1.0, 0.0}) < 1e-12 || std::abs(z + Complex{1.0, 0.0}) < 1e-12)
        throw std::invalid_argument("eval_phi: Im phi0 diverges at z = +-1");

    // odd symmetry phi0(-conj z) = -conj phi0(z) reduces to Re z >= 0
    if (z.real() < 0.0) return -std::conj(eval_phi(-std::conj(z), map));

    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    if (z.imag() == 0.0) return phi_on_positive_axis(z.real(), map);
    if (z.real() == 0.0) return phi_on_imaginary_axis(z.imag(), map);

    // interior point: z^2 has positive imaginary part; lift the path off the
    // real axis so it clears the pole at 1 and the cut
    const double k2 = map.constants.k * map.constants.k;
    const Complex Z = z * z;
    const double h = std::max({1.0, 0.25 * std::abs(Z), Z.imag()});
    const std::vector<Complex> path{{0.0, 0.0}, {0.0, h}, {Z.real(), h}, Z};
    const QuadResult q =
        integrate_contour([k2](Complex w) { return sc_integrand(w, k2); }, path, map.quad_tol);
    return 0.5 * q.value;
}

double pv_residual(double k_trial, double tol) {
    if (!(k_trial > 1.0)) {
        std::ostringstream msg;
        msg << "pv_residual: need k > 1 so the pole stays inside the cut segment, got " << k_trial;
        throw std::invalid_argument(msg.str());
    }
    if (!(tol > 0.0)) throw std::invalid_argument("pv_residual: tol must be positive");

    const double k2 = k_trial * k_trial;
    const double c2 = k2 - 1.0;
    const double a = 0.5 * (1.0 + k2);  // split ahead of the band edge

    const QuadResult pv = principal_value(
        [k2](double t) { return std::sqrt(k2 - t) / (t - 1.0); }, 0.0, a, 1.0, tol / 2);
    // remaining [a, k^2] under zeta = k^2 - t^2: integrand 2 t^2/(c^2 - t^2),
    // smooth since t stays below c
    const QuadResult edge = detail::adaptive_gk(
        [c2](double t) { return Complex{2.0 * t * t / (c2 - t * t), 0.0}; }, 0.0,
        std::sqrt(k2 - a), tol / 2);

    return pv.value.real() + edge.value.real();
}

double solve_parameter(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_parameter: tol must be positive");
    const double kernel_tol = std::min(1e-10, tol / 10.0);
    return find_root([kernel_tol](double k) { return pv_residual(k, kernel_tol); },
                     Bracket{1.2, 3.0}, tol);
}

namespace detail {

double extrapolated_real_jump(const ComplexFn& f, std::span<const double> eps_sequence,
                              double quad_tol) {
    if (eps_sequence.size() < 2)
        throw std::invalid_argument("extrapolated_real_jump: need at least two eps values");
    for (size_t i = 0; i < eps_sequence.size(); ++i) {
        if (!(eps_sequence[i] > 0.0) || (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1])))
            throw std::invalid_argument(
                "extrapolated_real_jump: eps values must be positive and strictly decreasing");
    }

    auto one_sided = [&](double X) {
        const double h = 1.0;
        const std::vector<Complex> path{{0.0, 0.0}, {0.0, h}, {X, h}, {X, 0.0}};
        return integrate_contour(f, path, quad_tol).value.real();
    };

    std::vector<double> eps(eps_sequence.begin(), eps_sequence.end());
    std::vector<double> jump(eps.size());
    for (size_t i = 0; i < eps.size(); ++i) {
        const double xp = (1.0 + eps[i]) * (1.0 + eps[i]);
        const double xm = (1.0 - eps[i]) * (1.0 - eps[i]);
        jump[i] = one_sided(xp) - one_sided(xm);
    }

    // Neville extrapolation of jump(eps) to eps = 0:
    // T[i][j] = (eps[i-j] T[i][j-1] - eps[i] T[i-1][j-1]) / (eps[i-j] - eps[i])
    std::vector<double> tab = jump;
    double prev_order = tab.back();
    for (size_t j = 1; j < tab.size(); ++j) {
        prev_order = tab.back();
        for (size_t i = tab.size() - 1; i >= j; --i) {
            tab[i] = (eps[i - j] * tab[i] - eps[i] * tab[i - 1]) / (eps[i - j] - eps[i]);
            if (i == j) break;
        }
    }
    const double extrapolated = tab.back();
    const double spread = std::abs(extrapolated - prev_order);

    if (!(spread < 1e-2 * std::max(1.0, std::abs(extrapolated)))) {
        std::ostringstream msg;
        msg << "extrapolated_real_jump: extrapolation not settling (last correction " << spread
            << "); eps table:";
        for (size_t i = 0; i < eps.size(); ++i) msg << " (" << eps[i] << ", " << jump[i] << ")";
        throw std::runtime_error(msg.str());
    }
    return extrapolated;
}

}  // namespace detail

double jump_at_one(const ExtremalMap& map, std::span<const double> eps_sequence) {
    validate_map(map);
    const double k2 = map.constants.k * map.constants.k;
    return detail::extrapolated_real_jump(
        [k2](Complex z) { return sc_integrand(z, k2); }, eps_sequence, map.quad_tol);
}

BoundaryTrace trace_boundary(const ExtremalMap& map, BoundarySegment segment, int n) {
    validate_map(map);
    if (n < 8) throw std::invalid_argument("trace_boundary: need n >= 8 samples");

    const double k = map.constants.k;
    const double b = map.constants.b;

    double lo = 0.0, hi = 0.0;
    switch (segment) {
        case BoundarySegment::central_slit: lo = 0.0; hi = 1.0; break;
        case BoundarySegment::right_slit_edge: lo = 1.0; hi = k; break;
        case BoundarySegment::real_axis_tail: lo = k; hi = 3.0 * k; break;
    }

    BoundaryTrace trace;
    trace.segment = segment;
    trace.samples.reserve(n);
    trace.residuals.reserve(n);
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (n + 1.0);
        const Complex w = eval_phi(Complex{x, 0.0}, map);
        double residual = 0.0;
        switch (segment) {
            case BoundarySegment::central_slit:
                residual = std::hypot(w.real(), std::max(w.imag(), 0.0));
                break;
            case BoundarySegment::right_slit_edge:
                residual = std::hypot(w.real() - b, std::max(w.imag(), 0.0));
                break;
            case BoundarySegment::real_axis_tail:
                residual = std::hypot(std::max(b - w.real(), 0.0), w.imag());
                break;
        }
        trace.samples.emplace_back(x, w);
        trace.residuals.push_back(residual);
    }
    return trace;
}

}  // namespace exttype
