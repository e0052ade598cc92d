#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace exttype {

using Complex = std::complex<double>;

using ComplexFn = std::function<Complex(Complex)>;
using RealFn = std::function<double(double)>;
using PlaneFn = std::function<double(Complex)>;

/// Quadrature value together with a rigorous-style error estimate and the
/// number of integrand evaluations that produced it.
struct QuadResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0;
    long evaluations = 0;
};

/// Root bracket; the target function must change sign between lo and hi.
struct Bracket {
    double lo;
    double hi;
};

/// Raised when an integrand returns a non-finite value or a quadrature does
/// not converge within its subdivision budget. Carries whatever partial
/// result had been accumulated.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadResult& partial() const { return partial_; }

private:
    QuadResult partial_;
};

/// Integrate f along the polyline through `path` with adaptive Gauss-Kronrod
/// (G7/K15) panels, bisecting the worst panel until the summed error estimate
/// drops below tol. The path may touch branch cuts of f only where f itself
/// supplies the intended one-sided limit.
QuadResult integrate_contour(const ComplexFn& f, std::span<const Complex> path, double tol);

enum class PvMechanism {
    /// Fold the symmetric window around the pole: f(s+t) + f(s-t) is regular,
    /// so the limit of the symmetric-epsilon excision is integrated exactly.
    symmetric_pairing,
    /// Subtract R/(t-s) with a Richardson-extrapolated residue estimate and
    /// add back R*log((b-s)/(s-a)). Independent of the pairing route.
    pole_subtraction,
};

/// Cauchy principal value of f over [a, b] with one simple pole at s,
/// a < s < b. (t-s)*f(t) must extend continuously across s.
QuadResult principal_value(const RealFn& f, double a, double b, double s, double tol,
                           PvMechanism mechanism = PvMechanism::symmetric_pairing);

/// Bracketed root finding, Brent's method with bisection safeguards.
/// Returns x with both the final bracket width and |F(x)| below tol.
double find_root(const RealFn& F, Bracket bracket, double tol);

/// Mean of v over the circle |z| = r: (2*pi)^-1 * integral of v(r e^{i theta}).
/// Periodic trapezoid sums with Romberg extrapolation, doubling the panel
/// count (starting from n >= 16) up to max_refine times. Isolated non-finite
/// samples (integrable log spikes) switch the panel to adaptive quadrature.
double circle_mean(const PlaneFn& v, double r, int n, double tol = 1e-10, int max_refine = 24);

namespace detail {

/// Adaptive G7/K15 on a real interval with a complex-valued integrand.
/// Building block for the public entry points; exposed for reuse by the
/// map evaluator.
QuadResult adaptive_gk(const std::function<Complex(double)>& g, double a, double b,
                       double tol, int max_intervals = 4000);

}  // namespace detail

}  // namespace exttype
