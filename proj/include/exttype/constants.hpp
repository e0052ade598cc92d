#pragma once

namespace exttype {

/// The extremal trio: c solves log(sqrt(c^2+1)+c) = sqrt(1+c^-2), the
/// Schwarz-Christoffel preimage parameter is k = sqrt(c^2+1), and the slit
/// abscissa of the image region is b = pi*c/2. All per unit type (sigma = 1).
struct ExtremalConstants {
    double c = 0.0;
    double k = 0.0;
    double b = 0.0;
    double tol = 0.0;  ///< solve tolerance achieved on the defect
};

/// Classical comparison densities bracketing the extremal constant:
/// 2/pi (sine product) < c < 2e/pi (Jensen bound).
struct BoundTriple {
    double sine_density;
    double extremal;
    double jensen;
};

/// Defect of the defining equation, log(sqrt(c^2+1)+c) - sqrt(1+c^-2).
/// Strictly increasing on (0, inf); its unique zero is the extremal constant.
double eval_defect(double c_trial);

/// Solve the defining equation on the bracket [1, 2] and derive k and b.
ExtremalConstants solve_extremal_constant(double tol);

BoundTriple classical_bounds(double tol = 1e-10);

}  // namespace exttype
