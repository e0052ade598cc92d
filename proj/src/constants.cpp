#include "exttype/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "exttype/numerics.hpp"

namespace exttype {

double eval_defect(double c_trial) {
    if (!(c_trial > 0.0)) {
        std::ostringstream msg;
        msg << "eval_defect: c must be positive (right-hand side singular at 0), got " << c_trial;
        throw std::invalid_argument(msg.str());
    }
    return std::log(std::sqrt(c_trial * c_trial + 1.0) + c_trial) -
           std::sqrt(1.0 + 1.0 / (c_trial * c_trial));
}

ExtremalConstants solve_extremal_constant(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_extremal_constant: tol must be positive");

    const Bracket bracket{1.0, 2.0};
    // defect is strictly increasing; the sign check below is what certifies
    // the default bracket before handing it to the root finder
    if (!(eval_defect(bracket.lo) < 0.0 && eval_defect(bracket.hi) > 0.0))
        throw std::runtime_error("solve_extremal_constant: default bracket lost its sign change");

    const double c = find_root([](double x) { return eval_defect(x); }, bracket, tol);
    ExtremalConstants out;
    out.c = c;
    out.k = std::sqrt(c * c + 1.0);
    out.b = std::numbers::pi * c / 2.0;
    out.tol = std::abs(eval_defect(c));
    return out;
}

BoundTriple classical_bounds(double tol) {
    const ExtremalConstants ec = solve_extremal_constant(tol);
    return BoundTriple{2.0 / std::numbers::pi, ec.c, 2.0 * std::numbers::e / std::numbers::pi};
}

}  // namespace exttype
