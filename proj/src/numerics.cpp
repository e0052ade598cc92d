#include "exttype/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace exttype {

namespace {

// G7/K15 nodes and weights on [-1, 1] (QUADPACK dqk15 constants).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
// Gauss weights for the embedded 7-point rule (odd Kronrod indices).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    Complex value;
    double err;
};

// One G7/K15 evaluation on [a, b] with the QUADPACK error refinement.
Panel gk15(const std::function<Complex(double)>& g, double a, double b, long& evaluations) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<Complex, 15> fv;
    fv[7] = g(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        fv[i] = g(mid - dx);
        fv[14 - i] = g(mid + dx);
    }
    evaluations += 15;

    Complex kron{0.0, 0.0}, gauss{0.0, 0.0};
    double resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const Complex pair = (i == 7) ? fv[7] : fv[i] + fv[14 - i];
        kron += kKronrodWeights[i] * pair;
        resabs += kKronrodWeights[i] * ((i == 7) ? std::abs(fv[7]) : std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    for (int j = 0; j < 4; ++j) {
        const int i = 2 * j + 1;
        gauss += kGaussWeights[j] * ((i == 7) ? fv[7] : fv[i] + fv[14 - i]);
    }

    const Complex mean = kron / 15.0;
    double resasc = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dev = (i == 7) ? std::abs(fv[7] - mean)
                                    : std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean);
        resasc += kKronrodWeights[i] * dev;
    }

    const double scale = std::abs(half);
    double err = std::abs(kron - gauss) * scale;
    resabs *= scale;
    resasc *= scale;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_guard = 100.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, round_guard);

    return {a, b, kron * half, err};
}

}  // namespace

namespace detail {

QuadResult adaptive_gk(const std::function<Complex(double)>& g, double a, double b,
                       double tol, int max_intervals) {
    QuadResult out;
    if (a == b) {
        out.value = 0.0;
        out.evaluations = 1;
        g(a);  // still probe the integrand so a NaN cannot hide
        return out;
    }
    if (a > b) {
        QuadResult rev = adaptive_gk(g, b, a, tol, max_intervals);
        rev.value = -rev.value;
        return rev;
    }

    std::vector<Panel> heap;
    auto by_err = [](const Panel& lhs, const Panel& rhs) { return lhs.err < rhs.err; };

    heap.push_back(gk15(g, a, b, out.evaluations));
    Complex total = heap.front().value;
    double toterr = heap.front().err;

    while (toterr > tol && static_cast<int>(heap.size()) < max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), by_err);
        const Panel worst = heap.back();
        heap.pop_back();

        const double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b)) {
            // still a dominant error on an interval of machine width: the
            // integrand is effectively singular on the path
            out.value = total;
            out.err_estimate = toterr;
            std::ostringstream msg;
            msg << "adaptive quadrature hit machine resolution near t = " << worst.a
                << " with local error " << worst.err << " (singular integrand?)";
            throw QuadratureError(msg.str(), out);
        }
        const Panel left = gk15(g, worst.a, m, out.evaluations);
        const Panel right = gk15(g, m, worst.b, out.evaluations);

        total += left.value + right.value - worst.value;
        toterr += left.err + right.err - worst.err;

        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_err);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_err);
    }

    // Re-sum for a sharper total (heap updates accumulate rounding).
    total = Complex{0.0, 0.0};
    toterr = 0.0;
    std::sort(heap.begin(), heap.end(), [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
    for (const Panel& p : heap) {
        total += p.value;
        toterr += p.err;
    }

    out.value = total;
    out.err_estimate = toterr;
    if (toterr > tol) {
        std::ostringstream msg;
        msg << "adaptive quadrature did not converge on [" << a << ", " << b
            << "]: error estimate " << toterr << " > tol " << tol << " after "
            << heap.size() << " panels";
        throw QuadratureError(msg.str(), out);
    }
    return out;
}

}  // namespace detail

QuadResult integrate_contour(const ComplexFn& f, std::span<const Complex> path, double tol) {
    if (path.size() < 2)
        throw std::invalid_argument("integrate_contour: path needs at least two points");
    if (!(tol > 0.0))
        throw std::invalid_argument("integrate_contour: tol must be positive");

    double total_len = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i) total_len += std::abs(path[i + 1] - path[i]);

    auto guarded = [&f](Complex zeta) {
        const Complex val = f(zeta);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
            std::ostringstream msg;
            msg << "integrand returned a non-finite value at zeta = (" << zeta.real()
                << ", " << zeta.imag() << ")";
            throw QuadratureError(msg.str(), QuadResult{});
        }
        return val;
    };

    QuadResult out;
    if (total_len == 0.0) {
        guarded(path.front());
        out.evaluations = 1;
        return out;
    }

    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const Complex za = path[i];
        const Complex zb = path[i + 1];
        const double len = std::abs(zb - za);
        if (len == 0.0) continue;

        const Complex dz = zb - za;
        auto g = [&](double t) { return guarded(za + t * dz) * dz; };
        const double seg_tol = 0.9 * tol * (len / total_len);

        QuadResult seg;
        try {
            seg = detail::adaptive_gk(g, 0.0, 1.0, seg_tol);
        } catch (QuadratureError& e) {
            QuadResult partial = e.partial();
            partial.value += out.value;
            partial.err_estimate += out.err_estimate;
            partial.evaluations += out.evaluations;
            throw QuadratureError(e.what(), partial);
        }
        out.value += seg.value;
        out.err_estimate += seg.err_estimate;
        out.evaluations += seg.evaluations;
    }
    return out;
}

QuadResult principal_value(const RealFn& f, double a, double b, double s, double tol,
                           PvMechanism mechanism) {
    if (!(a < s && s < b)) {
        std::ostringstream msg;
        msg << "principal_value: pole s = " << s << " must lie strictly inside (" << a
            << ", " << b << ")";
        throw std::invalid_argument(msg.str());
    }
    if (!(tol > 0.0))
        throw std::invalid_argument("principal_value: tol must be positive");

    auto wrap = [&f](double t) {
        const double v = f(t);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "principal_value: integrand non-finite at t = " << t;
            throw QuadratureError(msg.str(), QuadResult{});
        }
        return Complex{v, 0.0};
    };

    const double w = 0.5 * std::min(s - a, b - s);
    QuadResult out;

    if (mechanism == PvMechanism::symmetric_pairing) {
        auto folded = [&](double t) { return wrap(s + t) + wrap(s - t); };
        const QuadResult lo = detail::adaptive_gk([&](double t) { return wrap(t); }, a, s - w, tol / 3);
        const QuadResult mid = detail::adaptive_gk(folded, 0.0, w, tol / 3);
        const QuadResult hi = detail::adaptive_gk([&](double t) { return wrap(t); }, s + w, b, tol / 3);
        out.value = lo.value + mid.value + hi.value;
        out.err_estimate = lo.err_estimate + mid.err_estimate + hi.err_estimate;
        out.evaluations = lo.evaluations + 2 * mid.evaluations + hi.evaluations;
        return out;
    }

    // Pole subtraction. Residue R = lim (t-s) f(t) by Richardson extrapolation
    // of the centred means m(h) = (g(s+h) + g(s-h))/2, g(t) = (t-s) f(t).
    const double h0 = w / 4.0;
    std::array<double, 4> m{};
    for (int i = 0; i < 4; ++i) {
        const double h = h0 / (1 << i);
        m[i] = 0.5 * (h * f(s + h) - h * f(s - h));
    }
    // successive h^2 eliminations
    std::array<double, 4> r = m;
    double pow4 = 4.0;
    for (int lvl = 1; lvl < 4; ++lvl) {
        for (int i = 3; i >= lvl; --i) r[i] = (pow4 * r[i] - r[i - 1]) / (pow4 - 1.0);
        pow4 *= 4.0;
    }
    const double residue = r[3];
    const double residue_err = std::abs(r[3] - r[2]);

    auto regular = [&](double t) { return wrap(t) - Complex{residue / (t - s), 0.0}; };
    const QuadResult lo = detail::adaptive_gk(regular, a, s, tol / 2);
    const QuadResult hi = detail::adaptive_gk(regular, s, b, tol / 2);
    out.value = lo.value + hi.value + residue * std::log((b - s) / (s - a));
    out.err_estimate = lo.err_estimate + hi.err_estimate +
                       residue_err * std::abs(std::log((b - s) / (s - a)));
    out.evaluations = lo.evaluations + hi.evaluations + 8;
    return out;
}

double find_root(const RealFn& F, Bracket bracket, double tol) {
    if (!(bracket.lo < bracket.hi))
        throw std::invalid_argument("find_root: bracket must satisfy lo < hi");
    if (!(tol > 0.0))
        throw std::invalid_argument("find_root: tol must be positive");

    double a = bracket.lo, b = bracket.hi;
    double fa = F(a), fb = F(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw std::invalid_argument("find_root: non-finite function value at a bracket endpoint");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg << "find_root: no sign change on bracket [" << a << ", " << b << "]: F(lo) = " << fa
            << ", F(hi) = " << fb;
        throw std::invalid_argument(msg.str());
    }

    // Brent: inverse quadratic / secant steps guarded by bisection.
    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr int kMaxIter = 200;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if ((std::abs(xm) <= tol1 && std::abs(fb) <= tol) || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = F(b);
    }
    throw std::runtime_error("find_root: no convergence within iteration limit");
}

namespace {

// Arc-wise adaptive fallback for circles carrying integrable spikes: split at
// the offending angles and integrate each smooth arc.
double circle_mean_arcs(const PlaneFn& v, double r, const std::vector<double>& spikes, double tol) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::vector<double> cuts = spikes;
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto g = [&](double theta) {
        const double val = v(Complex{r * std::cos(theta), r * std::sin(theta)});
        if (!std::isfinite(val)) {
            std::ostringstream msg;
            msg << "circle_mean: non-finite sample inside an arc at theta = " << theta;
            throw QuadratureError(msg.str(), QuadResult{});
        }
        return Complex{val, 0.0};
    };

    double total = 0.0;
    const size_t m = cuts.size();
    for (size_t i = 0; i < m; ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < m) ? cuts[i + 1] : cuts[0] + kTwoPi;
        total += detail::adaptive_gk(g, lo, hi, tol * (hi - lo) / kTwoPi, 6000).value.real();
    }
    return total / kTwoPi;
}

}  // namespace

double circle_mean(const PlaneFn& v, double r, int n, double tol, int max_refine) {
    if (!(r > 0.0)) throw std::invalid_argument("circle_mean: radius must be positive");
    if (n < 16) throw std::invalid_argument("circle_mean: need at least 16 sample panels");
    if (!(tol > 0.0)) throw std::invalid_argument("circle_mean: tol must be positive");

    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    constexpr int kMaxSpikes = 8;

    long m = n;
    std::vector<double> spikes;
    std::vector<double> vals(m);
    double sum = 0.0;
    for (long j = 0; j < m; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
        vals[j] = v(Complex{r * std::cos(theta), r * std::sin(theta)});
        if (std::isfinite(vals[j])) sum += vals[j];
    }
    // spike = non-finite sample, or an isolated dip a log-singularity leaves
    // when floating point lands within rounding distance of it
    for (long j = 0; j < m; ++j) {
        const double left = vals[(j + m - 1) % m];
        const double right = vals[(j + 1) % m];
        const bool isolated_dip = std::isfinite(vals[j]) && std::isfinite(left) &&
                                  std::isfinite(right) && left - vals[j] > 25.0 &&
                                  right - vals[j] > 25.0;
        if (!std::isfinite(vals[j]) || isolated_dip) {
            spikes.push_back(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
            if (static_cast<int>(spikes.size()) > kMaxSpikes)
                throw std::runtime_error(
                    "circle_mean: non-finite samples on more than a measure-zero set");
        }
    }
    if (!spikes.empty()) return circle_mean_arcs(v, r, spikes, tol);

    // Romberg on the periodic trapezoid means; each refinement doubles m by
    // sampling the midpoints of the current panels.
    std::vector<double> row{sum / static_cast<double>(m)};
    if (max_refine <= 0) return row.back();  // fixed panel count requested
    for (int level = 1; level <= max_refine; ++level) {
        double mid_sum = 0.0;
        for (long j = 0; j < m; ++j) {
            const double theta = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
            const double val = v(Complex{r * std::cos(theta), r * std::sin(theta)});
            if (!std::isfinite(val)) {
                spikes.push_back(theta);
                if (static_cast<int>(spikes.size()) > kMaxSpikes)
                    throw std::runtime_error(
                        "circle_mean: non-finite samples on more than a measure-zero set");
                continue;
            }
            mid_sum += val;
        }
        if (!spikes.empty()) return circle_mean_arcs(v, r, spikes, tol);

        sum += mid_sum;
        m *= 2;
        std::vector<double> next{sum / static_cast<double>(m)};
        double pow4 = 4.0;
        for (double prev : row) {
            next.push_back((pow4 * next.back() - prev) / (pow4 - 1.0));
            pow4 *= 4.0;
        }
        const double err = std::abs(next.back() - row.back());
        row = std::move(next);
        if (level >= 2 && err <= tol) return row.back();
    }
    throw std::runtime_error("circle_mean: no convergence within the refinement budget");
}

}  // namespace exttype
