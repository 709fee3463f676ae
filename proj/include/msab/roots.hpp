#pragma once
// Bracketed scalar root refinement (TOMS 748) with bracket diagnostics and
// small finite-difference helpers shared by the radial modules.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "core.hpp"

namespace msab::roots {

/// Refines a root of f inside [lo, hi]; f(lo) and f(hi) must differ in sign.
/// The result is accurate to a few ulps of the root.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, int max_iter = 300) {
    if (!(lo < hi)) throw numerical_error("root bracket is empty", lo, hi);
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0) == (fhi > 0)) {
        std::ostringstream os;
        os.precision(17);
        os << "no sign change in root bracket [" << lo << ", " << hi << "]";
        throw numerical_error(os.str(), lo, hi);
    }
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
    std::pair<double, double> r;
    try {
        r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    } catch (const std::exception& e) {
        throw numerical_error(std::string("root refinement failed: ") + e.what(), lo, hi);
    }
    if (iters >= static_cast<std::uintmax_t>(max_iter)) {
        std::ostringstream os;
        os.precision(17);
        os << "root refinement did not converge in [" << lo << ", " << hi << "]";
        throw numerical_error(os.str(), lo, hi);
    }
    return 0.5 * (r.first + r.second);
}

/// Five-point central first derivative.
template <class F>
double derivative5(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

/// Richardson-extrapolated central derivative (independent cross-check).
template <class F>
double derivative_richardson(F&& f, double x, double h, int levels = 6) {
    double T[8][8];
    levels = std::min(levels, 8);
    for (int i = 0; i < levels; ++i) {
        double hi = h / std::pow(2.0, i);
        T[i][0] = (f(x + hi) - f(x - hi)) / (2 * hi);
        double p = 4.0;
        for (int j = 1; j <= i; ++j, p *= 4.0) T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (p - 1);
    }
    return T[levels - 1][levels - 1];
}

/// Sixth-order central first derivative.
template <class F>
double derivative7(F&& f, double x, double h) {
    return (-f(x - 3 * h) + 9 * f(x - 2 * h) - 45 * f(x - h) + 45 * f(x + h) - 9 * f(x + 2 * h) +
            f(x + 3 * h)) /
           (60 * h);
}

/// Sixth-order central second derivative.
template <class F>
double second_derivative7(F&& f, double x, double h) {
    return (2 * f(x - 3 * h) - 27 * f(x - 2 * h) + 270 * f(x - h) - 490 * f(x) + 270 * f(x + h) -
            27 * f(x + 2 * h) + 2 * f(x + 3 * h)) /
           (180 * h * h);
}

}  // namespace msab::roots
