#pragma once
// Special-function kernel: Gamma family, Bessel functions, Kummer's Phi and
// Tricomi's Psi, and the mu-derivative of Phi needed for the logarithmic
// channel.  Boost.Math supplies Gamma/psi/Bessel/1F1, GSL supplies U.

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_hyperg.h>

#include "core.hpp"

namespace msab::specfun {

/// Value together with a forward-accumulated absolute error estimate.
struct SpecFunResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
};

/// Value represented as exp(log_scale) * value, with the derivative of the
/// represented function stored on the same scale.  Used where Gamma ratios
/// would overflow before they cancel.
struct ScaledValue {
    double log_scale = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

/// |value| as log plus sign; value = sign * exp(log_abs).
struct LogValue {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;
    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

/// Exact test for x in {0, -1, -2, ...}.
inline bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

namespace detail {
inline void gsl_quiet() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

template <class F>
double guarded(const char* name, F&& f) {
    try {
        return f();
    } catch (const boost::math::evaluation_error& e) {
        throw numerical_error(std::string(name) + ": " + e.what());
    } catch (const std::overflow_error& e) {
        throw numerical_error(std::string(name) + ": overflow: " + e.what());
    } catch (const std::domain_error& e) {
        throw msab::domain_error(std::string(name) + ": " + e.what());
    }
}
}  // namespace detail

inline double gamma(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("gamma: pole at nonpositive integer");
    return detail::guarded("gamma", [&] { return boost::math::tgamma(x); });
}

/// log|Gamma(x)|.
inline double lgamma_abs(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("lgamma: pole at nonpositive integer");
    return detail::guarded("lgamma", [&] { return boost::math::lgamma(x); });
}

/// 1/Gamma(x) and its derivative -psi(x)/Gamma(x) on a logarithmic scale.
/// Entire: exact zeros at nonpositive integers, where the derivative is
/// (-1)^n n!.
inline ScaledValue gamma_reciprocal_scaled(double x) {
    ScaledValue r;
    if (x > 0.5) {
        r.log_scale = -boost::math::lgamma(x);
        r.value = 1.0;
        r.derivative = -boost::math::digamma(x);
    } else {
        // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi.
        double y = 1.0 - x;
        r.log_scale = boost::math::lgamma(y) - std::log(pi);
        double s = boost::math::sin_pi(x), c = boost::math::cos_pi(x);
        r.value = s;
        r.derivative = pi * c - s * boost::math::digamma(y);
    }
    return r;
}

/// 1/Gamma(x); entire, zero at the poles of Gamma.
inline double gamma_reciprocal(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 0.5 && x < 170) return 1.0 / boost::math::tgamma(x);
    auto s = gamma_reciprocal_scaled(x);
    return s.value * std::exp(s.log_scale);
}

inline double digamma(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("digamma: pole at nonpositive integer");
    return detail::guarded("digamma", [&] { return boost::math::digamma(x); });
}

inline double trigamma(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("trigamma: pole at nonpositive integer");
    return detail::guarded("trigamma", [&] { return boost::math::trigamma(x); });
}

/// Bessel function of the first kind, real order nu >= -1.
inline double bessel_j(double nu, double x) {
    if (!(x > 0)) throw domain_error("bessel_j: x must be > 0");
    return detail::guarded("bessel_j", [&] { return boost::math::cyl_bessel_j(nu, x); });
}

/// Neumann function N_0 = Y_0.
inline double bessel_y0(double x) {
    if (!(x > 0)) throw domain_error("bessel_y0: x must be > 0");
    return detail::guarded("bessel_y0", [&] { return boost::math::cyl_neumann(0.0, x); });
}

/// Macdonald function K_nu (even in nu).
inline double bessel_k(double nu, double x) {
    if (!(x > 0)) throw domain_error("bessel_k: x must be > 0");
    return detail::guarded("bessel_k", [&] { return boost::math::cyl_bessel_k(std::abs(nu), x); });
}

/// Phi(-n, b; z) for integer n >= 0 via the three-term recurrence in the first
/// parameter (the generalized Laguerre recurrence), which is stable upward.
inline double kummer_m_terminating(int n, double b, double z) {
    double prev = 1.0;  // Phi(0)
    if (n == 0) return prev;
    double cur = 1.0 - z / b;  // Phi(-1)
    for (int k = 1; k < n; ++k) {
        double next = ((2.0 * k + b - z) * cur - k * prev) / (b + k);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Kummer's confluent hypergeometric function Phi(alpha, beta; z) = 1F1.
inline double kummer_m(double alpha, double beta, double z) {
    if (is_nonpositive_integer(beta))
        throw pole_error("kummer_m: beta is a nonpositive integer; use kummer_m_over_gamma_beta");
    if (!(z >= 0)) throw domain_error("kummer_m: z must be >= 0");
    if (z == 0.0 || alpha == 0.0) return 1.0;
    if (is_nonpositive_integer(alpha) && alpha > -1e6 && beta > 0)
        return kummer_m_terminating(static_cast<int>(-alpha), beta, z);
    return detail::guarded("kummer_m",
                           [&] { return boost::math::hypergeometric_1F1(alpha, beta, z); });
}

/// Phi(alpha, beta; z) / Gamma(beta), entire in beta.  At beta = -n the
/// limit is (alpha)_{n+1} z^{n+1}/(n+1)! Phi(alpha+n+1, n+2; z).
inline double kummer_m_over_gamma_beta(double alpha, double beta, double z) {
    if (!(z >= 0)) throw domain_error("kummer_m_over_gamma_beta: z must be >= 0");
    if (is_nonpositive_integer(beta)) {
        int n = static_cast<int>(-beta);
        double c = 1.0;  // (alpha)_{n+1} z^{n+1} / (n+1)!
        for (int k = 0; k <= n; ++k) c *= (alpha + k) * z / (k + 1);
        if (c == 0.0) return 0.0;
        return c * kummer_m(alpha + n + 1, n + 2, z);
    }
    return gamma_reciprocal(beta) * kummer_m(alpha, beta, z);
}

/// Tricomi's Psi(alpha, beta; z) = U(a, b, z) as log-magnitude and sign,
/// valid where the value itself over- or underflows.
inline LogValue tricomi_u_log(double alpha, double beta, double z) {
    if (!(z > 0)) throw domain_error("tricomi_u: z must be > 0");
    detail::gsl_quiet();
    gsl_sf_result_e10 r;
    int status = gsl_sf_hyperg_U_e10_e(alpha, beta, z, &r);
    if (status != GSL_SUCCESS && status != GSL_EUNDRFLW)
        throw numerical_error(std::string("tricomi_u: ") + gsl_strerror(status));
    LogValue out;
    if (r.val == 0.0) return out;
    out.sign = r.val > 0 ? 1 : -1;
    out.log_abs = std::log(std::abs(r.val)) + r.e10 * std::log(10.0);
    return out;
}

/// Tricomi's Psi(alpha, beta; z) with GSL's error estimate.  Integer beta is
/// handled by GSL's dedicated limit expansions, not the connection formula.
inline SpecFunResult tricomi_u_result(double alpha, double beta, double z) {
    if (!(z > 0)) throw domain_error("tricomi_u: z must be > 0");
    detail::gsl_quiet();
    gsl_sf_result_e10 r;
    int status = gsl_sf_hyperg_U_e10_e(alpha, beta, z, &r);
    if (status != GSL_SUCCESS && status != GSL_EUNDRFLW)
        throw numerical_error(std::string("tricomi_u: ") + gsl_strerror(status));
    double scale = std::pow(10.0, r.e10);
    return {r.val * scale, r.err * scale};
}

inline double tricomi_u(double alpha, double beta, double z) {
    return tricomi_u_result(alpha, beta, z).value;
}

/// d/dmu Phi(alpha0 + mu, 1 + 2 mu; z) at mu = 0 by the term-wise
/// differentiated series.  With c_k = (alpha0)_k and
/// d_k = d/dalpha (alpha)_k at alpha0, the k-th term is
/// z^k/(k!)^2 [d_k - 2 c_k H_k] where H_k is the k-th harmonic number.
/// Both recurrences are pole-free, so nonpositive integer alpha0 is fine.
inline SpecFunResult kummer_m_dmu_at0_result(double alpha0, double z) {
    if (!(z >= 0)) throw domain_error("kummer_m_dmu_at0: z must be >= 0");
    SpecFunResult r;
    if (z == 0.0) return r;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = 1.0, d = 0.0, h = 0.0, w = 1.0;  // w = z^k/(k!)^2
    double sum = 0.0, err = 0.0;
    const int kmin = static_cast<int>(std::abs(alpha0) + z) + 2;
    for (int k = 0; k < 100000; ++k) {
        double term = w * (d - 2.0 * c * h);
        sum += term;
        err += eps * (std::abs(term) + std::abs(sum));
        if (k > kmin && std::abs(term) <= eps * std::abs(sum)) break;
        // advance k -> k+1
        d = (alpha0 + k) * d + c;
        c *= alpha0 + k;
        h += 1.0 / (k + 1);
        w *= z / ((k + 1.0) * (k + 1.0));
        if (!std::isfinite(w * (std::abs(c) + std::abs(d))))
            throw numerical_error("kummer_m_dmu_at0: series overflow");
    }
    r.value = sum;
    r.abs_error_estimate = err;
    return r;
}

inline double kummer_m_dmu_at0(double alpha0, double z) {
    return kummer_m_dmu_at0_result(alpha0, z).value;
}

}  // namespace msab::specfun
