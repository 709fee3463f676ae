#pragma once
// Numerical verification engine: semi-infinite quadrature, a graded radial
// Gauss-Legendre rule, Gram matrices, ODE residuals and least-squares
// boundary-condition fits near the origin.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "core.hpp"
#include "roots.hpp"

namespace msab::verify {

using RealFn = std::function<double(double)>;

enum class TailHint { gaussian, exponential, algebraic };

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double split_point = 1.0;
    TailHint tail_decay_hint = TailHint::gaussian;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Outcome of one named check.
struct VerificationReport {
    std::string check_name;
    double max_abs_deviation = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::vector<std::vector<double>> details;  // check-specific rows
};

inline VerificationReport make_report(std::string name, double deviation, double threshold,
                                      std::vector<std::vector<double>> details = {}) {
    VerificationReport r;
    r.check_name = std::move(name);
    r.max_abs_deviation = deviation;
    r.threshold = threshold;
    r.pass = std::isfinite(deviation) && deviation <= threshold;
    r.details = std::move(details);
    return r;
}

/// f(x) times the Jacobian of a tail substitution.  Near the image of
/// infinity (x > 1e6, far past every length scale here) the product can be
/// inf * 0; the decay promised by the tail hint makes the limit 0.
template <class J>
double tail_value(const RealFn& f, double x, J jacobian) {
    if (!std::isfinite(x)) return 0.0;
    double v = f(x) * jacobian(x);
    if (!std::isfinite(v) && x > 1e6) return 0.0;
    return v;
}

/// Integral over (0, inf): tanh-sinh on (0, split] (robust to integrable
/// endpoint singularities) plus a tail mapped according to the decay hint
/// (gaussian: t = rho^2, exponential: t = e^{-rho}, algebraic: t = 1/rho).
inline QuadResult quad_semi_infinite(const RealFn& f, const QuadratureConfig& cfg = {}) {
    if (!(cfg.rel_tol > 0 && cfg.abs_tol > 0)) throw config_error("quadrature tolerances must be > 0");
    if (!(cfg.split_point > 0)) throw config_error("split point must be > 0");
    const double a = cfg.split_point;
    const double tol = std::sqrt(cfg.rel_tol) * 1e-2;  // termination on successive refinements
    QuadResult r;
    double e1 = 0, e2 = 0, l1 = 0, l2 = 0;
    try {
        boost::math::quadrature::tanh_sinh<double> ts(15);
        r.value = ts.integrate(f, 0.0, a, tol, &e1, &l1);
        switch (cfg.tail_decay_hint) {
        case TailHint::gaussian: {
            boost::math::quadrature::exp_sinh<double> es(12);
            auto g = [&](double t) { return tail_value(f, std::sqrt(t), [](double x) { return 1 / (2 * x); }); };
            r.value += es.integrate(g, a * a, std::numeric_limits<double>::infinity(), tol, &e2, &l2);
            break;
        }
        case TailHint::exponential: {
            auto g = [&](double t) { return t > 0 ? tail_value(f, -std::log(t), [t](double) { return 1 / t; }) : 0.0; };
            r.value += ts.integrate(g, 0.0, std::exp(-a), tol, &e2, &l2);
            break;
        }
        case TailHint::algebraic: {
            auto g = [&](double t) { return t > 0 ? tail_value(f, 1 / t, [](double x) { return x * x; }) : 0.0; };
            r.value += ts.integrate(g, 0.0, 1 / a, tol, &e2, &l2);
            break;
        }
        }
    } catch (const std::exception& e) {
        throw numerical_error(std::string("quad_semi_infinite failed: ") + e.what());
    }
    r.error = e1 + e2;  // both estimates are absolute
    if (!std::isfinite(r.value) || r.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)) * 1e3)
        throw numerical_error("quad_semi_infinite did not converge");
    return r;
}

/// Composite Gauss-Legendre rule on (0, extent]: geometric panels toward the
/// origin (eigenfunctions behave like rho^{1/2 +- kappa} there), uniform
/// panels beyond, and an analytic power-law correction for (0, r_min].
class RadialRule {
public:
    /// extent: upper limit; wavenumber: largest local oscillation rate to resolve.
    RadialRule(double extent, double wavenumber = 1.0) {
        if (!(extent > 0)) throw config_error("radial rule extent must be > 0");
        const double k = std::max(wavenumber, 1e-3);
        const double width = std::min(extent / 24, 4.0 / k);
        const int n_uniform = static_cast<int>(std::ceil((extent - width) / width));
        const double step = (extent - width) / std::max(n_uniform, 1);
        const auto& xs = boost::math::quadrature::gauss<double, 20>::abscissa();
        const auto& ws = boost::math::quadrature::gauss<double, 20>::weights();
        auto panel = [&](double lo, double hi) {
            double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (xs[i] == 0) {
                    nodes_.push_back(c);
                    weights_.push_back(h * ws[i]);
                } else {
                    nodes_.push_back(c - h * xs[i]);
                    weights_.push_back(h * ws[i]);
                    nodes_.push_back(c + h * xs[i]);
                    weights_.push_back(h * ws[i]);
                }
            }
        };
        r_min_ = width * 1e-14;
        for (double hi = width; hi > r_min_ * 1.0000001;) {
            double lo = std::max(hi * 0.25, r_min_);
            panel(lo, hi);
            hi = lo;
        }
        for (int i = 0; i < n_uniform; ++i) panel(width + i * step, width + (i + 1) * step);
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double r_min() const { return r_min_; }

    /// Sample a function at the nodes and at the two correction points.
    std::vector<double> sample(const RealFn& f) const {
        std::vector<double> v(nodes_.size() + 2);
        for (std::size_t i = 0; i < nodes_.size(); ++i) v[i] = f(nodes_[i]);
        v[nodes_.size()] = f(r_min_);
        v[nodes_.size() + 1] = f(r_min_ / 2);
        return v;
    }

    /// Integral of a product of sampled functions (or a single sample when b is null).
    double integrate_samples(const std::vector<double>& a, const std::vector<double>* b = nullptr) const {
        const std::size_t n = nodes_.size();
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += weights_[i] * a[i] * (b ? (*b)[i] : 1.0);
        double f1 = a[n] * (b ? (*b)[n] : 1.0), f2 = a[n + 1] * (b ? (*b)[n + 1] : 1.0);
        return s + origin_correction(f1, f2);
    }

    double integrate(const RealFn& f) const {
        auto v = sample(f);
        return integrate_samples(v);
    }

private:
    /// int_0^{r_min} f assuming f ~ C rho^p with p from f(r_min)/f(r_min/2).
    double origin_correction(double f1, double f2) const {
        if (f1 == 0.0) return 0.0;
        if (f2 == 0.0 || (f1 > 0) != (f2 > 0)) return 0.0;
        double p = std::log(f1 / f2) / std::log(2.0);
        if (!(p > -1 + 1e-9)) throw numerical_error("integrand is not integrable at the origin");
        return r_min_ * f1 / (p + 1);
    }

    std::vector<double> nodes_, weights_;
    double r_min_ = 0;
};

using Matrix = std::vector<std::vector<double>>;

/// Gram matrix G_ij = int_0^inf u_i u_j drho on the given rule.
inline Matrix gram_matrix(const std::vector<RealFn>& basis, const RadialRule& rule) {
    std::vector<std::vector<double>> s;
    s.reserve(basis.size());
    for (const auto& f : basis) s.push_back(rule.sample(f));
    Matrix G(basis.size(), std::vector<double>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) G[i][j] = G[j][i] = rule.integrate_samples(s[i], &s[j]);
    return G;
}

/// Gram matrix of doublets: G_ij = int (f_i f_j + g_i g_j) drho.
inline Matrix gram_matrix_doublets(const std::vector<RealFn>& upper, const std::vector<RealFn>& lower,
                                   const RadialRule& rule) {
    auto Gu = gram_matrix(upper, rule);
    auto Gl = gram_matrix(lower, rule);
    for (std::size_t i = 0; i < Gu.size(); ++i)
        for (std::size_t j = 0; j < Gu.size(); ++j) Gu[i][j] += Gl[i][j];
    return Gu;
}

/// max |G - I| over all entries.
inline double identity_deviation(const Matrix& G) {
    double d = 0;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G.size(); ++j) d = std::max(d, std::abs(G[i][j] - (i == j ? 1.0 : 0.0)));
    return d;
}

/// Uniform grid of n points on [a, b].
inline std::vector<double> linear_grid(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return g;
}

/// Finite-difference step adapted to rho (stencils stay inside (0, inf)).
inline double fd_step(double rho) { return std::min(1e-3, rho / 8); }

/// Relative residual of -U'' + V U = E U on a grid: max pointwise |residual|
/// divided by the max over the grid of |U''| + |V U| + |E U|.
inline double ode_residual(const RealFn& V, double E, const RealFn& U, const std::vector<double>& grid) {
    double num = 0, den = 0;
    for (double r : grid) {
        double h = fd_step(r);
        double u = U(r), upp = roots::second_derivative7(U, r, h), vu = V(r) * u;
        num = std::max(num, std::abs(-upp + vu - E * u));
        den = std::max(den, std::abs(upp) + std::abs(vu) + std::abs(E * u));
    }
    return den > 0 ? num / den : 0.0;
}

/// Relative residual of the first-order Dirac system
///   f' - eps (gamma rho/2 + kappa/rho) f + (W - sM) g = 0,
///   g' + eps (gamma rho/2 + kappa/rho) g - (W + sM) f = 0.
inline double dirac_system_residual(int eps, double gamma, double kappa, double s_times_M, double W,
                                    const RealFn& f, const RealFn& g, const std::vector<double>& grid) {
    double num = 0, den = 0;
    for (double r : grid) {
        double h = fd_step(r);
        double A = eps * (gamma * r / 2 + kappa / r);
        double fv = f(r), gv = g(r);
        double fp = roots::derivative7(f, r, h), gp = roots::derivative7(g, r, h);
        double r1 = fp - A * fv + (W - s_times_M) * gv;
        double r2 = gp + A * gv - (W + s_times_M) * fv;
        num = std::max({num, std::abs(r1), std::abs(r2)});
        den = std::max({den, std::abs(fp) + std::abs(A * fv) + std::abs((W - s_times_M) * gv),
                        std::abs(gp) + std::abs(A * gv) + std::abs((W + s_times_M) * fv)});
    }
    return den > 0 ? num / den : 0.0;
}

/// Least-squares coefficients of f on a basis, sampled at n geometrically
/// spaced points in [a, b].  Columns are rescaled before a pivoted QR solve.
inline std::vector<double> fit_coefficients(const RealFn& f, const std::vector<RealFn>& basis, double a, double b,
                                            int n = 48) {
    if (!(a > 0 && b > a)) throw config_error("fit window must satisfy 0 < a < b");
    const int k = static_cast<int>(basis.size());
    Eigen::MatrixXd A(n, k);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double r = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
        y(i) = f(r);
        for (int j = 0; j < k; ++j) A(i, j) = basis[j](r);
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (int j = 0; j < k; ++j)
        if (scale(j) > 0) A.col(j) /= scale(j);
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) out[j] = scale(j) > 0 ? c(j) / scale(j) : 0.0;
    return out;
}

/// Expected leading behavior w1 phi1 + w2 phi2 near the origin, plus
/// subleading terms that are fitted but otherwise ignored.
struct BcTarget {
    RealFn phi1, phi2;
    double w1 = 0, w2 = 0;
    std::vector<RealFn> nuisance;
};

/// Scale-invariant mismatch between fitted leading coefficients (c1, c2) and
/// the expected direction (w1, w2): |c1 w2 - c2 w1| / (|c| |w|).
inline double direction_mismatch(double c1, double c2, double w1, double w2) {
    double nc = std::hypot(c1, c2), nw = std::hypot(w1, w2);
    if (nc == 0 || nw == 0) throw numerical_error("boundary fit: vanishing leading coefficients");
    return std::abs(c1 * w2 - c2 * w1) / (nc * nw);
}

/// Boundary-condition check on the window [a, b].
inline double bc_fit(const RealFn& f, const BcTarget& t, double a = 1e-4, double b = 1e-2) {
    std::vector<RealFn> basis{t.phi1, t.phi2};
    basis.insert(basis.end(), t.nuisance.begin(), t.nuisance.end());
    auto c = fit_coefficients(f, basis, a, b);
    return direction_mismatch(c[0], c[1], t.w1, t.w2);
}

/// Power function rho^p for building fit bases.
inline RealFn power(double p, double scale = 1.0) {
    return [p, scale](double r) { return std::pow(scale * r, p); };
}

/// rho^p ln(scale rho).
inline RealFn power_log(double p, double scale = 1.0) {
    return [p, scale](double r) { return std::pow(r, p) * std::log(scale * r); };
}

}  // namespace msab::verify
