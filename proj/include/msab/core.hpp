#pragma once
// Shared vocabulary: error types, extension angles, flux configuration,
// region tags and the small value types passed between modules.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace msab {

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

/// Invalid user input or inconsistent parameters (CLI exit code 2).
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument sits on a pole of a meromorphic function.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument outside the mathematical domain of a function.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to converge (CLI exit code 3).
/// Root-finding failures carry the bracket that was being refined.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, double lo = NAN, double hi = NAN)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_, hi_;
};

/// Extension parameter on the circle S(-pi/2, pi/2] (an interval with
/// identified ends).  The identified endpoint is stored symbolically so that
/// sin/cos are exact there and no formula ever evaluates tan(pi/2).
class Angle {
public:
    Angle() = default;

    /// Any real angle, reduced modulo pi into (-pi/2, pi/2].
    static Angle radians(double x) {
        if (!std::isfinite(x)) throw config_error("extension angle must be finite");
        double r = std::remainder(x, pi);  // in [-pi/2, pi/2]
        Angle a;
        if (std::abs(std::abs(r) - pi / 2) <= 4 * std::numeric_limits<double>::epsilon()) {
            a.half_pi_ = true;
            a.rad_ = pi / 2;
        } else {
            a.rad_ = r;
        }
        return a;
    }
    static Angle half_pi() {
        Angle a;
        a.half_pi_ = true;
        a.rad_ = pi / 2;
        return a;
    }
    static Angle zero() { return Angle{}; }

    /// Parses a decimal number or an exact token of the form [-]pi[/q] or
    /// [-]p*pi/q (e.g. "pi/2", "-pi/4", "3*pi/8").
    static Angle parse(const std::string& text);

    double value() const { return rad_; }
    bool is_half_pi() const { return half_pi_; }
    bool is_zero() const { return !half_pi_ && rad_ == 0.0; }
    double sin() const { return half_pi_ ? 1.0 : std::sin(rad_); }
    double cos() const { return half_pi_ ? 0.0 : std::cos(rad_); }
    /// tan is only meaningful away from the identified endpoint.
    double tan() const {
        if (half_pi_) throw domain_error("tan evaluated at the identified point pi/2");
        return std::tan(rad_);
    }
    bool operator==(const Angle& o) const { return half_pi_ == o.half_pi_ && rad_ == o.rad_; }

private:
    double rad_ = 0.0;
    bool half_pi_ = false;
};

inline Angle Angle::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw config_error("empty angle");
    auto pos = t.find("pi");
    if (pos == std::string::npos) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw config_error("cannot parse angle '" + text + "'");
        }
        if (used != t.size()) throw config_error("cannot parse angle '" + text + "'");
        return radians(v);
    }
    // [sign][p*]pi[/q]
    std::string head = t.substr(0, pos), tail = t.substr(pos + 2);
    double sign = 1, p = 1, q = 1;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
        if (head[0] == '-') sign = -1;
        head.erase(0, 1);
    }
    try {
        if (!head.empty()) {
            if (head.back() != '*') throw config_error("bad angle");
            head.pop_back();
            std::size_t used = 0;
            p = std::stod(head, &used);
            if (used != head.size()) throw config_error("bad angle");
        }
        if (!tail.empty()) {
            if (tail[0] != '/') throw config_error("bad angle");
            std::size_t used = 0;
            q = std::stod(tail.substr(1), &used);
            if (used != tail.size() - 1 || q == 0) throw config_error("bad angle");
        }
    } catch (const std::exception&) {
        throw config_error("cannot parse angle '" + text + "'");
    }
    // Exact reduction on the rational multiple r = sign*p/q of pi.
    double r = sign * p / q;
    double red = r - std::round(r);  // in [-1/2, 1/2]
    if (std::abs(std::abs(red) - 0.5) < 1e-15) return half_pi();
    if (red == 0.0) return zero();
    return radians(red * pi);
}

/// Flux decomposition eps_B * phi = phi0 + mu with 0 <= mu < 1, plus field
/// strength and the boundary-condition length scale.
struct FluxConfig {
    double phi = 0.0;    ///< flux in units of the flux quantum
    int phi0 = 0;        ///< integer part of eps_B * phi
    double mu = 0.0;     ///< mantissa in [0, 1)
    int eps_B = 1;       ///< sign of the field
    int eps_q = 1;       ///< sign of the charge
    int eps = 1;         ///< eps_q * eps_B
    double gamma = 0.0;  ///< e|B|/(c hbar), inverse length squared; 0 for the pure AB field
    double kappa0 = 1.0; ///< inverse-length scale of the boundary conditions at the origin

    static FluxConfig from_flux(double phi, double gamma, int eps_B = 1, int eps_q = 1,
                                double kappa0 = 1.0) {
        FluxConfig c;
        if (!std::isfinite(phi)) throw config_error("flux must be finite");
        if (!(gamma >= 0)) throw config_error("gamma must be >= 0");
        if (!(kappa0 > 0)) throw config_error("kappa0 must be > 0");
        if (std::abs(eps_B) != 1 || std::abs(eps_q) != 1) throw config_error("signs must be +-1");
        c.phi = phi;
        c.eps_B = eps_B;
        c.eps_q = eps_q;
        c.eps = eps_B * eps_q;
        double x = eps_B * phi;
        c.phi0 = static_cast<int>(std::floor(x));
        c.mu = x - c.phi0;
        if (c.mu >= 1.0) {  // rounding guard
            c.mu = 0.0;
            ++c.phi0;
        }
        c.gamma = gamma;
        c.kappa0 = kappa0;
        return c;
    }
    /// Builds the configuration directly from (phi0, mu).
    static FluxConfig from_mantissa(double mu, double gamma, int phi0 = 0, int eps_B = 1,
                                    int eps_q = 1, double kappa0 = 1.0) {
        if (!(mu >= 0 && mu < 1)) throw config_error("mu must lie in [0, 1)");
        FluxConfig c = from_flux(0.0, gamma, eps_B, eps_q, kappa0);
        c.mu = mu;
        c.phi0 = phi0;
        c.phi = eps_B * (phi0 + mu);
        return c;
    }
};

enum class Region { R1, R2, R3 };

inline std::string to_string(Region r) {
    switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    default: return "R3";
    }
}

/// Singularity class of the radial Schroedinger channel l.
struct RegionTag {
    Region tag = Region::R1;
    double kappa_l = 0.0;  ///< |l + mu|
    double alpha = 0.0;    ///< kappa_l^2 - 1/4
};

/// Normalized (generalized) radial eigenfunction together with metadata.
struct EigenfunctionHandle {
    Region region = Region::R1;
    int l = 0;
    double energy = 0.0;
    std::optional<Angle> lambda;
    std::string kind;      ///< "bound", "discrete" or "continuum"
    double extent = 0.0;   ///< radius beyond which the function is negligible (0: not decaying)
    std::function<double(double)> eval;

    double operator()(double rho) const { return eval(rho); }
};

/// One point of a discrete spectrum with its normalization weight.
struct SpectrumLevel {
    int index = 0;
    double energy = 0.0;
    double weight = 0.0;
};

/// Classified spectrum of one radial operator.
struct RadialSpectrum {
    Region region = Region::R1;
    int l = 0;
    std::optional<Angle> lambda;
    bool has_continuum = true;
    double continuum_onset = 0.0;
    std::vector<SpectrumLevel> levels;
};

/// Two-component radial Dirac function value.
struct Doublet {
    double f = 0.0;
    double g = 0.0;
};

inline double wronskian(const Doublet& F, const Doublet& G) { return F.f * G.g - F.g * G.f; }

}  // namespace msab
