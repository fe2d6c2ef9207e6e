#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include "ostbc/errors.hpp"
#include "ostbc/euclidean.hpp"
#include "ostbc/quadrature.hpp"

namespace ostbc {

/// Result of evaluating the spherical-code cardinality bounds against a
/// code. Bounds that do not apply at the code's minimum distance are left
/// disengaged.
struct RankinCertificate {
    std::size_t m = 0;            // cardinality
    std::size_t n = 0;            // effective dimensionality (rank)
    double d2_min = 0.0;          // squared minimum normalized distance

    bool first_holds = false;     // d2_min <= 2M/(M-1)
    double first_ceiling = 0.0;
    double first_slack = 0.0;     // ceiling - d2_min

    std::optional<bool> second_holds;  // M <= n+1, engaged when 2 < d2_min <= 4
    std::optional<bool> third_holds;   // M <= 2n,  engaged when d2_min == 2
    bool third_equality = false;       // M == 2n at d2_min == 2
};

/// Evaluates Rankin's bounds for a spherical code (normalized so the
/// codewords lie on the unit sphere after dividing by sqrt(avg_energy)).
inline RankinCertificate check_rankin_bounds(const EuclideanCode& code,
                                             double tol = 1e-9) {
    if (!is_spherical(code))
        throw ValidationError("check_rankin_bounds: code is not spherical");
    if (code.size() < 2)
        throw ValidationError("check_rankin_bounds: need at least two codewords");
    const DistanceSpectrum spec = distance_spectrum(code);

    RankinCertificate cert;
    cert.m = code.size();
    cert.n = effective_dimension(code);
    cert.d2_min = sq(spec.min_distance());

    const double m = static_cast<double>(cert.m);
    cert.first_ceiling = 2.0 * m / (m - 1.0);
    cert.first_slack = cert.first_ceiling - cert.d2_min;
    cert.first_holds = cert.d2_min <= cert.first_ceiling + tol;

    if (cert.d2_min > 2.0 + tol && cert.d2_min <= 4.0 + tol)
        cert.second_holds = cert.m <= cert.n + 1;
    if (std::abs(cert.d2_min - 2.0) <= tol) {
        cert.third_holds = cert.m <= 2 * cert.n;
        cert.third_equality = (cert.m == 2 * cert.n);
    }
    return cert;
}

namespace detail {

// 0.5 * arcsec(n - 1): lower integration limit of the Schlafli recursion.
inline double schlafli_lower_limit(unsigned n) {
    return 0.5 * std::acos(1.0 / static_cast<double>(n - 1));
}

// beta with sec(2*beta) = sec(2*alpha) - 2, via
// cos(2*beta) = cos(2*alpha) / (1 - 2*cos(2*alpha)), which stays finite
// through the sec singularity at alpha = pi/4.
inline double schlafli_beta(double alpha) {
    const double c = std::cos(2.0 * alpha);
    const double denom = 1.0 - 2.0 * c;
    if (denom == 0.0)
        throw NumericError("schlafli_F: sec(2a)-2 vanishes inside the integration range");
    double w = c / denom;
    if (std::abs(w) > 1.0 + 1e-12)
        throw NumericError("schlafli_F: sec(2b) = sec(2a) - 2 has no real solution "
                           "inside the integration range (alpha too small)");
    w = std::clamp(w, -1.0, 1.0);
    return 0.5 * std::acos(w);
}

} // namespace detail

/// Schlafli's function F_n(alpha), n in 0..8, computed by the recursion
/// F_n(a) = (2/pi) * integral of F_{n-2}(beta) over [arcsec(n-1)/2, a]
/// with sec(2*beta) = sec(2*alpha) - 2 and F_0 = F_1 = 1.
inline double schlafli_F(unsigned n, double alpha, double abs_tol = 1e-8) {
    if (n > 8)
        throw ValidationError("schlafli_F: n capped at 8");
    if (!(alpha > 0.0) || alpha > std::numbers::pi + 1e-12)
        throw NumericError("schlafli_F: alpha must lie in (0, pi]");
    if (n <= 1) return 1.0;
    const double lo = detail::schlafli_lower_limit(n);
    // the recursion evaluates F_{n-2} exactly at its own lower limit, where
    // the integral is empty; only genuinely smaller angles are out of domain
    if (alpha <= lo + 1e-12) {
        if (alpha < lo - 1e-12)
            throw NumericError("schlafli_F: alpha below the lower integration limit "
                               "arcsec(n-1)/2 for n = " + std::to_string(n));
        return 0.0;
    }
    const auto integrand = [n, abs_tol](double a) {
        if (n == 2 || n == 3) return 1.0; // F_0 = F_1 = 1
        return schlafli_F(n - 2, detail::schlafli_beta(a), abs_tol);
    };
    return (2.0 / std::numbers::pi) * integrate_simpson(integrand, lo, alpha, abs_tol);
}

/// Cardinality bound M <= 2 F_{n-1}(alpha) / F_n(alpha) at the angle alpha
/// subtended by the minimum distance, d_min = 2 sin(alpha/2).
inline double coxeter_bound(unsigned n, double d_min_normalized,
                            double abs_tol = 1e-8) {
    if (n < 2 || n > 8)
        throw ValidationError("coxeter_bound: n must be in 2..8");
    if (!(d_min_normalized > 0.0) || d_min_normalized > 2.0 + 1e-12)
        throw NumericError("coxeter_bound: d_min must lie in (0, 2]");
    const double alpha = 2.0 * std::asin(std::min(1.0, d_min_normalized / 2.0));
    const double fn = schlafli_F(n, alpha, abs_tol);
    const double fn1 = schlafli_F(n - 1, alpha, abs_tol);
    if (fn < 100.0 * abs_tol)
        throw NumericError("coxeter_bound: F_n(alpha) is below the quadrature "
                           "noise floor; bound unreliable");
    return 2.0 * fn1 / fn;
}

} // namespace ostbc
