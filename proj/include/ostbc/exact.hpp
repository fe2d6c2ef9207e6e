#pragma once

#include <cmath>
#include <numbers>

#include "ostbc/errors.hpp"
#include "ostbc/pep.hpp"
#include "ostbc/quadrature.hpp"

namespace ostbc {

/// Fading-average parameters: diversity order K = n_tx * n_rx and average
/// per-bit SNR gamma_b = E_b / (n_tx * N0).
struct FadingSnrParams {
    unsigned k = 1;
    double gamma_b = 0.0;
};

/// Upper-tail standard normal probability.
inline double gaussian_q(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

/// Conditional error rates of Gray-mapped QPSK on the AWGN channel at
/// per-bit SNR gamma_b.
inline double awgn_qpsk_ber(double gamma_b) {
    return gaussian_q(std::sqrt(2.0 * gamma_b));
}

inline double awgn_qpsk_ser(double gamma_b) {
    const double q = gaussian_q(std::sqrt(2.0 * gamma_b));
    return 2.0 * q - q * q;
}

/// PDF of the combined per-bit SNR over K independent Rayleigh branches:
/// the gamma density with shape K and scale gamma_b.
inline double snr_pdf(double gamma, const FadingSnrParams& p) {
    if (!(p.gamma_b > 0.0))
        throw ValidationError("snr_pdf: gamma_b must be positive");
    if (gamma < 0.0) return 0.0;
    if (gamma == 0.0) return p.k == 1 ? 1.0 / p.gamma_b : 0.0;
    const double k = static_cast<double>(p.k);
    return std::exp((k - 1.0) * std::log(gamma) - gamma / p.gamma_b -
                    std::lgamma(k) - k * std::log(p.gamma_b));
}

/// Averages a conditional error rate over the fading SNR distribution:
/// integral of conditional(gamma) * snr_pdf(gamma) on [0, inf), mapped to
/// [0, 1) by gamma = gamma_b * t / (1 - t).
template <class F>
double fading_average(const F& conditional, const FadingSnrParams& p,
                      double abs_tol = 1e-10) {
    if (!(p.gamma_b > 0.0))
        throw ValidationError("fading_average: gamma_b must be positive");
    const auto integrand = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double gamma = p.gamma_b * t / om;
        const double jacobian = p.gamma_b / (om * om);
        const double pdf = snr_pdf(gamma, p);
        if (pdf == 0.0) return 0.0;
        return conditional(gamma) * pdf * jacobian;
    };
    return integrate_gk_strict(integrand, 0.0, 1.0, abs_tol, 4096, "fading_average");
}

/// Average BER of Alamouti's code with constituent BPSK signals:
/// closed form with mu_b = sqrt(gamma_b / (1 + gamma_b)), evaluated through
/// the stable product-form series so high SNR does not cancel.
inline double ber_alamouti_bpsk(const FadingSnrParams& p) {
    if (!(p.gamma_b > 0.0))
        throw ValidationError("ber_alamouti_bpsk: gamma_b must be positive");
    // mu_b equals the PEP mu at d^2 * gamma_c = 4 * gamma_b
    return pep_stable_form(2.0, FadingLinkParams{p.k, p.gamma_b});
}

/// Average SER of Alamouti's code with constituent BPSK signals:
/// (2/pi) I(cos) + (1/pi) I(sin) with
/// I(f) = integral over [0, pi/4] of (f^2(t) / (f^2(t) + gamma_b))^K dt.
inline double ser_alamouti_bpsk(const FadingSnrParams& p, double abs_tol = 1e-10) {
    if (!(p.gamma_b > 0.0))
        throw ValidationError("ser_alamouti_bpsk: gamma_b must be positive");
    const double k = static_cast<double>(p.k);
    const auto cos_term = [&](double theta) {
        const double c2 = sq(std::cos(theta));
        return std::pow(c2 / (c2 + p.gamma_b), k);
    };
    const auto sin_term = [&](double theta) {
        const double s2 = sq(std::sin(theta));
        return std::pow(s2 / (s2 + p.gamma_b), k);
    };
    const double quarter_pi = std::numbers::pi / 4.0;
    const double i_cos =
        integrate_gk_strict(cos_term, 0.0, quarter_pi, abs_tol, 4096, "ser cos term");
    const double i_sin =
        integrate_gk_strict(sin_term, 0.0, quarter_pi, abs_tol, 4096, "ser sin term");
    return (2.0 / std::numbers::pi) * i_cos + (1.0 / std::numbers::pi) * i_sin;
}

} // namespace ostbc
