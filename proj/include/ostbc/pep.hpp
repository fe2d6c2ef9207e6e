#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "ostbc/errors.hpp"
#include "ostbc/euclidean.hpp"

namespace ostbc {

/// Diversity/SNR parameters of a Rayleigh link: K = n_tx * n_rx and the
/// average received code-to-noise ratio gamma_c = rho * avg_energy / N0.
struct FadingLinkParams {
    unsigned k = 1;
    double gamma_c = 0.0;
};

/// C(n, r) in floating point; exact integer accumulation for small n,
/// log-gamma otherwise (the bound sums need C(2K-1, K) up to K = 64).
inline double binomial(unsigned n, unsigned r) {
    if (r > n) return 0.0;
    if (n <= 32) {
        std::uint64_t acc = 1;
        for (unsigned i = 0; i < std::min(r, n - r); ++i) {
            acc = acc * (n - i) / (i + 1);
        }
        return static_cast<double>(acc);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) -
                    std::lgamma(n - r + 1.0));
}

namespace detail {

inline double pep_mu(double d_norm, double gamma_c) {
    const double x = d_norm * d_norm * gamma_c;
    return std::sqrt(x / (4.0 + x));
}

// (1 - mu)/2 without cancellation: (1-mu)/2 = 2 / ((4 + x)(1 + mu)).
inline double pep_half_one_minus_mu(double d_norm, double gamma_c) {
    const double x = d_norm * d_norm * gamma_c;
    return 2.0 / ((4.0 + x) * (1.0 + pep_mu(d_norm, gamma_c)));
}

} // namespace detail

/// Pairwise error probability of ML decoding over Rayleigh fading, as a
/// function of the normalized codeword distance:
/// 1/2 - (mu/2) * sum_{r<K} C(2r, r) ((1 - mu^2)/4)^r,
/// mu = sqrt(d^2 gamma_c / (4 + d^2 gamma_c)).
inline double pep(double d_norm, const FadingLinkParams& p) {
    if (!(d_norm > 0.0))
        throw ValidationError("pep: distance must be positive");
    const double mu = detail::pep_mu(d_norm, p.gamma_c);
    const double q = (1.0 - mu * mu) / 4.0;
    double sum = 0.0, qpow = 1.0;
    for (unsigned r = 0; r < p.k; ++r) {
        sum += binomial(2 * r, r) * qpow;
        qpow *= q;
    }
    // the difference cancels to roundoff at high SNR; keep it a probability
    return std::clamp(0.5 - 0.5 * mu * sum, 0.0, 0.5);
}

/// The same probability through the equivalent product-form series
/// ((1-mu)/2)^K * sum_{r<K} C(K-1+r, r) ((1+mu)/2)^r; stable at high SNR.
inline double pep_stable_form(double d_norm, const FadingLinkParams& p) {
    if (!(d_norm > 0.0))
        throw ValidationError("pep_stable_form: distance must be positive");
    const double half_lo = detail::pep_half_one_minus_mu(d_norm, p.gamma_c);
    const double half_hi = 1.0 - half_lo;
    double sum = 0.0, hpow = 1.0;
    for (unsigned r = 0; r < p.k; ++r) {
        sum += binomial(p.k - 1 + r, r) * hpow;
        hpow *= half_hi;
    }
    return std::pow(half_lo, static_cast<double>(p.k)) * sum;
}

/// Union bound on the SER of a uniform constellation: sum over the spectrum
/// of multiplicity x PEP. Reported unclamped; values above 1 are vacuous.
inline double union_bound_ser(const DistanceSpectrum& spectrum,
                              const FadingLinkParams& p) {
    if (!spectrum.uniform || spectrum.entries.empty())
        throw ValidationError("union_bound_ser: requires a uniform distance spectrum");
    double bound = 0.0;
    for (const DistanceSpectrum::Entry& e : spectrum.entries)
        bound += static_cast<double>(e.multiplicity) * pep_stable_form(e.distance, p);
    return bound;
}

/// Large-SNR approximation of the union bound:
/// C_EC(K) * C(2K-1, K) * gamma_c^(-K), with C_EC the NDSC.
inline double asymptotic_bound(const DistanceSpectrum& spectrum,
                               const FadingLinkParams& p) {
    if (!(p.gamma_c > 0.0))
        throw NumericError("asymptotic_bound: divergent at gamma_c = 0");
    return ndsc(spectrum, p.k) * binomial(2 * p.k - 1, p.k) *
           std::pow(p.gamma_c, -static_cast<double>(p.k));
}

/// Minimum-distance-only variant: N_dmin * d_min^(-2K) * C(2K-1, K) * gamma_c^(-K).
inline double min_distance_bound(const DistanceSpectrum& spectrum,
                                 const FadingLinkParams& p) {
    if (!(p.gamma_c > 0.0))
        throw NumericError("min_distance_bound: divergent at gamma_c = 0");
    const double d = spectrum.min_distance();
    return static_cast<double>(spectrum.min_multiplicity()) *
           std::pow(d, -2.0 * static_cast<double>(p.k)) *
           binomial(2 * p.k - 1, p.k) * std::pow(p.gamma_c, -static_cast<double>(p.k));
}

} // namespace ostbc
