#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ostbc/catalog.hpp"
#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/euclidean.hpp"
#include "ostbc/rng.hpp"

namespace ostbc {

/// Quasistatic flat-fading realization; columns[j] holds the coefficients
/// from the n_tx transmit antennas to receive antenna j.
struct ChannelRealization {
    std::size_t n_tx = 0, n_rx = 0;
    std::vector<CVec> columns;
    double rho = 1.0;
};

/// Reduction of the fading MIMO link to a coded SIMO link: per-branch gains
/// c_j = ||h_j|| and optional orthogonal rotations (identity when absent).
struct EquivalentSimoModel {
    RVec gains;
    std::vector<RMat> rotations; // empty, or one n-dim rotation per branch

    static EquivalentSimoModel from_channel(const ChannelRealization& h) {
        EquivalentSimoModel m;
        m.gains.reserve(h.n_rx);
        for (const CVec& col : h.columns) m.gains.push_back(std::sqrt(norm2(col)));
        return m;
    }

    void validate(std::size_t dim) const {
        if (!rotations.empty() && rotations.size() != gains.size())
            throw ValidationError("equivalent model: rotation count mismatch");
        for (const RMat& r : rotations) {
            if (r.rows != dim || r.cols != dim)
                throw ValidationError("equivalent model: rotation dimension mismatch");
            if (orthogonality_deviation(r) > 1e-10)
                throw ValidationError("equivalent model: rotation is not orthogonal");
        }
    }
};

enum class SnrMeasure { per_antenna, per_bit };
enum class DecoderKind { full_mimo, equivalent_simo };

inline const char* to_string(SnrMeasure m) {
    return m == SnrMeasure::per_antenna ? "per_antenna" : "per_bit";
}
inline const char* to_string(DecoderKind d) {
    return d == DecoderKind::full_mimo ? "full_mimo" : "equivalent_simo";
}

struct SimConfig {
    std::string entry_key;
    unsigned n_rx = 1;
    std::vector<double> snr_grid_db;
    SnrMeasure snr_measure = SnrMeasure::per_bit;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    DecoderKind decoder = DecoderKind::full_mimo;
    unsigned workers = 1; // 0 = hardware concurrency; results do not depend on it
};

struct ErrorRateEstimate {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t symbol_errors = 0;
    double ber = 0.0, ser = 0.0;
    double ci95_ber = 0.0, ci95_ser = 0.0;
};

/// Average received Euclidean code-to-noise ratio gamma_c implied by an SNR
/// value in the given measure. per_antenna is the received SNR per antenna
/// averaged over the codeword's time slots; per_bit is E_b / (n_tx * N0).
inline double gamma_c_from_snr(const CatalogEntry& entry, SnrMeasure measure,
                               double snr_linear) {
    const double scale = measure == SnrMeasure::per_antenna
                             ? static_cast<double>(entry.blocks())
                             : static_cast<double>(entry.bits_per_codeword());
    return snr_linear * scale;
}

/// Noise spectral density achieving the requested SNR at unit fading
/// variance (rho = 1).
inline double noise_density_for_snr(const CatalogEntry& entry, SnrMeasure measure,
                                    double snr_linear, double rho = 1.0) {
    if (!(snr_linear > 0.0))
        throw ValidationError("noise_density_for_snr: SNR must be positive");
    return rho * entry.code.avg_energy / gamma_c_from_snr(entry, measure, snr_linear);
}

/// Draws an i.i.d. complex Gaussian channel, variance rho/2 per dimension.
inline ChannelRealization sample_channel(std::size_t n_tx, std::size_t n_rx,
                                         double rho, TrialRng& rng) {
    if (!(rho > 0.0)) throw ValidationError("sample_channel: rho must be positive");
    ChannelRealization h;
    h.n_tx = n_tx;
    h.n_rx = n_rx;
    h.rho = rho;
    h.columns.assign(n_rx, CVec(n_tx));
    const double s = std::sqrt(rho / 2.0);
    for (CVec& col : h.columns) {
        for (cplx& z : col) {
            double re, im;
            rng.next_normal_pair(re, im);
            z = cplx(s * re, s * im);
        }
    }
    return h;
}

/// One received block: column j is G(s) h_j plus complex Gaussian noise of
/// variance n0/2 per dimension.
inline std::vector<CVec> transmit(const OstbcDesign& design, const SymbolVector& s,
                                  const ChannelRealization& h, double n0,
                                  TrialRng& rng) {
    validate_symbol_vector(design, s);
    if (h.n_tx != design.n_tx)
        throw ValidationError("transmit: channel/design dimension mismatch");
    if (n0 < 0.0) throw ValidationError("transmit: n0 must be nonnegative");
    std::vector<CVec> received(h.n_rx, CVec(design.n_tx));
    const double ns = std::sqrt(n0 / 2.0);
    for (std::size_t j = 0; j < h.n_rx; ++j) {
        apply_design(design, s.symbols, h.columns[j], received[j]);
        if (n0 > 0.0) {
            for (cplx& z : received[j]) {
                double re, im;
                rng.next_normal_pair(re, im);
                z += cplx(ns * re, ns * im);
            }
        }
    }
    return received;
}

/// Per-codeword, per-block proxy symbol vectors prepared for the decoders.
struct TransmitCodebook {
    const OstbcDesign* design = nullptr;
    std::vector<std::vector<CVec>> symbols; // [codeword][block], padded to n_tx
    std::vector<std::uint32_t> labels;
    std::size_t blocks = 0;

    static TransmitCodebook from_entry(const CatalogEntry& entry) {
        TransmitCodebook cb;
        cb.design = &entry.design;
        cb.blocks = entry.blocks();
        cb.labels = entry.code.labels;
        cb.symbols.resize(entry.code.size());
        for (std::size_t i = 0; i < entry.code.size(); ++i) {
            cb.symbols[i].reserve(cb.blocks);
            for (std::size_t b = 0; b < cb.blocks; ++b)
                cb.symbols[i].push_back(
                    entry.proxy_codeword(entry.code.labels[i], b).symbols);
        }
        return cb;
    }
};

/// ML decoding with perfect CSI: argmin over candidates of
/// sum_j ||r_j - G(s_t) h_j||^2 across all blocks; ties go to the smallest
/// label. received[b][j] is the block-b column at receive antenna j.
inline std::uint32_t ml_decode_full(const TransmitCodebook& cb,
                                    const std::vector<std::vector<CVec>>& received,
                                    const ChannelRealization& h) {
    if (received.size() != cb.blocks)
        throw ValidationError("ml_decode_full: block count mismatch");
    CVec candidate(cb.design->n_tx);
    double best_metric = std::numeric_limits<double>::infinity();
    std::uint32_t best_label = 0;
    for (std::size_t t = 0; t < cb.symbols.size(); ++t) {
        double metric = 0.0;
        for (std::size_t b = 0; b < cb.blocks; ++b) {
            for (std::size_t j = 0; j < h.n_rx; ++j) {
                apply_design(*cb.design, cb.symbols[t][b], h.columns[j], candidate);
                const CVec& r = received[b][j];
                for (std::size_t i = 0; i < candidate.size(); ++i)
                    metric += std::norm(r[i] - candidate[i]);
            }
        }
        if (metric < best_metric ||
            (metric == best_metric && cb.labels[t] < best_label)) {
            best_metric = metric;
            best_label = cb.labels[t];
        }
    }
    return best_label;
}

/// ML decoding in the equivalent SIMO model: argmin over codewords of
/// sum_j ||y_j - c_j Phi_j x_t||^2 with the same tie-break rule.
inline std::uint32_t ml_decode_equivalent(const EuclideanCode& code,
                                          const EquivalentSimoModel& model,
                                          const std::vector<RVec>& received) {
    if (received.size() != model.gains.size())
        throw ValidationError("ml_decode_equivalent: branch count mismatch");
    for (const RVec& y : received)
        if (y.size() != code.dim)
            throw ValidationError("ml_decode_equivalent: branch dimension mismatch");
    model.validate(code.dim);
    const bool rotated = !model.rotations.empty();
    RVec candidate;
    double best_metric = std::numeric_limits<double>::infinity();
    std::uint32_t best_label = 0;
    for (std::size_t t = 0; t < code.size(); ++t) {
        double metric = 0.0;
        for (std::size_t j = 0; j < model.gains.size(); ++j) {
            const double c = model.gains[j];
            const RVec& y = received[j];
            if (rotated) {
                candidate = model.rotations[j].apply(code.codewords[t]);
                for (std::size_t i = 0; i < code.dim; ++i)
                    metric += sq(y[i] - c * candidate[i]);
            } else {
                for (std::size_t i = 0; i < code.dim; ++i)
                    metric += sq(y[i] - c * code.codewords[t][i]);
            }
        }
        if (metric < best_metric ||
            (metric == best_metric && code.labels[t] < best_label)) {
            best_metric = metric;
            best_label = code.labels[t];
        }
    }
    return best_label;
}

namespace detail {

struct TrialCounts {
    std::uint64_t bit_errors = 0;
    std::uint64_t symbol_errors = 0;
};

// Runs trials [first, last) of SNR point snr_index; counters are exact
// integers, so merging across workers is order-independent.
inline TrialCounts run_trial_range(const CatalogEntry& entry,
                                   const TransmitCodebook& cb, const SimConfig& cfg,
                                   std::size_t snr_index, double n0,
                                   std::uint64_t first, std::uint64_t last) {
    TrialCounts counts;
    const EuclideanCode& code = entry.code;
    const std::size_t m = code.size();
    const std::size_t n_tx = entry.design.n_tx;
    const double noise_scale = std::sqrt(n0 / 2.0);

    std::vector<std::vector<CVec>> received(cb.blocks,
                                            std::vector<CVec>(cfg.n_rx, CVec(n_tx)));
    std::vector<RVec> received_eq(cfg.n_rx, RVec(code.dim));
    EquivalentSimoModel model;
    model.gains.resize(cfg.n_rx);

    for (std::uint64_t trial = first; trial < last; ++trial) {
        TrialRng rng(cfg.seed, snr_index, trial);
        const std::size_t idx = static_cast<std::size_t>(rng.next_below(m));
        const ChannelRealization h = sample_channel(n_tx, cfg.n_rx, 1.0, rng);

        std::uint32_t decided;
        if (cfg.decoder == DecoderKind::full_mimo) {
            for (std::size_t b = 0; b < cb.blocks; ++b) {
                for (std::size_t j = 0; j < cfg.n_rx; ++j) {
                    apply_design(entry.design, cb.symbols[idx][b], h.columns[j],
                                 received[b][j]);
                    for (cplx& z : received[b][j]) {
                        double re, im;
                        rng.next_normal_pair(re, im);
                        z += cplx(noise_scale * re, noise_scale * im);
                    }
                }
            }
            decided = ml_decode_full(cb, received, h);
        } else {
            for (std::size_t j = 0; j < cfg.n_rx; ++j) {
                model.gains[j] = std::sqrt(norm2(h.columns[j]));
                for (std::size_t i = 0; i < code.dim; ++i)
                    received_eq[j][i] =
                        model.gains[j] * code.codewords[idx][i] +
                        noise_scale * rng.next_normal();
            }
            decided = ml_decode_equivalent(code, model, received_eq);
        }

        const std::uint32_t sent = code.labels[idx];
        if (decided != sent) {
            ++counts.symbol_errors;
            counts.bit_errors += std::popcount(decided ^ sent);
        }
    }
    return counts;
}

} // namespace detail

/// Monte Carlo BER/SER estimation over the configured SNR grid. For a fixed
/// seed the output is bit-identical regardless of the worker count, because
/// every trial draws from its own (seed, snr index, trial index) stream.
inline std::vector<ErrorRateEstimate> run_monte_carlo(const SimConfig& cfg,
                                                      const Catalog& catalog) {
    const CatalogEntry& entry = catalog.get(cfg.entry_key);
    if (cfg.trials < 1) throw ValidationError("run_monte_carlo: trials must be >= 1");
    if (cfg.trials > (std::uint64_t{1} << 56))
        throw ValidationError("run_monte_carlo: trial count overflows the bit counters");
    if (cfg.snr_grid_db.empty())
        throw ValidationError("run_monte_carlo: empty SNR grid");
    if (cfg.n_rx < 1) throw ValidationError("run_monte_carlo: n_rx must be >= 1");

    const TransmitCodebook cb = TransmitCodebook::from_entry(entry);
    const double bits = static_cast<double>(entry.bits_per_codeword());

    unsigned workers = cfg.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, cfg.trials)));

    std::vector<ErrorRateEstimate> results;
    results.reserve(cfg.snr_grid_db.size());
    for (std::size_t p = 0; p < cfg.snr_grid_db.size(); ++p) {
        const double snr_linear = std::pow(10.0, cfg.snr_grid_db[p] / 10.0);
        const double n0 = noise_density_for_snr(entry, cfg.snr_measure, snr_linear);

        detail::TrialCounts total;
        if (workers == 1) {
            total = detail::run_trial_range(entry, cb, cfg, p, n0, 0, cfg.trials);
        } else {
            std::vector<detail::TrialCounts> partial(workers);
            std::vector<std::thread> pool;
            pool.reserve(workers);
            const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                const std::uint64_t first = w * chunk;
                const std::uint64_t last = std::min(cfg.trials, first + chunk);
                pool.emplace_back([&, w, first, last] {
                    partial[w] =
                        detail::run_trial_range(entry, cb, cfg, p, n0, first, last);
                });
            }
            for (std::thread& t : pool) t.join();
            for (const detail::TrialCounts& c : partial) {
                total.bit_errors += c.bit_errors;
                total.symbol_errors += c.symbol_errors;
            }
        }

        ErrorRateEstimate est;
        est.snr_db = cfg.snr_grid_db[p];
        est.trials = cfg.trials;
        est.bit_errors = total.bit_errors;
        est.symbol_errors = total.symbol_errors;
        const double nt = static_cast<double>(cfg.trials);
        est.ser = static_cast<double>(total.symbol_errors) / nt;
        est.ber = static_cast<double>(total.bit_errors) / (nt * bits);
        est.ci95_ser = 1.96 * std::sqrt(est.ser * (1.0 - est.ser) / nt);
        est.ci95_ber = 1.96 * std::sqrt(est.ber * (1.0 - est.ber) / (nt * bits));
        results.push_back(est);
    }
    return results;
}

} // namespace ostbc
