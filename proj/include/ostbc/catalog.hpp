#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "ostbc/constellation.hpp"
#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/euclidean.hpp"
#include "ostbc/rng.hpp"

namespace ostbc {

/// Product code over J slots of a constituent constellation: M = L^J
/// codewords, every J-tuple of points, labeled by concatenating the Gray
/// bits of each slot (slot 0 in the most significant position).
inline EuclideanCode canonical_product_code(const ConstituentConstellation& c,
                                            std::size_t j,
                                            std::size_t max_codewords = 1u << 20) {
    validate_constellation(c);
    if (j < 1) throw ValidationError("canonical_product_code: J must be >= 1");
    const std::size_t l = c.size();
    const std::size_t bits = c.bits_per_symbol();
    std::size_t m = 1;
    for (std::size_t t = 0; t < j; ++t) {
        if (m > max_codewords / l)
            throw ValidationError("canonical_product_code: L^J exceeds the configured cap");
        m *= l;
    }
    std::vector<RVec> codewords;
    std::vector<std::uint32_t> labels;
    codewords.reserve(m);
    for (std::size_t u = 0; u < m; ++u) {
        CVec symbols(j);
        for (std::size_t t = 0; t < j; ++t) {
            const std::uint32_t slot_label =
                static_cast<std::uint32_t>((u >> (bits * (j - 1 - t))) & (l - 1));
            symbols[t] = c.point_for_label(slot_label);
        }
        codewords.push_back(embed_real(symbols));
        labels.push_back(static_cast<std::uint32_t>(u));
    }
    return make_euclidean_code(std::move(codewords), std::move(labels));
}

/// Equivalent Euclidean code of a design driven by one constituent
/// constellation on all of its information slots.
inline EuclideanCode extract_equivalent_code(const OstbcDesign& design,
                                             const ConstituentConstellation& c) {
    return canonical_product_code(c, design.n_info);
}

/// Biorthogonal spherical code in even dimension n: M = 2n codewords made
/// of an orthogonal basis at equal energy and its antipodes, with label k
/// and label M-1-k antipodal (complementary bit patterns, so the labeling
/// is Gray). energy is the constituent-symbol energy scale; each codeword
/// has squared norm n * energy.
inline EuclideanCode biorthogonal_code(std::size_t n, double energy = 1.0) {
    if (n < 2 || n % 2 != 0)
        throw ValidationError("biorthogonal_code: dimension must be even and >= 2");
    if (energy <= 0.0)
        throw ValidationError("biorthogonal_code: energy must be positive");
    const double a = std::sqrt(static_cast<double>(n) * energy);
    const std::size_t m = 2 * n;
    std::vector<RVec> codewords(m, RVec(n, 0.0));
    std::vector<std::uint32_t> labels(m);
    for (std::size_t k = 0; k < n; ++k) {
        codewords[k][k] = a;              // label k: +a e_k
        codewords[m - 1 - k][k] = -a;     // label M-1-k: its antipode
        labels[k] = static_cast<std::uint32_t>(k);
        labels[m - 1 - k] = static_cast<std::uint32_t>(m - 1 - k);
    }
    return make_euclidean_code(std::move(codewords), std::move(labels));
}

/// A registered design/code pairing. The Euclidean code's real dimension is
/// 2 * n_info per transmitted block; codes spanning more than one block are
/// sent over consecutive uses of the same design under a common channel.
struct CatalogEntry {
    std::string key;
    OstbcDesign design;
    EuclideanCode code;
    std::string notes;

    std::size_t blocks() const { return code.dim / (2 * design.n_info); }
    std::size_t bits_per_codeword() const {
        std::size_t b = 0;
        while ((std::size_t{1} << b) < code.size()) ++b;
        return b;
    }

    /// Per-block complex proxy codeword (with trailing zeros) for a label.
    SymbolVector proxy_codeword(std::uint32_t label, std::size_t block) const {
        const RVec& x = code.codewords[code.index_of_label(label)];
        const std::size_t span = 2 * design.n_info;
        RVec slice(x.begin() + block * span, x.begin() + (block + 1) * span);
        CVec symbols = embed_complex(slice);
        symbols.resize(design.n_tx, cplx(0.0, 0.0));
        return SymbolVector{std::move(symbols), label};
    }
};

namespace detail {

inline void validate_entry(const CatalogEntry& entry,
                           const DistanceSpectrum* expected_spectrum) {
    if (entry.design.n_info == 0 || entry.design.n_tx < entry.design.n_info)
        throw ValidationError("catalog entry '" + entry.key + "': malformed design");
    if (entry.code.dim % (2 * entry.design.n_info) != 0)
        throw ValidationError("catalog entry '" + entry.key +
                              "': code dimension is not a whole number of blocks");
    // orthogonality check on random symbol vectors
    TrialRng rng(0x0057b0deULL, 0, 0);
    for (int trial = 0; trial < 64; ++trial) {
        CVec s(entry.design.n_tx, cplx(0.0, 0.0));
        for (std::size_t t = 0; t < entry.design.n_info; ++t) {
            double re, im;
            rng.next_normal_pair(re, im);
            s[t] = cplx(re, im);
        }
        const double dev = verify_orthogonality(entry.design, SymbolVector{s, 0});
        if (dev > 1e-10)
            throw ValidationError("catalog entry '" + entry.key +
                                  "': design fails orthogonality (deviation " +
                                  std::to_string(dev) + ")");
    }
    if (expected_spectrum != nullptr) {
        const DistanceSpectrum got = distance_spectrum(entry.code);
        if (got.entries.size() != expected_spectrum->entries.size())
            throw ValidationError("catalog entry '" + entry.key +
                                  "': spectrum regression failed (entry count)");
        for (std::size_t i = 0; i < got.entries.size(); ++i) {
            if (std::abs(got.entries[i].distance -
                         expected_spectrum->entries[i].distance) > 1e-9 ||
                got.entries[i].multiplicity != expected_spectrum->entries[i].multiplicity)
                throw ValidationError("catalog entry '" + entry.key +
                                      "': spectrum regression failed");
        }
    }
}

} // namespace detail

/// Keyed collection of validated entries. The built-in catalog is immutable
/// after construction; user catalogs may keep registering.
class Catalog {
public:
    void register_entry(CatalogEntry entry,
                        const DistanceSpectrum* expected_spectrum = nullptr) {
        if (entries_.count(entry.key))
            throw ValidationError("catalog: duplicate key '" + entry.key + "'");
        detail::validate_entry(entry, expected_spectrum);
        std::string key = entry.key;
        entries_.emplace(std::move(key), std::move(entry));
    }

    const CatalogEntry& get(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ValidationError("catalog: unknown entry '" + key + "'");
        return it->second;
    }

    bool contains(const std::string& key) const { return entries_.count(key) > 0; }

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        out.reserve(entries_.size());
        for (const auto& [k, v] : entries_) out.push_back(k);
        return out;
    }

    /// The five built-in configurations.
    static Catalog builtins() {
        Catalog cat;
        const OstbcDesign alamouti = alamouti_design();
        const OstbcDesign rate34 = rate34_design();
        const double sqrt2 = std::numbers::sqrt2;

        DistanceSpectrum bpsk_pair{{{sqrt2, 2}, {2.0, 1}}, true};
        cat.register_entry({"alamouti-bpsk", alamouti,
                            canonical_product_code(bpsk(), 2),
                            "Alamouti with constituent BPSK, M = 4"},
                           &bpsk_pair);

        DistanceSpectrum qpsk_pair{
            {{1.0, 4}, {sqrt2, 6}, {std::sqrt(3.0), 4}, {2.0, 1}}, true};
        cat.register_entry({"alamouti-qpsk", alamouti,
                            canonical_product_code(qpsk(), 2),
                            "Alamouti with constituent QPSK, M = 16"},
                           &qpsk_pair);

        DistanceSpectrum bpsk_triple{
            {{2.0 * std::sqrt(1.0 / 3.0), 3}, {2.0 * std::sqrt(2.0 / 3.0), 3}, {2.0, 1}},
            true};
        cat.register_entry({"rate34-bpsk", rate34,
                            canonical_product_code(bpsk(), 3),
                            "rate-3/4 four-antenna design with constituent BPSK, M = 8"},
                           &bpsk_triple);

        DistanceSpectrum bio4{{{sqrt2, 6}, {2.0, 1}}, true};
        cat.register_entry({"alamouti-bio4", alamouti, biorthogonal_code(4),
                            "Alamouti carrying the 4-D biorthogonal code, M = 8"},
                           &bio4);

        DistanceSpectrum bio8{{{sqrt2, 14}, {2.0, 1}}, true};
        cat.register_entry({"alamouti-bio8", alamouti, biorthogonal_code(8),
                            "Alamouti (two blocks) carrying the 8-D biorthogonal "
                            "code, M = 16"},
                           &bio8);
        return cat;
    }

private:
    std::map<std::string, CatalogEntry> entries_;
};

/// Shared immutable built-in catalog.
inline const Catalog& builtin_catalog() {
    static const Catalog cat = Catalog::builtins();
    return cat;
}

} // namespace ostbc
