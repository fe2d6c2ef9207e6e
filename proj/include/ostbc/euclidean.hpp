#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/linalg.hpp"

namespace ostbc {

/// M real codewords of dimension n with binary labels. The equivalent
/// representation of an OSTBC signal set once structural zeros are dropped.
struct EuclideanCode {
    std::size_t dim = 0;
    std::vector<RVec> codewords;       // codewords[i] has length dim
    std::vector<std::uint32_t> labels; // permutation of 0..M-1
    double avg_energy = 0.0;           // mean squared codeword norm

    std::size_t size() const { return codewords.size(); }

    std::size_t index_of_label(std::uint32_t label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw ValidationError("euclidean code: unknown label " + std::to_string(label));
    }
};

inline double mean_squared_norm(const std::vector<RVec>& codewords) {
    double s = 0.0;
    for (const RVec& c : codewords) s += norm2(c);
    return s / static_cast<double>(codewords.size());
}

inline EuclideanCode make_euclidean_code(std::vector<RVec> codewords,
                                         std::vector<std::uint32_t> labels) {
    if (codewords.empty())
        throw ValidationError("euclidean code: at least one codeword required");
    const std::size_t n = codewords.front().size();
    for (const RVec& c : codewords)
        if (c.size() != n)
            throw ValidationError("euclidean code: inconsistent codeword dimensions");
    if (labels.size() != codewords.size())
        throw ValidationError("euclidean code: label count mismatch");
    std::vector<bool> seen(codewords.size(), false);
    for (std::uint32_t l : labels) {
        if (l >= codewords.size() || seen[l])
            throw ValidationError("euclidean code: labels must be a permutation of 0..M-1");
        seen[l] = true;
    }
    EuclideanCode code;
    code.dim = n;
    code.avg_energy = mean_squared_norm(codewords);
    code.codewords = std::move(codewords);
    code.labels = std::move(labels);
    return code;
}

/// Distances from one codeword to all others, sorted ascending.
struct DistanceProfile {
    std::uint32_t source_label = 0;
    std::vector<double> distances; // size M-1
};

/// Normalized distance spectrum of a uniform code: strictly increasing
/// distances d / sqrt(avg_energy) with multiplicities summing to M-1.
struct DistanceSpectrum {
    struct Entry {
        double distance = 0.0;
        std::size_t multiplicity = 0;
    };
    std::vector<Entry> entries;
    bool uniform = true;

    double min_distance() const { return entries.front().distance; }
    std::size_t min_multiplicity() const { return entries.front().multiplicity; }

    std::size_t pair_count() const {
        std::size_t s = 0;
        for (const Entry& e : entries) s += e.multiplicity;
        return s;
    }
};

/// Raised by distance_spectrum on a non-uniform code; carries the per-label
/// profiles that witnessed the disagreement.
struct NonUniformCodeError : ValidationError {
    std::vector<DistanceProfile> profiles;
    explicit NonUniformCodeError(std::vector<DistanceProfile> p)
        : ValidationError("code is not a uniform constellation; "
                          "distance spectrum undefined"),
          profiles(std::move(p)) {}
};

/// Euclidean code equivalent to the OSTBC: drops the trailing structural
/// zeros of each proxy codeword and embeds complex coordinates as (re, im)
/// pairs, so the dimension is 2 * n_info and all pairwise distances match
/// ||s_u - s_t||.
inline EuclideanCode extract_equivalent_code(const OstbcDesign& design,
                                             const std::vector<SymbolVector>& codewords) {
    if (codewords.empty())
        throw ValidationError("extract_equivalent_code: empty codeword set");
    std::vector<RVec> embedded;
    std::vector<std::uint32_t> labels;
    embedded.reserve(codewords.size());
    for (const SymbolVector& s : codewords) {
        validate_symbol_vector(design, s);
        CVec info(s.symbols.begin(), s.symbols.begin() + design.n_info);
        embedded.push_back(embed_real(info));
        labels.push_back(s.label);
    }
    return make_euclidean_code(std::move(embedded), std::move(labels));
}

inline DistanceProfile distance_profile(const EuclideanCode& code, std::uint32_t label) {
    const std::size_t u = code.index_of_label(label);
    DistanceProfile p;
    p.source_label = label;
    p.distances.reserve(code.size() - 1);
    for (std::size_t t = 0; t < code.size(); ++t) {
        if (t == u) continue;
        p.distances.push_back(std::sqrt(dist2(code.codewords[u], code.codewords[t])));
    }
    std::sort(p.distances.begin(), p.distances.end());
    return p;
}

inline std::vector<DistanceProfile> all_distance_profiles(const EuclideanCode& code) {
    std::vector<DistanceProfile> out;
    out.reserve(code.size());
    for (std::uint32_t l = 0; l < code.size(); ++l)
        out.push_back(distance_profile(code, l));
    return out;
}

/// True iff every codeword has the same sorted distance profile.
inline bool is_uniform(const EuclideanCode& code, double rel_tol = 1e-9) {
    if (code.size() < 2) return true;
    const std::vector<DistanceProfile> profiles = all_distance_profiles(code);
    const double scale = std::sqrt(std::max(code.avg_energy, 1e-300));
    for (std::size_t i = 1; i < profiles.size(); ++i)
        for (std::size_t k = 0; k < profiles[i].distances.size(); ++k)
            if (std::abs(profiles[i].distances[k] - profiles[0].distances[k]) >
                rel_tol * scale)
                return false;
    return true;
}

/// Normalized distance spectrum (Definition 5 requires a uniform code).
inline DistanceSpectrum distance_spectrum(const EuclideanCode& code,
                                          double rel_tol = 1e-9) {
    if (code.size() < 2)
        throw ValidationError("distance_spectrum: need at least two codewords");
    if (!is_uniform(code, rel_tol))
        throw NonUniformCodeError(all_distance_profiles(code));
    const DistanceProfile profile = distance_profile(code, code.labels[0]);
    const double scale = std::sqrt(code.avg_energy);
    DistanceSpectrum spec;
    for (double d : profile.distances) {
        const double dn = d / scale;
        if (!spec.entries.empty() &&
            dn - spec.entries.back().distance <= rel_tol * std::max(1.0, dn)) {
            ++spec.entries.back().multiplicity;
        } else {
            spec.entries.push_back({dn, 1});
        }
    }
    return spec;
}

/// Normalized distance spectrum constant: sum of multiplicity * d^(-2K).
inline double ndsc(const DistanceSpectrum& spectrum, unsigned k) {
    if (k < 1) throw ValidationError("ndsc: K must be >= 1");
    double s = 0.0;
    for (const DistanceSpectrum::Entry& e : spectrum.entries)
        s += static_cast<double>(e.multiplicity) *
             std::pow(e.distance, -2.0 * static_cast<double>(k));
    return s;
}

/// True iff all codeword norms are equal within tolerance.
inline bool is_spherical(const EuclideanCode& code, double rel_tol = 1e-9) {
    if (code.codewords.empty()) return true;
    const double r0 = std::sqrt(norm2(code.codewords.front()));
    for (const RVec& c : code.codewords)
        if (std::abs(std::sqrt(norm2(c)) - r0) > rel_tol * std::max(1.0, r0))
            return false;
    return true;
}

/// Effective dimensionality: numerical rank of the codeword set.
inline std::size_t effective_dimension(const EuclideanCode& code,
                                       double rel_tol = 1e-8) {
    return numerical_rank(code.codewords, rel_tol);
}

} // namespace ostbc
