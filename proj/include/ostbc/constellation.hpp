#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ostbc/errors.hpp"
#include "ostbc/linalg.hpp"

namespace ostbc {

/// L-ary constituent alphabet with Gray-coded bit labels. L is a power of
/// two and every point carries the same energy accounting (average E).
struct ConstituentConstellation {
    std::string name;
    std::vector<cplx> points;
    std::vector<std::uint32_t> bit_labels; // bit_labels[i] labels points[i]
    double energy = 1.0;                   // average symbol energy E

    std::size_t size() const { return points.size(); }

    std::size_t bits_per_symbol() const {
        std::size_t b = 0;
        while ((std::size_t{1} << b) < points.size()) ++b;
        return b;
    }

    /// Point carrying the given bit label.
    cplx point_for_label(std::uint32_t label) const {
        for (std::size_t i = 0; i < points.size(); ++i)
            if (bit_labels[i] == label) return points[i];
        throw ValidationError("constellation '" + name + "': no point with label " +
                              std::to_string(label));
    }
};

inline void validate_constellation(const ConstituentConstellation& c) {
    const std::size_t l = c.size();
    if (l < 2 || (l & (l - 1)) != 0)
        throw ValidationError("constellation '" + c.name +
                              "': size must be a power of two >= 2");
    if (c.bit_labels.size() != l)
        throw ValidationError("constellation '" + c.name + "': label count mismatch");
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j)
            if (c.bit_labels[i] == c.bit_labels[j])
                throw ValidationError("constellation '" + c.name +
                                      "': duplicate bit label");
    if (c.energy <= 0.0)
        throw ValidationError("constellation '" + c.name + "': energy must be positive");
}

/// Antipodal BPSK: bit 0 -> +sqrt(E), bit 1 -> -sqrt(E).
inline ConstituentConstellation bpsk(double energy = 1.0) {
    const double a = std::sqrt(energy);
    return {"bpsk", {cplx(a, 0.0), cplx(-a, 0.0)}, {0u, 1u}, energy};
}

/// Gray-mapped QPSK on the diagonals, symbol energy E:
/// 00 -> (+,+), 01 -> (-,+), 11 -> (-,-), 10 -> (+,-), each scaled by sqrt(E/2).
inline ConstituentConstellation qpsk(double energy = 1.0) {
    const double a = std::sqrt(energy / 2.0);
    return {"qpsk",
            {cplx(a, a), cplx(-a, a), cplx(-a, -a), cplx(a, -a)},
            {0u, 1u, 3u, 2u},
            energy};
}

} // namespace ostbc
