#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ostbc/errors.hpp"
#include "ostbc/linalg.hpp"

namespace ostbc {

/// Complex codeword of an orthogonal design: J information-bearing symbols
/// followed by n_tx - J structural zeros, plus its binary label.
struct SymbolVector {
    CVec symbols;
    std::uint32_t label = 0;
};

/// One non-zero cell of a code matrix: entry (row, col) is
/// sign * s[sym] or sign * conj(s[sym]).
struct DesignCell {
    int row = 0;
    int col = 0;
    int sym = 0;
    bool conj = false;
    int sign = 1;
};

/// Generalized complex orthogonal design: a linear-in-(s, s*) map from a
/// symbol vector to an n_tx x n_tx code matrix with orthogonal columns.
/// Cells not listed are zero.
struct OstbcDesign {
    std::string name;
    std::size_t n_tx = 0;   // transmit antennas == time slots
    std::size_t n_info = 0; // information-bearing symbols J <= n_tx
    std::vector<DesignCell> cells;

    std::size_t trailing_zeros() const { return n_tx - n_info; }
};

/// n_tx x n_tx complex code matrix, row-major; rows are time slots and
/// columns are transmit antennas.
struct CodeMatrix {
    std::size_t n = 0;
    CVec entries;

    CodeMatrix() = default;
    explicit CodeMatrix(std::size_t size) : n(size), entries(size * size) {}

    cplx& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    double frobenius_norm2() const { return norm2(entries); }
};

inline void validate_symbol_vector(const OstbcDesign& design, const SymbolVector& s) {
    if (s.symbols.size() != design.n_tx)
        throw ValidationError("symbol vector length " + std::to_string(s.symbols.size()) +
                              " does not match design '" + design.name + "' (n_tx " +
                              std::to_string(design.n_tx) + ")");
    for (std::size_t t = design.n_info; t < design.n_tx; ++t)
        if (s.symbols[t] != cplx(0.0, 0.0))
            throw ValidationError("symbol vector violates the zero pattern of design '" +
                                  design.name + "': entry " + std::to_string(t) +
                                  " must be zero");
}

/// Builds the code matrix G(s) from the design's cell table.
inline CodeMatrix build_code_matrix(const OstbcDesign& design, const SymbolVector& s) {
    validate_symbol_vector(design, s);
    CodeMatrix g(design.n_tx);
    for (const DesignCell& c : design.cells) {
        const cplx v = c.conj ? std::conj(s.symbols[c.sym]) : s.symbols[c.sym];
        g(c.row, c.col) = static_cast<double>(c.sign) * v;
    }
    return g;
}

/// G(s) * h without materializing the matrix; out must have size n_tx.
inline void apply_design(const OstbcDesign& design, const CVec& symbols,
                         const CVec& h, CVec& out) {
    for (cplx& z : out) z = cplx(0.0, 0.0);
    for (const DesignCell& c : design.cells) {
        const cplx v = c.conj ? std::conj(symbols[c.sym]) : symbols[c.sym];
        out[c.row] += static_cast<double>(c.sign) * v * h[c.col];
    }
}

/// Max deviation of G^H G from ||s||^2 I; zero for a valid orthogonal design.
inline double verify_orthogonality(const OstbcDesign& design, const SymbolVector& s) {
    const CodeMatrix g = build_code_matrix(design, s);
    const double energy = norm2(s.symbols);
    const std::size_t n = g.n;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(g(k, i)) * g(k, j);
            if (i == j) acc -= energy;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

/// Average received SNR per antenna for equiprobable codewords:
/// rho * sum_u ||G_u||_F^2 / (M * n_tx * n0).
inline double average_snr_per_antenna(const OstbcDesign& design,
                                      const std::vector<SymbolVector>& code,
                                      double rho, double n0) {
    if (code.empty())
        throw ValidationError("average_snr_per_antenna: empty code");
    if (rho <= 0.0 || n0 <= 0.0)
        throw ValidationError("average_snr_per_antenna: rho and n0 must be positive");
    double total = 0.0;
    for (const SymbolVector& s : code)
        total += build_code_matrix(design, s).frobenius_norm2();
    return rho * total /
           (static_cast<double>(code.size()) * static_cast<double>(design.n_tx) * n0);
}

/// Alamouti's 2x2 rate-1 design: rows [s1, s2; -s2*, s1*].
inline OstbcDesign alamouti_design() {
    OstbcDesign d;
    d.name = "alamouti";
    d.n_tx = 2;
    d.n_info = 2;
    d.cells = {
        {0, 0, 0, false, +1},
        {0, 1, 1, false, +1},
        {1, 0, 1, true, -1},
        {1, 1, 0, true, +1},
    };
    return d;
}

/// 4x4 rate-3/4 design carrying symbols (s1, s2, s3, 0).
inline OstbcDesign rate34_design() {
    OstbcDesign d;
    d.name = "rate34";
    d.n_tx = 4;
    d.n_info = 3;
    d.cells = {
        {0, 0, 0, false, +1}, {0, 2, 1, false, +1}, {0, 3, 2, false, -1},
        {1, 1, 0, false, +1}, {1, 2, 2, true, +1},  {1, 3, 1, true, +1},
        {2, 0, 1, true, -1},  {2, 1, 2, false, -1}, {2, 2, 0, true, +1},
        {3, 0, 2, true, +1},  {3, 1, 1, false, -1}, {3, 3, 0, true, +1},
    };
    return d;
}

} // namespace ostbc
