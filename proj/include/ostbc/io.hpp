#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ostbc/catalog.hpp"
#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/euclidean.hpp"
#include "ostbc/rankin.hpp"
#include "ostbc/simulate.hpp"

namespace ostbc {

/// Shortest decimal form that round-trips a double; CSV output must be
/// byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    double back = 0.0;
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

// ---- JSON formats ----------------------------------------------------------

inline nlohmann::json design_to_json(const OstbcDesign& d) {
    nlohmann::json cells = nlohmann::json::array();
    for (const DesignCell& c : d.cells)
        cells.push_back({{"row", c.row},
                         {"col", c.col},
                         {"sym", c.sym},
                         {"conj", c.conj},
                         {"sign", c.sign}});
    return {{"name", d.name}, {"n_tx", d.n_tx}, {"n_info", d.n_info}, {"cells", cells}};
}

inline OstbcDesign design_from_json(const nlohmann::json& j) {
    OstbcDesign d;
    d.name = j.at("name").get<std::string>();
    d.n_tx = j.at("n_tx").get<std::size_t>();
    d.n_info = j.at("n_info").get<std::size_t>();
    for (const nlohmann::json& c : j.at("cells")) {
        DesignCell cell;
        cell.row = c.at("row").get<int>();
        cell.col = c.at("col").get<int>();
        cell.sym = c.at("sym").get<int>();
        cell.conj = c.at("conj").get<bool>();
        cell.sign = c.at("sign").get<int>();
        if (cell.row < 0 || cell.col < 0 ||
            static_cast<std::size_t>(cell.row) >= d.n_tx ||
            static_cast<std::size_t>(cell.col) >= d.n_tx || cell.sym < 0 ||
            static_cast<std::size_t>(cell.sym) >= d.n_info ||
            (cell.sign != 1 && cell.sign != -1))
            throw ValidationError("design JSON: malformed cell in '" + d.name + "'");
        d.cells.push_back(cell);
    }
    return d;
}

inline nlohmann::json euclidean_code_to_json(const EuclideanCode& code) {
    return {{"n", code.dim},
            {"m", code.size()},
            {"avg_energy", code.avg_energy},
            {"codewords", code.codewords},
            {"labels", code.labels}};
}

inline EuclideanCode euclidean_code_from_json(const nlohmann::json& j) {
    auto codewords = j.at("codewords").get<std::vector<RVec>>();
    auto labels = j.at("labels").get<std::vector<std::uint32_t>>();
    EuclideanCode code = make_euclidean_code(std::move(codewords), std::move(labels));
    if (j.contains("n") && j.at("n").get<std::size_t>() != code.dim)
        throw ValidationError("euclidean code JSON: declared dimension mismatch");
    if (j.contains("m") && j.at("m").get<std::size_t>() != code.size())
        throw ValidationError("euclidean code JSON: declared cardinality mismatch");
    return code;
}

inline nlohmann::json catalog_entry_to_json(const CatalogEntry& e) {
    return {{"key", e.key},
            {"notes", e.notes},
            {"design", design_to_json(e.design)},
            {"code", euclidean_code_to_json(e.code)}};
}

inline CatalogEntry catalog_entry_from_json(const nlohmann::json& j) {
    CatalogEntry e;
    e.key = j.at("key").get<std::string>();
    e.notes = j.value("notes", std::string{});
    e.design = design_from_json(j.at("design"));
    e.code = euclidean_code_from_json(j.at("code"));
    return e;
}

inline nlohmann::json rankin_certificate_to_json(const RankinCertificate& c) {
    nlohmann::json j{{"m", c.m},
                     {"n", c.n},
                     {"d2_min", c.d2_min},
                     {"first", {{"holds", c.first_holds},
                                {"ceiling", c.first_ceiling},
                                {"slack", c.first_slack}}}};
    if (c.second_holds)
        j["second"] = {{"holds", *c.second_holds}, {"ceiling", c.n + 1}};
    else
        j["second"] = "n/a";
    if (c.third_holds)
        j["third"] = {{"holds", *c.third_holds},
                      {"ceiling", 2 * c.n},
                      {"equality", c.third_equality}};
    else
        j["third"] = "n/a";
    return j;
}

// ---- CSV emitters ----------------------------------------------------------

inline void write_spectrum_csv(std::ostream& os, const DistanceSpectrum& spectrum) {
    os << "distance,multiplicity\n";
    for (const DistanceSpectrum::Entry& e : spectrum.entries)
        os << format_double(e.distance) << "," << e.multiplicity << "\n";
}

struct BoundsRow {
    double snr_db = 0.0;
    double union_bound = 0.0;
    double asymptotic_bound = 0.0;
    double min_distance_bound = 0.0;
};

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundsRow>& rows) {
    os << "snr_db,union_bound,asymptotic_bound,min_distance_bound\n";
    for (const BoundsRow& r : rows)
        os << format_double(r.snr_db) << "," << format_double(r.union_bound) << ","
           << format_double(r.asymptotic_bound) << ","
           << format_double(r.min_distance_bound) << "\n";
}

struct ExactRow {
    double snr_db = 0.0;
    double ber_exact = 0.0;
    double ser_exact = 0.0;
};

inline void write_exact_csv(std::ostream& os, const std::vector<ExactRow>& rows) {
    os << "snr_db,ber_exact,ser_exact\n";
    for (const ExactRow& r : rows)
        os << format_double(r.snr_db) << "," << format_double(r.ber_exact) << ","
           << format_double(r.ser_exact) << "\n";
}

inline void write_estimates_csv(std::ostream& os,
                                const std::vector<ErrorRateEstimate>& rows) {
    os << "snr_db,trials,bit_errors,symbol_errors,ber,ser,ci95_ber,ci95_ser\n";
    for (const ErrorRateEstimate& r : rows)
        os << format_double(r.snr_db) << "," << r.trials << "," << r.bit_errors << ","
           << r.symbol_errors << "," << format_double(r.ber) << ","
           << format_double(r.ser) << "," << format_double(r.ci95_ber) << ","
           << format_double(r.ci95_ser) << "\n";
}

// ---- Run manifests ---------------------------------------------------------

inline nlohmann::json sim_config_to_json(const SimConfig& cfg) {
    return {{"entry", cfg.entry_key},
            {"nr", cfg.n_rx},
            {"snr_grid_db", cfg.snr_grid_db},
            {"snr_measure", to_string(cfg.snr_measure)},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"decoder", to_string(cfg.decoder)},
            {"workers", cfg.workers}};
}

inline SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig cfg;
    cfg.entry_key = j.at("entry").get<std::string>();
    cfg.n_rx = j.at("nr").get<unsigned>();
    cfg.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    cfg.snr_measure = j.at("snr_measure").get<std::string>() == "per_antenna"
                          ? SnrMeasure::per_antenna
                          : SnrMeasure::per_bit;
    cfg.trials = j.at("trials").get<std::uint64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.decoder = j.at("decoder").get<std::string>() == "equivalent_simo"
                      ? DecoderKind::equivalent_simo
                      : DecoderKind::full_mimo;
    cfg.workers = j.value("workers", 1u);
    return cfg;
}

} // namespace ostbc
