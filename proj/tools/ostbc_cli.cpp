// Command-line front end: catalog inspection, distance spectra, analytic
// bounds, exact Alamouti-BPSK error rates, spherical-code certificates, and
// the Rayleigh-fading Monte Carlo simulator. Emits CSV/JSON for plotting
// and regression.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ostbc/ostbc.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumeric = 4;

std::string now_iso8601() {
    const std::time_t t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// Catalog = builtins plus optional user entries from $OSTBC_CATALOG.
ostbc::Catalog load_catalog() {
    ostbc::Catalog cat = ostbc::Catalog::builtins();
    const char* path = std::getenv("OSTBC_CATALOG");
    if (path != nullptr && *path != '\0') {
        std::ifstream in(path);
        if (!in)
            throw ostbc::ValidationError(std::string("cannot open catalog file ") + path);
        json doc = json::parse(in);
        for (const json& j : doc)
            cat.register_entry(ostbc::catalog_entry_from_json(j));
    }
    return cat;
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (step <= 0.0) throw ostbc::ValidationError("snr-step must be positive");
    if (stop < start) throw ostbc::ValidationError("snr-stop must be >= snr-start");
    const std::size_t count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    if (count > 100000) throw ostbc::ValidationError("SNR grid too large");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
    return grid;
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw ostbc::ValidationError("cannot open output file " + out_path);
    out << text;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& config, std::uint64_t seed) {
    if (out_path.empty()) return;
    json manifest{{"command", command},
                  {"config", config},
                  {"seed", seed},
                  {"artifact_version", ostbc::version},
                  {"timestamp", now_iso8601()}};
    std::ofstream out(out_path + ".manifest.json", std::ios::binary);
    if (out) out << manifest.dump(2) << "\n";
}

ostbc::SnrMeasure parse_measure(const std::string& s) {
    if (s == "per_antenna") return ostbc::SnrMeasure::per_antenna;
    if (s == "per_bit") return ostbc::SnrMeasure::per_bit;
    throw ostbc::ValidationError("unknown snr-measure '" + s + "'");
}

json estimates_to_json(const std::vector<ostbc::ErrorRateEstimate>& rows) {
    json arr = json::array();
    for (const ostbc::ErrorRateEstimate& r : rows)
        arr.push_back({{"snr_db", r.snr_db},
                       {"trials", r.trials},
                       {"bit_errors", r.bit_errors},
                       {"symbol_errors", r.symbol_errors},
                       {"ber", r.ber},
                       {"ser", r.ser},
                       {"ci95_ber", r.ci95_ber},
                       {"ci95_ser", r.ci95_ser}});
    return arr;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal space-time block codes as Euclidean codes"};
    app.require_subcommand(1);

    std::string key, out_path, format = "csv", measure_str, decoder_str = "full_mimo";
    unsigned n_rx = 1, workers = 1;
    double snr_start = 0.0, snr_stop = 0.0, snr_step = 1.0;
    bool have_stop = false;
    std::uint64_t trials = 100000, seed = 1;

    std::function<int()> action;

    // ---- catalog -----------------------------------------------------------
    CLI::App* cat_cmd = app.add_subcommand("catalog", "inspect the design/code catalog");
    cat_cmd->require_subcommand(1);
    CLI::App* cat_list = cat_cmd->add_subcommand("list", "list entry keys");
    cat_list->callback([&] {
        action = [&]() {
            for (const std::string& k : load_catalog().keys()) std::cout << k << "\n";
            return kExitOk;
        };
    });
    CLI::App* cat_show = cat_cmd->add_subcommand("show", "print one entry as JSON");
    cat_show->add_option("key", key, "catalog entry key")->required();
    cat_show->callback([&] {
        action = [&]() {
            const ostbc::Catalog cat = load_catalog();
            const ostbc::CatalogEntry& e = cat.get(key);
            std::cout << ostbc::catalog_entry_to_json(e).dump(2) << "\n";
            return kExitOk;
        };
    });
    CLI::App* cat_export = cat_cmd->add_subcommand("export", "dump all entries as JSON");
    cat_export->add_option("--out", out_path, "output path (default stdout)");
    cat_export->callback([&] {
        action = [&]() {
            const ostbc::Catalog cat = load_catalog();
            json arr = json::array();
            for (const std::string& k : cat.keys())
                arr.push_back(ostbc::catalog_entry_to_json(cat.get(k)));
            write_text(arr.dump(2) + "\n", out_path);
            return kExitOk;
        };
    });

    // ---- spectrum ----------------------------------------------------------
    CLI::App* spec_cmd =
        app.add_subcommand("spectrum", "normalized distance spectrum of an entry");
    spec_cmd->add_option("key", key, "catalog entry key")->required();
    spec_cmd->add_option("--out", out_path, "output path (default stdout)");
    spec_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    spec_cmd->callback([&] {
        action = [&]() {
            const ostbc::Catalog cat = load_catalog();
            const ostbc::CatalogEntry& e = cat.get(key);
            const ostbc::DistanceSpectrum s = ostbc::distance_spectrum(e.code);
            std::ostringstream os;
            if (format == "json") {
                json arr = json::array();
                for (const auto& entry : s.entries)
                    arr.push_back({{"distance", entry.distance},
                                   {"multiplicity", entry.multiplicity}});
                os << arr.dump(2) << "\n";
            } else {
                ostbc::write_spectrum_csv(os, s);
            }
            write_text(os.str(), out_path);
            return kExitOk;
        };
    });

    // ---- bounds ------------------------------------------------------------
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "union/asymptotic/min-distance SER bounds");
    bounds_cmd->add_option("key", key, "catalog entry key")->required();
    bounds_cmd->add_option("--nr", n_rx, "receive antennas")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--snr-start", snr_start, "grid start, dB")->required();
    bounds_cmd->add_option("--snr-stop", snr_stop, "grid stop, dB (default start)");
    bounds_cmd->add_option("--snr-step", snr_step, "grid step, dB");
    bounds_cmd->add_option("--snr-measure", measure_str,
                           "per_antenna (default) or per_bit")
        ->check(CLI::IsMember({"per_antenna", "per_bit"}));
    bounds_cmd->add_option("--out", out_path, "output path (default stdout)");
    bounds_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bounds_cmd->callback([&] {
        have_stop = bounds_cmd->count("--snr-stop") > 0;
        action = [&]() {
            const ostbc::Catalog cat = load_catalog();
            const ostbc::CatalogEntry& e = cat.get(key);
            const ostbc::SnrMeasure measure =
                measure_str.empty() ? ostbc::SnrMeasure::per_antenna
                                    : parse_measure(measure_str);
            const ostbc::DistanceSpectrum s = ostbc::distance_spectrum(e.code);
            const unsigned k = static_cast<unsigned>(e.design.n_tx) * n_rx;
            std::vector<ostbc::BoundsRow> rows;
            std::size_t vacuous = 0;
            for (double db : make_grid(snr_start, have_stop ? snr_stop : snr_start,
                                       snr_step)) {
                const double gamma_c =
                    ostbc::gamma_c_from_snr(e, measure, std::pow(10.0, db / 10.0));
                ostbc::BoundsRow row;
                row.snr_db = db;
                row.union_bound = ostbc::union_bound_ser(s, {k, gamma_c});
                row.asymptotic_bound = ostbc::asymptotic_bound(s, {k, gamma_c});
                row.min_distance_bound = ostbc::min_distance_bound(s, {k, gamma_c});
                if (row.union_bound > 1.0) ++vacuous;
                rows.push_back(row);
            }
            std::ostringstream os;
            if (format == "json") {
                json arr = json::array();
                for (const ostbc::BoundsRow& r : rows)
                    arr.push_back({{"snr_db", r.snr_db},
                                   {"union_bound", r.union_bound},
                                   {"asymptotic_bound", r.asymptotic_bound},
                                   {"min_distance_bound", r.min_distance_bound}});
                os << arr.dump(2) << "\n";
            } else {
                ostbc::write_bounds_csv(os, rows);
            }
            write_text(os.str(), out_path);
            if (vacuous > 0)
                std::cerr << "note: union bound exceeds 1 on " << vacuous
                          << " row(s); those bounds are vacuous\n";
            write_manifest(out_path, "bounds",
                           json{{"entry", key},
                                {"nr", n_rx},
                                {"snr_measure", measure == ostbc::SnrMeasure::per_antenna
                                                    ? "per_antenna"
                                                    : "per_bit"},
                                {"snr_start", snr_start},
                                {"snr_stop", have_stop ? snr_stop : snr_start},
                                {"snr_step", snr_step}},
                           0);
            return kExitOk;
        };
    });

    // ---- exact -------------------------------------------------------------
    CLI::App* exact_cmd = app.add_subcommand(
        "exact", "exact Alamouti-BPSK BER/SER over Rayleigh fading");
    exact_cmd->add_option("--nr", n_rx, "receive antennas")->check(CLI::PositiveNumber);
    exact_cmd->add_option("--snr-start", snr_start, "grid start, dB")->required();
    exact_cmd->add_option("--snr-stop", snr_stop, "grid stop, dB (default start)");
    exact_cmd->add_option("--snr-step", snr_step, "grid step, dB");
    exact_cmd->add_option("--snr-measure", measure_str,
                          "per_bit (default, gamma_b axis) or per_antenna")
        ->check(CLI::IsMember({"per_antenna", "per_bit"}));
    exact_cmd->add_option("--out", out_path, "output path (default stdout)");
    exact_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    exact_cmd->callback([&] {
        have_stop = exact_cmd->count("--snr-stop") > 0;
        action = [&]() {
            const ostbc::SnrMeasure measure = measure_str.empty()
                                                  ? ostbc::SnrMeasure::per_bit
                                                  : parse_measure(measure_str);
            const ostbc::Catalog cat = load_catalog();
            const ostbc::CatalogEntry& e = cat.get("alamouti-bpsk");
            const unsigned k = 2 * n_rx;
            std::vector<ostbc::ExactRow> rows;
            for (double db : make_grid(snr_start, have_stop ? snr_stop : snr_start,
                                       snr_step)) {
                const double gamma_c =
                    ostbc::gamma_c_from_snr(e, measure, std::pow(10.0, db / 10.0));
                const double gamma_b =
                    gamma_c / static_cast<double>(e.bits_per_codeword());
                rows.push_back({db, ostbc::ber_alamouti_bpsk({k, gamma_b}),
                                ostbc::ser_alamouti_bpsk({k, gamma_b})});
            }
            std::ostringstream os;
            if (format == "json") {
                json arr = json::array();
                for (const ostbc::ExactRow& r : rows)
                    arr.push_back({{"snr_db", r.snr_db},
                                   {"ber_exact", r.ber_exact},
                                   {"ser_exact", r.ser_exact}});
                os << arr.dump(2) << "\n";
            } else {
                ostbc::write_exact_csv(os, rows);
            }
            write_text(os.str(), out_path);
            write_manifest(out_path, "exact",
                           json{{"nr", n_rx},
                                {"snr_measure", measure == ostbc::SnrMeasure::per_bit
                                                    ? "per_bit"
                                                    : "per_antenna"},
                                {"snr_start", snr_start},
                                {"snr_stop", have_stop ? snr_stop : snr_start},
                                {"snr_step", snr_step}},
                           0);
            return kExitOk;
        };
    });

    // ---- simulate ----------------------------------------------------------
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo BER/SER over Rayleigh fading");
    sim_cmd->add_option("--code,--design", key, "catalog entry key")->required();
    sim_cmd->add_option("--nr", n_rx, "receive antennas")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--snr-start", snr_start, "grid start, dB")->required();
    sim_cmd->add_option("--snr-stop", snr_stop, "grid stop, dB (default start)");
    sim_cmd->add_option("--snr-step", snr_step, "grid step, dB");
    sim_cmd->add_option("--snr-measure", measure_str, "per_bit (default) or per_antenna")
        ->check(CLI::IsMember({"per_antenna", "per_bit"}));
    sim_cmd->add_option("--trials", trials, "trials per SNR point");
    sim_cmd->add_option("--seed", seed, "RNG seed");
    sim_cmd->add_option("--decoder", decoder_str, "full_mimo (default) or equivalent_simo")
        ->check(CLI::IsMember({"full_mimo", "equivalent_simo"}));
    sim_cmd->add_option("--workers", workers, "worker threads (0 = hardware)");
    sim_cmd->add_option("--out", out_path, "output path (default stdout)");
    sim_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sim_cmd->callback([&] {
        have_stop = sim_cmd->count("--snr-stop") > 0;
        action = [&]() {
            ostbc::SimConfig cfg;
            cfg.entry_key = key;
            cfg.n_rx = n_rx;
            cfg.snr_grid_db =
                make_grid(snr_start, have_stop ? snr_stop : snr_start, snr_step);
            cfg.snr_measure = measure_str.empty() ? ostbc::SnrMeasure::per_bit
                                                  : parse_measure(measure_str);
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.decoder = decoder_str == "equivalent_simo"
                              ? ostbc::DecoderKind::equivalent_simo
                              : ostbc::DecoderKind::full_mimo;
            cfg.workers = workers;
            const std::vector<ostbc::ErrorRateEstimate> rows =
                ostbc::run_monte_carlo(cfg, load_catalog());
            std::ostringstream os;
            if (format == "json") {
                os << estimates_to_json(rows).dump(2) << "\n";
            } else {
                ostbc::write_estimates_csv(os, rows);
            }
            write_text(os.str(), out_path);
            write_manifest(out_path, "simulate", ostbc::sim_config_to_json(cfg),
                           cfg.seed);
            return kExitOk;
        };
    });

    // ---- checkbounds -------------------------------------------------------
    CLI::App* check_cmd = app.add_subcommand(
        "checkbounds", "Rankin/Coxeter certificate for a spherical entry");
    check_cmd->add_option("key", key, "catalog entry key")->required();
    check_cmd->add_option("--out", out_path, "output path (default stdout)");
    check_cmd->callback([&] {
        action = [&]() {
            const ostbc::Catalog cat = load_catalog();
            const ostbc::CatalogEntry& e = cat.get(key);
            const ostbc::RankinCertificate cert = ostbc::check_rankin_bounds(e.code);
            json j = ostbc::rankin_certificate_to_json(cert);
            j["entry"] = key;
            // Coxeter bound where the Schlafli recursion is defined
            try {
                j["coxeter_bound"] =
                    ostbc::coxeter_bound(static_cast<unsigned>(cert.n),
                                         std::sqrt(cert.d2_min));
            } catch (const ostbc::Error& err) {
                j["coxeter_bound"] = nullptr;
                j["coxeter_note"] = err.what();
            }
            write_text(j.dump(2) + "\n", out_path);
            return kExitOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action();
    } catch (const ostbc::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ostbc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
