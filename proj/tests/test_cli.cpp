#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("ostbc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("OSTBC_CLI_BIN");
    REQUIRE(bin != nullptr);
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(bin) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("catalog list names the five built-in entries") {
    const RunResult r = run_cli("catalog list");
    REQUIRE(r.exit_code == 0);
    for (const char* key : {"alamouti-bpsk", "alamouti-qpsk", "rate34-bpsk",
                            "alamouti-bio4", "alamouti-bio8"})
        CHECK(r.out.find(key) != std::string::npos);
}

TEST_CASE("spectrum CSV matches the algebraic values") {
    const RunResult bpsk = run_cli("spectrum alamouti-bpsk");
    REQUIRE(bpsk.exit_code == 0);
    CHECK(bpsk.out ==
          "distance,multiplicity\n1.414213562373095,2\n2,1\n");
    const RunResult bio4 = run_cli("spectrum alamouti-bio4");
    REQUIRE(bio4.exit_code == 0);
    CHECK(bio4.out ==
          "distance,multiplicity\n1.4142135623730951,6\n2,1\n");
}

TEST_CASE("unknown key exits with the validation code") {
    const RunResult r = run_cli("spectrum does-not-exist");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("unknown entry") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("bounds alamouti-bpsk").exit_code == 2); // missing --snr-start
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("exact output brackets and hits the guessing limits") {
    const RunResult r = run_cli("exact --nr 1 --snr-start -120 --snr-stop 0 --snr-step 60");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "snr_db,ber_exact,ser_exact");
    bool first = true;
    while (std::getline(in, line)) {
        double db, ber, ser;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &db, &ber, &ser) == 3);
        if (first) {
            CHECK(ber == Catch::Approx(0.5).margin(1e-6));
            CHECK(ser == Catch::Approx(0.75).margin(1e-6));
            first = false;
        }
        CHECK(ser >= ber);
    }
}

TEST_CASE("fixed seed reproduces byte-identical simulation CSV") {
    const std::string args =
        "simulate --code alamouti-bpsk --nr 2 --snr-start 2 --snr-stop 6 "
        "--snr-step 4 --trials 5000 --seed 77";
    const RunResult a = run_cli(args + " --workers 1");
    const RunResult b = run_cli(args + " --workers 1");
    const RunResult c = run_cli(args + " --workers 3");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.find("snr_db,trials,bit_errors,symbol_errors,ber,ser,ci95_ber,ci95_ser") == 0);
}

TEST_CASE("simulate writes a manifest that round-trips its config") {
    const fs::path out = scratch_dir() / "sim.csv";
    const RunResult r = run_cli(
        "simulate --code alamouti-bio4 --nr 1 --snr-start 4 --trials 2000 "
        "--seed 5 --decoder equivalent_simo --out " + out.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(out));
    const fs::path manifest = out.string() + ".manifest.json";
    REQUIRE(fs::exists(manifest));
    const json m = json::parse(slurp(manifest));
    CHECK(m.at("command") == "simulate");
    CHECK(m.at("seed") == 5);
    CHECK(m.contains("artifact_version"));
    CHECK(m.contains("timestamp"));
    const json cfg = m.at("config");
    CHECK(cfg.at("entry") == "alamouti-bio4");
    CHECK(cfg.at("nr") == 1);
    CHECK(cfg.at("decoder") == "equivalent_simo");
    CHECK(cfg.at("trials") == 2000);
    CHECK(cfg.at("snr_grid_db") == json::array({4.0}));
}

TEST_CASE("checkbounds certificates") {
    const RunResult bio = run_cli("checkbounds alamouti-bio4");
    REQUIRE(bio.exit_code == 0);
    const json j = json::parse(bio.out);
    CHECK(j.at("third").at("equality") == true);
    CHECK(j.at("m") == 8);
    CHECK(j.at("n") == 4);

    // Alamouti-BPSK: n = 2, M = 4 = 2n, squared minimum distance 2
    const RunResult ab = run_cli("checkbounds alamouti-bpsk");
    REQUIRE(ab.exit_code == 0);
    const json k = json::parse(ab.out);
    CHECK(k.at("n") == 2);
    CHECK(k.at("m") == 4);
    CHECK(k.at("d2_min").get<double>() == Catch::Approx(2.0));
    CHECK(k.at("third").at("equality") == true);
}

TEST_CASE("user catalog entries load from OSTBC_CATALOG") {
    // a valid but non-spherical user code: checkbounds must reject it
    const json user = json::array(
        {{{"key", "user-lopsided"},
          {"notes", "test entry"},
          {"design",
           {{"name", "alamouti"},
            {"n_tx", 2},
            {"n_info", 2},
            {"cells",
             json::array({{{"row", 0}, {"col", 0}, {"sym", 0}, {"conj", false}, {"sign", 1}},
                          {{"row", 0}, {"col", 1}, {"sym", 1}, {"conj", false}, {"sign", 1}},
                          {{"row", 1}, {"col", 0}, {"sym", 1}, {"conj", true}, {"sign", -1}},
                          {{"row", 1}, {"col", 1}, {"sym", 0}, {"conj", true}, {"sign", 1}}})}}},
          {"code",
           {{"n", 4},
            {"m", 2},
            {"avg_energy", 2.5},
            {"codewords", json::array({{1.0, 0.0, 0.0, 0.0}, {2.0, 0.0, 0.0, 0.0}})},
            {"labels", {0, 1}}}}}});
    const fs::path path = scratch_dir() / "user_catalog.json";
    std::ofstream(path) << user.dump();
    setenv("OSTBC_CATALOG", path.c_str(), 1);

    const RunResult listed = run_cli("catalog list");
    CHECK(listed.out.find("user-lopsided") != std::string::npos);
    const RunResult checked = run_cli("checkbounds user-lopsided");
    CHECK(checked.exit_code == 3);
    CHECK(checked.err.find("not spherical") != std::string::npos);
    unsetenv("OSTBC_CATALOG");
}

TEST_CASE("catalog export emits loadable JSON") {
    const RunResult r = run_cli("catalog export");
    REQUIRE(r.exit_code == 0);
    const json arr = json::parse(r.out);
    CHECK(arr.size() == 5);
    CHECK(arr[0].contains("design"));
    CHECK(arr[0].contains("code"));
}

TEST_CASE("bounds CSV has the documented schema") {
    const RunResult r =
        run_cli("bounds alamouti-bpsk --nr 1 --snr-start 0 --snr-stop 10 --snr-step 5");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("snr_db,union_bound,asymptotic_bound,min_distance_bound") == 0);
}
