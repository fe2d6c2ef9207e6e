#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ostbc/catalog.hpp"
#include "ostbc/euclidean.hpp"
#include "ostbc/rankin.hpp"
#include "ostbc/rng.hpp"

using namespace ostbc;
using Catch::Approx;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::vector<SymbolVector> alamouti_bpsk_proxies(double e = 1.0) {
    const double a = std::sqrt(e);
    std::vector<SymbolVector> out;
    std::uint32_t label = 0;
    for (double x : {a, -a})
        for (double y : {a, -a})
            out.push_back({CVec{cplx(x, 0.0), cplx(y, 0.0)}, label++});
    return out;
}

void check_spectrum(const DistanceSpectrum& got,
                    const std::vector<std::pair<double, std::size_t>>& want) {
    REQUIRE(got.entries.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(got.entries[i].distance == Approx(want[i].first).margin(1e-9));
        CHECK(got.entries[i].multiplicity == want[i].second);
    }
}

// brute-force spectrum directly from pairwise distances, bypassing the
// profile/uniformity machinery
std::vector<std::pair<double, std::size_t>> brute_spectrum(const EuclideanCode& c) {
    std::vector<double> from0;
    for (std::size_t t = 1; t < c.size(); ++t)
        from0.push_back(std::sqrt(dist2(c.codewords[0], c.codewords[t])) /
                        std::sqrt(c.avg_energy));
    std::sort(from0.begin(), from0.end());
    std::vector<std::pair<double, std::size_t>> out;
    for (double d : from0) {
        if (!out.empty() && std::abs(out.back().first - d) < 1e-9)
            ++out.back().second;
        else
            out.push_back({d, 1});
    }
    return out;
}

} // namespace

TEST_CASE("Alamouti-BPSK extraction: codewords, rank, spectrum") {
    const EuclideanCode code =
        extract_equivalent_code(alamouti_design(), alamouti_bpsk_proxies());
    REQUIRE(code.size() == 4);
    REQUIRE(code.dim == 4); // 2J real coordinates
    CHECK(code.avg_energy == Approx(2.0));
    // codewords are (+-1, 0, +-1, 0)
    for (const RVec& w : code.codewords) {
        CHECK(std::abs(w[0]) == Approx(1.0));
        CHECK(w[1] == 0.0);
        CHECK(std::abs(w[2]) == Approx(1.0));
        CHECK(w[3] == 0.0);
    }
    CHECK(effective_dimension(code) == 2);
    check_spectrum(distance_spectrum(code), {{kSqrt2, 2}, {2.0, 1}});
}

TEST_CASE("rate-3/4 BPSK extraction: 6-D embedding of rank 3") {
    std::vector<SymbolVector> proxies;
    std::uint32_t label = 0;
    for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0})
            for (double c : {1.0, -1.0})
                proxies.push_back(
                    {CVec{cplx(a, 0), cplx(b, 0), cplx(c, 0), cplx(0, 0)}, label++});
    const EuclideanCode code = extract_equivalent_code(rate34_design(), proxies);
    REQUIRE(code.dim == 6);
    CHECK(effective_dimension(code) == 3);
    CHECK(code.avg_energy == Approx(3.0));
    check_spectrum(distance_spectrum(code),
                   {{2.0 * std::sqrt(1.0 / 3.0), 3},
                    {2.0 * std::sqrt(2.0 / 3.0), 3},
                    {2.0, 1}});
}

TEST_CASE("constellation-driven extraction matches the codeword-set route") {
    const EuclideanCode via_constellation =
        extract_equivalent_code(alamouti_design(), bpsk());
    const EuclideanCode via_codewords =
        extract_equivalent_code(alamouti_design(), alamouti_bpsk_proxies());
    REQUIRE(via_constellation.size() == via_codewords.size());
    check_spectrum(distance_spectrum(via_constellation), {{kSqrt2, 2}, {2.0, 1}});
    check_spectrum(
        distance_spectrum(extract_equivalent_code(rate34_design(), bpsk())),
        {{2.0 * std::sqrt(1.0 / 3.0), 3}, {2.0 * std::sqrt(2.0 / 3.0), 3}, {2.0, 1}});
}

TEST_CASE("single-codeword extraction gives an empty profile") {
    const EuclideanCode code = extract_equivalent_code(
        alamouti_design(),
        std::vector<SymbolVector>{SymbolVector{CVec{cplx(1, 0), cplx(1, 0)}, 0}});
    REQUIRE(code.size() == 1);
    CHECK(distance_profile(code, 0).distances.empty());
}

TEST_CASE("extraction validates zero patterns and emptiness") {
    CHECK_THROWS_AS(extract_equivalent_code(rate34_design(),
                                            {SymbolVector{CVec(4, cplx(1, 0)), 0}}),
                    ValidationError);
    CHECK_THROWS_AS(
        extract_equivalent_code(alamouti_design(), std::vector<SymbolVector>{}),
        ValidationError);
}

TEST_CASE("distance profile of the BPSK pair code") {
    const double e = 2.25; // arbitrary constituent energy
    const EuclideanCode code =
        extract_equivalent_code(alamouti_design(), alamouti_bpsk_proxies(e));
    const DistanceProfile p = distance_profile(code, 0);
    REQUIRE(p.distances.size() == 3);
    // raw distances {2*sqrt(E), 2*sqrt(E), 2*sqrt(2E)}
    CHECK(p.distances[0] == Approx(2.0 * std::sqrt(e)));
    CHECK(p.distances[1] == Approx(2.0 * std::sqrt(e)));
    CHECK(p.distances[2] == Approx(2.0 * std::sqrt(2.0 * e)));
    CHECK_THROWS_AS(distance_profile(code, 99), ValidationError);
}

TEST_CASE("equilateral simplex profile") {
    const double h = std::sqrt(3.0) / 2.0;
    const EuclideanCode tri =
        make_euclidean_code({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}, {0, 1, 2});
    for (std::uint32_t u : {0u, 1u, 2u}) {
        const DistanceProfile p = distance_profile(tri, u);
        CHECK(p.distances[0] == Approx(1.0));
        CHECK(p.distances[1] == Approx(1.0));
    }
}

TEST_CASE("biorthogonal M=8 profile: six equidistant neighbors and one antipode") {
    const EuclideanCode code = biorthogonal_code(4);
    const DistanceProfile p = distance_profile(code, 0);
    const double scale = std::sqrt(code.avg_energy);
    REQUIRE(p.distances.size() == 7);
    for (int i = 0; i < 6; ++i) CHECK(p.distances[i] / scale == Approx(kSqrt2));
    CHECK(p.distances[6] / scale == Approx(2.0));
}

TEST_CASE("uniformity detection") {
    CHECK(is_uniform(
        extract_equivalent_code(alamouti_design(), alamouti_bpsk_proxies())));
    CHECK(is_uniform(canonical_product_code(qpsk(), 2)));
    const EuclideanCode lopsided =
        make_euclidean_code({{0.0}, {1.0}, {3.0}}, {0, 1, 2});
    CHECK_FALSE(is_uniform(lopsided));
    CHECK_THROWS_AS(distance_spectrum(lopsided), NonUniformCodeError);
    try {
        distance_spectrum(lopsided);
    } catch (const NonUniformCodeError& e) {
        REQUIRE(e.profiles.size() == 3);
        CHECK(e.profiles[0].distances == std::vector<double>{1.0, 3.0});
        CHECK(e.profiles[1].distances == std::vector<double>{1.0, 2.0});
    }
}

TEST_CASE("product-code spectra match their algebraic values") {
    check_spectrum(distance_spectrum(canonical_product_code(bpsk(), 2)),
                   {{kSqrt2, 2}, {2.0, 1}});
    check_spectrum(distance_spectrum(canonical_product_code(qpsk(), 2)),
                   {{1.0, 4}, {kSqrt2, 6}, {std::sqrt(3.0), 4}, {2.0, 1}});
    check_spectrum(distance_spectrum(canonical_product_code(bpsk(), 3)),
                   {{2.0 * std::sqrt(1.0 / 3.0), 3},
                    {2.0 * std::sqrt(2.0 / 3.0), 3},
                    {2.0, 1}});
}

TEST_CASE("spectrum multiplicities sum to M-1") {
    for (const char* key : {"alamouti-bpsk", "alamouti-qpsk", "rate34-bpsk",
                            "alamouti-bio4", "alamouti-bio8"}) {
        const CatalogEntry& e = builtin_catalog().get(key);
        CHECK(distance_spectrum(e.code).pair_count() == e.code.size() - 1);
    }
}

TEST_CASE("spectrum is invariant under global rotation") {
    TrialRng rng(77, 0, 0);
    const EuclideanCode base = canonical_product_code(qpsk(), 2);
    // random rotation via Gram-Schmidt on a Gaussian matrix
    const std::size_t n = base.dim;
    std::vector<RVec> basis(n, RVec(n));
    for (RVec& row : basis)
        for (double& x : row) x = rng.next_normal();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += basis[i][k] * basis[j][k];
            for (std::size_t k = 0; k < n; ++k) basis[i][k] -= dot * basis[j][k];
        }
        const double nrm = std::sqrt(norm2(basis[i]));
        for (double& x : basis[i]) x /= nrm;
    }
    std::vector<RVec> rotated;
    for (const RVec& w : base.codewords) {
        RVec r(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) r[i] += basis[i][k] * w[k];
        rotated.push_back(r);
    }
    const EuclideanCode rot = make_euclidean_code(std::move(rotated), base.labels);
    const DistanceSpectrum a = distance_spectrum(base);
    const DistanceSpectrum b = distance_spectrum(rot);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].distance == Approx(b.entries[i].distance).margin(1e-9));
        CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
    }
}

TEST_CASE("NDSC values for the BPSK pair spectrum") {
    const DistanceSpectrum s = distance_spectrum(canonical_product_code(bpsk(), 2));
    CHECK(ndsc(s, 1) == Approx(1.25));   // 2*(1/2) + 1*(1/4)
    CHECK(ndsc(s, 2) == Approx(0.5625)); // 2*(1/4) + 1*(1/16)
    DistanceSpectrum single{{{2.0, 1}}, true};
    for (unsigned k : {1u, 2u, 5u})
        CHECK(ndsc(single, k) == Approx(std::pow(4.0, -static_cast<double>(k))));
}

TEST_CASE("NDSC decreases in K when every distance exceeds 1") {
    const DistanceSpectrum s = distance_spectrum(canonical_product_code(bpsk(), 2));
    double prev = ndsc(s, 1);
    for (unsigned k = 2; k <= 8; ++k) {
        const double cur = ndsc(s, k);
        CHECK(cur > 0.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("spherical detection") {
    CHECK(is_spherical(
        extract_equivalent_code(alamouti_design(), alamouti_bpsk_proxies())));
    CHECK(is_spherical(biorthogonal_code(4)));
    CHECK(is_spherical(biorthogonal_code(8)));
    CHECK_FALSE(is_spherical(make_euclidean_code({{1.0}, {2.0}}, {0, 1})));
}

TEST_CASE("Rankin certificates") {
    SECTION("biorthogonal n=4 meets the third bound with equality") {
        const RankinCertificate c = check_rankin_bounds(biorthogonal_code(4));
        CHECK(c.m == 8);
        CHECK(c.n == 4);
        CHECK(c.d2_min == Approx(2.0));
        CHECK(c.first_holds);
        CHECK(c.first_ceiling == Approx(16.0 / 7.0));
        REQUIRE(c.third_holds.has_value());
        CHECK(*c.third_holds);
        CHECK(c.third_equality);
        CHECK_FALSE(c.second_holds.has_value());
    }
    SECTION("antipodal pair achieves the first bound") {
        const EuclideanCode pair = make_euclidean_code({{1.0}, {-1.0}}, {0, 1});
        const RankinCertificate c = check_rankin_bounds(pair);
        CHECK(c.first_ceiling == Approx(4.0));
        CHECK(c.d2_min == Approx(4.0));
        CHECK(c.first_holds);
        CHECK(c.first_slack == Approx(0.0).margin(1e-12));
    }
    SECTION("M=8 first-bound ceiling and slack") {
        const RankinCertificate c = check_rankin_bounds(biorthogonal_code(4));
        CHECK(c.first_ceiling == Approx(2.0 * 8.0 / 7.0));
        CHECK(c.first_slack == Approx(2.0 * 8.0 / 7.0 - 2.0));
    }
    SECTION("non-spherical input is rejected") {
        CHECK_THROWS_AS(
            check_rankin_bounds(make_euclidean_code({{1.0}, {2.0}}, {0, 1})),
            ValidationError);
    }
}

TEST_CASE("Schlafli function sanity") {
    for (double alpha : {0.1, 0.5, 1.0, 2.0, std::numbers::pi}) {
        CHECK(schlafli_F(0, alpha) == 1.0);
        CHECK(schlafli_F(1, alpha) == 1.0);
        CHECK(schlafli_F(2, alpha) ==
              Approx(2.0 * alpha / std::numbers::pi).margin(1e-6));
    }
    // monotone nondecreasing in alpha (nonnegative integrand)
    for (unsigned n : {2u, 3u, 4u}) {
        double lo = n == 2 ? 0.05 : (n == 3 ? 0.6 : 0.65);
        double prev = schlafli_F(n, lo);
        for (double alpha = lo + 0.1; alpha < 1.6; alpha += 0.1) {
            const double cur = schlafli_F(n, alpha);
            CHECK(cur >= prev - 1e-9);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(schlafli_F(9, 1.0), ValidationError);
    CHECK_THROWS_AS(schlafli_F(4, 0.1), NumericError); // below the lower limit
    CHECK_THROWS_AS(schlafli_F(2, -1.0), NumericError);
}

TEST_CASE("Schlafli recursion is defined at the lower endpoint") {
    // F_n vanishes at its lower integration limit; the deep recursion hits
    // this endpoint exactly
    const double lo6 = 0.5 * std::acos(1.0 / 5.0);
    CHECK(schlafli_F(6, lo6) == 0.0);
    CHECK(schlafli_F(6, lo6 + 0.2) > 0.0);
    // at alpha = pi/2 the bound comes out to n for n in {3, 4, 8}
    CHECK(coxeter_bound(3, kSqrt2) == Approx(3.0).margin(1e-5));
    CHECK(coxeter_bound(4, kSqrt2) == Approx(4.0).margin(1e-5));
    CHECK(coxeter_bound(8, kSqrt2) == Approx(8.0).margin(1e-5));
}

TEST_CASE("Coxeter bound against the analytic F_2/F_3 forms") {
    // F_2(a) = 2a/pi and F_3(a) = (2/pi)(a - pi/6)
    const double d = kSqrt2; // alpha = pi/2
    const double bound = coxeter_bound(3, d);
    const double f2 = 1.0;
    const double f3 =
        (2.0 / std::numbers::pi) * (std::numbers::pi / 2.0 - std::numbers::pi / 6.0);
    CHECK(bound == Approx(2.0 * f2 / f3).epsilon(1e-6));
    CHECK_THROWS_AS(coxeter_bound(4, 0.05), NumericError); // alpha below the domain
    CHECK_THROWS_AS(coxeter_bound(1, 1.0), ValidationError);
}

TEST_CASE("biorthogonal n=2 spectrum agrees with brute force") {
    const EuclideanCode bio2 = biorthogonal_code(2);
    const auto spec = brute_spectrum(bio2);
    REQUIRE(spec.size() == 2);
    CHECK(spec[0].first == Approx(kSqrt2));
    CHECK(spec[0].second == 2);
    CHECK(spec[1].first == Approx(2.0));
    CHECK(spec[1].second == 1);
    check_spectrum(distance_spectrum(bio2), {{kSqrt2, 2}, {2.0, 1}});
}
