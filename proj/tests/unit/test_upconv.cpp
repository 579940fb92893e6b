#include "doctest.h"

#include "oracles.hpp"
#include "test_paths.hpp"

#include "pdcm/error.hpp"
#include "pdcm/upconv.hpp"

#include <cmath>
#include <random>

using namespace pdcm;

namespace {

const MaterialDatabase& db() {
    static const auto d = load_database(testpaths::database());
    return d;
}

}  // namespace

TEST_CASE("seeded difference-frequency output wavelengths") {
    const auto& ln = db().find("PPLN");
    const auto& gap = db().find("OPGaP");

    const auto a = upconvert(gap, 1.25, 6.028);
    CHECK(a.output_um == doctest::Approx(1.5772).epsilon(1e-4));
    CHECK(a.detector_band == DetectorBand::ingaas);

    const auto b = upconvert(ln, 0.66, 3.0);
    CHECK(b.output_um == doctest::Approx(0.8462).epsilon(1e-4));
    CHECK(b.detector_band == DetectorBand::si_spad);

    const auto c = upconvert(ln, 0.66, 5.0);
    CHECK(c.output_um == doctest::Approx(0.7604).epsilon(1e-4));
    CHECK(c.detector_band == DetectorBand::si_spad);

    for (const auto* s : {&a, &b, &c}) {
        CHECK(s->dispersion_evaluable);
        CHECK(std::isfinite(s->period_um));
        CHECK(s->output_um > s->seed_um);
        CHECK(1.0 / s->seed_um == doctest::Approx(1.0 / s->output_um + 1.0 / s->mid_ir_um).epsilon(1e-14));
    }
}

TEST_CASE("seed for a target output") {
    const auto& ln = db().find("PPLN");
    const auto& gap = db().find("OPGaP");
    CHECK(seed_for_target(gap, 6.028, 1.55).seed_um == doctest::Approx(1.2330).epsilon(1e-3));
    CHECK(seed_for_target(ln, 5.0, 0.76).seed_um == doctest::Approx(0.6597).epsilon(1e-3));

    const auto s = seed_for_target(gap, 6.028, 1.55);
    CHECK(s.output_um == doctest::Approx(1.55).epsilon(1e-12));
    const auto back = upconvert(gap, s.seed_um, 6.028);
    CHECK(back.output_um == doctest::Approx(1.55).epsilon(1e-12));
    CHECK(back.period_um == doctest::Approx(s.period_um).epsilon(1e-9));
}

TEST_CASE("grating period matches an independent scan of the seeded mismatch") {
    const auto& ln = db().find("PPLN");
    const auto sol = upconvert(ln, 0.66, 3.0);
    REQUIRE(sol.dispersion_evaluable);
    const double t = 300.0 - 273.15;
    const double out = oracle::idler(0.66, 3.0);
    const double s = oracle::gayer_ne(0.66, t) / 0.66 - oracle::gayer_ne(out, t) / out - oracle::gayer_ne(3.0, t) / 3.0;
    CHECK(std::fabs(sol.period_um) == doctest::Approx(1.0 / std::fabs(s)).epsilon(1e-9));
}

TEST_CASE("detector band boundaries are half-open") {
    const DetectorBands bands;
    CHECK(bands.classify(0.7) == DetectorBand::si_spad);
    CHECK(bands.classify(0.8999999) == DetectorBand::si_spad);
    CHECK(bands.classify(0.9) == DetectorBand::none);
    CHECK(bands.classify(0.6999999) == DetectorBand::none);
    CHECK(bands.classify(1.5) == DetectorBand::ingaas);
    CHECK(bands.classify(1.7) == DetectorBand::none);
    CHECK(bands.classify(1.2) == DetectorBand::none);
    CHECK(to_string(DetectorBand::si_spad) == "si_spad");
    CHECK(to_string(DetectorBand::ingaas) == "ingaas");
    CHECK(to_string(DetectorBand::none) == "none");
}

TEST_CASE("wavelengths outside the dispersion data give a flagged result") {
    const auto& ln = db().find("PPLN");
    const auto sol = upconvert(ln, 1.0, 8.0);
    CHECK_FALSE(sol.dispersion_evaluable);
    CHECK(std::isnan(sol.period_um));
    CHECK(sol.output_um == doctest::Approx(oracle::idler(1.0, 8.0)));
    CHECK_FALSE(sol.feasible.within_transparency);
}

TEST_CASE("invalid upconversion requests") {
    const auto& ln = db().find("PPLN");
    CHECK_THROWS_AS(upconvert(ln, 3.0, 3.0), DomainError);
    CHECK_THROWS_AS(upconvert(ln, 4.0, 3.0), DomainError);
    CHECK_THROWS_AS(upconvert(ln, -1.0, 3.0), DomainError);
    CHECK_THROWS_AS(upconvert(db().find("CSP"), 1.0, 6.0), DomainError);
    CHECK_THROWS_AS(seed_for_target(ln, 5.0, -1.0), DomainError);
}

TEST_CASE("energy conservation over random seeds") {
    const auto& ln = db().find("PPLN");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> seed(0.5, 1.6);
    std::uniform_real_distribution<double> mid(2.0, 12.0);
    for (int k = 0; k < 2000; ++k) {
        const double s = seed(rng);
        const double m = mid(rng);
        const auto sol = upconvert(ln, s, m);
        CHECK(sol.output_um > s);
        CHECK(std::fabs(1.0 / s - 1.0 / sol.output_um - 1.0 / m) < 1e-12);
        if (sol.dispersion_evaluable) CHECK(std::isfinite(sol.period_um));
    }
}
