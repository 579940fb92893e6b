#include "doctest.h"

#include "oracles.hpp"
#include "test_paths.hpp"

#include "pdcm/dispersion.hpp"
#include "pdcm/gvm.hpp"
#include "pdcm/locus.hpp"

#include <cmath>
#include <random>

using namespace pdcm;

namespace {

const MaterialDatabase& db() {
    static const auto d = load_database(testpaths::database());
    return d;
}

double theta_at(const MaterialRecord& m, const PhaseMatchConfigEntry& c, double p, double s) {
    return dispersion_parameter(m, c, WavelengthTriple::from_pump_signal(p, s)).theta_deg;
}

}  // namespace

TEST_CASE("angle mapping and regime classification") {
    CHECK(gvm_angle_deg(1.0, 1.0) == doctest::Approx(45.0));
    CHECK(gvm_angle_deg(0.0, 1.0) == 0.0);
    CHECK(gvm_angle_deg(1.0, 0.0) == 90.0);
    CHECK(gvm_angle_deg(-1.0, 0.0) == 90.0);
    CHECK(std::isnan(gvm_angle_deg(0.0, 0.0)));
    CHECK(gvm_angle_deg(-1.0, 1.0) == doctest::Approx(-45.0));
    CHECK(classify(0.4) == GvmRegime::asymmetric_zero);
    CHECK(classify(-0.4) == GvmRegime::asymmetric_zero);
    CHECK(classify(45.5) == GvmRegime::symmetric);
    CHECK(classify(89.7) == GvmRegime::asymmetric_ninety);
    CHECK(classify(-89.7) == GvmRegime::asymmetric_ninety);
    CHECK(classify(20.0) == GvmRegime::generic);
    CHECK(classify(NAN) == GvmRegime::singular);
    CHECK(angle_distance_deg(89.9, -89.9) == doctest::Approx(0.2));
}

TEST_CASE("D agrees with group delays from the oracle") {
    // PPLN type-0: all photons extraordinary, oracle indices from the
    // published set.
    const auto& ln = db().find("PPLN");
    const auto& c = *ln.config(PmType::type0);
    const auto n = [](double l) { return oracle::gayer_ne(l, 26.85); };
    const double p = 0.8;
    const double s = 1.3;
    const double i = oracle::idler(p, s);
    const double gp = oracle::group_index(n, p);
    const double gs = oracle::group_index(n, s);
    const double gi = oracle::group_index(n, i);
    const double expected_d = -(gp - gs) / (gp - gi);
    const auto pt = dispersion_parameter(ln, c, WavelengthTriple::from_pump_signal(p, s));
    CHECK(pt.D == doctest::Approx(expected_d).epsilon(1e-7));
    CHECK(pt.theta_deg == doctest::Approx(std::atan(expected_d) * 180.0 / oracle::kPi).epsilon(1e-7));
}

TEST_CASE("PPKTP type-II at 791 nm degenerate is symmetric") {
    const auto& ktp = db().find("PPKTP");
    const auto pt = dispersion_parameter(ktp, *ktp.config(PmType::typeII), WavelengthTriple::from_pump_signal(0.791, 1.582));
    CHECK(pt.theta_deg == doctest::Approx(45.0).epsilon(kRegimeToleranceDeg / 45.0));
    CHECK(pt.regime == GvmRegime::symmetric);
}

TEST_CASE("same-axis interactions are singular at exact degeneracy") {
    for (const auto& m : db().materials) {
        for (const auto& c : m.configs) {
            if (c.type == PmType::typeII) continue;
            const double p = m.id == "PPKTP" || m.id == "PPLN" ? 1.0 : 2.0;
            const auto pt = dispersion_parameter(m, c, WavelengthTriple::from_pump_signal(p, 2.0 * p));
            CHECK_MESSAGE(pt.regime == GvmRegime::singular, m.id << " " << c.label());
            CHECK(std::isnan(pt.D));
            CHECK(std::isnan(pt.theta_deg));
        }
    }
}

TEST_CASE("sign and special-value identities of D") {
    std::mt19937_64 rng(7);
    const auto& ktp = db().find("PPKTP");
    std::uniform_real_distribution<double> pump(0.5, 1.2);
    std::uniform_real_distribution<double> f(1.4, 1.95);
    for (const auto& c : ktp.configs) {
        for (int k = 0; k < 500; ++k) {
            const double p = pump(rng);
            const auto pt = dispersion_parameter(ktp, c, WavelengthTriple::from_pump_signal(p, p * f(rng)));
            REQUIRE(pt.regime != GvmRegime::singular);
            CHECK((pt.D > 0.0) == (pt.theta_deg > 0.0 && pt.theta_deg < 90.0));
        }
    }
    CHECK(gvm_angle_deg(2.0, 2.0) == 45.0);
    CHECK(gvm_angle_deg(0.0, 3.0) == 0.0);
}

TEST_CASE("exchanging signal and idler maps D to 1/D for same-axis configs") {
    const auto& ln = db().find("PPLN");
    for (PmType type : {PmType::type0, PmType::typeI}) {
        const auto& c = *ln.config(type);
        for (double s : {1.1, 1.25, 1.33}) {
            const double p = 0.7;
            const auto a = dispersion_parameter(ln, c, WavelengthTriple::from_pump_signal(p, s));
            const auto b = dispersion_parameter(ln, c, WavelengthTriple::from_pump_signal(p, idler_wavelength(p, s)));
            CHECK(b.D == doctest::Approx(1.0 / a.D).epsilon(1e-10));
            if (a.D > 0) CHECK(b.theta_deg == doctest::Approx(90.0 - a.theta_deg).epsilon(1e-9));
        }
    }
}

TEST_CASE("degenerate locus roots") {
    SUBCASE("PPLN type-II theta = 45 near 1775 nm") {
        const auto& ln = db().find("PPLN");
        const auto roots = find_degenerate_locus(ln, *ln.config(PmType::typeII), 45.0, {1.5, 2.0});
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].triple.pump() == doctest::Approx(1.775).epsilon(0.01));
    }
    SUBCASE("PPKTP type-II theta = 0 near 1200 nm, in the o -> o + e panel") {
        const auto& ktp = db().find("PPKTP");
        const auto roots = find_degenerate_locus(ktp, ktp.config(PmType::typeII)->swapped(), 0.0, {1.0, 1.5});
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].triple.pump() == doctest::Approx(1.200).epsilon(0.01));
    }
    SUBCASE("PPLN type-I returns the point where both group-delay differences vanish") {
        const auto& ln = db().find("PPLN");
        const auto& c = *ln.config(PmType::typeI);
        const auto roots = find_degenerate_locus(ln, c, 0.0, {0.6, 1.0});
        REQUIRE(roots.size() == 1);
        const double p = roots[0].triple.pump();
        CHECK(roots[0].gvm.regime == GvmRegime::singular);
        // Oracle: ordinary group index at 2p equals extraordinary at p.
        const auto ne = [](double l) { return oracle::gayer_ne(l, 26.85); };
        const auto no = [](double l) { return oracle::gayer_no(l, 26.85); };
        const double expected = oracle::bisect(
            [&](double x) { return oracle::group_index(no, 2 * x) - oracle::group_index(ne, x); }, 0.6, 1.0);
        CHECK(p == doctest::Approx(expected).epsilon(1e-6));
        CHECK(p == doctest::Approx(0.784).epsilon(0.01));
    }
    SUBCASE("target outside the attained range gives no roots") {
        const auto& ln = db().find("PPLN");
        CHECK(find_degenerate_locus(ln, *ln.config(PmType::typeII), 45.0, {0.6, 0.9}).empty());
    }
}

TEST_CASE("non-degenerate KTP type-II theta = 45 at 745.6 nm") {
    const auto& ktp = db().find("PPKTP");
    std::vector<MatchSolution> roots;
    for (const auto& c : {*ktp.config(PmType::typeII), ktp.config(PmType::typeII)->swapped()}) {
        for (auto& r : find_nondegenerate_locus(ktp, c, 45.0, 0.7456, {0.9, 1.2})) roots.push_back(r);
    }
    REQUIRE_FALSE(roots.empty());
    for (const auto& r : roots) {
        CHECK(r.triple.idler_role() == doctest::Approx(idler_wavelength(0.7456, r.triple.signal_role())).epsilon(1e-14));
        CHECK(std::fabs(r.gvm.theta_deg - 45.0) <= 1e-3);
    }
    CHECK(find_nondegenerate_locus(ktp, *ktp.config(PmType::typeII), 80.0, 0.7456, {0.9, 0.95}).empty());
}

TEST_CASE("locus roots re-evaluate to the target and are stable under a finer pre-scan") {
    struct Case {
        std::string id;
        PmType type;
        bool swap;
        double target;
        WavelengthRange range;
    };
    const std::vector<Case> cases = {
        {"PPKTP", PmType::typeII, false, 45.0, {0.7, 0.9}}, {"PPKTP", PmType::typeII, true, 0.0, {1.0, 1.5}},
        {"PPLN", PmType::typeII, false, 45.0, {1.5, 2.0}},  {"ZGP", PmType::typeII, false, 0.0, {2.0, 4.5}},
        {"ZGP", PmType::typeII, true, 0.0, {2.0, 4.5}},     {"ZGP", PmType::typeII, false, 45.0, {2.0, 4.5}},
        {"CSP", PmType::typeII, false, 45.0, {2.0, 3.0}},
    };
    for (const auto& k : cases) {
        const auto& m = db().find(k.id);
        const auto c = k.swap ? m.config(k.type)->swapped() : *m.config(k.type);
        const auto coarse = find_degenerate_locus(m, c, k.target, k.range);
        LocusOptions fine;
        fine.scan_step_um = 0.5e-3;
        const auto finer = find_degenerate_locus(m, c, k.target, k.range, kRoomTemperatureK, fine);
        REQUIRE_MESSAGE(coarse.size() == finer.size(), k.id);
        for (std::size_t r = 0; r < coarse.size(); ++r) {
            CHECK(angle_distance_deg(theta_at(m, c, coarse[r].triple.pump(), 2 * coarse[r].triple.pump()), k.target) <= 1e-3);
            CHECK(std::fabs(coarse[r].triple.pump() - finer[r].triple.pump()) <= 1e-6);  // 1e-3 nm
        }
    }
}

TEST_CASE("theta residual vanishes exactly where theta hits the target") {
    const auto& ktp = db().find("PPKTP");
    const auto pt = dispersion_parameter(ktp, *ktp.config(PmType::typeII), WavelengthTriple::from_pump_signal(0.8, 1.5));
    CHECK(theta_residual(pt, pt.theta_deg) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(std::fabs(theta_residual(pt, pt.theta_deg + 10.0)) > 1e-4);
}
