#include "doctest.h"

#include "oracles.hpp"
#include "topology.hpp"
#include "test_paths.hpp"

#include "pdcm/error.hpp"
#include "pdcm/gvm.hpp"
#include "pdcm/phasematch.hpp"
#include "pdcm/sweep.hpp"

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace pdcm;

namespace {

const MaterialDatabase& db() {
    static const auto d = load_database(testpaths::database());
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same_grid(const Grid<double>& a, const Grid<double>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        if (!same_double(a.values()[k], b.values()[k])) return false;
    }
    return true;
}

bool same_map(const GridMap& a, const GridMap& b) {
    return a.material_id == b.material_id && a.database_version == b.database_version && a.config == b.config &&
           a.temperature_k == b.temperature_k && a.birefringent_threshold_um == b.birefringent_threshold_um &&
           a.pump_samples == b.pump_samples && a.signal_samples == b.signal_samples && same_grid(a.theta_deg, b.theta_deg) &&
           same_grid(a.abs_period_um, b.abs_period_um) && a.mask.values() == b.mask.values() &&
           same_grid(a.dispersion_numerator, b.dispersion_numerator) &&
           same_grid(a.dispersion_denominator, b.dispersion_denominator) && a.loci == b.loci;
}

GridMap map_of(const std::string& id, PmType type, bool swap, WavelengthRange pump, WavelengthRange signal,
               std::size_t res) {
    const auto& m = db().find(id);
    const auto c = swap ? m.config(type)->swapped() : *m.config(type);
    return scan(m, c, {pump, signal, res, res}, kRoomTemperatureK, db().version);
}

std::string fmt_name(double target) { return "theta_" + std::to_string(static_cast<int>(target)); }

std::filesystem::path temp_dir() {
    auto d = std::filesystem::temp_directory_path() / "pdcm-sweep-test";
    std::filesystem::create_directories(d);
    return d;
}

oracle::GroupIndexDiff oracle_diff(const PhaseMatchConfigEntry& c, std::function<double(double)> n_o,
                                   std::function<double(double)> n_e, double lo, double hi) {
    const auto pick = [=](Axis a) { return a == Axis::ordinary_y ? n_o : n_e; };
    const auto np = pick(c.pump), ns = pick(c.signal), ni = pick(c.idler);
    return [=](double p, double s) -> std::optional<std::pair<double, double>> {
        if (!(s > p)) return std::nullopt;
        const double i = oracle::idler(p, s);
        if (p < lo || s > hi || i > hi) return std::nullopt;
        const double gp = oracle::group_index(np, p);
        return std::make_pair(oracle::group_index(ns, s) - gp, gp - oracle::group_index(ni, i));
    };
}

}  // namespace

TEST_CASE("2x2 grid has four cells and exact endpoints") {
    const auto map = map_of("PPLN", PmType::type0, false, {0.8, 1.0}, {1.3, 1.5}, 2);
    CHECK(map.pump_samples == std::vector<double>{0.8, 1.0});
    CHECK(map.signal_samples == std::vector<double>{1.3, 1.5});
    CHECK(map.theta_deg.values().size() == 4);
    const auto& ln = db().find("PPLN");
    const auto sol = solve_period(ln, *ln.config(PmType::type0), 0.8, 1.5);
    CHECK(map.theta_deg(0, 1) == sol.gvm.theta_deg);
    CHECK(map.abs_period_um(0, 1) == std::fabs(sol.period_um));
}

TEST_CASE("resolution below two is rejected") {
    CHECK_THROWS_AS(map_of("PPLN", PmType::type0, false, {0.8, 1.0}, {1.3, 1.5}, 1), DomainError);
}

TEST_CASE("map invariants") {
    const auto map = map_of("PPKTP", PmType::typeII, false, {0.45, 2.2}, {0.5, 4.5}, 96);
    REQUIRE(map.theta_deg.rows() == map.pump_samples.size());
    REQUIRE(map.theta_deg.cols() == map.signal_samples.size());
    std::size_t ok = 0;
    for (std::size_t i = 0; i < map.pump_samples.size(); ++i) {
        for (std::size_t j = 0; j < map.signal_samples.size(); ++j) {
            if (map.mask(i, j) != mask::ok) continue;
            ++ok;
            CHECK(std::isfinite(map.theta_deg(i, j)));
            CHECK(std::isfinite(map.abs_period_um(i, j)));
            CHECK(map.theta_deg(i, j) > -90.0);
            CHECK(map.theta_deg(i, j) <= 90.0);
        }
    }
    CHECK(ok > 1000);
}

TEST_CASE("loci stay inside the box, on unmasked cells and within 0.1 degree of the target") {
    const auto& m = db().find("PPKTP");
    const auto& c = *m.config(PmType::typeII);
    const auto map = map_of("PPKTP", PmType::typeII, false, {0.45, 2.2}, {0.5, 4.5}, 96);
    const double dp = map.pump_samples[1] - map.pump_samples[0];
    const double ds = map.signal_samples[1] - map.signal_samples[0];
    std::size_t vertices = 0;
    for (const auto& l : map.loci) {
        if (!l.theta_deg) continue;
        for (const auto& line : l.polylines) {
            for (const auto& v : line) {
                ++vertices;
                CHECK(v.pump_um >= map.pump_samples.front());
                CHECK(v.pump_um <= map.pump_samples.back());
                CHECK(v.signal_um >= map.signal_samples.front());
                CHECK(v.signal_um <= map.signal_samples.back());
                const auto pt = dispersion_parameter(m, c, WavelengthTriple::from_pump_signal(v.pump_um, v.signal_um));
                CHECK(angle_distance_deg(pt.theta_deg, *l.theta_deg) <= 0.1);
                // The enclosing cell (either one, for points on an edge) has four ok corners.
                const auto i = static_cast<std::size_t>(std::min<double>(std::floor((v.pump_um - map.pump_samples[0]) / dp), map.pump_samples.size() - 2));
                const auto j = static_cast<std::size_t>(std::min<double>(std::floor((v.signal_um - map.signal_samples[0]) / ds), map.signal_samples.size() - 2));
                bool some_cell_ok = false;
                for (std::size_t a = (i > 0 ? i - 1 : 0); a <= i + 1 && a + 1 < map.pump_samples.size(); ++a) {
                    for (std::size_t b = (j > 0 ? j - 1 : 0); b <= j + 1 && b + 1 < map.signal_samples.size(); ++b) {
                        const bool contains = v.pump_um >= map.pump_samples[a] - 1e-12 && v.pump_um <= map.pump_samples[a + 1] + 1e-12 &&
                                              v.signal_um >= map.signal_samples[b] - 1e-12 && v.signal_um <= map.signal_samples[b + 1] + 1e-12;
                        const bool corners_ok = map.mask(a, b) == 0 && map.mask(a + 1, b) == 0 && map.mask(a, b + 1) == 0 &&
                                                map.mask(a + 1, b + 1) == 0;
                        some_cell_ok = some_cell_ok || (contains && corners_ok);
                    }
                }
                CHECK(some_cell_ok);
            }
        }
    }
    CHECK(vertices > 50);
}

TEST_CASE("PPKTP type-II map has a theta = 45 locus through (0.791, 1.582)") {
    const auto map = map_of("PPKTP", PmType::typeII, false, {0.7, 1.3}, {0.8, 2.6}, 128);
    const auto* l = map.find_locus("theta_45");
    REQUIRE(l != nullptr);
    double best = INFINITY;
    for (const auto& line : l->polylines) {
        for (const auto& v : line) best = std::min(best, std::hypot(v.pump_um - 0.791, v.signal_um - 1.582));
    }
    CHECK(best < 0.01);
}

TEST_CASE("degeneracy polyline is the exact line signal = 2 pump") {
    const auto map = map_of("PPLN", PmType::type0, false, {0.5, 2.0}, {0.6, 3.0}, 16);
    const auto* l = map.find_locus("degeneracy");
    REQUIRE(l != nullptr);
    REQUIRE(l->polylines.size() == 1);
    const auto& line = l->polylines[0];
    REQUIRE(line.size() == 2);
    CHECK(line[0].pump_um == 0.5);
    CHECK(line[0].signal_um == 1.0);
    CHECK(line[1].pump_um == 1.5);
    CHECK(line[1].signal_um == 3.0);
    for (const auto& v : line) CHECK(v.signal_um == 2.0 * v.pump_um);
}

TEST_CASE("type-0 degeneracy cells are singular and carry no loci") {
    for (const auto* id : {"PPKTP", "PPLN", "OPGaP", "OPGaAs"}) {
        const auto& m = db().find(id);
        const WavelengthRange pump = m.id == "OPGaAs" ? WavelengthRange{1.8, 4.0} : WavelengthRange{1.0, 2.0};
        const auto map = map_of(id, PmType::type0, false, pump, {pump.lo * 1.5, pump.hi * 2.5}, 101);
        const double ds = map.signal_samples[1] - map.signal_samples[0];
        for (std::size_t i = 0; i < map.pump_samples.size(); ++i) {
            for (std::size_t j = 0; j < map.signal_samples.size(); ++j) {
                const double off = std::fabs(map.signal_samples[j] - 2.0 * map.pump_samples[i]);
                const bool singular = (map.mask(i, j) & mask::singular) != 0;
                if (off <= 0.5 * ds * (1 - 1e-9)) CHECK_MESSAGE(singular, id);
                if (singular) CHECK(off <= ds);
            }
        }
        for (const auto& l : map.loci) {
            if (!l.theta_deg) continue;
            for (const auto& line : l.polylines) {
                for (const auto& v : line) CHECK(std::fabs(v.signal_um - 2.0 * v.pump_um) > 0.5 * ds);
            }
        }
    }
}

TEST_CASE("OP-GaAs maps mask every pump below the two-photon edge") {
    const auto map = map_of("OPGaAs", PmType::type0, false, {1.0, 4.0}, {1.2, 10.0}, 64);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < map.pump_samples.size(); ++i) {
        for (std::size_t j = 0; j < map.signal_samples.size(); ++j) {
            if (map.mask(i, j) != mask::ok) continue;
            ++ok;
            CHECK(map.pump_samples[i] >= 1.73);
        }
    }
    CHECK(ok > 0);
}

TEST_CASE("idlers beyond the transparency window are masked") {
    const auto map = map_of("PPLN", PmType::type0, false, {0.6, 2.2}, {0.7, 4.5}, 64);
    for (std::size_t i = 0; i < map.pump_samples.size(); ++i) {
        for (std::size_t j = 0; j < map.signal_samples.size(); ++j) {
            if (map.idler_um(i, j) > 4.5) CHECK((map.mask(i, j) & mask::idler_beyond_transparency) != 0);
        }
    }
}

TEST_CASE("fully masked grid gives an empty set of loci") {
    const auto map = map_of("OPGaAs", PmType::type0, false, {1.0, 1.5}, {1.6, 3.0}, 8);
    for (auto v : map.mask.values()) CHECK(v != mask::ok);
    for (const auto& l : map.loci) {
        if (l.theta_deg) CHECK(l.polylines.empty());
    }
}

TEST_CASE("JSON export round-trips and is byte-stable") {
    const auto map = map_of("PPLN", PmType::typeII, false, {0.6, 2.0}, {0.7, 4.0}, 40);
    const auto dir = temp_dir();
    export_map(map, MapFormat::json, dir / "a.json");
    export_map(map, MapFormat::json, dir / "b.json");
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    const auto back = map_from_json(slurp(dir / "a.json"));
    CHECK(same_map(map, back));
    // A second scan with identical inputs writes identical bytes.
    const auto again = map_of("PPLN", PmType::typeII, false, {0.6, 2.0}, {0.7, 4.0}, 40);
    CHECK(map_to_json(again) == slurp(dir / "a.json"));
    CHECK_THROWS_AS(map_from_json("{\"format\": \"other\"}"), ParseError);
}

TEST_CASE("CSV export has one row per cell plus a loci file") {
    const auto map = map_of("PPLN", PmType::typeII, false, {0.6, 2.0}, {0.7, 4.0}, 33);
    const auto dir = temp_dir();
    export_map(map, MapFormat::csv, dir / "m.csv");
    const auto text = slurp(dir / "m.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 33 * 33 + 1);
    CHECK(text.rfind("pump_um,signal_um,idler_um,theta_deg,abs_period_um,mask\n", 0) == 0);
    const auto loci = slurp(dir / "m_loci.csv");
    CHECK(loci.rfind("locus,polyline,vertex,pump_um,signal_um,idler_um\n", 0) == 0);
    CHECK(loci.find("degeneracy,0,1,") != std::string::npos);
    CHECK_THROWS_AS(export_map(map, MapFormat::csv, "/nonexistent-dir/m.csv"), IoError);
}

TEST_CASE("theta is resolution-convergent at probe points") {
    const WavelengthRange pump{0.7, 1.6};
    const WavelengthRange signal{0.9, 3.0};
    const auto coarse = map_of("PPKTP", PmType::typeII, false, pump, signal, 256);
    const auto fine = map_of("PPKTP", PmType::typeII, false, pump, signal, 512);
    int probes = 0;
    double worst = 0.0;
    for (double p = 0.75; p < 1.55; p += 0.0731) {
        for (double s = 1.0; s < 2.9; s += 0.1373) {
            const auto all_ok = [&](const GridMap& m) {
                for (std::size_t i = 0; i + 1 < m.pump_samples.size(); ++i) {
                    if (!(m.pump_samples[i] <= p && p <= m.pump_samples[i + 1])) continue;
                    for (std::size_t j = 0; j + 1 < m.signal_samples.size(); ++j) {
                        if (!(m.signal_samples[j] <= s && s <= m.signal_samples[j + 1])) continue;
                        return m.mask(i, j) == 0 && m.mask(i + 1, j) == 0 && m.mask(i, j + 1) == 0 &&
                               m.mask(i + 1, j + 1) == 0 &&
                               std::fabs(m.theta_deg(i, j)) < 85 && std::fabs(m.theta_deg(i + 1, j + 1)) < 85;
                    }
                }
                return false;
            };
            if (!all_ok(coarse) || !all_ok(fine)) continue;
            const auto at = [&](const GridMap& m) {
                return oracle::bilinear(m.pump_samples, m.signal_samples,
                                        [&](std::size_t i, std::size_t j) { return m.theta_deg(i, j); }, p, s);
            };
            worst = std::max(worst, std::fabs(at(coarse) - at(fine)));
            ++probes;
        }
    }
    CHECK(probes > 20);
    CHECK_MESSAGE(worst <= 0.05, "worst " << worst);
}

TEST_CASE("locus topology agrees with a fine-grid brute force") {
    const double t = kRoomTemperatureK - 273.15;
    const auto ln_o = [t](double l) { return oracle::gayer_no(l, t); };
    const auto ln_e = [t](double l) { return oracle::gayer_ne(l, t); };
    const auto zgp_o = [](double l) { return oracle::zelmon_zgp(l, false); };
    const auto zgp_e = [](double l) { return oracle::zelmon_zgp(l, true); };
    struct Case {
        const char* id;
        PmType type;
        WavelengthRange pump, signal;
        std::function<double(double)> n_o, n_e;
        double lo, hi;
    };
    const Case cases[] = {
        {"PPLN", PmType::typeI, {0.5, 2.2}, {0.6, 4.5}, ln_o, ln_e, 0.4, 5.0},
        {"PPLN", PmType::typeII, {0.5, 2.2}, {0.6, 4.5}, ln_o, ln_e, 0.4, 5.0},
        {"ZGP", PmType::typeII, {2.0, 6.0}, {2.2, 12.3}, zgp_o, zgp_e, 1.9, 12.3},
    };
    for (const auto& k : cases) {
        const auto map = map_of(k.id, k.type, false, k.pump, k.signal, 96);
        const auto diff = oracle_diff(map.config, k.n_o, k.n_e, k.lo, k.hi);
        for (double target : kLocusTargetsDeg) {
            const auto* l = map.find_locus(fmt_name(target));
            REQUIRE(l != nullptr);
            const auto rep = oracle::compare_locus(map, *l, target, diff);
            INFO(std::string(k.id) << " " << to_string(k.type) << " theta " << target << ": components " << rep.oracle_components
                      << " vs " << rep.library_components << ", offset " << rep.worst_vertex_offset << ", missed "
                      << rep.worst_missed << ", cells " << rep.oracle_cells << ", vertices " << rep.library_vertices);
            CHECK(rep.agrees());
        }
    }
}
