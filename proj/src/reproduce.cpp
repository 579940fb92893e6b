#include "pdcm/reproduce.hpp"

#include "pdcm/error.hpp"
#include "pdcm/locus.hpp"
#include "pdcm/triple.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "json.hpp"

namespace pdcm {
namespace {

constexpr double kWavelengthTolerance = 0.01;
constexpr double kLengthTolerance = 0.15;

struct Panel {
    PhaseMatchConfigEntry config;
    std::string label;
};

// Type-II maps come in two panels, one per assignment of the orthogonal
// daughter polarizations.
std::vector<Panel> panels(const PhaseMatchConfigEntry& config, bool both) {
    std::vector<Panel> out{{config, config.label()}};
    if (both) {
        const auto other = config.swapped();
        out.push_back({other, other.label()});
    }
    return out;
}

std::string config_text(PmType type, const std::string& label) { return fmt::format("{} {}", to_string(type), label); }

struct RootPick {
    MatchSolution solution;
    std::string panel;
};

std::optional<RootPick> nearest(const std::vector<RootPick>& roots, const std::function<double(const MatchSolution&)>& key,
                                double expected) {
    std::optional<RootPick> best;
    for (const auto& r : roots) {
        if (!best || std::fabs(key(r.solution) - expected) < std::fabs(key(best->solution) - expected)) best = r;
    }
    return best;
}

void grade(GoldenRow& row) {
    if (!row.computed) {
        row.status = CheckStatus::fail;
        return;
    }
    bool ok = false;
    if (row.comparison == "above") {
        ok = *row.computed > row.expected;
    } else if (row.comparison == "energy_partner") {
        ok = row.partner && std::fabs(*row.computed / *row.partner - 1.0) <= row.tolerance_rel;
    } else {
        ok = std::fabs(*row.computed / row.expected - 1.0) <= row.tolerance_rel;
    }
    row.status = ok ? CheckStatus::pass : CheckStatus::fail;
}

GoldenRow make_row(std::string id, std::string material, std::string config, std::string quantity, double expected,
                   double tolerance, std::string comparison = "within") {
    GoldenRow r;
    r.id = std::move(id);
    r.material = std::move(material);
    r.config = std::move(config);
    r.quantity = std::move(quantity);
    r.comparison = std::move(comparison);
    r.expected = expected;
    r.tolerance_rel = tolerance;
    return r;
}

struct DegenerateCase {
    std::string id;
    std::string material;
    PmType type;
    double target_deg;
    bool both_panels;
    WavelengthRange pump_range;
    double expected_pump_um;
    std::optional<double> expected_abs_period_um;
};

const std::vector<DegenerateCase>& degenerate_cases() {
    static const std::vector<DegenerateCase> cases = {
        {"ppktp-typeII-degenerate-theta45", "PPKTP", PmType::typeII, 45.0, false, {0.7, 0.9}, 0.791, {}},
        {"ppktp-typeII-degenerate-theta0", "PPKTP", PmType::typeII, 0.0, true, {1.0, 1.5}, 1.200, {}},
        {"ppln-typeI-degenerate", "PPLN", PmType::typeI, 0.0, false, {0.6, 1.0}, 0.784, {}},
        {"ppln-typeII-degenerate-theta45", "PPLN", PmType::typeII, 45.0, false, {1.5, 2.0}, 1.775, {}},
        {"csp-typeII-degenerate-theta45", "CSP", PmType::typeII, 45.0, false, {2.0, 3.0}, 2.573, 1600.0},
        {"csp-typeII-degenerate-theta0-a", "CSP", PmType::typeII, 0.0, true, {1.8, 4.0}, 2.090, 1900.0},
        {"csp-typeII-degenerate-theta0-b", "CSP", PmType::typeII, 0.0, true, {1.8, 4.0}, 3.310, 2200.0},
        {"zgp-typeII-degenerate-theta0-a", "ZGP", PmType::typeII, 0.0, true, {2.0, 4.5}, 3.014, 8600.0},
        {"zgp-typeII-degenerate-theta0-b", "ZGP", PmType::typeII, 0.0, true, {2.0, 4.5}, 2.520, 1300.0},
        {"zgp-typeII-degenerate-theta0-c", "ZGP", PmType::typeII, 0.0, true, {2.0, 4.5}, 3.692, 1500.0},
    };
    return cases;
}

void run_degenerate(const MaterialDatabase& db, const DegenerateCase& c, double temperature_k,
                    std::vector<GoldenRow>& rows) {
    const auto* material = db.try_find(c.material);
    const auto* config = material ? material->config(c.type) : nullptr;
    const std::string cfg = config ? config_text(c.type, config->label()) : std::string(to_string(c.type));

    GoldenRow pump = make_row(c.id + "/pump", c.material, cfg, "pump_um", c.expected_pump_um, kWavelengthTolerance);
    std::optional<GoldenRow> length;
    if (c.expected_abs_period_um) {
        length = make_row(c.id + "/length", c.material, cfg, "abs_period_um", *c.expected_abs_period_um,
                          kLengthTolerance);
    }
    if (config == nullptr) {
        const auto why = material ? "configuration absent from database" : "material absent from database";
        pump.note = why;
        rows.push_back(pump);
        if (length) {
            length->note = why;
            rows.push_back(*length);
        }
        return;
    }

    std::vector<RootPick> roots;
    for (const auto& panel : panels(*config, c.both_panels)) {
        for (auto& s : find_degenerate_locus(*material, panel.config, c.target_deg, c.pump_range, temperature_k)) {
            roots.push_back({std::move(s), panel.label});
        }
    }
    const auto pick = nearest(roots, [](const MatchSolution& s) { return s.triple.pump(); }, c.expected_pump_um);
    if (pick) {
        const auto note = fmt::format("nearest of {} root(s) in [{}, {}] um; panel {}", roots.size(), c.pump_range.lo,
                                      c.pump_range.hi, pick->panel);
        pump.computed = pick->solution.triple.pump();
        pump.note = note;
        if (length) {
            length->computed = pick->solution.abs_period_um();
            length->note = note;
        }
    } else {
        pump.note = fmt::format("no root in [{}, {}] um", c.pump_range.lo, c.pump_range.hi);
        if (length) length->note = pump.note;
    }
    grade(pump);
    rows.push_back(pump);
    if (length) {
        grade(*length);
        rows.push_back(*length);
    }
}

void run_ktp_nondegenerate(const MaterialDatabase& db, double temperature_k, std::vector<GoldenRow>& rows) {
    constexpr double kPump = 0.7456;
    const std::string id = "ktp-typeII-nondegenerate-theta45";
    const auto* material = db.try_find("PPKTP");
    const auto* config = material ? material->config(PmType::typeII) : nullptr;
    const std::string cfg = config ? config_text(PmType::typeII, config->label()) : "typeII";

    GoldenRow signal = make_row(id + "/signal", "PPKTP", cfg, "signal_um", 1.0714, kWavelengthTolerance);
    // The idler is tied to the signal by energy conservation; the row checks
    // that relation and lists the published idler for comparison.
    GoldenRow idler = make_row(id + "/idler", "PPKTP", cfg, "idler_um", 2.4518, 1e-12, "energy_partner");
    GoldenRow length = make_row(id + "/birefringent", "PPKTP", cfg, "abs_period_um",
                                material && material->birefringent_threshold_um ? *material->birefringent_threshold_um
                                                                                : 250.0,
                                0.0, "above");
    if (config == nullptr) {
        for (auto* r : {&signal, &idler, &length}) {
            r->note = material ? "configuration absent from database" : "material absent from database";
            rows.push_back(*r);
        }
        return;
    }
    std::vector<RootPick> roots;
    for (const auto& panel : panels(*config, true)) {
        for (auto& s : find_nondegenerate_locus(*material, panel.config, 45.0, kPump, {0.9, 1.2}, temperature_k)) {
            roots.push_back({std::move(s), panel.label});
        }
    }
    const auto pick = nearest(roots, [](const MatchSolution& s) { return s.triple.signal_role(); }, signal.expected);
    if (pick) {
        const auto note = fmt::format("pump {} um; nearest of {} root(s); panel {}", kPump, roots.size(), pick->panel);
        signal.computed = pick->solution.triple.signal_role();
        idler.computed = pick->solution.triple.idler_role();
        idler.partner = idler_wavelength(kPump, pick->solution.triple.signal_role());
        length.computed = pick->solution.abs_period_um();
        signal.note = idler.note = length.note = note;
    } else {
        signal.note = idler.note = length.note = "no root in [0.9, 1.2] um";
    }
    for (auto* r : {&signal, &idler, &length}) {
        grade(*r);
        rows.push_back(*r);
    }
}

struct MapCase {
    std::string name;
    std::string material;
    PmType type;
    bool swapped;
    WavelengthRange pump;
    WavelengthRange signal;
};

const std::vector<MapCase>& map_cases() {
    static const std::vector<MapCase> cases = {
        {"PPKTP_type0", "PPKTP", PmType::type0, false, {0.45, 2.2}, {0.5, 4.5}},
        {"PPLN_type0", "PPLN", PmType::type0, false, {0.45, 2.2}, {0.5, 4.5}},
        {"OPGaP_type0", "OPGaP", PmType::type0, false, {1.0, 6.0}, {1.0, 12.5}},
        {"OPGaAs_type0", "OPGaAs", PmType::type0, false, {1.73, 8.5}, {1.8, 17.0}},
        {"PPLN_typeI", "PPLN", PmType::typeI, false, {0.45, 2.2}, {0.5, 4.5}},
        {"PPKTP_typeII_a", "PPKTP", PmType::typeII, false, {0.45, 2.2}, {0.5, 4.5}},
        {"PPKTP_typeII_b", "PPKTP", PmType::typeII, true, {0.45, 2.2}, {0.5, 4.5}},
        {"PPLN_typeII_a", "PPLN", PmType::typeII, false, {0.45, 2.2}, {0.5, 4.5}},
        {"PPLN_typeII_b", "PPLN", PmType::typeII, true, {0.45, 2.2}, {0.5, 4.5}},
        {"CSP_typeII_a", "CSP", PmType::typeII, false, {1.0, 4.5}, {1.0, 9.0}},
        {"CSP_typeII_b", "CSP", PmType::typeII, true, {1.0, 4.5}, {1.0, 9.0}},
        {"ZGP_typeII_a", "ZGP", PmType::typeII, false, {1.9, 6.0}, {1.9, 12.3}},
        {"ZGP_typeII_b", "ZGP", PmType::typeII, true, {1.9, 6.0}, {1.9, 12.3}},
    };
    return cases;
}

MapRun run_map(const MaterialDatabase& db, const MapCase& c, const std::filesystem::path& dir,
               const ReproduceOptions& options) {
    MapRun run;
    run.name = c.name;
    run.material = c.material;
    const auto* material = db.try_find(c.material);
    const auto* entry = material ? material->config(c.type) : nullptr;
    if (entry == nullptr) {
        run.config = to_string(c.type);
        run.note = material ? "configuration absent from database" : "material absent from database";
        return run;
    }
    const auto config = c.swapped ? entry->swapped() : *entry;
    run.config = config_text(c.type, config.label());
    try {
        ScanOptions scan_options;
        scan_options.threads = options.threads;
        const GridMap map = scan(*material, config, {c.pump, c.signal, options.resolution, options.resolution},
                                 options.temperature_k, db.version, scan_options);
        run.file = c.name + (options.format == MapFormat::json ? ".json" : ".csv");
        export_map(map, options.format, dir / run.file);
        for (const auto& l : map.loci) run.locus_polylines += l.polylines.size();
        run.status = CheckStatus::pass;
    } catch (const Error& e) {
        run.status = CheckStatus::fail;
        run.file.clear();
        run.note = e.what();
    }
    return run;
}

nlohmann::ordered_json optional_number(const std::optional<double>& x) {
    return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::size_t ReproduceSummary::count(CheckStatus status) const {
    std::size_t n = 0;
    for (const auto& r : golden) n += r.status == status ? 1 : 0;
    for (const auto& m : maps) n += m.status == status ? 1 : 0;
    return n;
}

bool ReproduceSummary::all_passed() const { return count(CheckStatus::fail) == 0 && count(CheckStatus::skipped) == 0; }

std::vector<GoldenRow> run_golden_checks(const MaterialDatabase& db, double temperature_k) {
    std::vector<GoldenRow> rows;
    const auto& cases = degenerate_cases();
    for (std::size_t k = 0; k < cases.size(); ++k) {
        run_degenerate(db, cases[k], temperature_k, rows);
        if (cases[k].id == "ppktp-typeII-degenerate-theta0") run_ktp_nondegenerate(db, temperature_k, rows);
    }
    return rows;
}

ReproduceSummary reproduce_all(const MaterialDatabase& db, const std::filesystem::path& output_dir,
                               const ReproduceOptions& options) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec || !std::filesystem::is_directory(output_dir)) {
        throw IoError(fmt::format("cannot create output directory '{}'", output_dir.string()));
    }
    ReproduceSummary summary;
    summary.database_version = db.version;
    summary.temperature_k = options.temperature_k;
    summary.resolution = options.resolution;
    summary.golden = run_golden_checks(db, options.temperature_k);
    for (const auto& c : map_cases()) summary.maps.push_back(run_map(db, c, output_dir, options));
    return summary;
}

std::string summary_to_json(const ReproduceSummary& s) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["format"] = "pdc-match-reproduce";
    j["database_version"] = s.database_version;
    j["temperature_k"] = s.temperature_k;
    j["resolution"] = s.resolution;
    ordered_json golden = ordered_json::array();
    for (const auto& r : s.golden) {
        golden.push_back({{"id", r.id},
                          {"material", r.material},
                          {"config", r.config},
                          {"quantity", r.quantity},
                          {"comparison", r.comparison},
                          {"expected", r.expected},
                          {"computed", optional_number(r.computed)},
                          {"partner", optional_number(r.partner)},
                          {"tolerance_rel", r.tolerance_rel},
                          {"status", to_string(r.status)},
                          {"note", r.note}});
    }
    j["golden"] = std::move(golden);
    ordered_json maps = ordered_json::array();
    for (const auto& m : s.maps) {
        maps.push_back({{"name", m.name},
                        {"material", m.material},
                        {"config", m.config},
                        {"file", m.file.empty() ? ordered_json(nullptr) : ordered_json(m.file)},
                        {"status", to_string(m.status)},
                        {"locus_polylines", m.locus_polylines},
                        {"note", m.note}});
    }
    j["maps"] = std::move(maps);
    j["passed"] = s.count(CheckStatus::pass);
    j["failed"] = s.count(CheckStatus::fail);
    j["skipped"] = s.count(CheckStatus::skipped);
    return j.dump(2) + "\n";
}

std::string_view to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

}  // namespace pdcm
