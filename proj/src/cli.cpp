#include "pdcm/cli.hpp"

#include "pdcm/dispersion.hpp"
#include "pdcm/error.hpp"
#include "pdcm/locus.hpp"
#include "pdcm/materials.hpp"
#include "pdcm/phasematch.hpp"
#include "pdcm/reproduce.hpp"
#include "pdcm/sweep.hpp"
#include "pdcm/upconv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#ifndef PDCM_VERSION
#define PDCM_VERSION "0.0.0"
#endif
#ifndef PDCM_DEFAULT_DATABASE
#define PDCM_DEFAULT_DATABASE "data/materials.json"
#endif

namespace pdcm::cli {
namespace {

using nlohmann::ordered_json;

enum class OutputFormat { text, json, csv };

struct RunConfig {
    std::string database_path;
    double temperature_k = kRoomTemperatureK;
    OutputFormat format = OutputFormat::text;
    bool nanometres = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ordered_json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string num(double x) { return fmt::format("{}", x); }

double to_um(const RunConfig& rc, double x) { return rc.nanometres ? x * 1e-3 : x; }

WavelengthRange parse_range(const RunConfig& rc, const std::string& text, std::string_view option) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError(fmt::format("{} expects lo,hi", option));
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, comma);
        const std::string b = text.substr(comma + 1);
        const double lo = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        const double hi = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        if (!(lo < hi)) throw UsageError(fmt::format("{} needs lo < hi", option));
        return {to_um(rc, lo), to_um(rc, hi)};
    } catch (const std::logic_error&) {
        throw UsageError(fmt::format("{} expects two numbers separated by a comma, got '{}'", option, text));
    }
}

PmType parse_type(const std::string& text) {
    const auto t = parse_pm_type(text);
    if (!t) throw UsageError(fmt::format("unknown interaction type '{}' (type0, typeI, typeII)", text));
    return *t;
}

Axis parse_axis_arg(const std::string& text) {
    const auto a = parse_axis(text);
    if (!a) throw UsageError(fmt::format("unknown axis '{}' (o, e, ordinary_y, extraordinary_z)", text));
    return *a;
}

PhaseMatchConfigEntry select_config(const MaterialRecord& m, PmType type, bool swap) {
    const auto* c = m.config(type);
    if (c == nullptr) {
        throw DomainError(fmt::format("material '{}' has no {} interaction with non-zero d_eff", m.id, to_string(type)));
    }
    if (swap && type != PmType::typeII) throw UsageError("--swap applies to typeII only");
    return swap ? c->swapped() : *c;
}

ordered_json config_json(const PhaseMatchConfigEntry& c) {
    return {{"type", to_string(c.type)},
            {"pump", axis_letter(c.pump)},
            {"signal", axis_letter(c.signal)},
            {"idler", axis_letter(c.idler)},
            {"label", c.label()},
            {"d_eff_pm_per_v", c.d_eff_pm_per_v}};
}

ordered_json solution_json(const MatchSolution& s) {
    return {{"pump_um", s.triple.pump()},
            {"signal_um", s.triple.signal_role()},
            {"idler_um", s.triple.idler_role()},
            {"period_um", number(s.period_um)},
            {"abs_period_um", number(s.abs_period_um())},
            {"delta_k_residual_rad_per_um", s.delta_k_residual},
            {"D", number(s.gvm.D)},
            {"theta_deg", number(s.gvm.theta_deg)},
            {"regime", to_string(s.gvm.regime)},
            {"group_index",
             {{"pump", s.gvm.group_index_pump}, {"signal", s.gvm.group_index_signal}, {"idler", s.gvm.group_index_idler}}},
            {"feasible",
             {{"within_transparency", s.feasible.within_transparency},
              {"pump_above_tpa", s.feasible.pump_above_tpa},
              {"birefringent_qpm_possible", s.feasible.birefringent_qpm_possible}}}};
}

// Aligned "key  value" lines for text output.
void print_text(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out << fmt::format("{:<{}}  {}\n", k, width, v);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_solution_text(std::ostream& out, const std::string& material, const MatchSolution& s) {
    print_text(out, {{"material", material},
                     {"config", fmt::format("{} {}", to_string(s.config.type), s.config.label())},
                     {"pump_um", num(s.triple.pump())},
                     {"signal_um", num(s.triple.signal_role())},
                     {"idler_um", num(s.triple.idler_role())},
                     {"period_um", num(s.period_um)},
                     {"delta_k_residual", num(s.delta_k_residual)},
                     {"D", num(s.gvm.D)},
                     {"theta_deg", num(s.gvm.theta_deg)},
                     {"regime", std::string(to_string(s.gvm.regime))},
                     {"within_transparency", yes_no(s.feasible.within_transparency)},
                     {"pump_above_tpa", yes_no(s.feasible.pump_above_tpa)},
                     {"birefringent_qpm_possible", yes_no(s.feasible.birefringent_qpm_possible)}});
}

const char* const kSolutionCsvHeader = "pump_um,signal_um,idler_um,period_um,theta_deg,D,regime\n";

std::string solution_csv_row(const MatchSolution& s) {
    return fmt::format("{},{},{},{},{},{},{}\n", num(s.triple.pump()), num(s.triple.signal_role()),
                       num(s.triple.idler_role()), num(s.period_um), num(s.gvm.theta_deg), num(s.gvm.D),
                       to_string(s.gvm.regime));
}

class Commands {
public:
    Commands(RunConfig& rc, std::ostream& out, std::ostream& err) : rc_(rc), out_(out), err_(err) {}

    const MaterialDatabase& db() {
        if (!db_) db_ = load_database(rc_.database_path);
        return *db_;
    }

    void materials_list() {
        const auto& d = db();
        if (rc_.format == OutputFormat::json) {
            ordered_json list = ordered_json::array();
            for (const auto& m : d.materials) {
                ordered_json types = ordered_json::array();
                for (const auto& c : m.configs) types.push_back(to_string(c.type));
                list.push_back({{"id", m.id},
                                {"name", m.name},
                                {"crystal_class", to_string(m.crystal_class)},
                                {"poleable", m.poleable},
                                {"configs", std::move(types)}});
            }
            out_ << ordered_json{{"database_version", d.version}, {"materials", std::move(list)}}.dump(2) << "\n";
            return;
        }
        if (rc_.format == OutputFormat::csv) out_ << "id,crystal_class,poleable,transparency_lo_um,transparency_hi_um,tpa_edge_um\n";
        for (const auto& m : d.materials) {
            if (rc_.format == OutputFormat::csv) {
                out_ << fmt::format("{},{},{},{},{},{}\n", m.id, to_string(m.crystal_class), m.poleable,
                                    num(m.transparency.lo), num(m.transparency.hi), num(m.tpa_edge_um));
            } else {
                out_ << fmt::format("{:<8} {:<24} poleable={:<3} transparency=[{}, {}] um  tpa_edge={} um\n", m.id,
                                    to_string(m.crystal_class), yes_no(m.poleable), num(m.transparency.lo),
                                    num(m.transparency.hi), num(m.tpa_edge_um));
            }
        }
    }

    void materials_show(const std::string& id) {
        const auto& m = db().find(id);
        if (rc_.format == OutputFormat::json) {
            MaterialDatabase single{db().version, {m}};
            const auto doc = ordered_json::parse(serialize_database(single));
            out_ << doc["materials"][0].dump(2) << "\n";
            return;
        }
        std::vector<std::pair<std::string, std::string>> rows = {
            {"id", m.id},
            {"name", m.name},
            {"crystal_class", std::string(to_string(m.crystal_class))},
            {"poleable", yes_no(m.poleable)},
            {"transparency_um", fmt::format("{} - {}", num(m.transparency.lo), num(m.transparency.hi))},
            {"tpa_edge_um", num(m.tpa_edge_um)},
            {"birefringent_threshold_um", m.birefringent_threshold_um ? num(*m.birefringent_threshold_um) : "-"}};
        for (const auto& [axis, sets] : m.axes) {
            for (const auto& s : sets) {
                rows.emplace_back(fmt::format("sellmeier.{}", to_string(axis)),
                                  fmt::format("{} [{} - {} um] {}", s.source_tag, num(s.valid_range.lo),
                                              num(s.valid_range.hi), to_string(s.form)));
            }
        }
        for (const auto& c : m.configs) {
            rows.emplace_back(fmt::format("config.{}", to_string(c.type)),
                              fmt::format("{}  d_eff={} pm/V", c.label(), num(c.d_eff_pm_per_v)));
        }
        print_text(out_, rows);
    }

    void nindex(const std::string& id, const std::string& axis_text, double lambda) {
        const auto& m = db().find(id);
        const Axis axis = parse_axis_arg(axis_text);
        lambda = to_um(rc_, lambda);
        const double n = refractive_index(m, axis, lambda, rc_.temperature_k);
        emit({{"material", m.id},
              {"axis", to_string(axis)},
              {"lambda_um", lambda},
              {"temperature_k", rc_.temperature_k},
              {"n", n}});
    }

    void gd(const std::string& id, const std::string& axis_text, double lambda) {
        const auto& m = db().find(id);
        const Axis axis = parse_axis_arg(axis_text);
        lambda = to_um(rc_, lambda);
        const double n = refractive_index(m, axis, lambda, rc_.temperature_k);
        const auto g = group_delay(m, axis, lambda, rc_.temperature_k);
        emit({{"material", m.id},
              {"axis", to_string(axis)},
              {"lambda_um", lambda},
              {"temperature_k", rc_.temperature_k},
              {"n", n},
              {"group_index", g.group_index()},
              {"group_delay_s_per_m", g.value_s_per_m}});
    }

    void solve(const std::string& id, const std::string& type, double pump, double signal, bool swap) {
        const auto& m = db().find(id);
        const auto config = select_config(m, parse_type(type), swap);
        const auto sol = solve_period(m, config, to_um(rc_, pump), to_um(rc_, signal), rc_.temperature_k);
        if (rc_.format == OutputFormat::json) {
            ordered_json j{{"material", m.id}, {"temperature_k", rc_.temperature_k}, {"config", config_json(config)}};
            j.update(solution_json(sol));
            out_ << j.dump(2) << "\n";
        } else if (rc_.format == OutputFormat::csv) {
            out_ << kSolutionCsvHeader << solution_csv_row(sol);
        } else {
            print_solution_text(out_, m.id, sol);
        }
    }

    void locus(const std::string& id, const std::string& type, double theta, bool degenerate,
               std::optional<double> pump, const std::string& range_text, bool swap, std::optional<double> step) {
        if (degenerate == pump.has_value()) throw UsageError("locus needs exactly one of --degenerate or --pump");
        const auto& m = db().find(id);
        const auto config = select_config(m, parse_type(type), swap);
        const auto range = parse_range(rc_, range_text, "--range");
        LocusOptions options;
        if (step) options.scan_step_um = to_um(rc_, *step);
        if (!(options.scan_step_um > 0.0)) throw UsageError("--step must be positive");
        const auto roots = degenerate
                               ? find_degenerate_locus(m, config, theta, range, rc_.temperature_k, options)
                               : find_nondegenerate_locus(m, config, theta, to_um(rc_, *pump), range,
                                                          rc_.temperature_k, options);
        if (rc_.format == OutputFormat::json) {
            ordered_json list = ordered_json::array();
            for (const auto& r : roots) list.push_back(solution_json(r));
            ordered_json j{{"material", m.id},
                           {"temperature_k", rc_.temperature_k},
                           {"config", config_json(config)},
                           {"mode", degenerate ? "degenerate" : "fixed_pump"},
                           {"theta_target_deg", theta},
                           {"range_um", {range.lo, range.hi}},
                           {"pump_um", pump ? ordered_json(to_um(rc_, *pump)) : ordered_json(nullptr)},
                           {"roots", std::move(list)}};
            out_ << j.dump(2) << "\n";
        } else if (rc_.format == OutputFormat::csv) {
            out_ << kSolutionCsvHeader;
            for (const auto& r : roots) out_ << solution_csv_row(r);
        } else {
            if (roots.empty()) out_ << "no roots\n";
            for (std::size_t k = 0; k < roots.size(); ++k) {
                if (k > 0) out_ << "\n";
                print_solution_text(out_, m.id, roots[k]);
            }
        }
    }

    void map(const std::string& id, const std::string& type, const std::string& pump_text,
             const std::string& signal_text, std::size_t res, const std::string& file_format,
             const std::string& path, bool swap) {
        const auto& m = db().find(id);
        const auto config = select_config(m, parse_type(type), swap);
        const GridSpec spec{parse_range(rc_, pump_text, "--pump"), parse_range(rc_, signal_text, "--signal"), res, res};
        const MapFormat format = file_format == "csv" ? MapFormat::csv : MapFormat::json;
        const GridMap grid = scan(m, config, spec, rc_.temperature_k, db().version);
        export_map(grid, format, path);

        ordered_json loci = ordered_json::array();
        for (const auto& l : grid.loci) {
            std::size_t vertices = 0;
            for (const auto& p : l.polylines) vertices += p.size();
            loci.push_back({{"name", l.name}, {"polylines", l.polylines.size()}, {"vertices", vertices}});
        }
        std::size_t ok_cells = 0;
        for (auto v : grid.mask.values()) ok_cells += v == mask::ok ? 1 : 0;
        ordered_json j{{"material", m.id},
                       {"config", config_json(config)},
                       {"temperature_k", rc_.temperature_k},
                       {"resolution", res},
                       {"format", file_format},
                       {"path", path},
                       {"ok_cells", ok_cells},
                       {"loci", std::move(loci)}};
        if (format == MapFormat::csv) j["loci_path"] = loci_path_for(path).string();
        if (rc_.format == OutputFormat::json) {
            out_ << j.dump(2) << "\n";
        } else {
            out_ << fmt::format("wrote {} ({}x{} cells, {} unmasked)\n", path, res, res, ok_cells);
            for (const auto& l : j["loci"]) {
                out_ << fmt::format("  {:<11} {} polyline(s), {} vertices\n", l["name"].get<std::string>(),
                                    l["polylines"].get<std::size_t>(), l["vertices"].get<std::size_t>());
            }
        }
    }

    void upconvert_cmd(const std::string& id, std::optional<double> seed, std::optional<double> target, double mid_ir) {
        if (seed.has_value() == target.has_value()) throw UsageError("upconvert needs exactly one of --seed or --target");
        const auto& m = db().find(id);
        mid_ir = to_um(rc_, mid_ir);
        const auto u = seed ? upconvert(m, to_um(rc_, *seed), mid_ir, rc_.temperature_k)
                            : seed_for_target(m, mid_ir, to_um(rc_, *target), rc_.temperature_k);
        emit({{"material", u.material_id},
              {"temperature_k", rc_.temperature_k},
              {"seed_um", u.seed_um},
              {"mid_ir_um", u.mid_ir_um},
              {"output_um", u.output_um},
              {"detector_band", to_string(u.detector_band)},
              {"period_um", number(u.period_um)},
              {"dispersion_evaluable", u.dispersion_evaluable},
              {"within_transparency", u.feasible.within_transparency},
              {"pump_above_tpa", u.feasible.pump_above_tpa}});
    }

    int reproduce(const std::string& dir, std::size_t res) {
        ReproduceOptions options;
        options.resolution = res;
        options.temperature_k = rc_.temperature_k;
        const auto summary = reproduce_all(db(), dir, options);
        const auto json = summary_to_json(summary);
        const auto path = std::filesystem::path(dir) / "summary.json";
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!(file << json)) throw IoError(fmt::format("cannot write '{}'", path.string()));
        if (rc_.format == OutputFormat::json) {
            out_ << json;
        } else {
            for (const auto& r : summary.golden) {
                out_ << fmt::format("{:<7} {:<44} expected {:<8} computed {}\n", to_string(r.status), r.id,
                                    num(r.expected), r.computed ? num(*r.computed) : "-");
            }
            for (const auto& mrun : summary.maps) {
                out_ << fmt::format("{:<7} map {:<40} {}\n", to_string(mrun.status), mrun.name,
                                    mrun.file.empty() ? mrun.note : mrun.file);
            }
            out_ << fmt::format("{} passed, {} failed, {} skipped; summary in {}\n", summary.count(CheckStatus::pass),
                                summary.count(CheckStatus::fail), summary.count(CheckStatus::skipped), path.string());
        }
        if (!summary.all_passed()) {
            err_ << "reproduce: not every check passed\n";
            return kExitError;
        }
        return kExitOk;
    }

    std::string version_text() {
        std::string db_version = "unavailable";
        try {
            db_version = db().version;
        } catch (const Error& e) {
            err_ << e.what() << "\n";
        }
        return fmt::format("pdc-match {} (materials database {})", PDCM_VERSION, db_version);
    }

private:
    // Flat records: JSON object, one-row CSV, or aligned text.
    void emit(const ordered_json& j) {
        if (rc_.format == OutputFormat::json) {
            out_ << j.dump(2) << "\n";
            return;
        }
        std::vector<std::pair<std::string, std::string>> rows;
        for (const auto& [k, v] : j.items()) {
            rows.emplace_back(k, v.is_string() ? v.get<std::string>() : v.is_number_float() ? num(v.get<double>()) : v.dump());
        }
        if (rc_.format == OutputFormat::csv) {
            std::string header;
            std::string values;
            for (std::size_t k = 0; k < rows.size(); ++k) {
                header += (k ? "," : "") + rows[k].first;
                values += (k ? "," : "") + rows[k].second;
            }
            out_ << header << "\n" << values << "\n";
            return;
        }
        print_text(out_, rows);
    }

    RunConfig& rc_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<MaterialDatabase> db_;
};

std::string default_database() {
    if (const char* env = std::getenv("PDC_MATCH_DB"); env != nullptr && *env != '\0') return env;
    return PDCM_DEFAULT_DATABASE;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    rc.database_path = default_database();

    CLI::App app{"Phase-matching, group-velocity-matching and up-conversion calculator for mid-infrared "
                 "parametric down-conversion. Wavelengths in um unless --nm is given.",
                 "pdc-match"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string format_text = "text";
    bool show_version = false;
    app.add_option("--db", rc.database_path, "Material database (env PDC_MATCH_DB)");
    app.add_option("--temp-k", rc.temperature_k, "Crystal temperature in kelvin")->check(CLI::PositiveNumber);
    app.add_option("--format", format_text, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_flag("--nm", rc.nanometres, "Read wavelength arguments in nanometres");
    app.add_flag("--version", show_version, "Print tool and database versions");

    Commands cmd(rc, out, err);
    std::function<int()> action;

    auto* materials = app.add_subcommand("materials", "List or show crystal records");
    materials->require_subcommand(1);
    materials->add_subcommand("list", "List all crystals")->callback([&] { action = [&] { cmd.materials_list(); return 0; }; });
    std::string show_id;
    auto* show = materials->add_subcommand("show", "Show one crystal record");
    show->add_option("id", show_id, "Material id")->required();
    show->callback([&] { action = [&] { cmd.materials_show(show_id); return 0; }; });

    std::string id;
    std::string axis;
    double lambda = 0.0;
    auto* nindex = app.add_subcommand("nindex", "Refractive index");
    nindex->add_option("id", id)->required();
    nindex->add_option("axis", axis, "o|e")->required();
    nindex->add_option("lambda", lambda, "Wavelength")->required();
    nindex->callback([&] { action = [&] { cmd.nindex(id, axis, lambda); return 0; }; });

    auto* gd = app.add_subcommand("gd", "Refractive index, group index and group delay");
    gd->add_option("id", id)->required();
    gd->add_option("axis", axis, "o|e")->required();
    gd->add_option("lambda", lambda, "Wavelength")->required();
    gd->callback([&] { action = [&] { cmd.gd(id, axis, lambda); return 0; }; });

    std::string type;
    double pump = 0.0;
    double signal = 0.0;
    bool swap = false;
    auto* solve = app.add_subcommand("solve", "Grating period, D and theta for one wavelength triple");
    solve->add_option("id", id)->required();
    solve->add_option("type", type, "type0|typeI|typeII")->required();
    solve->add_option("pump", pump, "Pump wavelength")->required();
    solve->add_option("signal", signal, "Signal wavelength")->required();
    solve->add_flag("--swap", swap, "typeII with the signal and idler polarizations exchanged");
    solve->callback([&] { action = [&] { cmd.solve(id, type, pump, signal, swap); return 0; }; });

    double theta = 0.0;
    bool degenerate = false;
    std::optional<double> fixed_pump;
    std::string range;
    std::optional<double> step;
    auto* locus = app.add_subcommand("locus", "Wavelengths where theta reaches a target");
    locus->add_option("id", id)->required();
    locus->add_option("type", type, "type0|typeI|typeII")->required();
    locus->add_option("--theta", theta, "Target GVM angle in degrees")->required();
    locus->add_flag("--degenerate", degenerate, "Scan the pump along signal = idler = 2 pump");
    locus->add_option("--pump", fixed_pump, "Fixed pump; scan the signal");
    locus->add_option("--range", range, "Scan interval lo,hi")->required();
    locus->add_option("--step", step, "Pre-scan step (default 0.001 um)");
    locus->add_flag("--swap", swap, "typeII with the signal and idler polarizations exchanged");
    locus->callback([&] {
        action = [&] {
            cmd.locus(id, type, theta, degenerate, fixed_pump, range, swap, step);
            return 0;
        };
    });

    std::string pump_range;
    std::string signal_range;
    std::size_t res = 512;
    std::string file_format = "json";
    std::string path;
    auto* map = app.add_subcommand("map", "Pump x signal map of theta and |Lambda|");
    map->add_option("id", id)->required();
    map->add_option("type", type, "type0|typeI|typeII")->required();
    map->add_option("--pump", pump_range, "Pump interval lo,hi")->required();
    map->add_option("--signal", signal_range, "Signal interval lo,hi")->required();
    map->add_option("--res", res, "Samples per axis")->check(CLI::Range(std::size_t{2}, std::size_t{8192}));
    map->add_option("--format", file_format, "File format")->check(CLI::IsMember({"csv", "json"}));
    map->add_option("-o,--output", path, "Output file")->required();
    map->add_flag("--swap", swap, "typeII with the signal and idler polarizations exchanged");
    map->callback([&] {
        action = [&] {
            cmd.map(id, type, pump_range, signal_range, res, file_format, path, swap);
            return 0;
        };
    });

    std::optional<double> seed;
    std::optional<double> target;
    double mid_ir = 0.0;
    auto* up = app.add_subcommand("upconvert", "Up-conversion of a mid-infrared photon by type-0 DFG");
    up->add_option("id", id)->required();
    up->add_option("--seed", seed, "Seed wavelength");
    up->add_option("--target", target, "Desired output wavelength");
    up->add_option("--midir", mid_ir, "Mid-infrared photon wavelength")->required();
    up->callback([&] { action = [&] { cmd.upconvert_cmd(id, seed, target, mid_ir); return 0; }; });

    std::string out_dir;
    std::size_t reproduce_res = 512;
    auto* reproduce = app.add_subcommand("reproduce", "Standard maps and reference solutions with a summary");
    reproduce->add_option("outdir", out_dir, "Output directory")->required();
    reproduce->add_option("--res", reproduce_res, "Samples per map axis")
        ->check(CLI::Range(std::size_t{2}, std::size_t{8192}));
    reproduce->callback([&] { action = [&] { return cmd.reproduce(out_dir, reproduce_res); }; });

    if (argc <= 1) {
        err << app.help();
        return kExitUsage;
    }
    // --version alone skips the subcommand requirement.
    for (int k = 1; k < argc; ++k) {
        if (std::string_view(argv[k]) == "--version") {
            app.require_subcommand(0, 1);
            break;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    rc.format = format_text == "json" ? OutputFormat::json : format_text == "csv" ? OutputFormat::csv : OutputFormat::text;
    try {
        if (show_version) {
            out << cmd.version_text() << "\n";
            return kExitOk;
        }
        if (!action) {
            err << app.help();
            return kExitUsage;
        }
        return action();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace pdcm::cli
