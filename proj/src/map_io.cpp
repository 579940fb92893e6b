#include "pdcm/error.hpp"
#include "pdcm/sweep.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"

namespace pdcm {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kMapFormat = "pdc-match-map";

// JSON has no non-finite numbers; they travel as strings.
ordered_json number_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from(const ordered_json& j, std::string_view what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ParseError(fmt::format("map: '{}' holds a non-number", what));
}

const ordered_json& member(const ordered_json& j, std::string_view key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(fmt::format("map: missing field '{}'", key));
    return j.at(key);
}

template <class T>
ordered_json grid_json(const Grid<T>& g) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < g.cols(); ++j) {
            if constexpr (std::is_floating_point_v<T>) {
                row.push_back(number_json(g(i, j)));
            } else {
                row.push_back(static_cast<int>(g(i, j)));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
Grid<T> grid_from(const ordered_json& j, std::size_t rows, std::size_t cols, std::string_view what) {
    if (!j.is_array() || j.size() != rows) throw ParseError(fmt::format("map: layer '{}' has wrong row count", what));
    Grid<T> g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError(fmt::format("map: layer '{}' row {} has wrong length", what, i));
        }
        for (std::size_t k = 0; k < cols; ++k) {
            if constexpr (std::is_floating_point_v<T>) {
                g(i, k) = number_from(row[k], what);
            } else {
                if (!row[k].is_number_integer()) throw ParseError(fmt::format("map: layer '{}' holds a non-integer", what));
                g(i, k) = static_cast<T>(row[k].get<int>());
            }
        }
    }
    return g;
}

std::vector<double> samples_from(const ordered_json& j, std::string_view what) {
    if (!j.is_array()) throw ParseError(fmt::format("map: '{}' must be an array", what));
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number_from(x, what));
    return out;
}

std::string csv_number(double x) { return fmt::format("{}", x); }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out << text;
    out.close();
    if (!out) throw IoError(fmt::format("error while writing '{}'", path.string()));
}

}  // namespace

std::string map_to_json(const GridMap& map) {
    ordered_json j;
    j["format"] = kMapFormat;
    j["material_id"] = map.material_id;
    j["database_version"] = map.database_version;
    j["config"] = {{"type", to_string(map.config.type)},
                   {"pump", axis_letter(map.config.pump)},
                   {"signal", axis_letter(map.config.signal)},
                   {"idler", axis_letter(map.config.idler)},
                   {"d_eff_pm_per_v", map.config.d_eff_pm_per_v}};
    j["temperature_k"] = map.temperature_k;
    j["birefringent_qpm_threshold_um"] =
        map.birefringent_threshold_um ? ordered_json(*map.birefringent_threshold_um) : ordered_json(nullptr);
    j["mask_bits"] = {{"ok", mask::ok},
                      {"pump_below_tpa", mask::pump_below_tpa},
                      {"idler_beyond_transparency", mask::idler_beyond_transparency},
                      {"signal_out_of_range", mask::signal_out_of_range},
                      {"singular", mask::singular}};
    ordered_json pumps = ordered_json::array();
    for (double x : map.pump_samples) pumps.push_back(number_json(x));
    ordered_json signals = ordered_json::array();
    for (double x : map.signal_samples) signals.push_back(number_json(x));
    j["pump_um"] = std::move(pumps);
    j["signal_um"] = std::move(signals);
    j["layers"] = {{"theta_deg", grid_json(map.theta_deg)},
                   {"abs_period_um", grid_json(map.abs_period_um)},
                   {"mask", grid_json(map.mask)},
                   {"dispersion_numerator", grid_json(map.dispersion_numerator)},
                   {"dispersion_denominator", grid_json(map.dispersion_denominator)}};
    ordered_json loci = ordered_json::array();
    for (const auto& l : map.loci) {
        ordered_json lines = ordered_json::array();
        for (const auto& line : l.polylines) {
            ordered_json pts = ordered_json::array();
            for (const auto& p : line) pts.push_back(ordered_json::array({p.pump_um, p.signal_um}));
            lines.push_back(std::move(pts));
        }
        loci.push_back({{"name", l.name},
                        {"theta_deg", l.theta_deg ? ordered_json(*l.theta_deg) : ordered_json(nullptr)},
                        {"polylines", std::move(lines)}});
    }
    j["loci"] = std::move(loci);
    return j.dump() + "\n";
}

GridMap map_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(fmt::format("map: not valid JSON: {}", e.what()));
    }
    if (!member(j, "format").is_string() || member(j, "format").get<std::string>() != kMapFormat) {
        throw ParseError(fmt::format("map: format must be '{}'", kMapFormat));
    }
    GridMap m;
    try {
        m.material_id = member(j, "material_id").get<std::string>();
        m.database_version = member(j, "database_version").get<std::string>();
        const auto& c = member(j, "config");
        const auto axis = [&](std::string_view key) {
            const auto a = parse_axis(member(c, key).get<std::string>());
            if (!a) throw ParseError(fmt::format("map: bad axis in config.{}", key));
            return *a;
        };
        const auto type = parse_pm_type(member(c, "type").get<std::string>());
        if (!type) throw ParseError("map: bad config.type");
        m.config = {*type, axis("pump"), axis("signal"), axis("idler"), member(c, "d_eff_pm_per_v").get<double>()};
        m.temperature_k = member(j, "temperature_k").get<double>();
        if (const auto& t = member(j, "birefringent_qpm_threshold_um"); !t.is_null()) {
            m.birefringent_threshold_um = t.get<double>();
        }
    } catch (const nlohmann::json::type_error& e) {
        throw ParseError(fmt::format("map: wrong field type: {}", e.what()));
    }
    m.pump_samples = samples_from(member(j, "pump_um"), "pump_um");
    m.signal_samples = samples_from(member(j, "signal_um"), "signal_um");
    const std::size_t np = m.pump_samples.size();
    const std::size_t ns = m.signal_samples.size();
    const auto& layers = member(j, "layers");
    m.theta_deg = grid_from<double>(member(layers, "theta_deg"), np, ns, "theta_deg");
    m.abs_period_um = grid_from<double>(member(layers, "abs_period_um"), np, ns, "abs_period_um");
    m.mask = grid_from<std::uint8_t>(member(layers, "mask"), np, ns, "mask");
    m.dispersion_numerator = grid_from<double>(member(layers, "dispersion_numerator"), np, ns, "dispersion_numerator");
    m.dispersion_denominator =
        grid_from<double>(member(layers, "dispersion_denominator"), np, ns, "dispersion_denominator");
    for (const auto& l : member(j, "loci")) {
        Locus locus;
        locus.name = member(l, "name").get<std::string>();
        if (const auto& t = member(l, "theta_deg"); !t.is_null()) locus.theta_deg = t.get<double>();
        for (const auto& line : member(l, "polylines")) {
            std::vector<LocusPoint> pts;
            for (const auto& p : line) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            locus.polylines.push_back(std::move(pts));
        }
        m.loci.push_back(std::move(locus));
    }
    return m;
}

std::string map_to_csv(const GridMap& map) {
    std::string out = "pump_um,signal_um,idler_um,theta_deg,abs_period_um,mask\n";
    auto it = std::back_inserter(out);
    for (std::size_t i = 0; i < map.pump_samples.size(); ++i) {
        for (std::size_t j = 0; j < map.signal_samples.size(); ++j) {
            fmt::format_to(it, "{},{},{},{},{},{}\n", csv_number(map.pump_samples[i]),
                           csv_number(map.signal_samples[j]), csv_number(map.idler_um(i, j)),
                           csv_number(map.theta_deg(i, j)), csv_number(map.abs_period_um(i, j)),
                           static_cast<int>(map.mask(i, j)));
        }
    }
    return out;
}

std::string loci_to_csv(const GridMap& map) {
    std::string out = "locus,polyline,vertex,pump_um,signal_um,idler_um\n";
    auto it = std::back_inserter(out);
    for (const auto& l : map.loci) {
        for (std::size_t k = 0; k < l.polylines.size(); ++k) {
            for (std::size_t v = 0; v < l.polylines[k].size(); ++v) {
                const auto& p = l.polylines[k][v];
                const double idler = p.signal_um > p.pump_um ? p.pump_um * p.signal_um / (p.signal_um - p.pump_um)
                                                             : std::numeric_limits<double>::quiet_NaN();
                fmt::format_to(it, "{},{},{},{},{},{}\n", l.name, k, v, csv_number(p.pump_um),
                               csv_number(p.signal_um), csv_number(idler));
            }
        }
    }
    return out;
}

std::filesystem::path loci_path_for(const std::filesystem::path& csv_path) {
    auto out = csv_path;
    out.replace_filename(csv_path.stem().string() + "_loci.csv");
    return out;
}

void export_map(const GridMap& map, MapFormat format, const std::filesystem::path& path) {
    if (format == MapFormat::json) {
        write_file(path, map_to_json(map));
        return;
    }
    write_file(path, map_to_csv(map));
    write_file(loci_path_for(path), loci_to_csv(map));
}

}  // namespace pdcm
