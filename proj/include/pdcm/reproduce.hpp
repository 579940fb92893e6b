#pragma once

// Batch run of the standard map set and the reference GVM solutions, with a
// machine-readable pass/fail summary.

#include "pdcm/materials.hpp"
#include "pdcm/sweep.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pdcm {

struct ReproduceOptions {
    std::size_t resolution = 512;
    double temperature_k = kRoomTemperatureK;
    MapFormat format = MapFormat::json;
    unsigned threads = 0;
};

enum class CheckStatus { pass, fail, skipped };

struct GoldenRow {
    std::string id;
    std::string material;
    std::string config;       // e.g. "typeII o -> e + o"
    std::string quantity;     // pump_um, signal_um, idler_um or abs_period_um
    // "within": |computed/expected - 1| <= tolerance_rel; "above": computed > expected;
    // "energy_partner": computed equals the energy-conservation partner of the
    // solved signal to tolerance_rel (expected is listed for comparison only).
    std::string comparison;
    double expected = 0.0;
    std::optional<double> computed;
    std::optional<double> partner;
    double tolerance_rel = 0.0;
    CheckStatus status = CheckStatus::skipped;
    std::string note;
};

struct MapRun {
    std::string name;
    std::string material;
    std::string config;
    std::string file;  // relative to the output directory; empty when skipped
    CheckStatus status = CheckStatus::skipped;
    std::size_t locus_polylines = 0;
    std::string note;
};

struct ReproduceSummary {
    std::string database_version;
    double temperature_k = kRoomTemperatureK;
    std::size_t resolution = 0;
    std::vector<GoldenRow> golden;
    std::vector<MapRun> maps;

    [[nodiscard]] std::size_t count(CheckStatus status) const;
    /// True only when nothing failed and nothing was skipped.
    [[nodiscard]] bool all_passed() const;
};

/// The golden checks alone (no maps, no files).
std::vector<GoldenRow> run_golden_checks(const MaterialDatabase& db, double temperature_k = kRoomTemperatureK);

ReproduceSummary reproduce_all(const MaterialDatabase& db, const std::filesystem::path& output_dir,
                               const ReproduceOptions& options = {});

std::string summary_to_json(const ReproduceSummary& summary);

std::string_view to_string(CheckStatus status);

}  // namespace pdcm
