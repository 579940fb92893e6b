#pragma once

// Pump x signal maps of theta and |Lambda| with feasibility masks and iso-theta
// loci.

#include "pdcm/materials.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pdcm {

/// Row-major matrix indexed (pump index, signal index).
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    [[nodiscard]] const std::vector<T>& values() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace mask {
inline constexpr std::uint8_t ok = 0;
inline constexpr std::uint8_t pump_below_tpa = 1;
inline constexpr std::uint8_t idler_beyond_transparency = 2;
// Also set where the cell cannot be evaluated (signal <= pump, or a
// wavelength outside every Sellmeier range).
inline constexpr std::uint8_t signal_out_of_range = 4;
inline constexpr std::uint8_t singular = 8;
}  // namespace mask

struct LocusPoint {
    double pump_um = 0.0;
    double signal_um = 0.0;
    bool operator==(const LocusPoint&) const = default;
};

struct Locus {
    std::string name;             // theta_0, theta_45, theta_90 or degeneracy
    std::optional<double> theta_deg;  // empty for the degeneracy line
    std::vector<std::vector<LocusPoint>> polylines;
    bool operator==(const Locus&) const = default;
};

struct GridSpec {
    WavelengthRange pump;
    WavelengthRange signal;
    std::size_t pump_samples = 512;
    std::size_t signal_samples = 512;
};

struct GridMap {
    std::string material_id;
    std::string database_version;
    PhaseMatchConfigEntry config;
    double temperature_k = kRoomTemperatureK;
    std::optional<double> birefringent_threshold_um;
    std::vector<double> pump_samples;
    std::vector<double> signal_samples;
    Grid<double> theta_deg;
    Grid<double> abs_period_um;
    Grid<std::uint8_t> mask;
    // Group-index differences n_g,s - n_g,p and n_g,p - n_g,i; theta = atan(num/den).
    Grid<double> dispersion_numerator;
    Grid<double> dispersion_denominator;
    std::vector<Locus> loci;

    [[nodiscard]] double idler_um(std::size_t i, std::size_t j) const;
    [[nodiscard]] const Locus* find_locus(std::string_view name) const;
};

struct ScanOptions {
    unsigned threads = 0;                 // 0: hardware concurrency
    double refine_tolerance_um = 1e-6;    // contour vertex bisection
    double vertex_check_deg = 0.1;        // vertices further from the target are dropped
};

inline constexpr double kLocusTargetsDeg[] = {0.0, 45.0, 90.0};

GridMap scan(const MaterialRecord& material, const PhaseMatchConfigEntry& config, const GridSpec& spec,
             double temperature_k = kRoomTemperatureK, std::string database_version = {},
             const ScanOptions& options = {});

/// Feasibility bits of one point. The singular bit depends on the grid
/// spacing and is added by scan.
std::uint8_t cell_mask(const MaterialRecord& material, double pump_um, double signal_um);

/// Marching-squares extraction of the theta = target contour over cells whose
/// four corners are unmasked, with each vertex refined by bisection on the
/// true residual. Exposed for testing; scan fills GridMap::loci with it.
Locus extract_locus(const GridMap& map, const MaterialRecord& material, double target_deg,
                    const ScanOptions& options = {});

/// lambda_s = 2 lambda_p clipped to the grid's bounding box.
Locus degeneracy_locus(const GridMap& map);

enum class MapFormat { csv, json };

/// csv: one row per cell plus "<stem>_loci.csv" beside it. json: the full
/// structure. Output is byte-identical for identical maps.
void export_map(const GridMap& map, MapFormat format, const std::filesystem::path& path);

std::string map_to_json(const GridMap& map);
GridMap map_from_json(std::string_view text);
std::string map_to_csv(const GridMap& map);
std::string loci_to_csv(const GridMap& map);

std::filesystem::path loci_path_for(const std::filesystem::path& csv_path);

}  // namespace pdcm
