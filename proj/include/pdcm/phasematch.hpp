#pragma once

// Collinear wave-vector mismatch and the first-order QPM grating period
// (equivalently the birefringent crystal length for crystals that cannot be
// poled).

#include "pdcm/gvm.hpp"
#include "pdcm/materials.hpp"
#include "pdcm/triple.hpp"

#include <optional>

namespace pdcm {

struct FeasibilityFlags {
    bool within_transparency = false;  // all three wavelengths inside the window
    bool pump_above_tpa = false;       // pump at or beyond the two-photon edge
    bool birefringent_qpm_possible = false;

    bool operator==(const FeasibilityFlags&) const = default;
};

struct MatchSolution {
    WavelengthTriple triple = WavelengthTriple::from_pump_signal(1.0, 2.0);
    PhaseMatchConfigEntry config;
    double period_um = 0.0;         // signed; +inf when the mismatch vanishes without a grating
    double delta_k_residual = 0.0;  // rad/um, at period_um
    GvmPoint gvm;
    FeasibilityFlags feasible;

    [[nodiscard]] double abs_period_um() const;
};

/// 2 pi (n_p/l_p - n_s/l_s - n_i/l_i - 1/period) in rad/um; the grating term
/// is dropped when period is empty. Axes follow the config by photon role.
double delta_k(const MaterialRecord& material, const PhaseMatchConfigEntry& config, const WavelengthTriple& triple,
               std::optional<double> period_um, double temperature_k = kRoomTemperatureK);

/// Period that zeroes delta_k, together with D, theta and the feasibility
/// flags. Masking conditions are reported as flags, never thrown.
MatchSolution solve_period(const MaterialRecord& material, const PhaseMatchConfigEntry& config, double pump_um,
                           double signal_um, double temperature_k = kRoomTemperatureK);

MatchSolution solve_period(const MaterialRecord& material, const PhaseMatchConfigEntry& config,
                           const WavelengthTriple& triple, double temperature_k = kRoomTemperatureK);

FeasibilityFlags feasibility(const MaterialRecord& material, const WavelengthTriple& triple, double period_um);

}  // namespace pdcm
