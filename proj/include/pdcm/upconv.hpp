#pragma once

// Up-conversion detection by seeded difference-frequency generation: the
// seed plays the pump, seed -> output + mid-IR, with a type-0 QPM grating.

#include "pdcm/materials.hpp"
#include "pdcm/phasematch.hpp"

#include <optional>
#include <string_view>

namespace pdcm {

enum class DetectorBand { si_spad, ingaas, none };

/// Detection bands as half-open intervals [lo, hi) in um.
struct DetectorBands {
    WavelengthRange si_spad{0.7, 0.9};
    WavelengthRange ingaas{1.5, 1.7};

    [[nodiscard]] DetectorBand classify(double output_um) const;
};

struct UpconversionSolution {
    double mid_ir_um = 0.0;
    double seed_um = 0.0;
    double output_um = 0.0;
    std::string material_id;
    double period_um = 0.0;  // signed; NaN when a wavelength lies outside the dispersion data
    DetectorBand detector_band = DetectorBand::none;
    bool dispersion_evaluable = false;
    FeasibilityFlags feasible;
    std::optional<MatchSolution> match;
};

/// output = (1/seed - 1/mid_ir)^-1. Throws DomainError when seed >= mid_ir or
/// the material has no type-0 interaction.
UpconversionSolution upconvert(const MaterialRecord& material, double seed_um, double mid_ir_um,
                               double temperature_k = kRoomTemperatureK, const DetectorBands& bands = {});

/// seed = (1/target + 1/mid_ir)^-1, then as upconvert.
UpconversionSolution seed_for_target(const MaterialRecord& material, double mid_ir_um, double target_output_um,
                                     double temperature_k = kRoomTemperatureK, const DetectorBands& bands = {});

std::string_view to_string(DetectorBand band);

}  // namespace pdcm
