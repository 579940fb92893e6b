#include "pdcm/upconv.hpp"

#include "pdcm/error.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace pdcm {
namespace {

bool in_half_open(const WavelengthRange& r, double x) { return x >= r.lo && x < r.hi; }

const PhaseMatchConfigEntry& type0_config(const MaterialRecord& material) {
    const auto* c = material.config(PmType::type0);
    if (c == nullptr) throw DomainError(fmt::format("material '{}' has no type-0 interaction", material.id));
    return *c;
}

}  // namespace

DetectorBand DetectorBands::classify(double output_um) const {
    if (in_half_open(si_spad, output_um)) return DetectorBand::si_spad;
    if (in_half_open(ingaas, output_um)) return DetectorBand::ingaas;
    return DetectorBand::none;
}

UpconversionSolution upconvert(const MaterialRecord& material, double seed_um, double mid_ir_um,
                               double temperature_k, const DetectorBands& bands) {
    if (!(seed_um > 0.0) || !(seed_um < mid_ir_um) || !std::isfinite(mid_ir_um)) {
        throw DomainError(fmt::format("seed {} um must be shorter than the mid-infrared photon {} um", seed_um, mid_ir_um));
    }
    const auto& config = type0_config(material);

    UpconversionSolution u;
    u.mid_ir_um = mid_ir_um;
    u.seed_um = seed_um;
    u.output_um = seed_um * mid_ir_um / (mid_ir_um - seed_um);
    u.material_id = material.id;
    u.detector_band = bands.classify(u.output_um);
    u.period_um = std::numeric_limits<double>::quiet_NaN();

    const auto triple = WavelengthTriple::from_pump_signal(seed_um, u.output_um);
    try {
        u.match = solve_period(material, config, triple, temperature_k);
        u.period_um = u.match->period_um;
        u.feasible = u.match->feasible;
        u.dispersion_evaluable = true;
    } catch (const DomainError&) {
        // Outside the dispersion data: report the wavelengths, flag the rest.
        u.feasible = feasibility(material, triple, u.period_um);
        u.dispersion_evaluable = false;
    }
    return u;
}

UpconversionSolution seed_for_target(const MaterialRecord& material, double mid_ir_um, double target_output_um,
                                     double temperature_k, const DetectorBands& bands) {
    if (!(target_output_um > 0.0) || !(target_output_um < mid_ir_um) || !std::isfinite(mid_ir_um)) {
        throw DomainError(fmt::format("target output {} um must be shorter than the mid-infrared photon {} um",
                                      target_output_um, mid_ir_um));
    }
    const double seed = target_output_um * mid_ir_um / (target_output_um + mid_ir_um);
    return upconvert(material, seed, mid_ir_um, temperature_k, bands);
}

std::string_view to_string(DetectorBand band) {
    switch (band) {
    case DetectorBand::si_spad: return "si_spad";
    case DetectorBand::ingaas: return "ingaas";
    case DetectorBand::none: return "none";
    }
    return "?";
}

}  // namespace pdcm
