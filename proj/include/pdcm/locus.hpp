#pragma once

// Wavelengths where theta reaches a target, found by sign-change bracketing
// on a uniform pre-scan followed by bisection.

#include "pdcm/materials.hpp"
#include "pdcm/phasematch.hpp"

#include <vector>

namespace pdcm {

struct LocusOptions {
    double scan_step_um = 1e-3;  // pre-scan spacing
    double tolerance_um = 1e-7;  // bisection stops below this bracket width
};

/// Residual whose zeros are the points with theta = target:
/// numerator cos(target) - denominator sin(target). Unlike theta - target it
/// is continuous through theta = +-90.
double theta_residual(const GvmPoint& point, double target_deg);

/// Pumps in pump_range where theta(pump, 2 pump) = target.
///
/// For type-0 and type-I the degenerate daughters share one mode and theta is
/// undefined on the whole line. The only distinguished points are where the
/// signal group index equals the pump's, so that both group-delay
/// differences vanish together; those singular points are returned for any
/// target.
std::vector<MatchSolution> find_degenerate_locus(const MaterialRecord& material, const PhaseMatchConfigEntry& config,
                                                 double target_deg, WavelengthRange pump_range,
                                                 double temperature_k = kRoomTemperatureK,
                                                 const LocusOptions& options = {});

/// Signals in signal_range where theta(pump, signal) = target at fixed pump.
std::vector<MatchSolution> find_nondegenerate_locus(const MaterialRecord& material,
                                                    const PhaseMatchConfigEntry& config, double target_deg,
                                                    double pump_um, WavelengthRange signal_range,
                                                    double temperature_k = kRoomTemperatureK,
                                                    const LocusOptions& options = {});

}  // namespace pdcm
