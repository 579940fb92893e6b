#pragma once

// Dispersion parameter D = -(GD_p - GD_s) / (GD_p - GD_i) and the GVM angle
// theta = atan(D). theta = 0 and 90 give asymmetric group-velocity matching
// (spectrally pure heralded photons), theta = 45 symmetric matching
// (indistinguishable pairs).

#include "pdcm/materials.hpp"
#include "pdcm/triple.hpp"

#include <string_view>

namespace pdcm {

enum class GvmRegime { asymmetric_zero, symmetric, asymmetric_ninety, generic, singular };

/// Half-width in degrees of the bands classified as theta = 0, 45 and 90.
inline constexpr double kRegimeToleranceDeg = 0.5;

struct GvmPoint {
    WavelengthTriple triple = WavelengthTriple::from_pump_signal(1.0, 2.0);
    double D = 0.0;          // NaN when singular
    double theta_deg = 0.0;  // (-90, 90]; NaN when singular
    GvmRegime regime = GvmRegime::generic;
    // Group indices of the photons by role (the caller's signal and idler).
    double group_index_pump = 0.0;
    double group_index_signal = 0.0;
    double group_index_idler = 0.0;

    /// D = numerator / denominator with numerator = n_g,s - n_g,p and
    /// denominator = n_g,p - n_g,i.
    [[nodiscard]] double numerator() const { return group_index_signal - group_index_pump; }
    [[nodiscard]] double denominator() const { return group_index_pump - group_index_idler; }
};

/// theta in (-90, 90] from the two group-index differences; 90 when the
/// denominator vanishes. NaN when both vanish.
double gvm_angle_deg(double numerator, double denominator);

/// Smallest distance between two GVM angles, treating -90 and 90 as the same
/// direction.
double angle_distance_deg(double a_deg, double b_deg);

GvmRegime classify(double theta_deg);

/// The signal and idler of a type-0 or type-I interaction share an axis, so
/// at degeneracy the two photons are the same mode and theta is undefined.
bool same_daughter_axis(const PhaseMatchConfigEntry& config);

GvmPoint dispersion_parameter(const MaterialRecord& material, const PhaseMatchConfigEntry& config,
                              const WavelengthTriple& triple, double temperature_k = kRoomTemperatureK);

std::string_view to_string(GvmRegime regime);

}  // namespace pdcm
