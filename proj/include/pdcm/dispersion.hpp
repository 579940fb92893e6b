#pragma once

// Group delays (inverse group velocities per unit length) from the material
// database.

#include "pdcm/materials.hpp"

#include <string>

namespace pdcm {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct GroupDelay {
    double value_s_per_m = 0.0;  // n_g / c
    double lambda_um = 0.0;
    Axis axis = Axis::extraordinary_z;
    std::string material_id;

    [[nodiscard]] double group_index() const { return value_s_per_m * kSpeedOfLight; }
};

/// dn/dlambda in 1/um, averaged over the covering Sellmeier sets the same
/// way refractive_index averages n.
double dn_dlambda(const MaterialRecord& material, Axis axis, double lambda_um,
                  double temperature_k = kRoomTemperatureK);

/// Central finite difference on one set with step 1e-6 * lambda, refined
/// once by Richardson extrapolation. Used when a form has no analytic
/// derivative and exposed so the two paths can be compared.
double dn_dlambda_numeric(const SellmeierForm& form, double lambda_um, double temperature_k = kRoomTemperatureK);

/// n_g = n - lambda dn/dlambda.
double group_index(const MaterialRecord& material, Axis axis, double lambda_um,
                   double temperature_k = kRoomTemperatureK);

GroupDelay group_delay(const MaterialRecord& material, Axis axis, double lambda_um,
                       double temperature_k = kRoomTemperatureK);

}  // namespace pdcm
