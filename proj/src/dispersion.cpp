#include "pdcm/dispersion.hpp"

#include "pdcm/error.hpp"

#include <fmt/format.h>

namespace pdcm {
namespace {

constexpr double kRelativeStep = 1e-6;

double set_derivative(const SellmeierForm& s, double lambda, double temperature_k) {
    return s.has_analytic_derivative() ? s.dn_dlambda(lambda, temperature_k)
                                       : dn_dlambda_numeric(s, lambda, temperature_k);
}

}  // namespace

double dn_dlambda_numeric(const SellmeierForm& form, double lambda_um, double temperature_k) {
    const double h = kRelativeStep * lambda_um;
    const auto central = [&](double step) {
        return (form.index(lambda_um + step, temperature_k) - form.index(lambda_um - step, temperature_k)) / (2.0 * step);
    };
    // Richardson: the O(h^2) error terms of D(h) and D(2h) cancel.
    const double d1 = central(h);
    const double d2 = central(2.0 * h);
    return (4.0 * d1 - d2) / 3.0;
}

double dn_dlambda(const MaterialRecord& material, Axis axis, double lambda_um, double temperature_k) {
    double sum = 0.0;
    int count = 0;
    for (const auto& s : material.sellmeier_sets(axis)) {
        if (!s.valid_range.contains(lambda_um)) continue;
        sum += set_derivative(s, lambda_um, temperature_k);
        ++count;
    }
    if (count == 0) {
        throw DomainError(fmt::format("wavelength {} um outside every Sellmeier range of {} ({})", lambda_um,
                                      material.id, to_string(axis)));
    }
    return sum / count;
}

double group_index(const MaterialRecord& material, Axis axis, double lambda_um, double temperature_k) {
    const double n = refractive_index(material, axis, lambda_um, temperature_k);
    return n - lambda_um * dn_dlambda(material, axis, lambda_um, temperature_k);
}

GroupDelay group_delay(const MaterialRecord& material, Axis axis, double lambda_um, double temperature_k) {
    const double ng = group_index(material, axis, lambda_um, temperature_k);
    return {ng / kSpeedOfLight, lambda_um, axis, material.id};
}

}  // namespace pdcm
