#include "pdcm/gvm.hpp"

#include "pdcm/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace pdcm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double gvm_angle_deg(double numerator, double denominator) {
    if (numerator == 0.0 && denominator == 0.0) return kNaN;
    if (denominator == 0.0) return 90.0;
    const double theta = std::atan(numerator / denominator) * 180.0 / std::numbers::pi;
    return theta <= -90.0 ? 90.0 : theta;
}

double angle_distance_deg(double a_deg, double b_deg) {
    const double d = std::fmod(std::fabs(a_deg - b_deg), 180.0);
    return std::min(d, 180.0 - d);
}

GvmRegime classify(double theta_deg) {
    if (std::isnan(theta_deg)) return GvmRegime::singular;
    if (angle_distance_deg(theta_deg, 0.0) <= kRegimeToleranceDeg) return GvmRegime::asymmetric_zero;
    if (angle_distance_deg(theta_deg, 45.0) <= kRegimeToleranceDeg) return GvmRegime::symmetric;
    if (angle_distance_deg(theta_deg, 90.0) <= kRegimeToleranceDeg) return GvmRegime::asymmetric_ninety;
    return GvmRegime::generic;
}

bool same_daughter_axis(const PhaseMatchConfigEntry& config) { return config.signal == config.idler; }

GvmPoint dispersion_parameter(const MaterialRecord& material, const PhaseMatchConfigEntry& config,
                              const WavelengthTriple& triple, double temperature_k) {
    GvmPoint p;
    p.triple = triple;
    p.group_index_pump = group_index(material, config.pump, triple.pump(), temperature_k);
    p.group_index_signal = group_index(material, config.signal, triple.signal_role(), temperature_k);
    p.group_index_idler = group_index(material, config.idler, triple.idler_role(), temperature_k);

    const bool mode_degenerate = same_daughter_axis(config) && triple.degenerate();
    const double num = p.numerator();
    const double den = p.denominator();
    if (mode_degenerate || (num == 0.0 && den == 0.0)) {
        p.D = kNaN;
        p.theta_deg = kNaN;
        p.regime = GvmRegime::singular;
        return p;
    }
    p.D = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
    p.theta_deg = gvm_angle_deg(num, den);
    p.regime = classify(p.theta_deg);
    return p;
}

std::string_view to_string(GvmRegime regime) {
    switch (regime) {
    case GvmRegime::asymmetric_zero: return "asymmetric_zero";
    case GvmRegime::symmetric: return "symmetric";
    case GvmRegime::asymmetric_ninety: return "asymmetric_ninety";
    case GvmRegime::generic: return "generic";
    case GvmRegime::singular: return "singular";
    }
    return "?";
}

}  // namespace pdcm
