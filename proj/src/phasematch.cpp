#include "pdcm/phasematch.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace pdcm {
namespace {

// Mismatch below this fraction of the pump wave number counts as exact
// birefringent matching.
constexpr double kExactMatchFraction = 1e-15;

struct Wavenumbers {
    double pump;
    double signal;
    double idler;

    [[nodiscard]] double mismatch() const { return pump - signal - idler; }
};

// n / lambda for each photon, in 1/um.
Wavenumbers wavenumbers(const MaterialRecord& m, const PhaseMatchConfigEntry& c, const WavelengthTriple& t,
                        double temperature_k) {
    const double lp = t.pump();
    const double ls = t.signal_role();
    const double li = t.idler_role();
    return {refractive_index(m, c.pump, lp, temperature_k) / lp, refractive_index(m, c.signal, ls, temperature_k) / ls,
            refractive_index(m, c.idler, li, temperature_k) / li};
}

}  // namespace

double MatchSolution::abs_period_um() const { return std::fabs(period_um); }

double delta_k(const MaterialRecord& material, const PhaseMatchConfigEntry& config, const WavelengthTriple& triple,
               std::optional<double> period_um, double temperature_k) {
    double s = wavenumbers(material, config, triple, temperature_k).mismatch();
    if (period_um) s -= 1.0 / *period_um;
    return 2.0 * std::numbers::pi * s;
}

FeasibilityFlags feasibility(const MaterialRecord& material, const WavelengthTriple& triple, double period_um) {
    FeasibilityFlags f;
    const auto& w = material.transparency;
    f.within_transparency = w.contains(triple.pump()) && w.contains(triple.signal()) && w.contains(triple.idler());
    f.pump_above_tpa = triple.pump() >= material.tpa_edge_um;
    if (std::isinf(period_um)) {
        f.birefringent_qpm_possible = true;
    } else if (material.birefringent_threshold_um) {
        f.birefringent_qpm_possible = std::fabs(period_um) > *material.birefringent_threshold_um;
    }
    return f;
}

MatchSolution solve_period(const MaterialRecord& material, const PhaseMatchConfigEntry& config,
                           const WavelengthTriple& triple, double temperature_k) {
    const Wavenumbers k = wavenumbers(material, config, triple, temperature_k);
    const double s = k.mismatch();

    MatchSolution sol;
    sol.triple = triple;
    sol.config = config;
    if (std::fabs(s) <= kExactMatchFraction * k.pump) {
        sol.period_um = std::numeric_limits<double>::infinity();
        sol.delta_k_residual = 2.0 * std::numbers::pi * s;
    } else {
        sol.period_um = 1.0 / s;
        sol.delta_k_residual = 2.0 * std::numbers::pi * (s - 1.0 / sol.period_um);
    }
    sol.gvm = dispersion_parameter(material, config, triple, temperature_k);
    sol.feasible = feasibility(material, triple, sol.period_um);
    return sol;
}

MatchSolution solve_period(const MaterialRecord& material, const PhaseMatchConfigEntry& config, double pump_um,
                           double signal_um, double temperature_k) {
    return solve_period(material, config, WavelengthTriple::from_pump_signal(pump_um, signal_um), temperature_k);
}

}  // namespace pdcm
