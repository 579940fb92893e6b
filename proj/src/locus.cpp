#include "pdcm/locus.hpp"

#include "pdcm/dispersion.hpp"
#include "pdcm/error.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include <fmt/format.h>

namespace pdcm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRootCheckDeg = 1e-3;

using Scalar = std::function<double(double)>;

double bisect(const Scalar& f, double a, double fa, double b, double tol) {
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Zeros of f on [lo, hi]. Scan points where f cannot be evaluated are NaN
// and never bracket a root.
std::vector<double> scan_roots(const Scalar& f, WavelengthRange range, const LocusOptions& opt) {
    if (!(range.lo < range.hi) || !(opt.scan_step_um > 0.0)) {
        throw DomainError(fmt::format("invalid scan range [{}, {}] or step {}", range.lo, range.hi, opt.scan_step_um));
    }
    const auto n = static_cast<std::size_t>(std::ceil(range.width() / opt.scan_step_um - 1e-9));
    std::vector<double> xs(n + 1);
    std::vector<double> vs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        xs[k] = k == n ? range.hi : range.lo + static_cast<double>(k) * opt.scan_step_um;
        vs[k] = f(xs[k]);
    }
    std::vector<double> roots;
    for (std::size_t k = 0; k + 1 <= n; ++k) {
        if (std::isnan(vs[k]) || std::isnan(vs[k + 1])) continue;
        if (vs[k] == 0.0) {
            roots.push_back(xs[k]);
        } else if ((vs[k] < 0.0) != (vs[k + 1] < 0.0) && vs[k + 1] != 0.0) {
            roots.push_back(bisect(f, xs[k], vs[k], xs[k + 1], opt.tolerance_um));
        }
    }
    if (!std::isnan(vs[n]) && vs[n] == 0.0) roots.push_back(xs[n]);
    return roots;
}

std::optional<GvmPoint> try_point(const MaterialRecord& m, const PhaseMatchConfigEntry& c, double pump,
                                  double signal, double temperature_k) {
    try {
        return dispersion_parameter(m, c, WavelengthTriple::from_pump_signal(pump, signal), temperature_k);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

std::optional<MatchSolution> accept_root(const MaterialRecord& m, const PhaseMatchConfigEntry& c, double pump,
                                         double signal, double target_deg, bool singular_expected,
                                         double temperature_k) {
    MatchSolution sol;
    try {
        sol = solve_period(m, c, pump, signal, temperature_k);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    if (singular_expected) return sol;
    if (sol.gvm.regime == GvmRegime::singular) return std::nullopt;
    if (angle_distance_deg(sol.gvm.theta_deg, target_deg) > kRootCheckDeg) return std::nullopt;
    return sol;
}

}  // namespace

double theta_residual(const GvmPoint& point, double target_deg) {
    const double t = target_deg * std::numbers::pi / 180.0;
    return point.numerator() * std::cos(t) - point.denominator() * std::sin(t);
}

std::vector<MatchSolution> find_degenerate_locus(const MaterialRecord& material, const PhaseMatchConfigEntry& config,
                                                 double target_deg, WavelengthRange pump_range, double temperature_k,
                                                 const LocusOptions& options) {
    const bool mode_degenerate = same_daughter_axis(config);
    const Scalar f = [&](double pump) {
        if (mode_degenerate) {
            // Signal and idler are the same mode; only n_g,s - n_g,p matters.
            try {
                return group_index(material, config.signal, 2.0 * pump, temperature_k) -
                       group_index(material, config.pump, pump, temperature_k);
            } catch (const DomainError&) {
                return kNaN;
            }
        }
        const auto p = try_point(material, config, pump, 2.0 * pump, temperature_k);
        return p ? theta_residual(*p, target_deg) : kNaN;
    };
    std::vector<MatchSolution> out;
    for (double pump : scan_roots(f, pump_range, options)) {
        if (auto sol = accept_root(material, config, pump, 2.0 * pump, target_deg, mode_degenerate, temperature_k)) {
            out.push_back(std::move(*sol));
        }
    }
    return out;
}

std::vector<MatchSolution> find_nondegenerate_locus(const MaterialRecord& material,
                                                    const PhaseMatchConfigEntry& config, double target_deg,
                                                    double pump_um, WavelengthRange signal_range,
                                                    double temperature_k, const LocusOptions& options) {
    const Scalar f = [&](double signal) {
        if (!(signal > pump_um)) return kNaN;
        const auto p = try_point(material, config, pump_um, signal, temperature_k);
        if (!p || p->regime == GvmRegime::singular) return kNaN;
        return theta_residual(*p, target_deg);
    };
    std::vector<MatchSolution> out;
    for (double signal : scan_roots(f, signal_range, options)) {
        if (auto sol = accept_root(material, config, pump_um, signal, target_deg, false, temperature_k)) {
            out.push_back(std::move(*sol));
        }
    }
    return out;
}

}  // namespace pdcm
