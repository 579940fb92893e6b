#include "pdcm/sweep.hpp"

#include "pdcm/error.hpp"
#include "pdcm/gvm.hpp"
#include "pdcm/phasematch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

namespace pdcm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> uniform_samples(WavelengthRange r, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = k + 1 == n ? r.hi : r.lo + r.width() * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return out;
}

void check_spec(const GridSpec& spec) {
    if (spec.pump_samples < 2 || spec.signal_samples < 2) {
        throw DomainError("map resolution must be at least 2 samples per axis");
    }
    for (const auto& r : {spec.pump, spec.signal}) {
        if (!(r.lo > 0.0 && r.lo < r.hi)) {
            throw DomainError(fmt::format("map range [{}, {}] must satisfy 0 < lo < hi", r.lo, r.hi));
        }
    }
}

}  // namespace

double GridMap::idler_um(std::size_t i, std::size_t j) const {
    const double p = pump_samples[i];
    const double s = signal_samples[j];
    return s > p ? p * s / (s - p) : kNaN;
}

const Locus* GridMap::find_locus(std::string_view name) const {
    for (const auto& l : loci) {
        if (l.name == name) return &l;
    }
    return nullptr;
}

std::uint8_t cell_mask(const MaterialRecord& material, double pump_um, double signal_um) {
    std::uint8_t m = mask::ok;
    const auto& w = material.transparency;
    if (pump_um < material.tpa_edge_um || pump_um < w.lo) m |= mask::pump_below_tpa;
    if (!(signal_um > pump_um)) return m | mask::signal_out_of_range;
    if (signal_um < w.lo || signal_um > w.hi) m |= mask::signal_out_of_range;
    if (pump_um * signal_um / (signal_um - pump_um) > w.hi) m |= mask::idler_beyond_transparency;
    return m;
}

GridMap scan(const MaterialRecord& material, const PhaseMatchConfigEntry& config, const GridSpec& spec,
             double temperature_k, std::string database_version, const ScanOptions& options) {
    check_spec(spec);
    if (!(temperature_k > 0.0)) throw DomainError(fmt::format("temperature must be positive, got {} K", temperature_k));

    GridMap map;
    map.material_id = material.id;
    map.database_version = std::move(database_version);
    map.config = config;
    map.temperature_k = temperature_k;
    map.birefringent_threshold_um = material.birefringent_threshold_um;
    map.pump_samples = uniform_samples(spec.pump, spec.pump_samples);
    map.signal_samples = uniform_samples(spec.signal, spec.signal_samples);

    const std::size_t np = spec.pump_samples;
    const std::size_t ns = spec.signal_samples;
    map.theta_deg = Grid<double>(np, ns, kNaN);
    map.abs_period_um = Grid<double>(np, ns, kNaN);
    map.mask = Grid<std::uint8_t>(np, ns, mask::ok);
    map.dispersion_numerator = Grid<double>(np, ns, kNaN);
    map.dispersion_denominator = Grid<double>(np, ns, kNaN);

    const double half_step = 0.5 * spec.signal.width() / static_cast<double>(ns - 1);
    const bool mode_degenerate = same_daughter_axis(config);

    const auto evaluate_row = [&](std::size_t i) {
        const double p = map.pump_samples[i];
        for (std::size_t j = 0; j < ns; ++j) {
            const double s = map.signal_samples[j];
            std::uint8_t m = cell_mask(material, p, s);
            if (s > p) {
                try {
                    const MatchSolution sol = solve_period(material, config, p, s, temperature_k);
                    map.theta_deg(i, j) = sol.gvm.theta_deg;
                    map.abs_period_um(i, j) = sol.abs_period_um();
                    map.dispersion_numerator(i, j) = sol.gvm.numerator();
                    map.dispersion_denominator(i, j) = sol.gvm.denominator();
                    if (sol.gvm.regime == GvmRegime::singular) m |= mask::singular;
                } catch (const DomainError&) {
                    m |= mask::signal_out_of_range;
                }
                if (mode_degenerate && std::fabs(s - 2.0 * p) <= half_step * (1.0 + 1e-9)) m |= mask::singular;
            }
            map.mask(i, j) = m;
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, np));
    if (threads <= 1) {
        for (std::size_t i = 0; i < np; ++i) evaluate_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < np; i = next++) evaluate_row(i);
            });
        }
    }

    for (double target : kLocusTargetsDeg) map.loci.push_back(extract_locus(map, material, target, options));
    map.loci.push_back(degeneracy_locus(map));
    return map;
}

}  // namespace pdcm
