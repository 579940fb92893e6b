#include "pdcm/error.hpp"
#include "pdcm/gvm.hpp"
#include "pdcm/locus.hpp"
#include "pdcm/sweep.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <utility>

#include <fmt/format.h>

namespace pdcm {
namespace {

using EdgeId = std::size_t;

struct Vertex {
    LocusPoint at;
    bool valid = false;
};

class ContourBuilder {
public:
    ContourBuilder(const GridMap& map, const MaterialRecord& material, double target_deg, const ScanOptions& options)
        : map_(map), material_(material), target_(target_deg), options_(options),
          cos_(std::cos(target_deg * std::numbers::pi / 180.0)), sin_(std::sin(target_deg * std::numbers::pi / 180.0)) {}

    Locus build() {
        const std::size_t np = map_.pump_samples.size();
        const std::size_t ns = map_.signal_samples.size();
        for (std::size_t i = 0; i + 1 < np; ++i) {
            for (std::size_t j = 0; j + 1 < ns; ++j) march_cell(i, j);
        }
        Locus locus;
        locus.name = fmt::format("theta_{}", target_);
        locus.theta_deg = target_;
        locus.polylines = chain();
        return locus;
    }

private:
    [[nodiscard]] EdgeId pump_edge(std::size_t i, std::size_t j) const {
        return 2 * (i * map_.signal_samples.size() + j);
    }
    [[nodiscard]] EdgeId signal_edge(std::size_t i, std::size_t j) const {
        return 2 * (i * map_.signal_samples.size() + j) + 1;
    }

    [[nodiscard]] double grid_value(std::size_t i, std::size_t j) const {
        return map_.dispersion_numerator(i, j) * cos_ - map_.dispersion_denominator(i, j) * sin_;
    }

    [[nodiscard]] std::optional<double> residual(double pump, double signal) const {
        try {
            const auto p = dispersion_parameter(material_, map_.config, WavelengthTriple::from_pump_signal(pump, signal),
                                                map_.temperature_k);
            if (p.regime == GvmRegime::singular) return std::nullopt;
            return theta_residual(p, target_);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }

    // Crossing on the edge from corner a to corner b, refined by bisection
    // along the edge. Cached so neighbouring cells share the vertex.
    const Vertex& vertex(EdgeId id, std::size_t ia, std::size_t ja, std::size_t ib, std::size_t jb) {
        if (auto it = vertices_.find(id); it != vertices_.end()) return it->second;
        const LocusPoint a{map_.pump_samples[ia], map_.signal_samples[ja]};
        const LocusPoint b{map_.pump_samples[ib], map_.signal_samples[jb]};
        const double fa = grid_value(ia, ja);
        const double fb = grid_value(ib, jb);
        const auto point_at = [&](double t) {
            return LocusPoint{a.pump_um + t * (b.pump_um - a.pump_um), a.signal_um + t * (b.signal_um - a.signal_um)};
        };
        const double length = std::hypot(b.pump_um - a.pump_um, b.signal_um - a.signal_um);

        double lo = 0.0;
        double hi = 1.0;
        double flo = fa;
        double fhi = fb;
        std::optional<double> settled;
        // Past the tolerance, keep halving while the vertex fails the theta
        // check: close to a point where both group-index differences vanish,
        // theta moves by degrees within a micrometre.
        while ((hi - lo) * length > options_.refine_tolerance_um || (hi - lo > 1e-15 && !check(point_at(0.5 * (lo + hi))))) {
            const double mid = 0.5 * (lo + hi);
            const LocusPoint pm = point_at(mid);
            const auto fm = residual(pm.pump_um, pm.signal_um);
            if (!fm) {
                // Not evaluable inside the bracket: use the linear estimate.
                settled = lo + (hi - lo) * flo / (flo - fhi);
                break;
            }
            if (*fm == 0.0) {
                settled = mid;
                break;
            }
            if ((*fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = *fm;
            } else {
                hi = mid;
                fhi = *fm;
            }
        }
        Vertex v;
        v.at = point_at(settled ? *settled : 0.5 * (lo + hi));
        v.valid = check(v.at);
        return vertices_.emplace(id, v).first->second;
    }

    [[nodiscard]] bool check(const LocusPoint& pt) const {
        try {
            const auto p = dispersion_parameter(material_, map_.config,
                                                WavelengthTriple::from_pump_signal(pt.pump_um, pt.signal_um),
                                                map_.temperature_k);
            return p.regime != GvmRegime::singular &&
                   angle_distance_deg(p.theta_deg, target_) <= options_.vertex_check_deg;
        } catch (const DomainError&) {
            return false;
        }
    }

    void march_cell(std::size_t i, std::size_t j) {
        const std::size_t ci[4] = {i, i + 1, i + 1, i};
        const std::size_t cj[4] = {j, j, j + 1, j + 1};
        double v[4];
        for (int k = 0; k < 4; ++k) {
            if (map_.mask(ci[k], cj[k]) != mask::ok) return;
            v[k] = grid_value(ci[k], cj[k]);
            if (!std::isfinite(v[k])) return;
        }
        const bool above[4] = {v[0] >= 0.0, v[1] >= 0.0, v[2] >= 0.0, v[3] >= 0.0};
        // Edge k joins corner k and corner (k + 1) % 4.
        const EdgeId ids[4] = {pump_edge(i, j), signal_edge(i + 1, j), pump_edge(i, j + 1), signal_edge(i, j)};
        bool crossed[4];
        int count = 0;
        for (int k = 0; k < 4; ++k) {
            crossed[k] = above[k] != above[(k + 1) % 4];
            count += crossed[k] ? 1 : 0;
        }
        const auto edge_vertex = [&](int k) -> const Vertex& {
            const int a = k;
            const int b = (k + 1) % 4;
            // Orient every edge from its lower-index corner so the cached vertex
            // does not depend on which neighbour asks first.
            const bool forward = k < 2;
            return forward ? vertex(ids[k], ci[a], cj[a], ci[b], cj[b]) : vertex(ids[k], ci[b], cj[b], ci[a], cj[a]);
        };
        const auto add = [&](int e1, int e2) {
            const Vertex& a = edge_vertex(e1);
            const Vertex& b = edge_vertex(e2);
            if (a.valid && b.valid) segments_.emplace_back(ids[e1], ids[e2]);
        };
        if (count == 2) {
            int first = -1;
            for (int k = 0; k < 4; ++k) {
                if (!crossed[k]) continue;
                if (first < 0) {
                    first = k;
                } else {
                    add(first, k);
                }
            }
        } else if (count == 4) {
            const bool centre_above = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= 0.0;
            if (centre_above == above[0]) {
                add(0, 1);  // isolates corner 1
                add(2, 3);  // isolates corner 3
            } else {
                add(3, 0);  // isolates corner 0
                add(1, 2);  // isolates corner 2
            }
        }
    }

    std::vector<std::vector<LocusPoint>> chain() const {
        std::map<EdgeId, std::vector<std::size_t>> touching;
        for (std::size_t k = 0; k < segments_.size(); ++k) {
            touching[segments_[k].first].push_back(k);
            touching[segments_[k].second].push_back(k);
        }
        std::vector<bool> used(segments_.size(), false);
        std::vector<std::vector<LocusPoint>> out;

        const auto walk = [&](EdgeId start) {
            std::vector<LocusPoint> line{vertices_.at(start).at};
            EdgeId at = start;
            for (;;) {
                std::optional<std::size_t> next;
                for (std::size_t k : touching.at(at)) {
                    if (!used[k]) {
                        next = k;
                        break;
                    }
                }
                if (!next) break;
                used[*next] = true;
                const auto& seg = segments_[*next];
                at = seg.first == at ? seg.second : seg.first;
                line.push_back(vertices_.at(at).at);
            }
            out.push_back(std::move(line));
        };

        // Open chains start at their ends, then whatever remains is closed.
        for (const auto& [id, segs] : touching) {
            if (segs.size() == 1 && !used[segs.front()]) walk(id);
        }
        for (const auto& [id, segs] : touching) {
            for (std::size_t k : segs) {
                if (!used[k]) walk(id);
            }
        }
        return out;
    }

    const GridMap& map_;
    const MaterialRecord& material_;
    double target_;
    const ScanOptions& options_;
    double cos_;
    double sin_;
    std::map<EdgeId, Vertex> vertices_;
    std::vector<std::pair<EdgeId, EdgeId>> segments_;
};

}  // namespace

Locus extract_locus(const GridMap& map, const MaterialRecord& material, double target_deg,
                    const ScanOptions& options) {
    return ContourBuilder(map, material, target_deg, options).build();
}

Locus degeneracy_locus(const GridMap& map) {
    Locus locus;
    locus.name = "degeneracy";
    if (map.pump_samples.empty() || map.signal_samples.empty()) return locus;
    const double lo = std::max(map.pump_samples.front(), 0.5 * map.signal_samples.front());
    const double hi = std::min(map.pump_samples.back(), 0.5 * map.signal_samples.back());
    if (lo < hi) locus.polylines.push_back({{lo, 2.0 * lo}, {hi, 2.0 * hi}});
    return locus;
}

}  // namespace pdcm
