#ifndef EVP_HEURISTIC_HPP
#define EVP_HEURISTIC_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "evp/graph.hpp"

namespace evp {

inline constexpr double kEarthRadiusM = 6'371'000.0;
inline constexpr double kConsistencyTolWh = 1e-6;

// Great-circle distance in meters.
inline double haversine(const LatLon& a, const LatLon& b) {
    const double rad = std::numbers::pi / 180.0;
    const double dlat = (b.lat - a.lat) * rad;
    const double dlon = (b.lon - a.lon) * rad;
    const double sl = std::sin(dlat / 2.0);
    const double so = std::sin(dlon / 2.0);
    const double h = sl * sl + std::cos(a.lat * rad) * std::cos(b.lat * rad) * so * so;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

enum class HeuristicVariant { Zero, Potential, Dynamics };
enum class Direction { Forward, Backward };

struct DrivingPattern {
    std::array<double, 3> alpha{0.0, 0.0, 0.0};  // (a2, a1, a0)
    std::array<double, 3> beta{0.0, 0.0, 0.0};
};

// Calibrated energy heuristic
//   h(u) = lambda * eff * h_d(u, target)/100 + pot_coeff * dH
// where h_d is the haversine distance, eff is Ê (potential variant) or
// m*a0_min + b0_min (dynamics variant) in Wh/100m, and pot_coeff scales the
// height difference toward the target (Wh/m). dH = H(target) - H(u) in the
// forward direction and H(u) - H(target) in the backward direction, which
// makes the backward variant consistent on the reversed graph.
struct HeuristicConfig {
    HeuristicVariant variant = HeuristicVariant::Zero;
    Direction direction = Direction::Forward;
    StateId target = 0;
    double lambda = 0.0;
    double efficiency_wh_per_100m = 0.0;
    double potential_coeff_wh_per_m = 0.0;
};

inline HeuristicConfig make_zero_heuristic(StateId target,
                                           Direction dir = Direction::Forward) {
    HeuristicConfig cfg;
    cfg.variant = HeuristicVariant::Zero;
    cfg.direction = dir;
    cfg.target = target;
    return cfg;
}

// Model-independent variant: potential term M*a*dH (J -> Wh via /3600).
inline HeuristicConfig make_potential_heuristic(const EnergyModelParams& model, StateId target,
                                                Direction dir = Direction::Forward) {
    HeuristicConfig cfg;
    cfg.variant = HeuristicVariant::Potential;
    cfg.direction = dir;
    cfg.target = target;
    cfg.efficiency_wh_per_100m = model.avg_efficiency_wh_100m;
    cfg.potential_coeff_wh_per_m = model.total_mass_kg * model.gravity / 3600.0;
    return cfg;
}

// Dynamics variant: averages of a1/b1 give the path-independent potential
// m(a1_avg + b1_avg) dH / 100; minima of a0/b0 give the distance term.
// With a single pattern, average = min = that pattern.
inline HeuristicConfig make_dynamics_heuristic(const EnergyModelParams& model,
                                               const std::vector<DrivingPattern>& patterns,
                                               StateId target,
                                               Direction dir = Direction::Forward) {
    HeuristicConfig cfg;
    cfg.variant = HeuristicVariant::Dynamics;
    cfg.direction = dir;
    cfg.target = target;
    if (patterns.empty())
        throw std::invalid_argument("dynamics heuristic needs at least one driving pattern");
    double a1_sum = 0.0, b1_sum = 0.0;
    double a0_min = std::numeric_limits<double>::infinity();
    double b0_min = std::numeric_limits<double>::infinity();
    for (const auto& p : patterns) {
        a1_sum += p.alpha[1];
        b1_sum += p.beta[1];
        a0_min = std::min(a0_min, p.alpha[2]);
        b0_min = std::min(b0_min, p.beta[2]);
    }
    const double np = static_cast<double>(patterns.size());
    const double m = model.extra_mass_kg;
    cfg.efficiency_wh_per_100m = m * a0_min + b0_min;
    cfg.potential_coeff_wh_per_m = m * (a1_sum / np + b1_sum / np) / 100.0;
    return cfg;
}

inline double h_value(const HeuristicConfig& cfg, const RoadGraph& g, StateId u) {
    if (cfg.variant == HeuristicVariant::Zero || u == cfg.target) return 0.0;
    const double dist_term =
        cfg.lambda * cfg.efficiency_wh_per_100m * haversine(g.coords[u], g.coords[cfg.target]) /
        100.0;
    const double dh = g.heights[cfg.target] - g.heights[u];
    const double pot = cfg.potential_coeff_wh_per_m *
                       (cfg.direction == Direction::Forward ? dh : -dh);
    return dist_term + pot;
}

// Largest lambda keeping the heuristic consistent: the minimum over edges of
// cost_red(u,v) / (eff * d(u,v)/100), clamped at zero. Zero-length edges are
// skipped; they contribute no distance term.
inline double calibrate_lambda(const RoadGraph& g, const HeuristicConfig& cfg) {
    if (cfg.variant == HeuristicVariant::Zero) return 0.0;
    if (cfg.efficiency_wh_per_100m <= 0.0)
        throw std::invalid_argument("calibrate_lambda: efficiency term must be > 0");
    double lambda = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const Edge& e : g.edges) {
        if (e.length_m <= 0.0) continue;
        const double pot = cfg.potential_coeff_wh_per_m * (g.heights[e.to] - g.heights[e.from]);
        const double cost_red = e.cost_wh - pot;
        const double denom = cfg.efficiency_wh_per_100m * e.length_m / 100.0;
        lambda = std::min(lambda, cost_red / denom);
        any = true;
    }
    if (!any) return 0.0;
    return std::max(0.0, lambda);
}

struct ConsistencyViolation {
    std::uint32_t edge_id;
    double excess_wh;  // h(u) - h(v) - cost(u,v), positive part
};

struct ConsistencyReport {
    std::vector<ConsistencyViolation> violations;
    double max_excess_wh = 0.0;
    bool target_anchor_ok = true;  // h(target) == 0 exactly

    bool consistent() const { return violations.empty() && target_anchor_ok; }
};

// Audits h(u) - h(v) <= cost(u,v) on every edge (in the direction the
// heuristic will be used) and the h(target) = 0 admissibility anchor.
inline ConsistencyReport check_consistency(const RoadGraph& g, const HeuristicConfig& cfg,
                                           double tol = kConsistencyTolWh) {
    ConsistencyReport rep;
    std::vector<double> h(g.n_states);
    for (StateId u = 0; u < g.n_states; ++u) h[u] = h_value(cfg, g, u);
    rep.target_anchor_ok = (h[cfg.target] == 0.0);
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        const double excess = (cfg.direction == Direction::Forward)
                                  ? h[e.from] - h[e.to] - e.cost_wh
                                  : h[e.to] - h[e.from] - e.cost_wh;
        rep.max_excess_wh = std::max(rep.max_excess_wh, excess);
        if (excess > tol) rep.violations.push_back({i, excess});
    }
    return rep;
}

struct InconsistentHeuristicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Johnson-style reduced cost; non-negative for a consistent heuristic.
inline double reduced_cost(const RoadGraph& g, const HeuristicConfig& cfg,
                           std::uint32_t edge_id, double tol = kConsistencyTolWh) {
    const Edge& e = g.edges[edge_id];
    const double rc = (cfg.direction == Direction::Forward)
                          ? e.cost_wh + h_value(cfg, g, e.to) - h_value(cfg, g, e.from)
                          : e.cost_wh + h_value(cfg, g, e.from) - h_value(cfg, g, e.to);
    if (rc < -tol)
        throw InconsistentHeuristicError("negative reduced cost on edge " +
                                         std::to_string(edge_id));
    return rc;
}

}  // namespace evp

#endif  // EVP_HEURISTIC_HPP
