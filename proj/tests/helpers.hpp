#ifndef EVP_TESTS_HELPERS_HPP
#define EVP_TESTS_HELPERS_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "evp/dimacs.hpp"
#include "evp/graph.hpp"
#include "evp/heuristic.hpp"
#include "evp/oracle.hpp"
#include "evp/profile.hpp"
#include "evp/search.hpp"

namespace testutil {

using namespace evp;

// Step-by-step battery simulation along an explicit edge-cost list; the
// semantic ground truth every profile construction must reproduce.
inline std::optional<double> simulate_cost(const std::vector<double>& costs, double e_init,
                                           double e_max) {
    double soc = e_init;
    for (double c : costs) {
        soc -= c;
        if (soc < 0.0) return std::nullopt;
        soc = std::min(soc, e_max);
    }
    return e_init - soc;
}

// The two-breakpoint algebra is exact precisely for paths every search can
// produce: those whose every prefix profile stays within capacity. A path
// failing this hides a mid-path capacity violation that the triple of the
// full path cannot represent.
inline bool all_prefixes_feasible(const std::vector<double>& costs, double e_max) {
    EnergyProfile p = kEmptyPathProfile;
    for (double c : costs) {
        p = link_forward(p, c, e_max);
        if (!profile_feasible(p, e_max)) return false;
    }
    return true;
}

inline EnergyProfile link_path_fw(const std::vector<double>& costs, double e_max) {
    EnergyProfile p = kEmptyPathProfile;
    for (double c : costs) p = link_forward(p, c, e_max);
    return p;
}

inline EnergyProfile link_path_bw(const std::vector<double>& costs, double e_max) {
    EnergyProfile p = kEmptyPathProfile;
    for (auto it = costs.rbegin(); it != costs.rend(); ++it) p = link_backward(p, *it, e_max);
    return p;
}

// Simple chain graph 0 -> 1 -> ... -> k with the given edge costs.
inline RoadGraph path_graph(const std::vector<double>& costs) {
    RoadGraph g;
    g.n_states = costs.size() + 1;
    g.heights.assign(g.n_states, 0.0);
    g.coords.assign(g.n_states, LatLon{});
    for (std::size_t i = 0; i < costs.size(); ++i)
        g.edges.push_back(Edge{static_cast<StateId>(i), static_cast<StateId>(i + 1), costs[i],
                               0.0});
    g.build_adjacency();
    return g;
}

// Edge costs of the worked four-edge example used throughout the tests.
inline std::vector<double> golden_path_costs() { return {-1.0, 3.0, -2.0, 1.0}; }

// Heuristic matching the height-shift construction of generated test graphs:
// a unit potential coefficient makes h(u) = H(target) - H(u) (forward),
// which is consistent because every reduced cost equals the non-negative
// base weight.
inline HeuristicConfig unit_potential(StateId target, Direction dir) {
    HeuristicConfig cfg;
    cfg.variant = HeuristicVariant::Potential;
    cfg.direction = dir;
    cfg.target = target;
    cfg.lambda = 0.0;
    cfg.efficiency_wh_per_100m = 1.0;
    cfg.potential_coeff_wh_per_m = 1.0;
    return cfg;
}

inline GraphGenSpec suite_graph_spec(std::uint64_t seed) {
    GraphGenSpec gs;
    gs.seed = seed;
    gs.n_states = 20 + seed % 41;
    gs.avg_degree = 3.0;
    gs.w_max = 10.0;
    gs.h_lo = 0.0;
    gs.h_hi = 30.0;
    gs.integer_costs = true;
    return gs;
}

inline int suite_e_max(std::uint64_t seed) {
    constexpr int choices[3] = {20, 50, 100};
    return choices[seed % 3];
}

struct Query {
    StateId start;
    StateId goal;
};

inline std::vector<Query> sample_queries(std::uint64_t seed, std::size_t n_states,
                                         std::size_t count = 3) {
    detail::SplitRng rng(seed * 977 + 13);
    std::vector<Query> qs;
    for (std::size_t i = 0; i < count; ++i)
        qs.push_back({static_cast<StateId>(rng.next_below(n_states)),
                      static_cast<StateId>(rng.next_below(n_states))});
    return qs;
}

// Canonical byte rendering of an envelope for determinism comparisons.
inline std::string envelope_bytes(const Envelope& env) {
    std::ostringstream out;
    out << detail::fmt_double(env.e_max);
    for (const EnvelopeSegment& s : env.segments)
        out << '|' << detail::fmt_double(s.e_from) << ',' << detail::fmt_double(s.cost) << ','
            << s.slope;
    return out.str();
}

}  // namespace testutil

#endif  // EVP_TESTS_HELPERS_HPP
