#ifndef EVP_GRAPH_HPP
#define EVP_GRAPH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace evp {

using StateId = std::uint32_t;

struct LatLon {
    double lat = 0.0;  // degrees
    double lon = 0.0;
};

struct Edge {
    StateId from;
    StateId to;
    double cost_wh;
    double length_m;
};

// Longitudinal-dynamics energy model. alpha are the mass-coupled
// coefficients, beta the base coefficients, both over (s^2, s, 1) with
// s = sin(theta); units are Wh per 100 m of travel.
struct EnergyModelParams {
    std::array<double, 3> alpha{0.0, 0.0, 0.0};  // (a2, a1, a0)
    std::array<double, 3> beta{0.0, 0.0, 0.0};   // (b2, b1, b0)
    double extra_mass_kg = 0.0;                  // passengers / cargo
    double total_mass_kg = 0.0;
    double gravity = 9.8;                        // m/s^2
    double avg_efficiency_wh_100m = 0.0;         // Ê
    double battery_capacity_wh = 0.0;            // E_max
};

// cost = m(a2 s^2 + a1 s + a0) l + (b2 s^2 + b1 s + b0) l, l in 100 m units.
// Negative on recuperating downhill segments.
inline double compute_edge_energy(const EnergyModelParams& model, double sin_theta,
                                  double length_100m) {
    const double s = sin_theta;
    const double m = model.extra_mass_kg;
    const double a = (model.alpha[0] * s + model.alpha[1]) * s + model.alpha[2];
    const double b = (model.beta[0] * s + model.beta[1]) * s + model.beta[2];
    return (m * a + b) * length_100m;
}

// Immutable after construction; shareable across concurrent searches.
struct RoadGraph {
    std::size_t n_states = 0;
    std::vector<Edge> edges;
    std::vector<double> heights;  // m, per state
    std::vector<LatLon> coords;   // per state

    std::vector<std::uint32_t> fwd_offsets, fwd_edge_ids;
    std::vector<std::uint32_t> bwd_offsets, bwd_edge_ids;

    void build_adjacency() {
        for (const Edge& e : edges)
            if (e.from >= n_states || e.to >= n_states)
                throw std::invalid_argument("RoadGraph: edge endpoint out of range");
        build_csr(fwd_offsets, fwd_edge_ids, [](const Edge& e) { return e.from; });
        build_csr(bwd_offsets, bwd_edge_ids, [](const Edge& e) { return e.to; });
    }

    std::span<const std::uint32_t> out_edges(StateId u) const {
        return {fwd_edge_ids.data() + fwd_offsets[u],
                fwd_edge_ids.data() + fwd_offsets[u + 1]};
    }
    std::span<const std::uint32_t> in_edges(StateId u) const {
        return {bwd_edge_ids.data() + bwd_offsets[u],
                bwd_edge_ids.data() + bwd_offsets[u + 1]};
    }

private:
    template <typename KeyFn>
    void build_csr(std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& ids,
                   KeyFn key) {
        offsets.assign(n_states + 1, 0);
        for (const Edge& e : edges) ++offsets[key(e) + 1];
        for (std::size_t i = 1; i <= n_states; ++i) offsets[i] += offsets[i - 1];
        ids.resize(edges.size());
        std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::uint32_t i = 0; i < edges.size(); ++i)
            ids[cursor[key(edges[i])]++] = i;
    }
};

// True iff no directed cycle has negative total cost. Bellman-Ford style
// relaxation from a virtual zero source; a relaxation in round |S| means a
// negative cycle is reachable.
inline bool validate_no_negative_cycle(const RoadGraph& g) {
    if (g.n_states == 0) return true;
    std::vector<double> dist(g.n_states, 0.0);
    for (std::size_t round = 0; round < g.n_states; ++round) {
        bool changed = false;
        for (const Edge& e : g.edges) {
            const double nd = dist[e.from] + e.cost_wh;
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                changed = true;
            }
        }
        if (!changed) return true;
    }
    return false;
}

struct GraphGenSpec {
    std::uint64_t seed = 0;
    std::size_t n_states = 0;
    double avg_degree = 3.0;
    double w_max = 10.0;       // base costs drawn from [0, w_max]
    double h_lo = 0.0;         // height range, m
    double h_hi = 0.0;
    bool integer_costs = true;
};

namespace detail {
// Explicit draws so generated graphs are identical across standard libraries.
struct SplitRng {
    std::uint64_t s;
    explicit SplitRng(std::uint64_t seed) : s(seed + 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t next_below(std::uint64_t n) { return n ? next() % n : 0; }
    double next_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};
}  // namespace detail

// Random graph with cost(u,v) = w(u,v) + H(v) - H(u), w >= 0, so every cycle
// cost equals its sum of w values and the graph is negative-cycle free by
// construction. Deterministic given the seed.
inline RoadGraph generate_test_graph(const GraphGenSpec& spec) {
    if (spec.n_states == 0) throw std::invalid_argument("GraphGenSpec: n_states must be > 0");
    if (spec.w_max < 0.0) throw std::invalid_argument("GraphGenSpec: w_max must be >= 0");
    detail::SplitRng rng(spec.seed);

    RoadGraph g;
    g.n_states = spec.n_states;
    g.heights.resize(g.n_states);
    g.coords.assign(g.n_states, LatLon{});
    const double h_span = spec.h_hi - spec.h_lo;
    for (auto& h : g.heights) {
        if (spec.integer_costs) {
            const auto lo = static_cast<std::int64_t>(std::ceil(spec.h_lo));
            const auto hi = static_cast<std::int64_t>(std::floor(spec.h_hi));
            h = static_cast<double>(lo + static_cast<std::int64_t>(
                                             rng.next_below(static_cast<std::uint64_t>(
                                                 hi >= lo ? hi - lo + 1 : 1))));
        } else {
            h = spec.h_lo + rng.next_real() * h_span;
        }
    }

    const auto n = spec.n_states;
    const auto target_edges =
        static_cast<std::size_t>(std::llround(spec.avg_degree * static_cast<double>(n)));
    std::unordered_set<std::uint64_t> seen;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 20 * target_edges + 100;
    while (g.edges.size() < target_edges && attempts++ < max_attempts) {
        const auto u = static_cast<StateId>(rng.next_below(n));
        const auto v = static_cast<StateId>(rng.next_below(n));
        if (u == v) continue;
        const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
        if (!seen.insert(key).second) continue;
        double w;
        if (spec.integer_costs)
            w = static_cast<double>(rng.next_below(static_cast<std::uint64_t>(spec.w_max) + 1));
        else
            w = rng.next_real() * spec.w_max;
        g.edges.push_back(Edge{u, v, w + g.heights[v] - g.heights[u], 0.0});
    }
    g.build_adjacency();
    return g;
}

}  // namespace evp

#endif  // EVP_GRAPH_HPP
