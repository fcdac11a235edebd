#ifndef EVP_ORACLE_HPP
#define EVP_ORACLE_HPP

#include <cmath>
#include <deque>
#include <optional>
#include <sstream>
#include <string>

#include "evp/graph.hpp"
#include "evp/profile.hpp"

namespace evp {

// Ground truth for integer instances: per integer initial charge, the exact
// optimal cost (or infeasibility) and the best reachable final SoC.
struct SocGridResult {
    int e_max = 0;
    std::vector<std::optional<double>> cost;  // index = e_init, nullopt = infeasible
    std::vector<double> final_soc;            // valid where cost is set

    bool feasible(int e_init) const { return cost[e_init].has_value(); }
};

namespace detail {

inline void require_integer_costs(const RoadGraph& g) {
    for (const Edge& e : g.edges)
        if (e.cost_wh != std::nearbyint(e.cost_wh))
            throw std::invalid_argument("oracle: edge costs must be integral");
}

}  // namespace detail

// Exact optimal cost per integer e_init via a monotone fixpoint on the best
// reachable SoC per state. Transitions follow the battery semantics
// SoC' = min(SoC - cost, E_max), feasible only when SoC - cost >= 0; since
// the transition is monotone in SoC, keeping the per-state maximum suffices.
inline SocGridResult soc_dp_oracle(const RoadGraph& g, StateId start, StateId goal,
                                   int e_max) {
    if (e_max < 0) throw std::invalid_argument("oracle: E_max must be >= 0");
    if (start >= g.n_states || goal >= g.n_states)
        throw std::invalid_argument("oracle: state id out of range");
    detail::require_integer_costs(g);
    if (static_cast<double>(e_max + 1) * static_cast<double>(g.n_states) > 1e7)
        throw std::invalid_argument("oracle: instance too large for the SoC grid");

    SocGridResult res;
    res.e_max = e_max;
    res.cost.resize(e_max + 1);
    res.final_soc.assign(e_max + 1, 0.0);

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> best(g.n_states);
    std::vector<char> queued(g.n_states);
    for (int e_init = 0; e_init <= e_max; ++e_init) {
        std::fill(best.begin(), best.end(), neg_inf);
        std::fill(queued.begin(), queued.end(), 0);
        std::deque<StateId> work;
        best[start] = static_cast<double>(e_init);
        work.push_back(start);
        queued[start] = 1;
        while (!work.empty()) {
            const StateId u = work.front();
            work.pop_front();
            queued[u] = 0;
            const double soc = best[u];
            for (std::uint32_t eid : g.out_edges(u)) {
                const Edge& e = g.edges[eid];
                const double after = soc - e.cost_wh;
                if (after < 0.0) continue;
                const double clamped = std::min(after, static_cast<double>(e_max));
                if (clamped > best[e.to]) {
                    best[e.to] = clamped;
                    if (!queued[e.to]) {
                        work.push_back(e.to);
                        queued[e.to] = 1;
                    }
                }
            }
        }
        if (best[goal] > neg_inf) {
            res.cost[e_init] = static_cast<double>(e_init) - best[goal];
            res.final_soc[e_init] = best[goal];
        }
    }
    return res;
}

// Hop-bounded secondary oracle for tiny graphs: dynamic program over
// (hop count, state) layers tracking the best SoC, equivalent to enumerating
// every edge sequence of length <= max_hops. Sound but incomplete when the
// optimum needs more hops.
inline SocGridResult exhaustive_small_path_check(const RoadGraph& g, StateId start,
                                                 StateId goal, int e_max,
                                                 std::size_t max_hops) {
    if (e_max < 0) throw std::invalid_argument("oracle: E_max must be >= 0");
    if (start >= g.n_states || goal >= g.n_states)
        throw std::invalid_argument("oracle: state id out of range");
    detail::require_integer_costs(g);
    if (static_cast<double>(e_max + 1) * static_cast<double>(g.n_states) *
            static_cast<double>(max_hops + 1) >
        1e8)
        throw std::invalid_argument("oracle: instance too large for hop enumeration");

    SocGridResult res;
    res.e_max = e_max;
    res.cost.resize(e_max + 1);
    res.final_soc.assign(e_max + 1, 0.0);

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> layer(g.n_states), next(g.n_states);
    for (int e_init = 0; e_init <= e_max; ++e_init) {
        std::fill(layer.begin(), layer.end(), neg_inf);
        layer[start] = static_cast<double>(e_init);
        double best_goal = layer[goal];
        for (std::size_t hop = 0; hop < max_hops; ++hop) {
            std::fill(next.begin(), next.end(), neg_inf);
            for (StateId u = 0; u < g.n_states; ++u) {
                if (layer[u] == neg_inf) continue;
                for (std::uint32_t eid : g.out_edges(u)) {
                    const Edge& e = g.edges[eid];
                    const double after = layer[u] - e.cost_wh;
                    if (after < 0.0) continue;
                    next[e.to] = std::max(next[e.to],
                                          std::min(after, static_cast<double>(e_max)));
                }
            }
            layer.swap(next);
            best_goal = std::max(best_goal, layer[goal]);
        }
        if (best_goal > neg_inf) {
            res.cost[e_init] = static_cast<double>(e_init) - best_goal;
            res.final_soc[e_init] = best_goal;
        }
    }
    return res;
}

// Grid-point diff between the oracle and an envelope, infeasible = +inf.
// Exact comparison: both sides are integral on oracle instances.
struct EnvelopeDiff {
    std::uint64_t points = 0;
    std::uint64_t mismatches = 0;
    double max_abs_diff = 0.0;
    int first_mismatch_e_init = -1;

    bool pass() const { return mismatches == 0; }

    std::string to_text() const {
        std::ostringstream out;
        if (pass()) {
            out << "envelope matches oracle at all " << points << " grid points";
        } else {
            out << mismatches << "/" << points << " grid points differ; first at e_init="
                << first_mismatch_e_init << ", max |diff|=" << max_abs_diff;
        }
        return out.str();
    }

    std::string to_json() const {
        std::ostringstream out;
        out << "{\"points\":" << points << ",\"mismatches\":" << mismatches
            << ",\"max_abs_diff\":";
        if (std::isinf(max_abs_diff))
            out << "\"inf\"";
        else
            out << max_abs_diff;
        out << ",\"first_mismatch_e_init\":" << first_mismatch_e_init
            << ",\"pass\":" << (pass() ? "true" : "false") << "}";
        return out.str();
    }
};

inline EnvelopeDiff compare_envelopes(const SocGridResult& oracle, const Envelope& env) {
    EnvelopeDiff diff;
    const double inf = std::numeric_limits<double>::infinity();
    for (int e = 0; e <= oracle.e_max; ++e) {
        ++diff.points;
        const double want = oracle.cost[e] ? *oracle.cost[e] : inf;
        const auto got_opt = env.value_at(static_cast<double>(e));
        const double got = got_opt ? *got_opt : inf;
        if (want == got) continue;
        ++diff.mismatches;
        if (diff.first_mismatch_e_init < 0) diff.first_mismatch_e_init = e;
        const double d = (std::isinf(want) || std::isinf(got)) ? inf : std::abs(want - got);
        diff.max_abs_diff = std::max(diff.max_abs_diff, d);
    }
    return diff;
}

}  // namespace evp

#endif  // EVP_ORACLE_HPP
