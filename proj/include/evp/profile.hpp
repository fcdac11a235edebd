#ifndef EVP_PROFILE_HPP
#define EVP_PROFILE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace evp {

// Two-breakpoint energy profile of a path. The profile maps initial energy
// e at the path's first state to the energy cost of traversing it:
//
//   e <  e_min                    : not traversable
//   e in [e_min, t]               : cost = g_min          (flat segment)
//   e in (t, E_max]               : cost = e - (E_max - g_max)  (unit slope)
//
// with transition point t = E_max - g_max + g_min. g_min is the minimum
// cost, g_max the cost when starting fully charged (recuperation lost to
// the capacity cap), e_min the minimum initial charge needed.
struct EnergyProfile {
    double e_min;
    double g_min;
    double g_max;

    friend bool operator==(const EnergyProfile&, const EnergyProfile&) = default;
};

// Profile of the empty path.
inline constexpr EnergyProfile kEmptyPathProfile{0.0, 0.0, 0.0};

// Extends a path profile by appending an edge of cost `edge_cost`.
// Feasibility is not checked here; callers prune out-of-capacity profiles.
inline EnergyProfile link_forward(const EnergyProfile& p, double edge_cost, double e_max) {
    EnergyProfile r;
    r.g_min = std::max(p.g_min + edge_cost, -e_max);
    r.e_min = std::max(p.e_min, r.g_min);
    r.g_max = std::max(0.0, p.g_max + edge_cost);
    return r;
}

// Extends a path profile by prepending an edge of cost `edge_cost`.
inline EnergyProfile link_backward(const EnergyProfile& p, double edge_cost, double e_max) {
    EnergyProfile r;
    r.g_min = std::max(p.g_min + edge_cost, -e_max);
    r.g_max = std::max(p.g_max, r.g_min);
    r.e_min = std::max(0.0, p.e_min + edge_cost);
    return r;
}

// Cost of traversing the path described by `p` with initial energy `e_init`,
// or nullopt when the path is not traversable at that charge.
inline std::optional<double> evaluate(const EnergyProfile& p, double e_init, double e_max) {
    if (e_init < 0.0 || e_init > e_max)
        throw std::domain_error("evaluate: e_init outside [0, E_max]");
    if (e_init < p.e_min) return std::nullopt;
    return std::max(p.g_min, e_init - (e_max - p.g_max));
}

// Full three-component dominance; ties dominate.
inline bool dominates(const EnergyProfile& x, const EnergyProfile& y) {
    return x.e_min <= y.e_min && x.g_min <= y.g_min && x.g_max <= y.g_max;
}

// Two-component dominance for nodes already ordered by f at extraction
// (the g ordering is supplied by the search).
inline bool dominates_ordered(const EnergyProfile& x, const EnergyProfile& y) {
    return x.e_min <= y.e_min && x.g_max <= y.g_max;
}

inline bool profile_feasible(const EnergyProfile& p, double e_max) {
    return p.e_min <= e_max && p.g_max <= e_max;
}

// Joins the profile of a start->v path (fw) with the profile of a v->goal
// path (bw) into the profile of the concatenated path, in constant time.
//
// In path order, e_min is the maximum non-negative prefix sum and g_max the
// maximum non-negative suffix sum of the edge costs, so the concatenation
// composes as
//   prefix' = max(prefix(P), total(P) + prefix(Q))
//   suffix' = max(0, suffix(Q), total(Q) + suffix(P))
// with total carried in g_min. A contiguous subpath spanning the meeting
// state needs g_max(fw) + e_min(bw) energy at its first state; when that
// exceeds capacity the joined path is infeasible even though both halves
// survived their own searches. The stored g_min of a clamped half is only
// a lower envelope of the true total, so the raw g is lifted to the value
// visible at e_min; the resulting profile is evaluation-exact.
inline std::optional<EnergyProfile> join_fw_bw(const EnergyProfile& fw, const EnergyProfile& bw,
                                               double e_max) {
    if (fw.g_max + bw.e_min > e_max) return std::nullopt;
    const double g_max = std::max({0.0, bw.g_max, bw.g_min + fw.g_max});
    const double prefix = std::max(fw.e_min, fw.g_min + bw.e_min);
    double g_min = std::max(fw.g_min + bw.g_min, -e_max);
    const double e_min = std::max(prefix, g_min);
    if (e_min > e_max || g_max > e_max) return std::nullopt;
    g_min = std::max(g_min, e_min - (e_max - g_max));
    return EnergyProfile{e_min, g_min, g_max};
}

struct EnvelopeSegment {
    double e_from;  // initial energy where this segment starts
    double cost;    // envelope value at e_from
    int slope;      // 0 or 1
};

// Lower envelope of a set of profiles: the pointwise minimum cost over
// [first feasible e_init, E_max]. Empty segment list = everywhere infeasible.
struct Envelope {
    double e_max = 0.0;
    std::vector<EnvelopeSegment> segments;

    bool empty() const { return segments.empty(); }

    std::optional<double> value_at(double e_init) const {
        if (e_init < 0.0 || e_init > e_max)
            throw std::domain_error("Envelope::value_at: e_init outside [0, E_max]");
        if (segments.empty() || e_init < segments.front().e_from) return std::nullopt;
        std::size_t lo = 0, hi = segments.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (segments[mid].e_from <= e_init) lo = mid; else hi = mid;
        }
        const EnvelopeSegment& s = segments[lo];
        return s.cost + s.slope * (e_init - s.e_from);
    }
};

namespace detail {
inline double profile_value(const EnergyProfile& p, double e, double e_max) {
    return std::max(p.g_min, e - (e_max - p.g_max));
}
}  // namespace detail

// Candidate-breakpoint sweep. Each profile contributes its activation point
// and transition point; pairwise flat/slope crossings are candidates too, so
// between consecutive candidates the minimizing profile is a single line.
// Exact on integer-valued profiles.
inline Envelope lower_envelope(const std::vector<EnergyProfile>& profiles, double e_max) {
    Envelope env;
    env.e_max = e_max;

    std::vector<EnergyProfile> feasible;
    for (const auto& p : profiles)
        if (profile_feasible(p, e_max)) feasible.push_back(p);
    if (feasible.empty()) return env;

    std::vector<double> cand;
    cand.push_back(e_max);
    for (const auto& p : feasible) {
        cand.push_back(p.e_min);
        const double t = std::max(p.e_min, e_max - p.g_max + p.g_min);
        if (t < e_max) cand.push_back(t);
    }
    for (const auto& p : feasible)
        for (const auto& q : feasible) {
            const double c = e_max - q.g_max + p.g_min;  // flat(p) meets slope(q)
            if (c > 0.0 && c < e_max) cand.push_back(c);
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    const auto active_min = [&](double e) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        double best_v = 0.0;
        for (std::size_t i = 0; i < feasible.size(); ++i) {
            if (e < feasible[i].e_min) continue;
            const double v = detail::profile_value(feasible[i], e, e_max);
            if (!best || v < best_v) { best = i; best_v = v; }
        }
        return best;
    };

    for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
        const double a = cand[i];
        const double b = cand[i + 1];
        const double mid = a + (b - a) / 2.0;
        const auto idx = active_min(mid);
        if (!idx) continue;
        const EnergyProfile& p = feasible[*idx];
        const double t = e_max - p.g_max + p.g_min;
        EnvelopeSegment seg;
        seg.e_from = a;
        seg.cost = detail::profile_value(p, a, e_max);
        seg.slope = (mid > t) ? 1 : 0;
        if (!env.segments.empty()) {
            EnvelopeSegment& last = env.segments.back();
            if (last.slope == seg.slope &&
                last.cost + last.slope * (seg.e_from - last.e_from) == seg.cost)
                continue;  // same line, extend
        }
        env.segments.push_back(seg);
    }

    // Profiles activating exactly at E_max are not covered by any interval.
    if (const auto idx = active_min(e_max)) {
        const double v = detail::profile_value(feasible[*idx], e_max, e_max);
        double cur = std::numeric_limits<double>::infinity();
        if (!env.segments.empty()) {
            const EnvelopeSegment& last = env.segments.back();
            cur = last.cost + last.slope * (e_max - last.e_from);
        }
        if (v < cur) env.segments.push_back(EnvelopeSegment{e_max, v, 0});
    }
    return env;
}

}  // namespace evp

#endif  // EVP_PROFILE_HPP
