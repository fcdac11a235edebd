#ifndef EVP_SEARCH_HPP
#define EVP_SEARCH_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

#include "evp/graph.hpp"
#include "evp/heuristic.hpp"
#include "evp/profile.hpp"

namespace evp {

inline constexpr double kFBarGuard = 1e-9;
inline constexpr double kMonotonicityTol = 1e-9;

struct SearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    std::uint64_t expansions_fw = 0;  // bidirectional only
    std::uint64_t expansions_bw = 0;
    std::size_t peak_open = 0;
    std::uint64_t runtime_us = 0;
    std::uint64_t f_monotonicity_violations = 0;
    std::uint64_t invariant_violations = 0;
};

struct SearchOptions {
    bool disable_upper_bound = false;  // skip the solution-bound early-termination cut
    bool check_invariants = false;     // audit profile inequalities on every generated node
};

struct SearchNode {
    EnergyProfile prof;  // for point searches only g_min is meaningful
    double f = 0.0;
    StateId state = 0;
    SearchNode* parent = nullptr;
    SearchNode* join_bw = nullptr;  // backward half of a joined node
    SearchNode* x_next = nullptr;
    Direction dir = Direction::Forward;
    bool joined = false;
};

// Chunked pool with stable addresses; nodes from one arena stay valid while
// another thread holds pointers into it.
class NodeArena {
public:
    SearchNode* make() {
        if (used_ == kChunk) {
            chunks_.push_back(std::make_unique<SearchNode[]>(kChunk));
            used_ = 0;
        }
        return &chunks_.back()[used_++];
    }

private:
    static constexpr std::size_t kChunk = 4096;
    std::vector<std::unique_ptr<SearchNode[]>> chunks_;
    std::size_t used_ = kChunk;
};

namespace detail {

struct HeapEntry {
    double f;
    double g;
    std::uint64_t seq;
    SearchNode* node;
};

struct HeapCmp {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g > b.g;
        return a.seq > b.seq;
    }
};

using OpenQueue = std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCmp>;

// Lazily evaluated per-state heuristic table.
class HTable {
public:
    HTable(const RoadGraph& g, const HeuristicConfig& cfg)
        : g_(g), cfg_(cfg), values_(g.n_states, kUnset) {}

    double operator()(StateId u) const {
        double& v = values_[u];
        if (std::isnan(v)) v = h_value(cfg_, g_, u);
        return v;
    }

private:
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
    const RoadGraph& g_;
    HeuristicConfig cfg_;
    mutable std::vector<double> values_;
};

class MonotonicityTracker {
public:
    void observe(double f, SearchStats& stats) {
        if (have_ && f < last_ - kMonotonicityTol) ++stats.f_monotonicity_violations;
        last_ = f;
        have_ = true;
    }

private:
    double last_ = 0.0;
    bool have_ = false;
};

inline void audit_profile(const EnergyProfile& p, double e_max, SearchStats& stats) {
    if (!(p.g_max >= p.g_min && p.e_min >= p.g_min && p.g_max >= 0.0 && p.e_min >= 0.0 &&
          p.g_min >= -e_max))
        ++stats.invariant_violations;
}

class StopWatch {
public:
    std::uint64_t elapsed_us() const {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(
                std::chrono::steady_clock::now() - t0_)
                .count());
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace detail

struct PointSearchResult {
    bool feasible = false;
    double cost_wh = std::numeric_limits<double>::infinity();
    SearchNode* goal_node = nullptr;
    std::shared_ptr<NodeArena> memory;
    SearchStats stats;
};

struct ProfileSearchResult {
    std::vector<SearchNode*> solutions;
    std::shared_ptr<void> memory;
    SearchStats stats;

    std::vector<EnergyProfile> profiles() const {
        std::vector<EnergyProfile> ps;
        ps.reserve(solutions.size());
        for (const SearchNode* n : solutions) ps.push_back(n->prof);
        return ps;
    }
    Envelope envelope(double e_max) const { return lower_envelope(profiles(), e_max); }
};

// Ordered state sequence start -> goal. Joined nodes splice the forward
// chain with the backward chain without duplicating the meeting state.
inline std::vector<StateId> reconstruct_path(const SearchNode* n) {
    if (n->joined) {
        std::vector<StateId> path = reconstruct_path(n->parent);
        const std::vector<StateId> tail = reconstruct_path(n->join_bw);
        path.insert(path.end(), tail.begin() + 1, tail.end());
        return path;
    }
    std::vector<StateId> path;
    for (const SearchNode* c = n; c != nullptr; c = c->parent) path.push_back(c->state);
    if (n->dir == Direction::Forward) std::reverse(path.begin(), path.end());
    return path;
}

namespace detail {

// Energy-optimal point-to-point search with battery clamping. With the full
// heuristic this is energy A*; with the potential-only heuristic and reduced
// cost validation it is reweighted Dijkstra. Label-correcting relaxation on
// the per-state best cost C(v), re-expansion allowed.
inline PointSearchResult point_search(const RoadGraph& g, const HeuristicConfig& cfg,
                                      StateId start, StateId goal, double e_init, double e_max,
                                      const SearchOptions& opts, bool validate_reduced) {
    if (e_init < 0.0 || e_init > e_max)
        throw std::domain_error("point search: e_init outside [0, E_max]");
    StopWatch timer;
    PointSearchResult res;
    res.memory = std::make_shared<NodeArena>();
    NodeArena& arena = *res.memory;
    HTable h(g, cfg);
    MonotonicityTracker mono;

    std::vector<double> best(g.n_states, std::numeric_limits<double>::infinity());
    OpenQueue open;
    std::uint64_t seq = 0;

    SearchNode* root = arena.make();
    root->state = start;
    root->prof = kEmptyPathProfile;
    root->f = h(start);
    best[start] = 0.0;
    open.push({root->f, 0.0, seq++, root});

    while (!open.empty()) {
        res.stats.peak_open = std::max(res.stats.peak_open, open.size());
        const HeapEntry top = open.top();
        open.pop();
        SearchNode* x = top.node;
        mono.observe(top.f, res.stats);
        if (x->prof.g_min > best[x->state]) continue;  // stale
        if (x->state == goal) {
            res.goal_node = x;
            break;
        }
        ++res.stats.expansions;
        for (std::uint32_t eid : g.out_edges(x->state)) {
            const Edge& e = g.edges[eid];
            if (validate_reduced) {
                const double rc = e.cost_wh + h(e.to) - h(e.from);
                if (rc < -kConsistencyTolWh)
                    throw InconsistentHeuristicError(
                        "dijkstra_energy: negative reduced cost on edge " + std::to_string(eid));
            }
            double gy = x->prof.g_min + e.cost_wh;
            const double fy = gy + h(e.to);
            if (gy > e_init || fy > e_init) continue;
            if (e_init - gy > e_max) gy = e_init - e_max;  // cap recuperated energy
            if (gy < best[e.to]) {
                best[e.to] = gy;
                SearchNode* y = arena.make();
                y->state = e.to;
                y->prof = EnergyProfile{gy, gy, gy};
                y->f = fy;
                y->parent = x;
                open.push({fy, gy, seq++, y});
                ++res.stats.generated;
            }
        }
    }
    res.cost_wh = best[goal];
    res.feasible = res.goal_node != nullptr && std::isfinite(res.cost_wh);
    if (!res.feasible) res.cost_wh = std::numeric_limits<double>::infinity();
    (void)opts;
    res.stats.runtime_us = timer.elapsed_us();
    return res;
}

// One expansion step shared by the unidirectional and bidirectional profile
// searches: links the profile over each adjacent edge, applies the capacity
// feasibility checks and the constant-time quick dominance check against the
// most recent expansion of the child state, and enqueues survivors.
template <typename LastOfX>
inline void expand_profile_node(const RoadGraph& g, SearchNode* x, Direction dir,
                                const HTable& h, double e_max, NodeArena& arena,
                                OpenQueue& open, std::uint64_t& seq, LastOfX last_of_x,
                                const SearchOptions& opts, SearchStats& stats) {
    const bool fw = dir == Direction::Forward;
    const auto edge_ids = fw ? g.out_edges(x->state) : g.in_edges(x->state);
    for (std::uint32_t eid : edge_ids) {
        const Edge& e = g.edges[eid];
        const StateId v = fw ? e.to : e.from;
        const EnergyProfile prof = fw ? link_forward(x->prof, e.cost_wh, e_max)
                                      : link_backward(x->prof, e.cost_wh, e_max);
        if (opts.check_invariants) audit_profile(prof, e_max, stats);
        const double hv = h(v);
        if (prof.e_min > e_max || prof.g_max > e_max) continue;
        // Heuristic-extended capacity check: max suffix (fw) / max prefix
        // (bw) plus the cost-to-go estimate.
        if (fw ? (prof.g_max + hv > e_max) : (prof.e_min + hv > e_max)) continue;
        if (const SearchNode* z = last_of_x(v); z && dominates_ordered(z->prof, prof)) continue;
        SearchNode* y = arena.make();
        y->state = v;
        y->prof = prof;
        y->f = prof.g_min + hv;
        y->parent = x;
        y->dir = dir;
        open.push({y->f, prof.g_min, seq++, y});
        ++stats.generated;
    }
}

inline ProfileSearchResult profile_search_uni(const RoadGraph& g, const HeuristicConfig& cfg,
                                              StateId start, StateId goal, double e_max,
                                              const SearchOptions& opts, Direction dir) {
    StopWatch timer;
    const bool fw = dir == Direction::Forward;
    const StateId origin = fw ? start : goal;
    const StateId terminal = fw ? goal : start;

    auto arena_ptr = std::make_shared<NodeArena>();
    NodeArena& arena = *arena_ptr;
    HTable h(g, cfg);
    MonotonicityTracker mono;

    ProfileSearchResult res;
    res.memory = arena_ptr;
    SearchStats& stats = res.stats;

    std::vector<SearchNode*> x_head(g.n_states, nullptr);
    OpenQueue open;
    std::uint64_t seq = 0;
    double f_bar = std::numeric_limits<double>::infinity();

    SearchNode* root = arena.make();
    root->state = origin;
    root->prof = kEmptyPathProfile;
    root->f = h(origin);
    root->dir = dir;
    open.push({root->f, 0.0, seq++, root});

    while (!open.empty()) {
        stats.peak_open = std::max(stats.peak_open, open.size());
        const HeapEntry top = open.top();
        open.pop();
        SearchNode* x = top.node;
        mono.observe(top.f, stats);
        if (!opts.disable_upper_bound && top.f >= f_bar - kFBarGuard) break;

        bool dominated = false;  // lazy dominance against prior expansions
        for (const SearchNode* z = x_head[x->state]; z; z = z->x_next)
            if (dominates_ordered(z->prof, x->prof)) {
                dominated = true;
                break;
            }
        if (dominated) continue;

        x->x_next = x_head[x->state];
        x_head[x->state] = x;
        ++stats.expansions;

        if (x->state == terminal) {
            f_bar = std::min(f_bar, std::max(x->prof.e_min, x->prof.g_max));
            continue;
        }
        expand_profile_node(g, x, dir, h, e_max, arena, open, seq,
                            [&](StateId v) { return x_head[v]; }, opts, stats);
    }

    for (SearchNode* n = x_head[terminal]; n; n = n->x_next) res.solutions.push_back(n);
    std::reverse(res.solutions.begin(), res.solutions.end());  // insertion order
    stats.runtime_us = timer.elapsed_us();
    return res;
}

}  // namespace detail

// Algorithm references below are to the variants described in the README:
// point A*, point Dijkstra with potential reweighting, forward/backward
// profile A*, and (parallel) bidirectional profile A*.

inline PointSearchResult astar_energy(const RoadGraph& g, const HeuristicConfig& h,
                                      StateId start, StateId goal, double e_init, double e_max,
                                      const SearchOptions& opts = {}) {
    return detail::point_search(g, h, start, goal, e_init, e_max, opts, false);
}

inline PointSearchResult dijkstra_energy(const RoadGraph& g, const HeuristicConfig& potential,
                                         StateId start, StateId goal, double e_init,
                                         double e_max, const SearchOptions& opts = {}) {
    return detail::point_search(g, potential, start, goal, e_init, e_max, opts, true);
}

inline ProfileSearchResult pr_astar_fw(const RoadGraph& g, const HeuristicConfig& h,
                                       StateId start, StateId goal, double e_max,
                                       const SearchOptions& opts = {}) {
    return detail::profile_search_uni(g, h, start, goal, e_max, opts, Direction::Forward);
}

inline ProfileSearchResult pr_astar_bw(const RoadGraph& g, const HeuristicConfig& h_bw,
                                       StateId start, StateId goal, double e_max,
                                       const SearchOptions& opts = {}) {
    return detail::profile_search_uni(g, h_bw, start, goal, e_max, opts, Direction::Backward);
}

// Interleaved bidirectional profile search. Non-joined nodes are expanded in
// their own direction and then joined with every expanded node of the
// opposite direction at the same state; joined nodes re-enter the queue with
// f = g and are collected into the non-dominated solution set.
inline ProfileSearchResult pr_bastar(const RoadGraph& g, const HeuristicConfig& h_fw,
                                     const HeuristicConfig& h_bw, StateId start, StateId goal,
                                     double e_max, const SearchOptions& opts = {}) {
    detail::StopWatch timer;
    auto arena_ptr = std::make_shared<NodeArena>();
    NodeArena& arena = *arena_ptr;
    detail::HTable hf(g, h_fw), hb(g, h_bw);
    detail::MonotonicityTracker mono;

    ProfileSearchResult res;
    res.memory = arena_ptr;
    SearchStats& stats = res.stats;

    std::vector<SearchNode*> x_fw(g.n_states, nullptr), x_bw(g.n_states, nullptr);
    detail::OpenQueue open_f, open_b;
    std::uint64_t seq = 0;
    double f_bar = std::numeric_limits<double>::infinity();
    bool tie_toggle = false;  // alternate queues on exact f ties

    const auto make_root = [&](StateId s, Direction d, double f) {
        SearchNode* n = arena.make();
        n->state = s;
        n->prof = kEmptyPathProfile;
        n->f = f;
        n->dir = d;
        return n;
    };
    SearchNode* rf = make_root(start, Direction::Forward, hf(start));
    SearchNode* rb = make_root(goal, Direction::Backward, hb(goal));
    open_f.push({rf->f, 0.0, seq++, rf});
    open_b.push({rb->f, 0.0, seq++, rb});

    detail::HeapCmp cmp;
    while (!open_f.empty() || !open_b.empty()) {
        stats.peak_open = std::max(stats.peak_open, open_f.size() + open_b.size());
        Direction d;
        if (open_f.empty()) {
            d = Direction::Backward;
        } else if (open_b.empty()) {
            d = Direction::Forward;
        } else if (open_f.top().f == open_b.top().f) {
            d = tie_toggle ? Direction::Backward : Direction::Forward;
            tie_toggle = !tie_toggle;
        } else {
            d = cmp(open_b.top(), open_f.top()) ? Direction::Forward : Direction::Backward;
        }
        const bool fw = d == Direction::Forward;
        detail::OpenQueue& open = fw ? open_f : open_b;
        const detail::HeapEntry top = open.top();
        open.pop();
        SearchNode* x = top.node;
        mono.observe(top.f, stats);
        if (!opts.disable_upper_bound && top.f >= f_bar - kFBarGuard) break;

        if (x->joined) {
            bool dominated = false;
            for (const SearchNode* s : res.solutions)
                if (dominates_ordered(s->prof, x->prof)) {
                    dominated = true;
                    break;
                }
            if (!dominated) {
                f_bar = std::min(f_bar, std::max(x->prof.e_min, x->prof.g_max));
                res.solutions.push_back(x);
            }
            continue;
        }

        std::vector<SearchNode*>& x_own = fw ? x_fw : x_bw;
        std::vector<SearchNode*>& x_opp = fw ? x_bw : x_fw;
        bool dominated = false;
        for (const SearchNode* z = x_own[x->state]; z; z = z->x_next)
            if (dominates_ordered(z->prof, x->prof)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        x->x_next = x_own[x->state];
        x_own[x->state] = x;
        ++stats.expansions;
        ++(fw ? stats.expansions_fw : stats.expansions_bw);

        detail::expand_profile_node(g, x, d, fw ? hf : hb, e_max, arena, open, seq,
                                    [&](StateId v) { return x_own[v]; }, opts, stats);

        for (SearchNode* z = x_opp[x->state]; z; z = z->x_next) {
            const EnergyProfile& fwp = fw ? x->prof : z->prof;
            const EnergyProfile& bwp = fw ? z->prof : x->prof;
            if (const auto joined = join_fw_bw(fwp, bwp, e_max)) {
                SearchNode* y = arena.make();
                y->state = x->state;
                y->prof = *joined;
                y->f = joined->g_min;  // complete path: f = g
                y->parent = fw ? x : z;
                y->join_bw = fw ? z : x;
                y->joined = true;
                y->dir = d;
                open.push({y->f, joined->g_min, seq++, y});
                ++stats.generated;
            }
        }
    }
    stats.runtime_us = timer.elapsed_us();
    return res;
}

namespace detail {

// Shared state of the two-worker parallel bidirectional search. f_bar is a
// monotonically non-increasing atomic (stale reads only delay pruning); each
// direction's expanded lists are single-writer linked lists published with
// seq_cst stores so that for any pair of opposite expansions at a state, at
// least one worker observes the other's entry.
struct ParShared {
    explicit ParShared(std::size_t n) : x_fw(n), x_bw(n) { f_bar.store(std::numeric_limits<double>::infinity()); }
    std::vector<std::atomic<SearchNode*>> x_fw, x_bw;
    std::atomic<double> f_bar;
    std::mutex sols_mutex;
    std::vector<SearchNode*> sols;

    void lower_f_bar(double v) {
        double cur = f_bar.load();
        while (v < cur && !f_bar.compare_exchange_weak(cur, v)) {
        }
    }
};

inline void par_worker(const RoadGraph& g, const HeuristicConfig& cfg, Direction d,
                       StateId origin, double e_max, const SearchOptions& opts,
                       ParShared& shared, NodeArena& arena, SearchStats& stats) {
    const bool fw = d == Direction::Forward;
    HTable h(g, cfg);
    MonotonicityTracker mono;
    OpenQueue open;
    std::uint64_t seq = 0;
    auto& x_own = fw ? shared.x_fw : shared.x_bw;
    auto& x_opp = fw ? shared.x_bw : shared.x_fw;

    SearchNode* root = arena.make();
    root->state = origin;
    root->prof = kEmptyPathProfile;
    root->f = h(origin);
    root->dir = d;
    open.push({root->f, 0.0, seq++, root});

    while (!open.empty()) {
        stats.peak_open = std::max(stats.peak_open, open.size());
        const HeapEntry top = open.top();
        if (!opts.disable_upper_bound && top.f >= shared.f_bar.load() - kFBarGuard) break;
        open.pop();
        SearchNode* x = top.node;
        mono.observe(top.f, stats);

        if (x->joined) {
            std::scoped_lock lock(shared.sols_mutex);
            bool dominated = false;
            for (const SearchNode* s : shared.sols)
                if (dominates_ordered(s->prof, x->prof)) {
                    dominated = true;
                    break;
                }
            if (!dominated) {
                shared.lower_f_bar(std::max(x->prof.e_min, x->prof.g_max));
                shared.sols.push_back(x);
            }
            continue;
        }

        bool dominated = false;
        for (const SearchNode* z = x_own[x->state].load(std::memory_order_acquire); z;
             z = z->x_next)
            if (dominates_ordered(z->prof, x->prof)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        x->x_next = x_own[x->state].load(std::memory_order_relaxed);
        x_own[x->state].store(x, std::memory_order_seq_cst);  // publish before opposite scan
        ++stats.expansions;
        ++(fw ? stats.expansions_fw : stats.expansions_bw);

        expand_profile_node(g, x, d, h, e_max, arena, open, seq,
                            [&](StateId v) { return x_own[v].load(std::memory_order_acquire); },
                            opts, stats);

        for (SearchNode* z = x_opp[x->state].load(std::memory_order_seq_cst); z; z = z->x_next) {
            const EnergyProfile& fwp = fw ? x->prof : z->prof;
            const EnergyProfile& bwp = fw ? z->prof : x->prof;
            if (const auto joined = join_fw_bw(fwp, bwp, e_max)) {
                SearchNode* y = arena.make();
                y->state = x->state;
                y->prof = *joined;
                y->f = joined->g_min;
                y->parent = fw ? x : z;
                y->join_bw = fw ? z : x;
                y->joined = true;
                y->dir = d;
                open.push({y->f, joined->g_min, seq++, y});
                ++stats.generated;
            }
        }
    }

    // Drain: any joined node still below the final bound belongs in Sols.
    while (!open.empty()) {
        const HeapEntry top = open.top();
        open.pop();
        if (top.f >= shared.f_bar.load() - kFBarGuard) break;
        SearchNode* x = top.node;
        if (!x->joined) continue;
        std::scoped_lock lock(shared.sols_mutex);
        bool dominated = false;
        for (const SearchNode* s : shared.sols)
            if (dominates_ordered(s->prof, x->prof)) {
                dominated = true;
                break;
            }
        if (!dominated) {
            shared.lower_f_bar(std::max(x->prof.e_min, x->prof.g_max));
            shared.sols.push_back(x);
        }
    }
}

}  // namespace detail

// Two-thread variant of pr_bastar: one worker per direction over a shared
// immutable graph. The returned node set may differ between runs; the
// envelope of the solution set does not.
inline ProfileSearchResult pr_bastar_par(const RoadGraph& g, const HeuristicConfig& h_fw,
                                         const HeuristicConfig& h_bw, StateId start,
                                         StateId goal, double e_max,
                                         const SearchOptions& opts = {}) {
    detail::StopWatch timer;
    struct Memory {
        NodeArena fw, bw;
    };
    auto mem = std::make_shared<Memory>();
    detail::ParShared shared(g.n_states);
    SearchStats stats_fw, stats_bw;
    std::exception_ptr err_fw, err_bw;

    std::thread worker_bw([&] {
        try {
            detail::par_worker(g, h_bw, Direction::Backward, goal, e_max, opts, shared, mem->bw,
                               stats_bw);
        } catch (...) {
            err_bw = std::current_exception();
        }
    });
    try {
        detail::par_worker(g, h_fw, Direction::Forward, start, e_max, opts, shared, mem->fw,
                           stats_fw);
    } catch (...) {
        err_fw = std::current_exception();
    }
    worker_bw.join();
    if (err_fw) std::rethrow_exception(err_fw);
    if (err_bw) std::rethrow_exception(err_bw);

    ProfileSearchResult res;
    res.memory = mem;
    res.solutions = shared.sols;
    res.stats.expansions = stats_fw.expansions + stats_bw.expansions;
    res.stats.expansions_fw = stats_fw.expansions_fw;
    res.stats.expansions_bw = stats_bw.expansions_bw;
    res.stats.generated = stats_fw.generated + stats_bw.generated;
    res.stats.peak_open = stats_fw.peak_open + stats_bw.peak_open;
    res.stats.f_monotonicity_violations =
        stats_fw.f_monotonicity_violations + stats_bw.f_monotonicity_violations;
    res.stats.invariant_violations =
        stats_fw.invariant_violations + stats_bw.invariant_violations;
    res.stats.runtime_us = timer.elapsed_us();
    return res;
}

}  // namespace evp

#endif  // EVP_SEARCH_HPP
