// ev-route: energy-optimal routing CLI.
//
// Subcommands: build (DIMACS triple -> graph cache), query (point-to-point),
// profile (all-initial-energy), gen (random query files), bench (CSV
// harness), verify (oracle-equivalence suite).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evp/dimacs.hpp"
#include "evp/graph.hpp"
#include "evp/heuristic.hpp"
#include "evp/oracle.hpp"
#include "evp/profile.hpp"
#include "evp/search.hpp"

namespace {

using nlohmann::json;
using namespace evp;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

EnergyModelParams model_from_json(const json& j) {
    EnergyModelParams m;
    if (j.contains("alpha")) for (int i = 0; i < 3; ++i) m.alpha[i] = j["alpha"][i];
    if (j.contains("beta")) for (int i = 0; i < 3; ++i) m.beta[i] = j["beta"][i];
    m.extra_mass_kg = j.value("extra_mass_kg", 0.0);
    m.total_mass_kg = j.value("total_mass_kg", 0.0);
    m.gravity = j.value("gravity", 9.8);
    m.avg_efficiency_wh_100m = j.value("avg_efficiency_wh_100m", 0.0);
    m.battery_capacity_wh = j.value("battery_capacity_wh", 0.0);
    return m;
}

EnergyModelParams load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model config: " + path);
    json j;
    in >> j;
    return model_from_json(j);
}

HeuristicConfig build_heuristic(const std::string& variant, const CachedGraph& cg,
                                StateId target, Direction dir,
                                const std::optional<double>& lambda) {
    HeuristicConfig cfg;
    if (variant == "zero") {
        cfg = make_zero_heuristic(target, dir);
    } else if (variant == "potential") {
        cfg = make_potential_heuristic(cg.model, target, dir);
    } else if (variant == "dynamics") {
        cfg = make_dynamics_heuristic(cg.model, {DrivingPattern{cg.model.alpha, cg.model.beta}},
                                      target, dir);
    } else {
        throw std::runtime_error("unknown heuristic variant: " + variant);
    }
    if (cfg.variant != HeuristicVariant::Zero) {
        if (lambda)
            cfg.lambda = *lambda;
        else if (cfg.efficiency_wh_per_100m > 0.0)
            cfg.lambda = calibrate_lambda(cg.graph, cfg);
    }
    return cfg;
}

struct QueryLine {
    StateId start;
    StateId goal;
};

std::vector<QueryLine> load_queries(const std::string& path, std::size_t n_states) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open query file: " + path);
    std::vector<QueryLine> qs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::size_t s, t;
        if (!(ss >> s >> t)) throw ParseError(path, lineno, "malformed query line");
        if (s >= n_states || t >= n_states)
            throw ParseError(path, lineno, "state id out of range");
        qs.push_back({static_cast<StateId>(s), static_cast<StateId>(t)});
    }
    return qs;
}

void check_state(const CachedGraph& cg, std::size_t id, const char* what) {
    if (id >= cg.graph.n_states)
        throw std::runtime_error(std::string(what) + " state id " + std::to_string(id) +
                                 " out of range (graph has " +
                                 std::to_string(cg.graph.n_states) + " states)");
}

int cmd_build(const std::string& gr, const std::string& co, const std::string& elev,
              const std::string& model_cfg, const std::string& out) {
    EnergyModelParams model;
    if (!model_cfg.empty()) model = load_model_config(model_cfg);
    RoadGraph g = load_graph(gr, co, elev, model);
    save_cache(g, model, out);
    std::cout << "cached " << g.n_states << " states, " << g.edges.size() << " edges to "
              << out << "\n";
    return kExitOk;
}

struct AlgoChoice {
    std::string name;
    bool is_point;
};

const std::vector<AlgoChoice> kAllAlgos = {
    {"dijkstra", true}, {"astar", true},     {"pr-fw", false},
    {"pr-bw", false},   {"pr-ba", false},    {"pr-ba-par", false},
};

bool known_algo(const std::string& a) {
    return std::any_of(kAllAlgos.begin(), kAllAlgos.end(),
                       [&](const AlgoChoice& c) { return c.name == a; });
}

PointSearchResult run_point(const std::string& algo, const CachedGraph& cg,
                            const std::string& hvariant, std::optional<double> lambda,
                            StateId s, StateId t, double e_init, double e_max,
                            const SearchOptions& opts = {}) {
    if (algo == "dijkstra") {
        // Dijkstra runs on reduced costs: potential-only term, no distance term.
        HeuristicConfig pot = build_heuristic(
            hvariant == "zero" ? "zero" : hvariant, cg, t, Direction::Forward, lambda);
        pot.lambda = 0.0;
        return dijkstra_energy(cg.graph, pot, s, t, e_init, e_max, opts);
    }
    HeuristicConfig h = build_heuristic(hvariant, cg, t, Direction::Forward, lambda);
    return astar_energy(cg.graph, h, s, t, e_init, e_max, opts);
}

ProfileSearchResult run_profile(const std::string& algo, const CachedGraph& cg,
                                const std::string& hvariant, std::optional<double> lambda,
                                StateId s, StateId t, double e_max,
                                const SearchOptions& opts = {}) {
    HeuristicConfig hf = build_heuristic(hvariant, cg, t, Direction::Forward, lambda);
    HeuristicConfig hb = build_heuristic(hvariant, cg, s, Direction::Backward, lambda);
    if (algo == "pr-fw") return pr_astar_fw(cg.graph, hf, s, t, e_max, opts);
    if (algo == "pr-bw") return pr_astar_bw(cg.graph, hb, s, t, e_max, opts);
    if (algo == "pr-ba") return pr_bastar(cg.graph, hf, hb, s, t, e_max, opts);
    return pr_bastar_par(cg.graph, hf, hb, s, t, e_max, opts);
}

int cmd_query(const std::string& graph, std::size_t start, std::size_t goal, double e_init,
              std::optional<double> e_max_opt, const std::string& algo,
              const std::string& hvariant, std::optional<double> lambda, bool want_path,
              bool as_json) {
    CachedGraph cg = load_cache(graph);
    check_state(cg, start, "start");
    check_state(cg, goal, "goal");
    const double e_max = e_max_opt ? *e_max_opt : cg.model.battery_capacity_wh;
    if (e_init < 0.0 || e_init > e_max)
        throw std::runtime_error("--e-init must lie in [0, E_max]");
    const auto res = run_point(algo, cg, hvariant, lambda, static_cast<StateId>(start),
                               static_cast<StateId>(goal), e_init, e_max);
    json out;
    out["feasible"] = res.feasible;
    out["algo"] = algo;
    out["expansions"] = res.stats.expansions;
    if (res.feasible) {
        out["cost_wh"] = res.cost_wh;
        if (want_path) out["path"] = reconstruct_path(res.goal_node);
    }
    if (as_json) {
        std::cout << out.dump() << "\n";
    } else if (res.feasible) {
        std::cout << "cost " << detail::fmt_double(res.cost_wh) << " Wh\n";
        if (want_path) {
            std::cout << "path";
            for (StateId v : reconstruct_path(res.goal_node)) std::cout << ' ' << v;
            std::cout << "\n";
        }
    } else {
        std::cout << "infeasible\n";
    }
    return res.feasible ? kExitOk : kExitInfeasible;
}

int cmd_profile(const std::string& graph, std::size_t start, std::size_t goal,
                std::optional<double> e_max_opt, const std::string& algo,
                const std::string& hvariant, std::optional<double> lambda, bool as_json) {
    CachedGraph cg = load_cache(graph);
    check_state(cg, start, "start");
    check_state(cg, goal, "goal");
    const double e_max = e_max_opt ? *e_max_opt : cg.model.battery_capacity_wh;
    const auto res = run_profile(algo, cg, hvariant, lambda, static_cast<StateId>(start),
                                 static_cast<StateId>(goal), e_max);
    const Envelope env = res.envelope(e_max);
    json out;
    out["algo"] = algo;
    out["feasible"] = !env.empty();
    out["expansions"] = res.stats.expansions;
    out["profiles"] = json::array();
    for (const EnergyProfile& p : res.profiles())
        out["profiles"].push_back({{"e_min", p.e_min}, {"g_min", p.g_min}, {"g_max", p.g_max}});
    out["segments"] = json::array();
    for (const EnvelopeSegment& s : env.segments)
        out["segments"].push_back({{"e_from", s.e_from}, {"cost", s.cost}, {"slope", s.slope}});
    if (as_json) {
        std::cout << out.dump() << "\n";
        return env.empty() ? kExitInfeasible : kExitOk;
    }
    if (env.empty()) {
        std::cout << "infeasible at every initial energy\n";
        return kExitInfeasible;
    }
    std::cout << "infeasible below " << detail::fmt_double(env.segments.front().e_from) << "\n";
    for (const EnvelopeSegment& s : env.segments)
        std::cout << "from " << detail::fmt_double(s.e_from) << ": cost "
                  << detail::fmt_double(s.cost) << (s.slope ? " + (e - e_from)" : " (flat)")
                  << "\n";
    std::cout << res.solutions.size() << " non-dominated profile(s)\n";
    return kExitOk;
}

int cmd_gen(const std::string& graph, std::size_t n, std::uint64_t seed,
            const std::string& range, std::optional<double> e_max_opt,
            const std::string& out_path) {
    CachedGraph cg = load_cache(graph);
    if (n == 0) throw std::runtime_error("--n must be > 0");
    const double e_max = e_max_opt ? *e_max_opt : cg.model.battery_capacity_wh;
    double lo_kwh = -1.0, hi_kwh = -1.0;
    const bool filtered = !range.empty();
    if (filtered) {
        if (std::sscanf(range.c_str(), "%lf-%lf", &lo_kwh, &hi_kwh) != 2 || hi_kwh < lo_kwh)
            throw std::runtime_error("--range must look like LO-HI (kWh)");
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);

    detail::SplitRng rng(seed);
    std::size_t emitted = 0, attempts = 0;
    const std::size_t budget = 1000 * n + 100;
    HeuristicConfig zero = make_zero_heuristic(0);
    while (emitted < n && attempts++ < budget) {
        const auto s = static_cast<StateId>(rng.next_below(cg.graph.n_states));
        const auto t = static_cast<StateId>(rng.next_below(cg.graph.n_states));
        if (filtered) {
            zero.target = t;
            const auto r = astar_energy(cg.graph, zero, s, t, e_max, e_max);
            if (!r.feasible) continue;
            const double kwh = r.cost_wh / 1000.0;
            if (kwh < lo_kwh || kwh >= hi_kwh) continue;
        }
        out << s << ' ' << t << "\n";
        ++emitted;
    }
    if (emitted < n)
        std::cerr << "warning: emitted only " << emitted << "/" << n
                  << " queries within the range filter\n";
    return kExitOk;
}

int cmd_bench(const std::string& graph, const std::string& queries_path,
              std::vector<std::string> algos, int repeats, std::optional<double> e_max_opt,
              const std::string& hvariant, std::optional<double> lambda, bool no_timing,
              bool exp_diff, const std::string& out_path) {
    CachedGraph cg = load_cache(graph);
    if (repeats < 1) throw std::runtime_error("--repeats must be >= 1");
    const double e_max = e_max_opt ? *e_max_opt : cg.model.battery_capacity_wh;
    if (algos.empty())
        for (const auto& a : kAllAlgos) algos.push_back(a.name);
    for (const auto& a : algos)
        if (!known_algo(a)) throw std::runtime_error("unknown algorithm: " + a);
    const auto queries = load_queries(queries_path, cg.graph.n_states);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write file: " + out_path);
        out = &file;
    }

    struct Row {
        std::size_t query;
        std::string algo;
        std::uint64_t runtime_us;
        std::uint64_t expansions;
        std::uint64_t generated;
        std::size_t solutions;
        std::optional<double> cost;  // at e_init = E_max
    };
    std::vector<Row> rows;
    bool disagreement = false;

    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        const auto [s, t] = queries[qi];
        std::optional<bool> agreed_feasible;
        for (const std::string& algo : algos) {
            const bool point =
                std::find_if(kAllAlgos.begin(), kAllAlgos.end(), [&](const AlgoChoice& c) {
                    return c.name == algo;
                })->is_point;
            std::vector<std::uint64_t> times;
            Row row{qi, algo, 0, 0, 0, 0, std::nullopt};
            for (int r = 0; r < repeats; ++r) {
                if (point) {
                    const auto res = run_point(algo, cg, hvariant, lambda, s, t, e_max, e_max);
                    times.push_back(res.stats.runtime_us);
                    row.expansions = res.stats.expansions;
                    row.generated = res.stats.generated;
                    row.solutions = res.feasible ? 1 : 0;
                    row.cost = res.feasible ? std::optional(res.cost_wh) : std::nullopt;
                } else {
                    const auto res = run_profile(algo, cg, hvariant, lambda, s, t, e_max);
                    times.push_back(res.stats.runtime_us);
                    row.expansions = res.stats.expansions;
                    row.generated = res.stats.generated;
                    row.solutions = res.solutions.size();
                    const auto v = res.envelope(e_max).value_at(e_max);
                    row.cost = v ? std::optional(*v) : std::nullopt;
                }
            }
            std::sort(times.begin(), times.end());
            row.runtime_us = times[times.size() / 2];  // median of repeats
            const bool feasible = row.cost.has_value();
            if (!agreed_feasible) {
                agreed_feasible = feasible;
            } else if (*agreed_feasible != feasible) {
                disagreement = true;
                std::cerr << "feasibility disagreement on query " << qi << " (" << algo
                          << ")\n";
            }
            rows.push_back(row);
        }
    }

    *out << "query,algo,runtime_us,expansions,generated,solutions,cost";
    if (exp_diff) *out << ",exp_diff_vs_astar";
    *out << "\n";
    for (const Row& r : rows) {
        *out << r.query << ',' << r.algo << ',' << (no_timing ? 0 : r.runtime_us) << ','
             << r.expansions << ',' << r.generated << ',' << r.solutions << ','
             << (r.cost ? detail::fmt_double(*r.cost) : "inf");
        if (exp_diff) {
            std::int64_t diff = 0;
            for (const Row& a : rows)
                if (a.query == r.query && a.algo == "astar")
                    diff = static_cast<std::int64_t>(r.expansions) -
                           static_cast<std::int64_t>(a.expansions);
            *out << ',' << diff;
        }
        *out << "\n";
    }
    // Summary block as CSV comments: runtime spread, mean expansions and
    // speedup vs dijkstra per algorithm, split by feasibility.
    for (const std::string& algo : algos) {
        std::uint64_t tmin = ~0ull, tmax = 0, tsum = 0, esum = 0, cnt = 0, feas = 0;
        for (const Row& r : rows) {
            if (r.algo != algo) continue;
            tmin = std::min(tmin, r.runtime_us);
            tmax = std::max(tmax, r.runtime_us);
            tsum += r.runtime_us;
            esum += r.expansions;
            ++cnt;
            if (r.cost) ++feas;
        }
        if (cnt == 0) continue;
        double eta = 0.0;
        std::uint64_t dsum = 0, dcnt = 0;
        for (const Row& r : rows)
            if (r.algo == "dijkstra") { dsum += r.runtime_us; ++dcnt; }
        if (dcnt > 0 && tsum > 0)
            eta = (static_cast<double>(dsum) / static_cast<double>(dcnt)) /
                  (static_cast<double>(tsum) / static_cast<double>(cnt));
        *out << "# " << algo << " runtime_us min/avg/max "
             << (no_timing ? 0 : tmin) << '/'
             << (no_timing ? 0 : tsum / cnt) << '/' << (no_timing ? 0 : tmax)
             << " avg_expansions " << esum / cnt << " eta "
             << (no_timing ? std::string("0") : detail::fmt_double(eta)) << " feasible "
             << feas << '/' << cnt << "\n";
    }
    return disagreement ? kExitVerifyFail : kExitOk;
}

int cmd_verify(std::size_t n_seeds, std::uint64_t seed0, bool quiet) {
    std::size_t failures = 0;
    std::uint64_t first_fail = 0;
    for (std::uint64_t seed = seed0; seed < seed0 + n_seeds; ++seed) {
        GraphGenSpec gs;
        gs.seed = seed;
        gs.n_states = 20 + seed % 41;
        gs.w_max = 10.0;
        gs.h_lo = 0.0;
        gs.h_hi = 30.0;
        gs.integer_costs = true;
        const RoadGraph g = generate_test_graph(gs);
        const int e_max_choices[3] = {20, 50, 100};
        const int e_max = e_max_choices[seed % 3];

        detail::SplitRng rng(seed * 977 + 13);
        bool seed_ok = true;
        for (int q = 0; q < 3 && seed_ok; ++q) {
            const auto s = static_cast<StateId>(rng.next_below(gs.n_states));
            const auto t = static_cast<StateId>(rng.next_below(gs.n_states));
            const SocGridResult oracle = soc_dp_oracle(g, s, t, e_max);

            HeuristicConfig hf;
            hf.variant = HeuristicVariant::Potential;
            hf.direction = Direction::Forward;
            hf.target = t;
            hf.potential_coeff_wh_per_m = 1.0;  // matches the H-shift construction
            HeuristicConfig hb = hf;
            hb.direction = Direction::Backward;
            hb.target = s;

            const auto check = [&](const ProfileSearchResult& r, const char* name) {
                const auto diff = compare_envelopes(oracle, r.envelope(e_max));
                if (!diff.pass()) {
                    seed_ok = false;
                    if (!quiet)
                        std::cerr << "seed " << seed << " " << name << ": " << diff.to_text()
                                  << "\n";
                }
            };
            check(pr_astar_fw(g, hf, s, t, e_max), "pr-fw");
            check(pr_astar_bw(g, hb, s, t, e_max), "pr-bw");
            check(pr_bastar(g, hf, hb, s, t, e_max), "pr-ba");
            check(pr_bastar_par(g, hf, hb, s, t, e_max), "pr-ba-par");
            for (int e = 0; e <= e_max; ++e) {
                const auto pa = astar_energy(g, hf, s, t, e, e_max);
                const auto pd = dijkstra_energy(g, hf, s, t, e, e_max);
                const bool want = oracle.feasible(e);
                const double want_cost = want ? *oracle.cost[e] : 0.0;
                if (pa.feasible != want || (want && pa.cost_wh != want_cost) ||
                    pd.feasible != want || (want && pd.cost_wh != want_cost)) {
                    seed_ok = false;
                    if (!quiet)
                        std::cerr << "seed " << seed << " point query mismatch at e_init=" << e
                                  << "\n";
                    break;
                }
            }
        }
        if (!seed_ok) {
            if (failures == 0) first_fail = seed;
            ++failures;
        }
    }
    if (failures == 0) {
        std::cout << "verify: " << n_seeds << " seeds OK\n";
        return kExitOk;
    }
    std::cout << "verify: " << failures << "/" << n_seeds << " seeds FAILED (first: seed "
              << first_fail << ")\n";
    return kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-optimal EV routing with battery-capacity clamping"};
    app.require_subcommand(1);

    std::string gr, co, elev, model_cfg, out, graph, queries_path, algo = "astar",
                hvariant = "potential", range;
    std::size_t start = 0, goal = 0, n = 0, n_seeds = 100;
    double e_init = 0.0;
    std::optional<double> e_max_opt, lambda;
    std::uint64_t seed = 0;
    int repeats = 1;
    bool want_path = false, as_json = false, no_timing = false, exp_diff = false,
         quiet = false;
    std::vector<std::string> algos;

    auto* b = app.add_subcommand("build", "Build an enriched-graph cache from DIMACS files");
    b->add_option("--gr", gr, "DIMACS .gr distance graph")->required();
    b->add_option("--co", co, "DIMACS .co coordinate file")->required();
    b->add_option("--elev", elev, "elevation file (id height per line)")->required();
    b->add_option("--model", model_cfg, "energy model JSON config");
    b->add_option("--out", out, "cache output path")->required();

    auto* q = app.add_subcommand("query", "Point-to-point energy-optimal query");
    q->add_option("--graph", graph, "graph cache")->required();
    q->add_option("--start", start)->required();
    q->add_option("--goal", goal)->required();
    q->add_option("--e-init", e_init, "initial charge, Wh")->required();
    q->add_option("--e-max", e_max_opt, "battery capacity override, Wh");
    q->add_option("--algo", algo, "dijkstra | astar");
    q->add_option("--heuristic", hvariant, "potential | dynamics | zero");
    q->add_option("--lambda", lambda, "distance-term calibration override");
    q->add_flag("--path", want_path, "print the optimal path");
    q->add_flag("--json", as_json, "JSON output");

    auto* p = app.add_subcommand("profile", "All-initial-energy profile query");
    p->add_option("--graph", graph)->required();
    p->add_option("--start", start)->required();
    p->add_option("--goal", goal)->required();
    p->add_option("--e-max", e_max_opt);
    p->add_option("--algo", algo, "pr-fw | pr-bw | pr-ba | pr-ba-par");
    p->add_option("--heuristic", hvariant);
    p->add_option("--lambda", lambda);
    p->add_flag("--json", as_json);

    auto* gn = app.add_subcommand("gen", "Generate a random query file");
    gn->add_option("--graph", graph)->required();
    gn->add_option("--n", n, "number of queries")->required();
    gn->add_option("--seed", seed);
    gn->add_option("--range", range, "keep only optimal costs in LO-HI kWh");
    gn->add_option("--e-max", e_max_opt);
    gn->add_option("--out", out)->required();

    auto* bn = app.add_subcommand("bench", "Benchmark algorithms over a query file");
    bn->add_option("--graph", graph)->required();
    bn->add_option("--queries", queries_path)->required();
    bn->add_option("--algo", algos, "subset of algorithms (default: all)");
    bn->add_option("--repeats", repeats, "runs per query, median reported");
    bn->add_option("--e-max", e_max_opt);
    bn->add_option("--heuristic", hvariant);
    bn->add_option("--lambda", lambda);
    bn->add_flag("--no-timing", no_timing, "zero timings for byte-stable output");
    bn->add_flag("--exp-diff", exp_diff, "append expansion difference vs astar");
    bn->add_option("--out", out, "CSV path (default: stdout)");

    auto* v = app.add_subcommand("verify", "Run the oracle-equivalence suite");
    v->add_option("--seeds", n_seeds, "number of generated instances");
    v->add_option("--seed", seed, "first seed");
    v->add_flag("--quiet", quiet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (b->parsed()) return cmd_build(gr, co, elev, model_cfg, out);
        if (q->parsed()) {
            if (algo != "dijkstra" && algo != "astar")
                throw std::runtime_error("query supports --algo dijkstra|astar");
            return cmd_query(graph, start, goal, e_init, e_max_opt, algo, hvariant, lambda,
                             want_path, as_json);
        }
        if (p->parsed()) {
            if (algo == "astar") algo = "pr-fw";  // subcommand default
            if (algo != "pr-fw" && algo != "pr-bw" && algo != "pr-ba" && algo != "pr-ba-par")
                throw std::runtime_error("profile supports --algo pr-fw|pr-bw|pr-ba|pr-ba-par");
            return cmd_profile(graph, start, goal, e_max_opt, algo, hvariant, lambda, as_json);
        }
        if (gn->parsed()) return cmd_gen(graph, n, seed, range, e_max_opt, out);
        if (bn->parsed())
            return cmd_bench(graph, queries_path, algos, repeats, e_max_opt, hvariant, lambda,
                             no_timing, exp_diff, out);
        if (v->parsed()) return cmd_verify(n_seeds, seed, quiet);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
