#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

#include "helpers.hpp"

using namespace evp;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "evp_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const auto dir = work_dir();
    const auto out = (dir / "stdout.txt").string();
    const auto err = (dir / "stderr.txt").string();
    const std::string cmd = std::string(EVP_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// Cache holding the golden four-edge chain, E_max = 5 Wh.
std::string golden_cache() {
    static std::string path;
    if (path.empty()) {
        const RoadGraph g = testutil::path_graph(testutil::golden_path_costs());
        EnergyModelParams m;
        m.battery_capacity_wh = 5.0;
        path = (work_dir() / "golden.cache").string();
        save_cache(g, m, path);
    }
    return path;
}

// Cache holding a generated 30-state integer suite graph, E_max = 50 Wh.
std::string suite_cache() {
    static std::string path;
    if (path.empty()) {
        GraphGenSpec gs = testutil::suite_graph_spec(10);
        gs.n_states = 30;
        const RoadGraph g = generate_test_graph(gs);
        EnergyModelParams m;
        // unit potential coefficient (M*g/3600 = 1 Wh/m) matches the graph's
        // height-shift construction, so reduced costs are non-negative and
        // the default potential heuristic is consistent
        m.total_mass_kg = 3600.0 / 9.8;
        m.battery_capacity_wh = 50.0;
        path = (work_dir() / "suite.cache").string();
        save_cache(g, m, path);
    }
    return path;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

void write_dimacs_fixture(const fs::path& dir) {
    write_file(dir / "f.gr",
               "p sp 2 1\n"
               "a 1 2 1000\n");
    write_file(dir / "f.co",
               "v 1 0 0\n"
               "v 2 10000 0\n");
    write_file(dir / "f.elev",
               "1 10\n"
               "2 0\n");
}

}  // namespace

TEST_CASE("cli build round-trips and reports input errors") {
    const auto dir = work_dir();
    write_dimacs_fixture(dir);
    write_file(dir / "model.json",
               R"({"alpha":[0,30,1],"beta":[0,0,1],"extra_mass_kg":100,)"
               R"("total_mass_kg":1600,"avg_efficiency_wh_100m":1.5,)"
               R"("battery_capacity_wh":500})");
    const auto cache = (dir / "f.cache").string();
    const auto r = run_cli("build --gr " + (dir / "f.gr").string() + " --co " +
                           (dir / "f.co").string() + " --elev " + (dir / "f.elev").string() +
                           " --model " + (dir / "model.json").string() + " --out " + cache);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("2 states") != std::string::npos);
    const CachedGraph c = load_cache(cache);
    CHECK(c.graph.n_states == 2);
    CHECK(c.model.battery_capacity_wh == 500.0);

    const auto missing = run_cli("build --gr " + (dir / "f.gr").string() + " --co " +
                                 (dir / "f.co").string() + " --elev " +
                                 (dir / "nope.elev").string() + " --out " + cache);
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("nope.elev") != std::string::npos);
}

TEST_CASE("cli query handles trivial, feasible and infeasible cases") {
    const std::string cache = golden_cache();
    const auto same =
        run_cli("query --graph " + cache + " --start 0 --goal 0 --e-init 3 --path --json");
    REQUIRE(same.exit_code == 0);
    const json js = json::parse(same.out);
    CHECK(js["cost_wh"] == 0.0);
    CHECK(js["path"] == json::array({0}));

    const auto feas = run_cli("query --graph " + cache +
                              " --start 0 --goal 4 --e-init 3 --heuristic zero --json");
    REQUIRE(feas.exit_code == 0);
    CHECK(json::parse(feas.out)["cost_wh"] == 1.0);

    const auto infeas = run_cli("query --graph " + cache +
                                " --start 0 --goal 4 --e-init 1 --heuristic zero");
    CHECK(infeas.exit_code == 3);
    CHECK(infeas.out.find("infeasible") != std::string::npos);

    const auto bad = run_cli("query --graph " + cache + " --start 0 --goal 9 --e-init 3");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("out of range") != std::string::npos);
}

TEST_CASE("cli profile prints the golden envelope") {
    const std::string cache = golden_cache();
    for (const std::string algo : {"pr-fw", "pr-bw", "pr-ba", "pr-ba-par"}) {
        const auto r = run_cli("profile --graph " + cache +
                               " --start 0 --goal 4 --heuristic zero --algo " + algo +
                               " --json");
        REQUIRE(r.exit_code == 0);
        const json js = json::parse(r.out);
        REQUIRE(js["segments"].size() == 2);
        CHECK(js["segments"][0]["e_from"] == 2.0);
        CHECK(js["segments"][0]["cost"] == 1.0);
        CHECK(js["segments"][0]["slope"] == 0);
        CHECK(js["segments"][1]["e_from"] == 4.0);
        CHECK(js["segments"][1]["slope"] == 1);
    }

    // point query at e_init = 3 agrees with the envelope
    const auto pt = run_cli("query --graph " + cache +
                            " --start 0 --goal 4 --e-init 3 --heuristic zero --json");
    CHECK(json::parse(pt.out)["cost_wh"] == 1.0);

    // a disconnected pair is everywhere infeasible
    const auto inf = run_cli("profile --graph " + cache +
                             " --start 4 --goal 0 --heuristic zero --algo pr-fw");
    CHECK(inf.exit_code == 3);
}

TEST_CASE("cli gen is deterministic and honors the range filter") {
    const std::string cache = suite_cache();
    const auto dir = work_dir();
    const auto q1 = (dir / "q1.txt").string();
    const auto q2 = (dir / "q2.txt").string();
    REQUIRE(run_cli("gen --graph " + cache + " --n 5 --seed 9 --out " + q1).exit_code == 0);
    REQUIRE(run_cli("gen --graph " + cache + " --n 5 --seed 9 --out " + q2).exit_code == 0);
    CHECK(slurp(q1) == slurp(q2));
    REQUIRE(run_cli("gen --graph " + cache + " --n 1 --seed 1 --out " + q2).exit_code == 0);
    CHECK_FALSE(slurp(q2).empty());

    // filtered generation: every emitted query's optimal cost is in range
    const auto qf = (dir / "qf.txt").string();
    REQUIRE(run_cli("gen --graph " + cache + " --n 5 --seed 4 --range 0-20 --out " + qf)
                .exit_code == 0);
    const CachedGraph cg = load_cache(cache);
    std::istringstream in(slurp(qf));
    std::size_t s, t, count = 0;
    while (in >> s >> t) {
        ++count;
        const auto res = astar_energy(cg.graph, make_zero_heuristic(static_cast<StateId>(t)),
                                      static_cast<StateId>(s), static_cast<StateId>(t), 50.0,
                                      50.0);
        REQUIRE(res.feasible);
        CHECK(res.cost_wh >= 0.0);
        CHECK(res.cost_wh < 20000.0);
    }
    CHECK(count > 0);
}

TEST_CASE("cli bench emits the fixed CSV contract") {
    const std::string cache = suite_cache();
    const auto dir = work_dir();
    const auto qfile = (dir / "bench_q.txt").string();
    REQUIRE(run_cli("gen --graph " + cache + " --n 3 --seed 2 --out " + qfile).exit_code == 0);

    const auto one = run_cli("bench --graph " + cache + " --queries " + qfile +
                             " --algo astar --repeats 3 --no-timing");
    REQUIRE(one.exit_code == 0);
    std::istringstream lines(one.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "query,algo,runtime_us,expansions,generated,solutions,cost");
    std::string row;
    std::getline(lines, row);
    CHECK(row.rfind("0,astar,0,", 0) == 0);  // timings zeroed

    // all six algorithms agree on the cost column per query
    const auto all = run_cli("bench --graph " + cache + " --queries " + qfile + " --no-timing");
    REQUIRE(all.exit_code == 0);
    std::istringstream all_lines(all.out);
    std::getline(all_lines, header);
    std::map<std::string, std::set<std::string>> costs_by_query;
    while (std::getline(all_lines, row)) {
        if (row.empty() || row[0] == '#') continue;
        const auto first = row.find(',');
        const auto last = row.rfind(',');
        costs_by_query[row.substr(0, first)].insert(row.substr(last + 1));
    }
    REQUIRE(costs_by_query.size() == 3);
    for (const auto& [q, costs] : costs_by_query) CHECK(costs.size() == 1);

    // byte stability for the sequential algorithms (the parallel variant's
    // work counters depend on thread interleaving even though its results
    // do not)
    const std::string det = " --algo dijkstra --algo astar --algo pr-fw --algo pr-bw --algo pr-ba";
    const auto once = run_cli("bench --graph " + cache + " --queries " + qfile + " --no-timing" + det);
    const auto again = run_cli("bench --graph " + cache + " --queries " + qfile + " --no-timing" + det);
    REQUIRE(once.exit_code == 0);
    CHECK(again.out == once.out);
}

TEST_CASE("cli verify passes on a healthy build") {
    const auto r = run_cli("verify --seeds 8 --quiet");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("OK") != std::string::npos);
}

TEST_CASE("cli rejects unknown subcommand arguments") {
    CHECK(run_cli("query --graph /nonexistent --start 0 --goal 1 --e-init 1").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("bench --graph x").exit_code == 2);  // missing required --queries
}
