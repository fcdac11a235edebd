#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using namespace evp;

namespace {

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "evp_graph_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

EnergyModelParams tiny_model() {
    EnergyModelParams m;
    m.alpha = {0.0, 50.0, 1.0};  // slope-linear mass term, small rolling term
    m.beta = {0.0, 0.0, 0.5};
    m.extra_mass_kg = 100.0;
    m.total_mass_kg = 1600.0;
    m.avg_efficiency_wh_100m = 1.5;
    m.battery_capacity_wh = 50000.0;
    return m;
}

// 3-state triangle with one downhill edge; lengths in meters.
void write_tiny_fixture(const std::filesystem::path& dir) {
    write_file(dir / "tiny.gr",
               "c tiny test graph\n"
               "p sp 3 3\n"
               "a 1 2 1000\n"
               "a 2 3 1000\n"
               "a 3 1 2000\n");
    write_file(dir / "tiny.co",
               "c coordinates\n"
               "v 1 -73000000 40000000\n"
               "v 2 -73010000 40000000\n"
               "v 3 -73020000 40000000\n");
    write_file(dir / "tiny.elev",
               "1 100\n"
               "2 150\n"
               "3 100\n");
}

}  // namespace

TEST_CASE("compute_edge_energy evaluates the slope polynomial") {
    const EnergyModelParams m = tiny_model();
    // flat: (m*a0 + b0) per 100 m
    CHECK(compute_edge_energy(m, 0.0, 1.0) == 100.0 * 1.0 + 0.5);
    // downhill recuperates
    CHECK(compute_edge_energy(m, -0.05, 10.0) < 0.0);
    // steeper uphill costs more
    CHECK(compute_edge_energy(m, 0.10, 10.0) > compute_edge_energy(m, 0.05, 10.0));
    // zero length costs nothing
    CHECK(compute_edge_energy(m, 0.3, 0.0) == 0.0);
}

TEST_CASE("adjacency lists cover both directions") {
    RoadGraph g;
    g.n_states = 3;
    g.heights.assign(3, 0.0);
    g.coords.assign(3, LatLon{});
    g.edges = {{0, 1, 1.0, 0.0}, {1, 2, 2.0, 0.0}, {0, 2, 3.0, 0.0}};
    g.build_adjacency();
    REQUIRE(g.out_edges(0).size() == 2);
    CHECK(g.out_edges(1).size() == 1);
    CHECK(g.out_edges(2).empty());
    CHECK(g.in_edges(0).empty());
    CHECK(g.in_edges(1).size() == 1);
    CHECK(g.in_edges(2).size() == 2);
    CHECK(g.edges[g.in_edges(1)[0]].from == 0);

    RoadGraph bad = g;
    bad.edges.push_back({0, 7, 1.0, 0.0});
    CHECK_THROWS_AS(bad.build_adjacency(), std::invalid_argument);
}

TEST_CASE("generated graphs are deterministic and negative-cycle free") {
    GraphGenSpec gs;
    gs.seed = 42;
    gs.n_states = 50;
    gs.w_max = 20.0;
    gs.h_lo = 0.0;
    gs.h_hi = 50.0;
    const RoadGraph a = generate_test_graph(gs);
    const RoadGraph b = generate_test_graph(gs);
    REQUIRE(a.edges.size() == b.edges.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        CHECK(a.edges[i].from == b.edges[i].from);
        CHECK(a.edges[i].to == b.edges[i].to);
        CHECK(a.edges[i].cost_wh == b.edges[i].cost_wh);
    }
    CHECK(validate_no_negative_cycle(a));

    GraphGenSpec zero;
    zero.n_states = 0;
    CHECK_THROWS_AS(generate_test_graph(zero), std::invalid_argument);
}

TEST_CASE("generated integer graphs have integral costs") {
    const RoadGraph g = generate_test_graph(testutil::suite_graph_spec(7));
    for (const Edge& e : g.edges) CHECK(e.cost_wh == std::nearbyint(e.cost_wh));
}

TEST_CASE("negative cycle detection flags a seeded cycle") {
    RoadGraph g;
    g.n_states = 3;
    g.heights.assign(3, 0.0);
    g.coords.assign(3, LatLon{});
    g.edges = {{0, 1, -1.0, 0.0}, {1, 2, -1.0, 0.0}, {2, 0, 1.0, 0.0}};
    g.build_adjacency();
    CHECK_FALSE(validate_no_negative_cycle(g));
    g.edges[2].cost_wh = 3.0;
    CHECK(validate_no_negative_cycle(g));
}

TEST_CASE("DIMACS triple loads with model-derived edge energies") {
    const auto dir = temp_dir();
    write_tiny_fixture(dir);
    const EnergyModelParams m = tiny_model();
    const RoadGraph g = load_graph((dir / "tiny.gr").string(), (dir / "tiny.co").string(),
                                   (dir / "tiny.elev").string(), m);
    REQUIRE(g.n_states == 3);
    REQUIRE(g.edges.size() == 3);
    CHECK(g.heights[1] == 150.0);
    CHECK(g.coords[0].lat == 40.0);
    CHECK(g.coords[0].lon == -73.0);
    // edge 0: 1000 m climbing 50 m -> slope 0.05
    const double s = 0.05;
    CHECK_THAT(g.edges[0].cost_wh,
               Catch::Matchers::WithinRel(compute_edge_energy(m, s, 10.0), 1e-12));
    CHECK(g.edges[0].cost_wh > 0.0);
    CHECK(g.edges[1].cost_wh < 0.0);  // downhill leg recuperates
}

TEST_CASE("DIMACS loader rejects malformed and inconsistent input") {
    const auto dir = temp_dir();
    write_tiny_fixture(dir);
    const EnergyModelParams m = tiny_model();
    CHECK_THROWS_WITH(load_graph((dir / "absent.gr").string(), (dir / "tiny.co").string(),
                                 (dir / "tiny.elev").string(), m),
                      Catch::Matchers::ContainsSubstring("absent.gr"));

    write_file(dir / "bad_header.gr", "p sp x y\n");
    CHECK_THROWS_AS(load_graph((dir / "bad_header.gr").string(), (dir / "tiny.co").string(),
                               (dir / "tiny.elev").string(), m),
                    ParseError);

    write_file(dir / "short.gr", "p sp 3 5\na 1 2 1000\n");
    CHECK_THROWS_AS(load_graph((dir / "short.gr").string(), (dir / "tiny.co").string(),
                               (dir / "tiny.elev").string(), m),
                    ConsistencyError);

    write_file(dir / "short.elev", "1 100\n2 150\n");
    CHECK_THROWS_AS(load_graph((dir / "tiny.gr").string(), (dir / "tiny.co").string(),
                               (dir / "short.elev").string(), m),
                    ConsistencyError);

    write_file(dir / "range.gr", "p sp 3 1\na 1 9 1000\n");
    CHECK_THROWS_AS(load_graph((dir / "range.gr").string(), (dir / "tiny.co").string(),
                               (dir / "tiny.elev").string(), m),
                    ParseError);
}

TEST_CASE("graph cache round-trips bit-exactly") {
    const auto dir = temp_dir();
    write_tiny_fixture(dir);
    const EnergyModelParams m = tiny_model();
    const RoadGraph g = load_graph((dir / "tiny.gr").string(), (dir / "tiny.co").string(),
                                   (dir / "tiny.elev").string(), m);
    const auto cache = (dir / "tiny.cache").string();
    save_cache(g, m, cache);
    const CachedGraph c = load_cache(cache);
    REQUIRE(c.graph.n_states == g.n_states);
    REQUIRE(c.graph.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(c.graph.edges[i].from == g.edges[i].from);
        CHECK(c.graph.edges[i].to == g.edges[i].to);
        CHECK(c.graph.edges[i].cost_wh == g.edges[i].cost_wh);
        CHECK(c.graph.edges[i].length_m == g.edges[i].length_m);
    }
    for (std::size_t i = 0; i < g.n_states; ++i) {
        CHECK(c.graph.heights[i] == g.heights[i]);
        CHECK(c.graph.coords[i].lat == g.coords[i].lat);
        CHECK(c.graph.coords[i].lon == g.coords[i].lon);
    }
    CHECK(model_hash(c.model) == model_hash(m));
}

TEST_CASE("graph cache detects a tampered model") {
    const auto dir = temp_dir();
    write_tiny_fixture(dir);
    const EnergyModelParams m = tiny_model();
    const RoadGraph g = load_graph((dir / "tiny.gr").string(), (dir / "tiny.co").string(),
                                   (dir / "tiny.elev").string(), m);
    const auto cache = (dir / "tampered.cache").string();
    save_cache(g, m, cache);
    std::ifstream in(cache);
    std::string content((std::istreambuf_iterator<char>(in)), {});
    in.close();
    const auto pos = content.find("model 0");
    REQUIRE(pos != std::string::npos);
    content.replace(pos, 7, "model 9");
    write_file(cache, content);
    CHECK_THROWS_AS(load_cache(cache), ConsistencyError);
}
