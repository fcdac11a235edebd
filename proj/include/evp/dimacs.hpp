#ifndef EVP_DIMACS_HPP
#define EVP_DIMACS_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "evp/graph.hpp"

namespace evp {

struct ParseError : std::runtime_error {
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

inline double slope_sin_theta(double dh, double length_m) {
    if (length_m <= 0.0) return 0.0;
    double s = dh / length_m;
    return std::clamp(s, -1.0, 1.0);
}

// Shortest round-trip decimal rendering.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace detail

inline std::uint64_t model_hash(const EnergyModelParams& m) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (double v : {m.alpha[0], m.alpha[1], m.alpha[2], m.beta[0], m.beta[1], m.beta[2],
                     m.extra_mass_kg, m.total_mass_kg, m.gravity, m.avg_efficiency_wh_100m,
                     m.battery_capacity_wh})
        h = detail::fnv1a(h, detail::fmt_double(v) + ";");
    return h;
}

// DIMACS challenge distance graph: "p sp N M" header, "a u v w" arcs with
// 1-based ids and w = length in meters. Coordinate file: "v id lon lat" in
// 1e-6 degrees. Elevation file: one "id height" pair per line. Edge energy
// is computed from the model, the arc length and the slope implied by the
// endpoint heights.
inline RoadGraph load_graph(const std::string& gr_file, const std::string& co_file,
                            const std::string& elev_file, const EnergyModelParams& model) {
    RoadGraph g;
    std::size_t n = 0, m = 0;
    bool have_header = false;

    {
        auto in = detail::open_or_throw(gr_file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == 'c') continue;
            std::istringstream ss(line);
            char tag;
            ss >> tag;
            if (tag == 'p') {
                std::string kind;
                if (!(ss >> kind >> n >> m) || kind != "sp")
                    throw ParseError(gr_file, lineno, "malformed problem line");
                have_header = true;
                g.n_states = n;
                g.edges.reserve(m);
            } else if (tag == 'a') {
                if (!have_header)
                    throw ParseError(gr_file, lineno, "arc before problem line");
                std::size_t u, v;
                double w;
                if (!(ss >> u >> v >> w))
                    throw ParseError(gr_file, lineno, "malformed arc line");
                if (u < 1 || u > n || v < 1 || v > n)
                    throw ParseError(gr_file, lineno, "arc endpoint out of range");
                g.edges.push_back(Edge{static_cast<StateId>(u - 1),
                                       static_cast<StateId>(v - 1), 0.0, w});
            } else {
                throw ParseError(gr_file, lineno, "unknown line type");
            }
        }
        if (!have_header) throw ParseError(gr_file, 0, "missing problem line");
        if (g.edges.size() != m)
            throw ConsistencyError(gr_file + ": arc count " + std::to_string(g.edges.size()) +
                                   " does not match header " + std::to_string(m));
    }

    g.coords.assign(n, LatLon{});
    {
        auto in = detail::open_or_throw(co_file);
        std::string line;
        std::size_t lineno = 0, count = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == 'c' || line[0] == 'p') continue;
            std::istringstream ss(line);
            char tag;
            std::size_t id;
            long long lon, lat;
            if (!(ss >> tag >> id >> lon >> lat) || tag != 'v')
                throw ParseError(co_file, lineno, "malformed coordinate line");
            if (id < 1 || id > n)
                throw ParseError(co_file, lineno, "state id out of range");
            g.coords[id - 1] = LatLon{static_cast<double>(lat) * 1e-6,
                                      static_cast<double>(lon) * 1e-6};
            ++count;
        }
        if (count != n)
            throw ConsistencyError(co_file + ": " + std::to_string(count) +
                                   " coordinates for " + std::to_string(n) + " states");
    }

    g.heights.assign(n, 0.0);
    {
        auto in = detail::open_or_throw(elev_file);
        std::string line;
        std::size_t lineno = 0, count = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == 'c') continue;
            std::istringstream ss(line);
            std::size_t id;
            double h;
            if (!(ss >> id >> h))
                throw ParseError(elev_file, lineno, "malformed elevation line");
            if (id < 1 || id > n)
                throw ParseError(elev_file, lineno, "state id out of range");
            g.heights[id - 1] = h;
            ++count;
        }
        if (count != n)
            throw ConsistencyError(elev_file + ": " + std::to_string(count) +
                                   " heights for " + std::to_string(n) + " states");
    }

    for (Edge& e : g.edges) {
        const double dh = g.heights[e.to] - g.heights[e.from];
        const double s = detail::slope_sin_theta(dh, e.length_m);
        e.cost_wh = compute_edge_energy(model, s, e.length_m / 100.0);
    }
    g.build_adjacency();
    return g;
}

// Enriched-graph cache: text header plus per-state and per-edge records.
// Doubles are written with shortest round-trip precision, so a reload
// reproduces the graph bit-exactly.
inline void save_cache(const RoadGraph& g, const EnergyModelParams& model,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    using detail::fmt_double;
    out << "evgraph 1\n";
    out << "n_states " << g.n_states << "\n";
    out << "n_edges " << g.edges.size() << "\n";
    out << "model_hash " << model_hash(model) << "\n";
    out << "model " << fmt_double(model.alpha[0]) << ' ' << fmt_double(model.alpha[1]) << ' '
        << fmt_double(model.alpha[2]) << ' ' << fmt_double(model.beta[0]) << ' '
        << fmt_double(model.beta[1]) << ' ' << fmt_double(model.beta[2]) << ' '
        << fmt_double(model.extra_mass_kg) << ' ' << fmt_double(model.total_mass_kg) << ' '
        << fmt_double(model.gravity) << ' ' << fmt_double(model.avg_efficiency_wh_100m) << ' '
        << fmt_double(model.battery_capacity_wh) << "\n";
    for (std::size_t i = 0; i < g.n_states; ++i)
        out << "s " << fmt_double(g.heights[i]) << ' ' << fmt_double(g.coords[i].lat) << ' '
            << fmt_double(g.coords[i].lon) << "\n";
    for (const Edge& e : g.edges)
        out << "e " << e.from << ' ' << e.to << ' ' << fmt_double(e.cost_wh) << ' '
            << fmt_double(e.length_m) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct CachedGraph {
    RoadGraph graph;
    EnergyModelParams model;
};

inline CachedGraph load_cache(const std::string& path) {
    auto in = detail::open_or_throw(path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "evgraph" || version != 1)
        throw ParseError(path, 1, "not an evgraph v1 cache");
    CachedGraph c;
    std::string key;
    std::size_t n = 0, m = 0;
    std::uint64_t stored_hash = 0;
    in >> key >> n;
    if (key != "n_states") throw ParseError(path, 2, "expected n_states");
    in >> key >> m;
    if (key != "n_edges") throw ParseError(path, 3, "expected n_edges");
    in >> key >> stored_hash;
    if (key != "model_hash") throw ParseError(path, 4, "expected model_hash");
    in >> key;
    if (key != "model") throw ParseError(path, 5, "expected model");
    auto& md = c.model;
    in >> md.alpha[0] >> md.alpha[1] >> md.alpha[2] >> md.beta[0] >> md.beta[1] >> md.beta[2] >>
        md.extra_mass_kg >> md.total_mass_kg >> md.gravity >> md.avg_efficiency_wh_100m >>
        md.battery_capacity_wh;
    if (!in) throw ParseError(path, 5, "malformed model line");
    if (model_hash(md) != stored_hash)
        throw ConsistencyError(path + ": model hash mismatch");
    c.graph.n_states = n;
    c.graph.heights.resize(n);
    c.graph.coords.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        char tag;
        in >> tag >> c.graph.heights[i] >> c.graph.coords[i].lat >> c.graph.coords[i].lon;
        if (!in || tag != 's') throw ParseError(path, 6 + i, "malformed state record");
    }
    c.graph.edges.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        char tag;
        Edge& e = c.graph.edges[i];
        in >> tag >> e.from >> e.to >> e.cost_wh >> e.length_m;
        if (!in || tag != 'e') throw ParseError(path, 6 + n + i, "malformed edge record");
    }
    c.graph.build_adjacency();
    return c;
}

}  // namespace evp

#endif  // EVP_DIMACS_HPP
