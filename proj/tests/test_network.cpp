#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "tsqkd/errors.hpp"
#include "tsqkd/network.hpp"

using namespace tsqkd;

namespace {

int hops(const TopologySpec& spec, NodeId a, NodeId b) { return bfs_shortest_path(build_topology(spec), a, b).hops(); }

// Neighbor lists computed from coordinates, independent of build_topology.
std::vector<int> lattice_neighbors(int r, int c, bool wrap, int id) {
    const int x = id / c;
    const int y = id % c;
    std::vector<int> out;
    const int dx[] = {-1, 1, 0, 0};
    const int dy[] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
        int nx = x + dx[k];
        int ny = y + dy[k];
        if (wrap) {
            nx = (nx + r) % r;
            ny = (ny + c) % c;
        } else if (nx < 0 || nx >= r || ny < 0 || ny >= c) {
            continue;
        }
        if (nx * c + ny != id) out.push_back(nx * c + ny);
    }
    return out;
}

}  // namespace

TEST_CASE("build_topology") {
    const Graph direct = build_topology(TopologySpec::direct());
    CHECK(direct.node_count() == 2);
    CHECK(direct.edge_count() == 1);

    const Graph torus = build_topology(TopologySpec::torus(4, 4));
    for (int n = 0; n < 16; ++n) CHECK(torus.degree(n) == 4);
    CHECK(torus.edge_count() == 32);

    const Graph grid = build_topology(TopologySpec::grid(4, 4));
    std::array<int, 5> by_degree{};
    for (int n = 0; n < 16; ++n) ++by_degree[static_cast<std::size_t>(grid.degree(n))];
    CHECK(by_degree[2] == 4);
    CHECK(by_degree[3] == 8);
    CHECK(by_degree[4] == 4);
    for (int corner : {0, 3, 12, 15}) CHECK(grid.degree(corner) == 2);

    const Graph ring = build_topology(TopologySpec::ring(8));
    CHECK(ring.edge_count() == 8);
    CHECK(ring.adjacent(0, 7));
    CHECK_FALSE(ring.adjacent(0, 2));

    SUBCASE("lattices match coordinate adjacency") {
        for (auto [r, c] : {std::pair{4, 4}, std::pair{5, 7}, std::pair{3, 2}}) {
            for (bool wrap : {false, true}) {
                const Graph g = build_topology(wrap ? TopologySpec::torus(r, c) : TopologySpec::grid(r, c));
                for (int id = 0; id < r * c; ++id) {
                    auto want = lattice_neighbors(r, c, wrap, id);
                    std::sort(want.begin(), want.end());
                    want.erase(std::unique(want.begin(), want.end()), want.end());
                    CHECK(g.neighbors(id) == want);
                }
            }
        }
    }

    CHECK_THROWS_AS(build_topology(TopologySpec::ring(1)), InvalidArgument);
    CHECK_THROWS_AS(build_topology(TopologySpec::grid(1, 1)), InvalidArgument);
    CHECK_THROWS_AS(build_topology(TopologySpec::torus(0, 4)), InvalidArgument);
    CHECK_THROWS_AS(build_topology(TopologySpec::direct(-1.0)), InvalidArgument);
}

TEST_CASE("topology labels") {
    CHECK(TopologySpec::direct().label() == "direct");
    CHECK(TopologySpec::ring(8).label() == "ring8");
    CHECK(TopologySpec::grid(4, 4).label() == "grid4x4");
    CHECK(TopologySpec::torus(5, 7).label() == "torus5x7");
}

TEST_CASE("endpoints") {
    CHECK(endpoints(TopologySpec::grid(4, 4)) == std::pair<NodeId, NodeId>{0, 15});
    CHECK(endpoints(TopologySpec::torus(5, 7)) == std::pair<NodeId, NodeId>{0, 34});
    CHECK(endpoints(TopologySpec::ring(8)) == std::pair<NodeId, NodeId>{0, 4});
    CHECK(endpoints(TopologySpec::ring(9)) == std::pair<NodeId, NodeId>{0, 4});
    CHECK(endpoints(TopologySpec::direct()) == std::pair<NodeId, NodeId>{0, 1});
}

TEST_CASE("bfs_shortest_path") {
    CHECK(route(TopologySpec::direct()).hops() == 1);
    CHECK(route(TopologySpec::grid(4, 4)).hops() == 6);
    CHECK(route(TopologySpec::torus(4, 4)).hops() == 2);
    CHECK(route(TopologySpec::ring(8)).hops() == 4);

    SUBCASE("ties resolve toward smaller ids") {
        CHECK(route(TopologySpec::grid(4, 4)).nodes == std::vector<NodeId>{0, 1, 2, 3, 7, 11, 15});
        CHECK(route(TopologySpec::torus(4, 4)).nodes == std::vector<NodeId>{0, 3, 15});
        CHECK(route(TopologySpec::ring(8)).nodes == std::vector<NodeId>{0, 1, 2, 3, 4});
    }

    SUBCASE("paths are simple and follow edges") {
        for (const auto& spec : {TopologySpec::grid(5, 7), TopologySpec::torus(5, 7), TopologySpec::ring(11)}) {
            const Graph g = build_topology(spec);
            for (int b = 0; b < g.node_count(); ++b) {
                const Path p = bfs_shortest_path(g, 0, b);
                CHECK(p.nodes.front() == 0);
                CHECK(p.nodes.back() == b);
                CHECK(std::set<NodeId>(p.nodes.begin(), p.nodes.end()).size() == p.nodes.size());
                for (std::size_t i = 1; i < p.nodes.size(); ++i) CHECK(g.adjacent(p.nodes[i - 1], p.nodes[i]));
            }
        }
    }

    SUBCASE("deterministic") {
        const Graph g = build_topology(TopologySpec::torus(5, 7));
        for (int b = 0; b < 35; ++b) CHECK(bfs_shortest_path(g, 0, b).nodes == bfs_shortest_path(g, 0, b).nodes);
    }

    SUBCASE("errors") {
        Graph split(4);
        split.add_edge(0, 1);
        split.add_edge(2, 3);
        CHECK_THROWS_AS(bfs_shortest_path(split, 0, 3), NoPath);
        CHECK_THROWS_AS(bfs_shortest_path(split, 0, 9), InvalidArgument);
        CHECK(bfs_shortest_path(split, 2, 2).hops() == 0);
    }
}

TEST_CASE("hop counts against closed forms") {
    for (auto [r, c] : {std::pair{4, 4}, std::pair{5, 7}}) {
        for (int x = 0; x < r; ++x) {
            for (int y = 0; y < c; ++y) {
                const int t = hops(TopologySpec::torus(r, c), 0, x * c + y);
                const int g = hops(TopologySpec::grid(r, c), 0, x * c + y);
                CHECK(t == std::min(x, r - x) + std::min(y, c - y));
                CHECK(g == x + y);
                CHECK(t <= g);
            }
        }
    }
    for (int n = 4; n <= 12; ++n)
        for (int k = 0; k < n; ++k) CHECK(hops(TopologySpec::ring(n), 0, k) == std::min(k, n - k));

    // Exhaustive all-pairs check against a separate BFS over coordinate adjacency.
    for (bool wrap : {false, true}) {
        const auto spec = wrap ? TopologySpec::torus(5, 7) : TopologySpec::grid(5, 7);
        const Graph g = build_topology(spec);
        for (int a = 0; a < 35; ++a) {
            for (int b = 0; b < 35; ++b) {
                const int want = oracle::bfs_hops(35, a, b, [&](int n) { return lattice_neighbors(5, 7, wrap, n); });
                CHECK(bfs_shortest_path(g, a, b).hops() == want);
            }
        }
    }
}

TEST_CASE("effective distance") {
    CHECK(effective_distance(route(TopologySpec::direct()), 20.0) == 20.0);
    CHECK(effective_distance(route(TopologySpec::grid(4, 4)), 10.0) == 60.0);
    CHECK(effective_distance(route(TopologySpec::torus(4, 4)), 10.0) == 20.0);

    const Path p = route(TopologySpec::grid(4, 4, 10.0));
    CHECK(p.link_km == 10.0);
    CHECK(p.effective_km == 60.0);
    CHECK(p.intermediate_nodes() == 5);
}
