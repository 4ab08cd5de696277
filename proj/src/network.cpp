#include "tsqkd/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <fmt/format.h>

#include "tsqkd/errors.hpp"

namespace tsqkd {

void TopologySpec::validate() const {
    if (!(link_km >= 0.0) || !std::isfinite(link_km)) throw InvalidArgument(fmt::format("link_km must be >= 0: {}", link_km));
    switch (kind) {
        case TopologyKind::Direct: return;
        case TopologyKind::Ring:
            if (ring_nodes < 2) throw InvalidArgument(fmt::format("ring needs at least 2 nodes: {}", ring_nodes));
            return;
        case TopologyKind::Grid:
        case TopologyKind::Torus:
            if (rows < 1 || cols < 1 || rows * cols < 2) {
                throw InvalidArgument(fmt::format("grid dimensions must give at least 2 nodes: {}x{}", rows, cols));
            }
            return;
    }
}

std::string TopologySpec::label() const {
    switch (kind) {
        case TopologyKind::Direct: return "direct";
        case TopologyKind::Ring: return fmt::format("ring{}", ring_nodes);
        case TopologyKind::Grid: return fmt::format("grid{}x{}", rows, cols);
        case TopologyKind::Torus: return fmt::format("torus{}x{}", rows, cols);
    }
    return "unknown";
}

void Graph::add_edge(NodeId a, NodeId b) {
    if (a == b || adjacent(a, b)) return;
    auto insert_sorted = [](std::vector<NodeId>& v, NodeId x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); };
    insert_sorted(adjacency_.at(static_cast<std::size_t>(a)), b);
    insert_sorted(adjacency_.at(static_cast<std::size_t>(b)), a);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& n : adjacency_) twice += n.size();
    return twice / 2;
}

bool Graph::adjacent(NodeId a, NodeId b) const {
    const auto& n = neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
}

Graph build_topology(const TopologySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case TopologyKind::Direct: {
            Graph g(2);
            g.add_edge(0, 1);
            return g;
        }
        case TopologyKind::Ring: {
            Graph g(spec.ring_nodes);
            for (int i = 0; i < spec.ring_nodes; ++i) g.add_edge(i, (i + 1) % spec.ring_nodes);
            return g;
        }
        case TopologyKind::Grid:
        case TopologyKind::Torus: {
            const int rows = spec.rows;
            const int cols = spec.cols;
            const bool wrap = spec.kind == TopologyKind::Torus;
            Graph g(rows * cols);
            auto id = [cols](int r, int c) { return r * cols + c; };
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) {
                    if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
                    else if (wrap) g.add_edge(id(r, c), id(r, 0));
                    if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
                    else if (wrap) g.add_edge(id(r, c), id(0, c));
                }
            }
            return g;
        }
    }
    throw InvalidArgument("unknown topology kind");
}

std::pair<NodeId, NodeId> endpoints(const TopologySpec& spec) {
    switch (spec.kind) {
        case TopologyKind::Direct: return {0, 1};
        case TopologyKind::Ring: return {0, spec.ring_nodes / 2};
        case TopologyKind::Grid:
        case TopologyKind::Torus: return {0, spec.rows * spec.cols - 1};
    }
    return {0, 1};
}

Path bfs_shortest_path(const Graph& g, NodeId a, NodeId b) {
    const int n = g.node_count();
    if (a < 0 || a >= n || b < 0 || b >= n) throw InvalidArgument(fmt::format("node out of range: {} -> {}", a, b));

    std::vector<NodeId> parent(static_cast<std::size_t>(n), -1);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<NodeId> frontier{a};
    seen[static_cast<std::size_t>(a)] = true;
    while (!frontier.empty() && !seen[static_cast<std::size_t>(b)]) {
        const NodeId cur = frontier.front();
        frontier.pop_front();
        for (NodeId next : g.neighbors(cur)) {
            if (seen[static_cast<std::size_t>(next)]) continue;
            seen[static_cast<std::size_t>(next)] = true;
            parent[static_cast<std::size_t>(next)] = cur;
            frontier.push_back(next);
        }
    }
    if (!seen[static_cast<std::size_t>(b)]) throw NoPath(fmt::format("no path from node {} to node {}", a, b));

    Path p;
    for (NodeId at = b; at != -1; at = parent[static_cast<std::size_t>(at)]) p.nodes.push_back(at);
    std::reverse(p.nodes.begin(), p.nodes.end());
    return p;
}

double effective_distance(const Path& p, double link_km) { return p.hops() * link_km; }

Path route(const TopologySpec& spec) {
    const Graph g = build_topology(spec);
    const auto [alice, bob] = endpoints(spec);
    Path p = bfs_shortest_path(g, alice, bob);
    p.link_km = spec.link_km;
    p.effective_km = effective_distance(p, spec.link_km);
    return p;
}

}  // namespace tsqkd
