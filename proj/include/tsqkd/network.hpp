#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tsqkd {

using NodeId = int;

enum class TopologyKind { Direct, Ring, Grid, Torus };

struct TopologySpec {
    TopologyKind kind = TopologyKind::Direct;
    int ring_nodes = 8;
    int rows = 4;
    int cols = 4;
    double link_km = 0.0;

    static TopologySpec direct(double link_km = 0.0) { return {TopologyKind::Direct, 8, 4, 4, link_km}; }
    static TopologySpec ring(int n, double link_km = 0.0) { return {TopologyKind::Ring, n, 4, 4, link_km}; }
    static TopologySpec grid(int rows, int cols, double link_km = 0.0) {
        return {TopologyKind::Grid, 8, rows, cols, link_km};
    }
    static TopologySpec torus(int rows, int cols, double link_km = 0.0) {
        return {TopologyKind::Torus, 8, rows, cols, link_km};
    }

    // Throws InvalidArgument.
    void validate() const;
    // "direct", "ring8", "grid4x4", "torus4x4".
    std::string label() const;
};

// Undirected graph with sorted adjacency lists. Grid and torus nodes are
// numbered row-major: id = row * cols + col.
class Graph {
public:
    explicit Graph(int node_count) : adjacency_(static_cast<std::size_t>(node_count)) {}

    void add_edge(NodeId a, NodeId b);

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const;
    int degree(NodeId n) const { return static_cast<int>(neighbors(n).size()); }
    const std::vector<NodeId>& neighbors(NodeId n) const { return adjacency_.at(static_cast<std::size_t>(n)); }
    bool adjacent(NodeId a, NodeId b) const;

private:
    std::vector<std::vector<NodeId>> adjacency_;
};

struct Path {
    std::vector<NodeId> nodes;  // Alice first, Bob last
    double link_km = 0.0;
    double effective_km = 0.0;

    int hops() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
    // Nodes strictly between the endpoints.
    int intermediate_nodes() const { return hops() > 0 ? hops() - 1 : 0; }
};

Graph build_topology(const TopologySpec& spec);

std::pair<NodeId, NodeId> endpoints(const TopologySpec& spec);

// Minimal-hop path. Neighbors are expanded in increasing id order so ties
// resolve toward smaller ids. Lengths are left at 0; see route(). Throws
// NoPath when b is unreachable.
Path bfs_shortest_path(const Graph& g, NodeId a, NodeId b);

double effective_distance(const Path& p, double link_km);

// build_topology + endpoints + BFS + effective distance.
Path route(const TopologySpec& spec);

}  // namespace tsqkd
