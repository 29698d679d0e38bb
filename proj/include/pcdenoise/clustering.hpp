#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "octree.hpp"

namespace pcdn {

// Occupied grid cells as graph vertices; edges join cells that share a face,
// an edge, or a corner (26-adjacency). Vertices are sorted by cell coordinate
// and adjacency lists are ascending.
struct LeafGraph {
    std::vector<GridCoord> vertices;
    std::vector<std::vector<std::int32_t>> adjacency;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& adj : adjacency) twice += adj.size();
        return twice / 2;
    }
};

inline LeafGraph build_leaf_graph(const UniformLeafGrid& grid) {
    LeafGraph graph;
    graph.vertices.reserve(grid.cells.size());
    for (const auto& [coord, pts] : grid.cells) graph.vertices.push_back(coord);

    std::unordered_map<GridCoord, std::int32_t, GridCoordHash> index;
    index.reserve(graph.vertices.size() * 2);
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(graph.vertices.size()); ++v)
        index.emplace(graph.vertices[v], v);

    graph.adjacency.resize(graph.vertices.size());
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(graph.vertices.size()); ++v) {
        const GridCoord& c = graph.vertices[v];
        auto& adj = graph.adjacency[v];
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    const GridCoord nb{c[0] + dx, c[1] + dy, c[2] + dz};
                    const auto it = index.find(nb);
                    if (it != index.end()) adj.push_back(it->second);
                }
        std::sort(adj.begin(), adj.end());
    }
    return graph;
}

// Connected components, ids assigned in order of each component's lowest
// vertex. Because vertices are sorted by cell coordinate, that lowest vertex
// is also the component's lexicographically smallest cell.
struct ComponentLabeling {
    std::vector<std::int32_t> component_of; // per vertex
    std::vector<std::int32_t> sizes;        // per component, in cells
    std::vector<std::int32_t> root_vertex;  // per component, its lowest vertex id

    std::int32_t count() const { return static_cast<std::int32_t>(sizes.size()); }
};

inline ComponentLabeling connected_components(const LeafGraph& graph) {
    const std::int32_t n = static_cast<std::int32_t>(graph.vertex_count());
    ComponentLabeling out;
    out.component_of.assign(n, -1);
    std::deque<std::int32_t> frontier;
    for (std::int32_t start = 0; start < n; ++start) {
        if (out.component_of[start] >= 0) continue;
        const std::int32_t id = out.count();
        out.sizes.push_back(0);
        out.root_vertex.push_back(start);
        out.component_of[start] = id;
        frontier.push_back(start);
        while (!frontier.empty()) {
            const std::int32_t v = frontier.front();
            frontier.pop_front();
            ++out.sizes[id];
            for (std::int32_t w : graph.adjacency[v]) {
                if (out.component_of[w] < 0) {
                    out.component_of[w] = id;
                    frontier.push_back(w);
                }
            }
        }
    }
    return out;
}

// Component ids ordered by size descending; equal sizes order by the
// lexicographically smaller minimum cell (equivalently the lower root vertex).
inline std::vector<std::int32_t> rank_components(const ComponentLabeling& labeling) {
    std::vector<std::int32_t> order(labeling.count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (labeling.sizes[a] != labeling.sizes[b]) return labeling.sizes[a] > labeling.sizes[b];
        return labeling.root_vertex[a] < labeling.root_vertex[b];
    });
    return order;
}

// Grid restricted to the cells of one component.
inline UniformLeafGrid component_grid(const UniformLeafGrid& grid, const LeafGraph& graph,
                                      const ComponentLabeling& labeling, std::int32_t component) {
    UniformLeafGrid out;
    out.origin = grid.origin;
    out.root_side = grid.root_side;
    out.cell_size = grid.cell_size;
    out.depth = grid.depth;
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(graph.vertex_count()); ++v) {
        if (labeling.component_of[v] != component) continue;
        const auto it = grid.cells.find(graph.vertices[v]);
        out.cells.emplace(it->first, it->second);
    }
    return out;
}

// Points of the k largest components, as a subsequence of the source cloud
// (indices ascending). k at or above the component count keeps everything.
inline PointCloud extract_k_largest(const UniformLeafGrid& grid, const LeafGraph& graph,
                                    const ComponentLabeling& labeling, int k,
                                    const PointCloud& source) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const auto order = rank_components(labeling);
    const std::size_t keep = std::min<std::size_t>(k, order.size());
    std::vector<char> selected(labeling.count(), 0);
    for (std::size_t i = 0; i < keep; ++i) selected[order[i]] = 1;

    std::vector<std::uint32_t> indices;
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(graph.vertex_count()); ++v) {
        if (!selected[labeling.component_of[v]]) continue;
        const auto it = grid.cells.find(graph.vertices[v]);
        indices.insert(indices.end(), it->second.begin(), it->second.end());
    }
    std::sort(indices.begin(), indices.end());

    PointCloud out;
    out.points.reserve(indices.size());
    if (source.has_labels()) out.labels.reserve(indices.size());
    for (std::uint32_t pi : indices) {
        if (source.has_labels())
            out.push_back(source.points[pi], source.labels[pi]);
        else
            out.push_back(source.points[pi]);
    }
    return out;
}

} // namespace pcdn
