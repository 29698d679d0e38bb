#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "geometry.hpp"

namespace pcdn {

// Integer cell coordinates at some subdivision level of the root cube. The
// root is (0,0,0) at level 0; each level halves the cell side, so coordinates
// at level L lie in [0, 2^L).
using OctCoord = std::array<std::uint64_t, 3>;

struct OctCoordHash {
    std::size_t operator()(const OctCoord& c) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t v : c) {
            v += h;
            v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
            v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
            h = v ^ (v >> 31);
        }
        return static_cast<std::size_t>(h);
    }
};

struct OctreeNode {
    OctCoord coord{{0, 0, 0}};
    std::int32_t level = 0;
    std::int32_t first_child = -1; // children occupy 8 consecutive node slots
    std::vector<std::uint32_t> point_indices; // leaf payload, empty on interior nodes

    bool is_leaf() const { return first_child < 0; }
};

// Adaptive octree over a point cloud. Nodes live in a pool in creation order;
// nodes[0] is the root. The per-level registry maps integer coordinates to the
// pool index and contains exactly the current leaves.
struct Octree {
    BoundingCube root_cube;
    std::vector<OctreeNode> nodes;
    std::vector<std::unordered_map<OctCoord, std::int32_t, OctCoordHash>> leaf_registry;

    double node_size(std::int32_t level) const { return std::ldexp(root_cube.side, -level); }

    Point3 node_corner(const OctreeNode& n) const {
        const double s = node_size(n.level);
        return {root_cube.min_corner.x + static_cast<double>(n.coord[0]) * s,
                root_cube.min_corner.y + static_cast<double>(n.coord[1]) * s,
                root_cube.min_corner.z + static_cast<double>(n.coord[2]) * s};
    }

    std::int32_t leaf_index(std::int32_t level, const OctCoord& coord) const {
        if (level < 0 || level >= static_cast<std::int32_t>(leaf_registry.size())) return -1;
        const auto it = leaf_registry[level].find(coord);
        return it == leaf_registry[level].end() ? -1 : it->second;
    }

    std::size_t leaf_count() const {
        std::size_t n = 0;
        for (const auto& level : leaf_registry) n += level.size();
        return n;
    }
};

// A cell is splittable when, subdivided into 8x8x8 subcells of side size/8,
// at least two subcells contain points. Points exactly on the far boundary
// clamp into the last subcell.
inline bool is_splittable(const Point3& corner, double size, const PointCloud& cloud,
                          const std::vector<std::uint32_t>& point_indices) {
    const double sub = size / 8.0;
    int seen = -1;
    for (std::uint32_t pi : point_indices) {
        const Point3& p = cloud.points[pi];
        int id = 0;
        for (int a = 0; a < 3; ++a) {
            int c = static_cast<int>(std::floor((p[a] - corner[a]) / sub));
            if (c < 0) c = 0;
            if (c > 7) c = 7;
            id = (id << 3) | c;
        }
        if (seen < 0) {
            seen = id;
        } else if (id != seen) {
            return true;
        }
    }
    return false;
}

inline bool is_splittable(const Octree& tree, const OctreeNode& node, const PointCloud& cloud) {
    return is_splittable(tree.node_corner(node), tree.node_size(node.level), cloud, node.point_indices);
}

namespace detail {

class OctreeBuilder {
public:
    OctreeBuilder(const PointCloud& cloud, int max_depth) : cloud_(cloud), max_depth_(max_depth) {
        detail::require_valid_cloud(cloud);
        tree_.root_cube = compute_bounding_cube(cloud);
        OctreeNode root;
        root.point_indices.resize(cloud.size());
        for (std::uint32_t i = 0; i < cloud.size(); ++i) root.point_indices[i] = i;
        tree_.nodes.push_back(std::move(root));
        register_leaf(0);
    }

    Octree run() {
        queue_.push_back(0);
        while (!queue_.empty()) {
            const std::int32_t xi = queue_.front();
            queue_.pop_front();
            // A balance cascade may have split a queued node already.
            if (!tree_.nodes[xi].is_leaf()) continue;
            if (splittable(xi)) split(xi);
        }
        return std::move(tree_);
    }

private:
    void register_leaf(std::int32_t ni) {
        const OctreeNode& n = tree_.nodes[ni];
        if (static_cast<std::size_t>(n.level) >= tree_.leaf_registry.size())
            tree_.leaf_registry.resize(n.level + 1);
        tree_.leaf_registry[n.level].emplace(n.coord, ni);
    }

    bool splittable(std::int32_t ni) const {
        const OctreeNode& n = tree_.nodes[ni];
        return is_splittable(tree_.node_corner(n), tree_.node_size(n.level), cloud_, n.point_indices);
    }

    // Replace leaf x by its 8 children, rebalance around each child, then
    // enqueue the non-empty children for further splitting.
    void split(std::int32_t xi) {
        const OctCoord xc = tree_.nodes[xi].coord;
        const std::int32_t child_level = tree_.nodes[xi].level + 1;
        if (child_level > max_depth_) throw std::runtime_error("octree depth exceeded");

        const Point3 corner = tree_.node_corner(tree_.nodes[xi]);
        const double half = tree_.node_size(child_level);
        std::vector<std::uint32_t> pts = std::move(tree_.nodes[xi].point_indices);
        tree_.nodes[xi].point_indices.clear();

        const std::int32_t first = static_cast<std::int32_t>(tree_.nodes.size());
        tree_.nodes[xi].first_child = first;
        tree_.leaf_registry[child_level - 1].erase(xc);

        for (int ci = 0; ci < 8; ++ci) {
            OctreeNode child;
            child.level = child_level;
            child.coord = {2 * xc[0] + ((ci >> 0) & 1), 2 * xc[1] + ((ci >> 1) & 1),
                           2 * xc[2] + ((ci >> 2) & 1)};
            tree_.nodes.push_back(std::move(child));
            register_leaf(first + ci);
        }

        for (std::uint32_t pi : pts) {
            const Point3& p = cloud_.points[pi];
            int ci = 0;
            for (int a = 0; a < 3; ++a) {
                int c = static_cast<int>(std::floor((p[a] - corner[a]) / half));
                if (c < 0) c = 0;
                if (c > 1) c = 1;
                ci |= c << a;
            }
            tree_.nodes[first + ci].point_indices.push_back(pi);
        }

        for (int ci = 0; ci < 8; ++ci) balance(first + ci);

        for (int ci = 0; ci < 8; ++ci)
            if (!tree_.nodes[first + ci].point_indices.empty()) queue_.push_back(first + ci);
    }

    // Split every leaf exactly two levels coarser than z that touches z.
    // After a split only such leaves can violate the 2:1 size bound, and
    // splitting them recurses, so the bound is restored before returning.
    void balance(std::int32_t zi) {
        const OctCoord zc = tree_.nodes[zi].coord;
        const std::int32_t coarse_level = tree_.nodes[zi].level - 2;
        if (coarse_level < 0) return;

        // A coarse cell d (side 4 in z's units) touches z iff 4d <= c+1 and
        // 4d+4 >= c on every axis, i.e. d in [ceil((c-4)/4), floor((c+1)/4)].
        std::int64_t lo[3], hi[3];
        const std::int64_t max_coord = (std::int64_t{1} << coarse_level) - 1;
        for (int a = 0; a < 3; ++a) {
            const std::int64_t c = static_cast<std::int64_t>(zc[a]);
            std::int64_t l = c <= 4 ? 0 : (c - 4 + 3) / 4;
            std::int64_t h = (c + 1) / 4;
            if (h > max_coord) h = max_coord;
            lo[a] = l;
            hi[a] = h;
        }
        for (std::int64_t dx = lo[0]; dx <= hi[0]; ++dx)
            for (std::int64_t dy = lo[1]; dy <= hi[1]; ++dy)
                for (std::int64_t dz = lo[2]; dz <= hi[2]; ++dz) {
                    const OctCoord cc{static_cast<std::uint64_t>(dx), static_cast<std::uint64_t>(dy),
                                      static_cast<std::uint64_t>(dz)};
                    const std::int32_t yi = tree_.leaf_index(coarse_level, cc);
                    if (yi >= 0) split(yi);
                }
    }

    const PointCloud& cloud_;
    const int max_depth_;
    Octree tree_;
    std::deque<std::int32_t> queue_;
};

} // namespace detail

// Build the balanced adaptive octree: repeatedly split splittable leaves,
// keeping every pair of touching leaves within a factor 2 in side length.
inline Octree build_adaptive_octree(const PointCloud& cloud, int max_depth = 64) {
    return detail::OctreeBuilder(cloud, max_depth).run();
}

// Mean side length over non-empty leaves.
inline double mean_leaf_size(const Octree& tree) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const OctreeNode& n : tree.nodes) {
        if (n.is_leaf() && !n.point_indices.empty()) {
            sum += tree.node_size(n.level);
            ++count;
        }
    }
    if (count == 0) throw std::runtime_error("no non-empty leaves");
    return sum / static_cast<double>(count);
}

// --- uniform resolution grid -------------------------------------------------

using GridCoord = std::array<std::int64_t, 3>;

struct GridCoordHash {
    std::size_t operator()(const GridCoord& c) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::int64_t v : c) {
            std::uint64_t u = static_cast<std::uint64_t>(v) + h;
            u = (u ^ (u >> 30)) * 0xbf58476d1ce4e5b9ULL;
            u = (u ^ (u >> 27)) * 0x94d049bb133111ebULL;
            h = u ^ (u >> 31);
        }
        return static_cast<std::size_t>(h);
    }
};

// All points of a cloud bucketed at one cell size ell = root_side / 2^depth.
// Only occupied cells are stored; the map is ordered so iteration (and thus
// any arithmetic over cells) is deterministic.
struct UniformLeafGrid {
    Point3 origin;            // min corner of the root cube
    double root_side = 1.0;
    double cell_size = 1.0;   // ell = root_side / 2^depth
    std::int32_t depth = 0;
    std::map<GridCoord, std::vector<std::uint32_t>> cells;

    std::int64_t cells_per_axis() const { return std::int64_t{1} << depth; }

    GridCoord cell_of(const Point3& p) const {
        GridCoord c;
        const std::int64_t max_c = cells_per_axis() - 1;
        for (int a = 0; a < 3; ++a) {
            std::int64_t v = static_cast<std::int64_t>(std::floor((p[a] - origin[a]) / cell_size));
            if (v < 0) v = 0;
            if (v > max_c) v = max_c;
            c[a] = v;
        }
        return c;
    }

    Point3 cell_min_corner(const GridCoord& c) const {
        return {origin.x + static_cast<double>(c[0]) * cell_size,
                origin.y + static_cast<double>(c[1]) * cell_size,
                origin.z + static_cast<double>(c[2]) * cell_size};
    }

    std::size_t point_count() const {
        std::size_t n = 0;
        for (const auto& [c, pts] : cells) n += pts.size();
        return n;
    }
};

// Rebucket the cloud at the unique power-of-two resolution ell_P with
// ell_P in (alpha*ell_avg/2, alpha*ell_avg], where ell_avg is the mean
// non-empty-leaf size of the adaptive octree. No points are dropped.
inline UniformLeafGrid uniformize(const Octree& tree, const PointCloud& cloud, double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
    const double ell_avg = mean_leaf_size(tree);
    const double target = alpha * ell_avg;

    UniformLeafGrid grid;
    grid.origin = tree.root_cube.min_corner;
    grid.root_side = tree.root_cube.side;
    grid.depth = 0;
    grid.cell_size = grid.root_side;
    while (grid.cell_size > target) {
        ++grid.depth;
        grid.cell_size = std::ldexp(grid.root_side, -grid.depth);
    }

    for (std::uint32_t i = 0; i < cloud.size(); ++i)
        grid.cells[grid.cell_of(cloud.points[i])].push_back(i);
    return grid;
}

} // namespace pcdn
