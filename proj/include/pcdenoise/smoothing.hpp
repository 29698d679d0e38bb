#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "kdtree.hpp"
#include "octree.hpp"

namespace pcdn {

// One smoothing site: the mean of the points in one octree leaf, carrying the
// side length of that leaf. Neighbor ids index the representative array and
// are frozen once selected; positions move during smoothing, topology does
// not.
struct Representative {
    Point3 position;
    double source_leaf_size = 0.0;
    std::vector<std::int32_t> neighbor_ids;
};

// Leaf means of a fresh adaptive octree over the cloud, in leaf creation
// order.
inline std::vector<Representative> build_representatives(const PointCloud& cloud, int max_depth = 64) {
    const Octree tree = build_adaptive_octree(cloud, max_depth);
    std::vector<Representative> reps;
    for (const OctreeNode& n : tree.nodes) {
        if (!n.is_leaf() || n.point_indices.empty()) continue;
        Point3 sum;
        for (std::uint32_t pi : n.point_indices) sum += cloud.points[pi];
        Representative rep;
        rep.position = sum / static_cast<double>(n.point_indices.size());
        rep.source_leaf_size = tree.node_size(n.level);
        reps.push_back(std::move(rep));
    }
    return reps;
}

// Cell means of the uniformized grid instead of raw adaptive leaves; every
// representative carries the same cell size.
inline std::vector<Representative> build_representatives_uniform(const PointCloud& cloud, double alpha,
                                                                 int max_depth = 64) {
    const Octree tree = build_adaptive_octree(cloud, max_depth);
    const UniformLeafGrid grid = uniformize(tree, cloud, alpha);
    std::vector<Representative> reps;
    reps.reserve(grid.cells.size());
    for (const auto& [coord, pts] : grid.cells) {
        Point3 sum;
        for (std::uint32_t pi : pts) sum += cloud.points[pi];
        Representative rep;
        rep.position = sum / static_cast<double>(pts.size());
        rep.source_leaf_size = grid.cell_size;
        reps.push_back(std::move(rep));
    }
    return reps;
}

// Index in [0, 24) of the boundary square that the ray from a cube's center
// along `v` exits through. The cube is centered on the ray origin, so only
// the direction matters: the exit face is the axis with the largest |v|
// (ties go to the earlier axis), and the 2x2 quadrant on that face follows
// the signs of the two remaining components, >= 0 mapping positive.
inline int boundary_square_index(const Point3& v) {
    int axis = 0;
    for (int a = 1; a < 3; ++a)
        if (std::fabs(v[a]) > std::fabs(v[axis])) axis = a;
    const int face = 2 * axis + (v[axis] < 0.0 ? 1 : 0);
    const int b = axis == 0 ? 1 : 0;
    const int c = axis == 2 ? 1 : 2;
    const int quadrant = (v[b] >= 0.0 ? 0 : 1) + (v[c] >= 0.0 ? 0 : 2);
    return face * 4 + quadrant;
}

// Freeze each representative's neighbor set: among candidates within distance
// 4 * leaf size, keep the nearest one per boundary square (at most 24).
// Distance ties keep the lower id; candidates closer than 1e-12 * leaf size
// are treated as coincident and skipped.
inline void select_neighbors(std::vector<Representative>& reps) {
    const std::int32_t n = static_cast<std::int32_t>(reps.size());
    std::vector<Point3> positions(n);
    for (std::int32_t i = 0; i < n; ++i) positions[i] = reps[i].position;

    KdTree3 kd;
    const bool use_tree = n >= 256;
    if (use_tree) kd.build(positions);

    std::vector<std::int32_t> candidates;
    for (std::int32_t i = 0; i < n; ++i) {
        const Point3 q = positions[i];
        const double radius = 4.0 * reps[i].source_leaf_size;
        const double coincident = 1e-12 * reps[i].source_leaf_size;

        if (use_tree) {
            candidates = kd.radius_search(q, radius);
        } else {
            candidates.clear();
            for (std::int32_t j = 0; j < n; ++j)
                if (distance(positions[j], q) <= radius) candidates.push_back(j);
        }

        std::int32_t best_id[24];
        double best_d[24];
        std::fill(std::begin(best_id), std::end(best_id), -1);
        for (std::int32_t j : candidates) {
            if (j == i) continue;
            const double d = distance(positions[j], q);
            if (d < coincident) continue;
            const int g = boundary_square_index(positions[j] - q);
            if (best_id[g] < 0 || d < best_d[g]) {
                best_id[g] = j;
                best_d[g] = d;
            }
        }

        auto& out = reps[i].neighbor_ids;
        out.clear();
        for (int g = 0; g < 24; ++g)
            if (best_id[g] >= 0) out.push_back(best_id[g]);
        std::sort(out.begin(), out.end());
    }
}

struct SmoothingConfig {
    double lambda = 0.25;
    double gamma = 40.0;
};

// One Jacobi pass: every site is updated from the same input snapshot. A site
// moves to p + lambda * (weighted neighbor mean - p), with Gaussian weights
// exp(-|p - p_j|^2 / d^2) where d is the max neighbor distance; the move is
// kept only when it exceeds 1/gamma of the mean neighbor distance. Sites with
// no neighbors, or whose neighbors all coincide with them, stay fixed.
struct SmoothStepResult {
    std::vector<Point3> positions;
    std::int64_t moved_count = 0;
};

inline SmoothStepResult smooth_step(const std::vector<Representative>& reps,
                                    const std::vector<Point3>& current, const SmoothingConfig& config) {
    SmoothStepResult result;
    result.positions = current;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& nbr = reps[i].neighbor_ids;
        if (nbr.empty()) continue;
        const Point3 p = current[i];

        double mean_d = 0.0;
        double max_d = 0.0;
        for (std::int32_t j : nbr) {
            const double d = distance(current[j], p);
            mean_d += d;
            if (d > max_d) max_d = d;
        }
        mean_d /= static_cast<double>(nbr.size());
        if (max_d <= 0.0) continue;

        const double inv_d2 = 1.0 / (max_d * max_d);
        double weight_sum = 0.0;
        Point3 pull;
        for (std::int32_t j : nbr) {
            const double w = std::exp(-squared_distance(current[j], p) * inv_d2);
            weight_sum += w;
            pull += w * (current[j] - p);
        }

        const Point3 moved = p + config.lambda * (pull / weight_sum);
        if (distance(moved, p) > mean_d / config.gamma) {
            result.positions[i] = moved;
            ++result.moved_count;
        }
    }
    return result;
}

// Iteration budget: normalize a copy of the sites into the origin-centered
// cube of side 2, average each site's mean neighbor distance there, and take
// floor(d_avg^2 * |Q| / 2). Sites without neighbors contribute nothing to
// d_avg; if none has neighbors the budget is zero.
inline std::int64_t compute_iteration_cap(const std::vector<Representative>& reps) {
    if (reps.empty()) return 0;
    PointCloud qc;
    qc.points.reserve(reps.size());
    for (const auto& r : reps) qc.points.push_back(r.position);
    const BoundingCube cube = compute_bounding_cube(qc);
    const double scale = 2.0 / cube.side;

    double sum = 0.0;
    std::int64_t with_neighbors = 0;
    for (const auto& r : reps) {
        if (r.neighbor_ids.empty()) continue;
        double mean_d = 0.0;
        for (std::int32_t j : r.neighbor_ids) mean_d += distance(reps[j].position, r.position);
        mean_d /= static_cast<double>(r.neighbor_ids.size());
        sum += mean_d * scale;
        ++with_neighbors;
    }
    if (with_neighbors == 0) return 0;
    const double d_avg = sum / static_cast<double>(with_neighbors);
    return static_cast<std::int64_t>(std::floor(d_avg * d_avg * static_cast<double>(reps.size()) / 2.0));
}

// Run smooth_step from the representatives' initial positions until a pass
// moves nothing or the iteration budget is spent. Smoothing happens in the
// original coordinates; the budget alone uses the normalized copy.
struct SmoothResult {
    std::vector<Point3> positions;
    std::int64_t iterations = 0;
    std::int64_t iteration_cap = 0;
};

inline SmoothResult smooth(const std::vector<Representative>& reps, const SmoothingConfig& config,
                           std::int64_t iteration_override = -1) {
    SmoothResult result;
    result.iteration_cap = iteration_override >= 0 ? iteration_override : compute_iteration_cap(reps);
    result.positions.reserve(reps.size());
    for (const auto& r : reps) result.positions.push_back(r.position);

    while (result.iterations < result.iteration_cap) {
        SmoothStepResult step = smooth_step(reps, result.positions, config);
        result.positions = std::move(step.positions);
        ++result.iterations;
        if (step.moved_count == 0) break;
    }
    return result;
}

} // namespace pcdn
