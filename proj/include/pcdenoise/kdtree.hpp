#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "geometry.hpp"

namespace pcdn {

// Static k-d tree over a fixed point set. Median split on the widest axis;
// queries are deterministic (ties between equidistant points resolve to the
// lower point index).
class KdTree3 {
public:
    KdTree3() = default;
    explicit KdTree3(std::vector<Point3> pts) { build(std::move(pts)); }

    void build(std::vector<Point3> pts) {
        points_ = std::move(pts);
        nodes_.clear();
        nodes_.reserve(points_.size());
        std::vector<std::int32_t> order(points_.size());
        std::iota(order.begin(), order.end(), 0);
        root_ = build_range(order, 0, static_cast<std::int32_t>(order.size()));
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<Point3>& points() const { return points_; }

    // Indices of all points with distance(q, p) <= radius, ascending.
    std::vector<std::int32_t> radius_search(const Point3& q, double radius) const {
        std::vector<std::int32_t> hits;
        if (root_ >= 0 && radius >= 0.0) collect(root_, q, radius * radius, hits);
        std::sort(hits.begin(), hits.end());
        return hits;
    }

    // Index of the closest point, or -1 on an empty tree.
    std::int32_t nearest(const Point3& q, double* out_distance = nullptr) const {
        std::int32_t best = -1;
        double best_d2 = 0.0;
        if (root_ >= 0) descend(root_, q, best, best_d2);
        if (out_distance) *out_distance = best < 0 ? 0.0 : std::sqrt(best_d2);
        return best;
    }

private:
    struct Node {
        std::int32_t point = -1;
        std::int32_t axis = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    std::int32_t build_range(std::vector<std::int32_t>& order, std::int32_t begin, std::int32_t end) {
        if (begin >= end) return -1;
        Point3 lo = points_[order[begin]];
        Point3 hi = lo;
        for (std::int32_t i = begin; i < end; ++i) {
            const Point3& p = points_[order[i]];
            for (int a = 0; a < 3; ++a) {
                if (p[a] < lo[a]) lo[a] = p[a];
                if (p[a] > hi[a]) hi[a] = p[a];
            }
        }
        int axis = 0;
        for (int a = 1; a < 3; ++a)
            if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;

        const std::int32_t mid = begin + (end - begin) / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                         [&](std::int32_t a, std::int32_t b) {
                             const double ca = points_[a][axis];
                             const double cb = points_[b][axis];
                             return ca < cb || (ca == cb && a < b);
                         });

        const std::int32_t ni = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(Node{order[mid], axis, -1, -1});
        const std::int32_t left = build_range(order, begin, mid);
        const std::int32_t right = build_range(order, mid + 1, end);
        nodes_[ni].left = left;
        nodes_[ni].right = right;
        return ni;
    }

    void collect(std::int32_t ni, const Point3& q, double r2, std::vector<std::int32_t>& hits) const {
        const Node& n = nodes_[ni];
        const Point3& p = points_[n.point];
        if (squared_distance(p, q) <= r2) hits.push_back(n.point);
        const double delta = q[n.axis] - p[n.axis];
        if (n.left >= 0 && (delta <= 0.0 || delta * delta <= r2)) collect(n.left, q, r2, hits);
        if (n.right >= 0 && (delta >= 0.0 || delta * delta <= r2)) collect(n.right, q, r2, hits);
    }

    void descend(std::int32_t ni, const Point3& q, std::int32_t& best, double& best_d2) const {
        const Node& n = nodes_[ni];
        const Point3& p = points_[n.point];
        const double d2 = squared_distance(p, q);
        if (best < 0 || d2 < best_d2 || (d2 == best_d2 && n.point < best)) {
            best = n.point;
            best_d2 = d2;
        }
        const double delta = q[n.axis] - p[n.axis];
        const std::int32_t near = delta <= 0.0 ? n.left : n.right;
        const std::int32_t far = delta <= 0.0 ? n.right : n.left;
        if (near >= 0) descend(near, q, best, best_d2);
        if (far >= 0 && delta * delta <= best_d2) descend(far, q, best, best_d2);
    }

    std::vector<Point3> points_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

} // namespace pcdn
