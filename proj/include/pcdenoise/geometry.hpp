#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pcdn {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3() = default;
    Point3(double px, double py, double pz) : x(px), y(py), z(pz) {}

    double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    double& operator[](int axis) {
        switch (axis) {
        case 0: return x;
        case 1: return y;
        default: return z;
        }
    }

    Point3& operator+=(const Point3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Point3& operator-=(const Point3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Point3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Point3 operator+(Point3 a, const Point3& b) { return a += b; }
inline Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
inline Point3 operator*(Point3 a, double s) { return a *= s; }
inline Point3 operator*(double s, Point3 a) { return a *= s; }
inline Point3 operator/(Point3 a, double s) { return a *= (1.0 / s); }

inline bool operator==(const Point3& a, const Point3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
inline bool operator!=(const Point3& a, const Point3& b) { return !(a == b); }

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double squared_norm(const Point3& a) { return dot(a, a); }
inline double norm(const Point3& a) { return std::sqrt(squared_norm(a)); }
inline double squared_distance(const Point3& a, const Point3& b) { return squared_norm(a - b); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }
inline bool is_finite(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

// Provenance of a point in a contaminated cloud. Clouds without labels leave
// PointCloud::labels empty.
enum class PointLabel : std::uint8_t {
    surface = 0,
    white_noise = 1,
    outlier = 2,
};

struct PointCloud {
    std::vector<Point3> points;
    std::vector<PointLabel> labels; // empty, or exactly one label per point

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    bool has_labels() const { return !labels.empty(); }

    void push_back(const Point3& p) { points.push_back(p); }
    void push_back(const Point3& p, PointLabel label) {
        points.push_back(p);
        labels.push_back(label);
    }
};

// Axis-aligned cube; `side` is strictly positive.
struct BoundingCube {
    Point3 min_corner;
    double side = 1.0;

    Point3 center() const { return min_corner + Point3(side / 2, side / 2, side / 2); }
    bool contains(const Point3& p) const {
        return p.x >= min_corner.x && p.x <= min_corner.x + side &&
               p.y >= min_corner.y && p.y <= min_corner.y + side &&
               p.z >= min_corner.z && p.z <= min_corner.z + side;
    }
};

// Axis-aligned box, not necessarily a cube (min == max on an axis is allowed).
struct AxisBox {
    Point3 min_corner;
    Point3 max_corner;

    Point3 extents() const { return max_corner - min_corner; }
    double diagonal() const { return distance(min_corner, max_corner); }
};

namespace detail {

inline void require_valid_cloud(const PointCloud& cloud) {
    if (cloud.empty()) throw std::invalid_argument("empty input");
    for (const Point3& p : cloud.points)
        if (!is_finite(p)) throw std::invalid_argument("invalid point");
}

} // namespace detail

// Tight axis-aligned bounding box of the cloud.
inline AxisBox tight_bounding_box(const PointCloud& cloud) {
    detail::require_valid_cloud(cloud);
    AxisBox box{cloud.points.front(), cloud.points.front()};
    for (const Point3& p : cloud.points) {
        for (int a = 0; a < 3; ++a) {
            if (p[a] < box.min_corner[a]) box.min_corner[a] = p[a];
            if (p[a] > box.max_corner[a]) box.max_corner[a] = p[a];
        }
    }
    return box;
}

// Length of the tight bounding box diagonal.
inline double diagonal_length(const PointCloud& cloud) {
    if (cloud.empty()) throw std::invalid_argument("empty cloud");
    return tight_bounding_box(cloud).diagonal();
}

// Smallest axis-aligned cube containing the cloud, centered on the tight box.
// A cloud of coincident points has zero extent; the side falls back to 1.0 so
// the cube invariant (side > 0) holds.
inline BoundingCube compute_bounding_cube(const PointCloud& cloud) {
    const AxisBox box = tight_bounding_box(cloud);
    const Point3 ext = box.extents();
    double side = std::max({ext.x, ext.y, ext.z});
    if (side <= 0.0) side = 1.0;
    const Point3 c = 0.5 * (box.min_corner + box.max_corner);
    return BoundingCube{c - Point3(side / 2, side / 2, side / 2), side};
}

} // namespace pcdn
