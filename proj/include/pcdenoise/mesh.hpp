#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"

namespace pcdn {

struct TriangleMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<std::int32_t, 3>> triangles;
};

// Circumradius a*b*c / (4*Area). A triangle whose area is at most
// 1e-15 * (longest edge)^2 is degenerate.
inline double circumradius(const Point3& p0, const Point3& p1, const Point3& p2) {
    const double a = distance(p1, p2);
    const double b = distance(p0, p2);
    const double c = distance(p0, p1);
    const double area = 0.5 * norm(cross(p1 - p0, p2 - p0));
    const double longest = std::max({a, b, c});
    if (area <= 1e-15 * longest * longest) throw std::runtime_error("degenerate triangle");
    return a * b * c / (4.0 * area);
}

inline double triangle_circumradius(const TriangleMesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangles[t];
    return circumradius(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
}

struct CircumradiusStats {
    std::vector<double> radii; // per triangle
    double r_avg = 0.0;
    double r_sd = 0.0; // population standard deviation
};

inline CircumradiusStats circumradius_stats(const TriangleMesh& mesh) {
    CircumradiusStats stats;
    stats.radii.reserve(mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        stats.radii.push_back(triangle_circumradius(mesh, t));
    const std::size_t m = stats.radii.size();
    if (m == 0) return stats;
    double sum = 0.0;
    for (double r : stats.radii) sum += r;
    stats.r_avg = sum / static_cast<double>(m);
    double ss = 0.0;
    for (double r : stats.radii) ss += (r - stats.r_avg) * (r - stats.r_avg);
    stats.r_sd = std::sqrt(ss / static_cast<double>(m));
    return stats;
}

// Drop triangles whose circumradius exceeds r_avg + epsilon * r_sd (strictly).
// Vertices are kept as-is, so indices in the surviving triangles stay valid
// and orphaned vertices remain until drop_orphan_vertices.
inline TriangleMesh prune_large_triangles(const TriangleMesh& mesh, double epsilon) {
    const CircumradiusStats stats = circumradius_stats(mesh);
    const double cutoff = stats.r_avg + epsilon * stats.r_sd;
    TriangleMesh out;
    out.vertices = mesh.vertices;
    out.triangles.reserve(mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        if (!(stats.radii[t] > cutoff)) out.triangles.push_back(mesh.triangles[t]);
    return out;
}

// Remove vertices referenced by no triangle, remapping indices and keeping
// the survivors' relative order.
inline TriangleMesh drop_orphan_vertices(const TriangleMesh& mesh) {
    std::vector<char> used(mesh.vertices.size(), 0);
    for (const auto& tri : mesh.triangles)
        for (std::int32_t v : tri) used[v] = 1;

    std::vector<std::int32_t> remap(mesh.vertices.size(), -1);
    TriangleMesh out;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!used[v]) continue;
        remap[v] = static_cast<std::int32_t>(out.vertices.size());
        out.vertices.push_back(mesh.vertices[v]);
    }
    out.triangles.reserve(mesh.triangles.size());
    for (const auto& tri : mesh.triangles)
        out.triangles.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
    return out;
}

// Jacobi Laplacian smoothing on the vertex 1-ring: each pass moves every
// connected vertex by step * (ring mean - vertex), all passes reading the
// previous positions. Isolated vertices stay fixed.
inline TriangleMesh mesh_laplacian_smooth(const TriangleMesh& mesh, int iterations, double step) {
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    std::vector<std::vector<std::int32_t>> ring(mesh.vertices.size());
    for (const auto& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const std::int32_t u = tri[e];
            const std::int32_t v = tri[(e + 1) % 3];
            ring[u].push_back(v);
            ring[v].push_back(u);
        }
    }
    for (auto& r : ring) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }

    TriangleMesh out = mesh;
    std::vector<Point3> next(out.vertices.size());
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t v = 0; v < out.vertices.size(); ++v) {
            if (ring[v].empty()) {
                next[v] = out.vertices[v];
                continue;
            }
            Point3 mean;
            for (std::int32_t u : ring[v]) mean += out.vertices[u];
            mean = mean / static_cast<double>(ring[v].size());
            next[v] = out.vertices[v] + step * (mean - out.vertices[v]);
        }
        out.vertices.swap(next);
    }
    return out;
}

} // namespace pcdn
