#pragma once

// Deterministic synthetic inputs shared by the unit and acceptance suites.
// Every generator takes an explicit seed (or none at all) so any failure
// reproduces from the test name alone.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <pcdenoise/geometry.hpp>
#include <pcdenoise/mesh.hpp>

namespace fixtures {

using pcdn::Point3;
using pcdn::PointCloud;
using pcdn::TriangleMesh;

inline PointCloud uniform_box(std::size_t n, std::uint64_t seed, double side = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, side);
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = uni(rng);
        const double y = uni(rng);
        const double z = uni(rng);
        cloud.push_back(Point3{x, y, z});
    }
    return cloud;
}

// Random directions via normalized Gaussian triples: points lie exactly on
// the sphere up to the final multiplication.
inline PointCloud sphere_surface(std::size_t n, std::uint64_t seed, double radius = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = gauss(rng);
        const double y = gauss(rng);
        const double z = gauss(rng);
        const double len = std::sqrt(x * x + y * y + z * z);
        if (len < 1e-12) {
            cloud.push_back(Point3{radius, 0.0, 0.0});
        } else {
            cloud.push_back(Point3{radius * x / len, radius * y / len, radius * z / len});
        }
    }
    return cloud;
}

// Golden-angle spiral: near-uniform spacing ~ radius * sqrt(4*pi/n), with no
// randomness at all.
inline PointCloud fibonacci_sphere(std::size_t n, double radius = 1.0) {
    const double golden = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden * static_cast<double>(i);
        cloud.push_back(Point3{radius * r * std::cos(th), radius * r * std::sin(th), radius * z});
    }
    return cloud;
}

// Isotropic Gaussian blobs with centers uniform in a box; points are dealt to
// blobs round-robin so every blob is populated.
inline PointCloud gaussian_blobs(std::size_t n, std::uint64_t seed, int blob_count, double box_side,
                                 double sigma) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, box_side);
    std::normal_distribution<double> gauss(0.0, sigma);
    std::vector<Point3> centers;
    centers.reserve(blob_count);
    for (int b = 0; b < blob_count; ++b) {
        const double x = uni(rng);
        const double y = uni(rng);
        const double z = uni(rng);
        centers.push_back(Point3{x, y, z});
    }
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point3& c = centers[i % centers.size()];
        const double x = gauss(rng);
        const double y = gauss(rng);
        const double z = gauss(rng);
        cloud.push_back(c + Point3{x, y, z});
    }
    return cloud;
}

// Planar circle in z = 0 with Gaussian radial displacement.
inline PointCloud noisy_circle(std::size_t n, std::uint64_t seed, double radius, double radial_sigma) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    std::normal_distribution<double> gauss(0.0, radial_sigma);
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = angle(rng);
        const double r = radius + gauss(rng);
        cloud.push_back(Point3{r * std::cos(th), r * std::sin(th), 0.0});
    }
    return cloud;
}

// The randomized cloud corpus: 50 clouds, sizes log-spaced over [1e3, 5e4],
// cycling uniform volume / spherical surface / clustered blobs.
constexpr int kCorpusSize = 50;

inline std::size_t corpus_point_count(int i) {
    const double t = static_cast<double>(i) / 49.0;
    return static_cast<std::size_t>(std::llround(1000.0 * std::pow(50.0, t)));
}

inline PointCloud corpus_cloud(int i) {
    const std::size_t n = corpus_point_count(i);
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    switch (i % 3) {
    case 0: return uniform_box(n, seed, 10.0);
    case 1: return sphere_surface(n, seed, 1.0 + 0.5 * (i % 5));
    default: {
        const int blobs = 3 + i % 6;
        const double sigma = 10.0 * std::pow(10.0, -1.0 - static_cast<double>(i % 3));
        return gaussian_blobs(n, seed, blobs, 10.0, sigma);
    }
    }
}

inline const char* corpus_kind(int i) {
    switch (i % 3) {
    case 0: return "uniform";
    case 1: return "surface";
    default: return "clustered";
    }
}

// Icosphere: icosahedron subdivided `subdivisions` times, vertices projected
// onto the unit sphere. Triangle count is 20 * 4^subdivisions.
inline TriangleMesh icosphere(int subdivisions) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh mesh;
    const double raw[12][3] = {{-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
                               {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
                               {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
    for (const auto& v : raw) {
        const Point3 p{v[0], v[1], v[2]};
        mesh.vertices.push_back(p / pcdn::norm(p));
    }
    const std::int32_t faces[20][3] = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (const auto& f : faces) mesh.triangles.push_back({f[0], f[1], f[2]});

    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> midpoint;
        auto mid = [&](std::int32_t a, std::int32_t b) {
            const auto key = std::minmax(a, b);
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const Point3 m = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
            const std::int32_t idx = static_cast<std::int32_t>(mesh.vertices.size());
            mesh.vertices.push_back(m / pcdn::norm(m));
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<std::int32_t, 3>> next;
        next.reserve(mesh.triangles.size() * 4);
        for (const auto& t : mesh.triangles) {
            const std::int32_t ab = mid(t[0], t[1]);
            const std::int32_t bc = mid(t[1], t[2]);
            const std::int32_t ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        mesh.triangles = std::move(next);
    }
    return mesh;
}

// Hub above the origin connected to a planar rim cycle of unit radius.
inline TriangleMesh wheel_mesh(int rim_vertices, double hub_height) {
    TriangleMesh mesh;
    mesh.vertices.push_back(Point3{0.0, 0.0, hub_height});
    for (int i = 0; i < rim_vertices; ++i) {
        const double th = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / rim_vertices;
        mesh.vertices.push_back(Point3{std::cos(th), std::sin(th), 0.0});
    }
    for (int i = 0; i < rim_vertices; ++i)
        mesh.triangles.push_back({0, 1 + i, 1 + (i + 1) % rim_vertices});
    return mesh;
}

} // namespace fixtures
