#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "geometry.hpp"
#include "octree.hpp"

namespace pcdn {

// Parameters for the synthetic contamination protocol. Fractions are of the
// tight bounding box diagonal D of the relevant cloud.
struct NoiseSpec {
    double gaussian_sigma_fraction = 0.0;    // per-point displacement scale, 0 disables
    std::int64_t white_noise_count = 5000;
    double white_noise_fraction = -1.0;      // >= 0 overrides the count with round(f * |cloud|)
    double cluster_probability = 0.05;       // chance an isolated white-noise point seeds a cluster
    double isolation_radius_fraction = 0.05; // isolation test radius
    int cluster_max_count = 400;             // R: cluster size is uniform on [1, R]
    double cluster_radius_scale = 0.001;     // cluster ball radius is this * r2 * D, r2 uniform [0,1]
    std::uint64_t seed = 0;
};

namespace detail {

inline Point3 uniform_unit_vector(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (;;) {
        const Point3 v{uni(rng), uni(rng), uni(rng)};
        const double n2 = squared_norm(v);
        if (n2 > 1e-12 && n2 <= 1.0) return v / std::sqrt(n2);
    }
}

inline Point3 uniform_in_ball(std::mt19937_64& rng, const Point3& center, double radius) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (;;) {
        const Point3 v{uni(rng), uni(rng), uni(rng)};
        if (squared_norm(v) <= 1.0) return center + radius * v;
    }
}

} // namespace detail

// Displace every point by s * u with s ~ N(0, sigma_fraction * D) and u a
// uniform random direction; D is the diagonal of the input's tight box. The
// output is labeled entirely `surface`.
inline PointCloud add_gaussian_perturbation(const PointCloud& cloud, double sigma_fraction,
                                            std::uint64_t seed) {
    detail::require_valid_cloud(cloud);
    if (sigma_fraction < 0.0) throw std::invalid_argument("sigma fraction must be >= 0");
    const double sigma = sigma_fraction * diagonal_length(cloud);

    PointCloud out;
    out.points.reserve(cloud.size());
    out.labels.assign(cloud.size(), PointLabel::surface);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const Point3& p : cloud.points) {
        if (sigma > 0.0) {
            const double s = sigma * gauss(rng);
            const Point3 u = detail::uniform_unit_vector(rng);
            out.points.push_back(p + s * u);
        } else {
            out.points.push_back(p);
        }
    }
    return out;
}

// Append `count` points uniform in the tight bounding box of the input,
// labeled white_noise. Unlabeled input points become `surface`.
inline PointCloud add_white_noise(const PointCloud& cloud, std::int64_t count, std::uint64_t seed) {
    detail::require_valid_cloud(cloud);
    if (count < 0) throw std::invalid_argument("white noise count must be >= 0");
    const AxisBox box = tight_bounding_box(cloud);

    PointCloud out;
    out.points = cloud.points;
    out.labels = cloud.has_labels() ? cloud.labels
                                    : std::vector<PointLabel>(cloud.size(), PointLabel::surface);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.min_corner.x, box.max_corner.x);
    std::uniform_real_distribution<double> uy(box.min_corner.y, box.max_corner.y);
    std::uniform_real_distribution<double> uz(box.min_corner.z, box.max_corner.z);
    for (std::int64_t i = 0; i < count; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        const double z = uz(rng);
        out.push_back(Point3{x, y, z}, PointLabel::white_noise);
    }
    return out;
}

// One spawned outlier cluster, recorded for auditing: the white-noise point
// that seeded it, where its points start in the output cloud, how many there
// are, and the ball radius they were drawn in.
struct OutlierCluster {
    std::uint32_t seed_point = 0;
    std::size_t first_point = 0;
    std::int32_t count = 0;
    double radius = 0.0;
};

struct ContaminationAudit {
    double diagonal = 0.0;              // D of the surface-labeled points
    std::int64_t isolated_white_noise = 0;
    std::vector<OutlierCluster> clusters;
};

// Grow outlier clusters around isolated white-noise points. A white-noise
// point is isolated when no surface-labeled point lies strictly within
// isolation_radius_fraction * D of it; each isolated point independently
// seeds a cluster with probability cluster_probability. A seeded cluster
// appends r1 ~ U{1..R} points uniform in the ball of radius
// cluster_radius_scale * r2 * D (r2 ~ U[0,1]) around the seed, labeled
// outlier. White-noise points are visited in cloud order and non-isolated
// ones consume no randomness.
inline PointCloud spawn_outlier_clusters(const PointCloud& cloud, const NoiseSpec& spec,
                                         std::uint64_t seed, ContaminationAudit* audit = nullptr) {
    detail::require_valid_cloud(cloud);
    if (!cloud.has_labels()) throw std::invalid_argument("cloud has no labels");
    if (spec.cluster_max_count < 1) throw std::invalid_argument("cluster max count must be >= 1");

    PointCloud surface;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (cloud.labels[i] == PointLabel::surface) surface.points.push_back(cloud.points[i]);
    const double diag = surface.empty() ? 0.0 : diagonal_length(surface);
    const double iso_radius = spec.isolation_radius_fraction * diag;

    // Hash grid over surface points at the isolation radius: any point within
    // iso_radius of a query lies in the query's cell or one of its 26
    // neighbors.
    std::unordered_map<GridCoord, std::vector<std::uint32_t>, GridCoordHash> grid;
    const double cell = iso_radius > 0.0 ? iso_radius : 1.0;
    const Point3 grid_origin = surface.empty() ? Point3{} : tight_bounding_box(surface).min_corner;
    auto cell_of = [&](const Point3& p) {
        return GridCoord{static_cast<std::int64_t>(std::floor((p.x - grid_origin.x) / cell)),
                         static_cast<std::int64_t>(std::floor((p.y - grid_origin.y) / cell)),
                         static_cast<std::int64_t>(std::floor((p.z - grid_origin.z) / cell))};
    };
    for (std::uint32_t i = 0; i < surface.size(); ++i) grid[cell_of(surface.points[i])].push_back(i);

    auto isolated = [&](const Point3& p) {
        if (iso_radius <= 0.0) return true;
        const GridCoord c = cell_of(p);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    const auto it = grid.find(GridCoord{c[0] + dx, c[1] + dy, c[2] + dz});
                    if (it == grid.end()) continue;
                    for (std::uint32_t si : it->second)
                        if (distance(surface.points[si], p) < iso_radius) return false;
                }
        return true;
    };

    PointCloud out = cloud;
    if (audit) {
        audit->diagonal = diag;
        audit->isolated_white_noise = 0;
        audit->clusters.clear();
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> size_draw(1, spec.cluster_max_count);
    std::uniform_real_distribution<double> radius_draw(0.0, 1.0);

    const std::size_t input_size = cloud.size();
    for (std::uint32_t i = 0; i < input_size; ++i) {
        if (cloud.labels[i] != PointLabel::white_noise) continue;
        if (!isolated(cloud.points[i])) continue;
        if (audit) ++audit->isolated_white_noise;
        if (coin(rng) >= spec.cluster_probability) continue;

        const int r1 = size_draw(rng);
        const double r2 = radius_draw(rng);
        const double radius = spec.cluster_radius_scale * r2 * diag;
        OutlierCluster record{i, out.size(), r1, radius};
        for (int k = 0; k < r1; ++k)
            out.push_back(detail::uniform_in_ball(rng, cloud.points[i], radius), PointLabel::outlier);
        if (audit) audit->clusters.push_back(record);
    }
    return out;
}

// Full contamination protocol: Gaussian perturbation of the surface, then
// white noise over the perturbed cloud's box, then outlier clusters around
// isolated white-noise points. Each stage draws from its own stream seeded
// off spec.seed, so stages stay reproducible independently of one another.
inline PointCloud contaminate(const PointCloud& cloud, const NoiseSpec& spec,
                              ContaminationAudit* audit = nullptr) {
    std::mt19937_64 master(spec.seed);
    const std::uint64_t s1 = master();
    const std::uint64_t s2 = master();
    const std::uint64_t s3 = master();

    PointCloud perturbed = add_gaussian_perturbation(cloud, spec.gaussian_sigma_fraction, s1);
    std::int64_t count = spec.white_noise_count;
    if (spec.white_noise_fraction >= 0.0)
        count = static_cast<std::int64_t>(std::llround(spec.white_noise_fraction * static_cast<double>(cloud.size())));
    PointCloud noisy = add_white_noise(perturbed, count, s2);
    return spawn_outlier_clusters(noisy, spec, s3, audit);
}

} // namespace pcdn
