// Acceptance gate for the denoising library. Each criterion prints exactly
// one [PASS] or [FAIL] line with its measured values; extra context lines are
// prefixed [INFO]. The process exit code is the number of failed criteria.
//
// The thresholds below are pinned. Loosening one is a contract change, not a
// test fix.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <pcdenoise/clustering.hpp>
#include <pcdenoise/contamination.hpp>
#include <pcdenoise/density_filter.hpp>
#include <pcdenoise/mesh.hpp>
#include <pcdenoise/octree.hpp>
#include <pcdenoise/pipeline.hpp>
#include <pcdenoise/smoothing.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace {

constexpr double kCorpusBudgetSeconds = 60.0;      // C1: full corpus octree audit
constexpr double kClusterSigmas = 3.0;             // C3: binomial band on the cluster count
constexpr double kRadiusSlack = 1e-9;              // C3: multiplicative slack on ball containment
constexpr double kRecallFloor = 0.99;              // C4: surface fraction extraction must retain
constexpr double kRemovalFloor = 0.95;             // C4: noise fraction extraction must remove
constexpr double kExtractionBudgetSeconds = 30.0;  // C4: contaminate + extract, wall clock
constexpr double kStatsRelTolerance = 1e-9;        // C5: recomputed moment agreement
constexpr double kRmsRatioCeiling = 0.50;          // C6: smoothed vs initial radial RMS
constexpr std::size_t kNeighborBudget = 24;        // C6: per-representative neighbor bound
constexpr double kJacobiTolerance = 1e-12;         // C6: shuffled-order re-run agreement
constexpr double kWeightFloor = 0.36787944117144233 - 1e-15; // C7: exp(-1) minus FP slack
constexpr double kConvexityTolerance = 1e-12;      // C7: re-derived update agreement
constexpr double kCircumradiusRelTol = 1e-9;       // C8: closed form vs linear-system oracle
constexpr double kRunBudgetSeconds = 120.0;        // C9: one full pipeline run

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

// --- C1: octree balance and leaf invariants ----------------------------------

bool c1_octree_invariants(std::string& detail) {
    const auto t0 = Clock::now();
    std::size_t leaves = 0;
    std::size_t pairs = 0;
    for (int i = 0; i < fixtures::kCorpusSize; ++i) {
        const pcdn::PointCloud cloud = fixtures::corpus_cloud(i);
        const pcdn::Octree tree = pcdn::build_adaptive_octree(cloud);
        const oracles::BalanceAudit audit = oracles::audit_octree(tree, cloud);
        leaves += audit.leaves;
        pairs += audit.contacting_pairs;
        if (audit.max_level_gap > 1 || audit.splittable_nonempty_leaves != 0 ||
            !audit.points_partitioned) {
            detail = format(
                "cloud %d (%s, %zu points): level gap %d, splittable leaves %zu, partitioned %d",
                i, fixtures::corpus_kind(i), cloud.size(), audit.max_level_gap,
                audit.splittable_nonempty_leaves, static_cast<int>(audit.points_partitioned));
            return false;
        }
    }
    const double secs = seconds_since(t0);
    detail = format("%d clouds, %zu leaves, %zu contacting pairs audited in %.1fs (budget %.0fs)",
                    fixtures::kCorpusSize, leaves, pairs, secs, kCorpusBudgetSeconds);
    return secs < kCorpusBudgetSeconds;
}

// --- C2: uniform grid contract ------------------------------------------------

bool c2_uniformization_contract(std::string& detail) {
    for (int i = 0; i < fixtures::kCorpusSize; ++i) {
        const pcdn::PointCloud cloud = fixtures::corpus_cloud(i);
        const pcdn::Octree tree = pcdn::build_adaptive_octree(cloud);
        const pcdn::UniformLeafGrid grid = pcdn::uniformize(tree, cloud, 2.0);

        // Mean non-empty leaf size recomputed from the raw node list, in node
        // order so the comparison below stays exact.
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& n : tree.nodes)
            if (n.is_leaf() && !n.point_indices.empty()) {
                sum += std::ldexp(tree.root_cube.side, -n.level);
                ++count;
            }
        const double target = 2.0 * (sum / static_cast<double>(count));

        if (grid.cell_size != std::ldexp(grid.root_side, -grid.depth)) {
            detail = format("cloud %d: cell size is not root_side / 2^%d", i, grid.depth);
            return false;
        }
        if (!(grid.cell_size <= target && grid.cell_size > 0.5 * target)) {
            detail = format("cloud %d: cell size %.17g outside (%.17g, %.17g]", i, grid.cell_size,
                            0.5 * target, target);
            return false;
        }

        std::vector<std::uint32_t> indices;
        bool consistent = true;
        for (const auto& [coord, pts] : grid.cells) {
            if (pts.empty()) consistent = false; // only occupied cells may exist
            for (std::uint32_t pi : pts) {
                indices.push_back(pi);
                if (grid.cell_of(cloud.points[pi]) != coord) consistent = false;
            }
        }
        std::sort(indices.begin(), indices.end());
        for (std::size_t k = 0; k < indices.size(); ++k)
            if (indices[k] != k) consistent = false;
        if (!consistent || indices.size() != cloud.size()) {
            detail = format("cloud %d: points not conserved across cells", i);
            return false;
        }
    }
    detail = format("%d clouds: dyadic cell size, half-open size interval, point conservation",
                    fixtures::kCorpusSize);
    return true;
}

// --- C3: contamination protocol fidelity ---------------------------------------

bool c3_contamination_fidelity(std::string& detail) {
    const pcdn::PointCloud base = fixtures::sphere_surface(10000, 303);
    pcdn::NoiseSpec spec;
    spec.gaussian_sigma_fraction = 0.01;
    spec.white_noise_count = 5000;
    spec.cluster_max_count = 400;
    spec.seed = 9001;

    pcdn::ContaminationAudit audit;
    const pcdn::PointCloud dirty = pcdn::contaminate(base, spec, &audit);

    const double isolated = static_cast<double>(audit.isolated_white_noise);
    const double expected = spec.cluster_probability * isolated;
    const double sigma =
        std::sqrt(isolated * spec.cluster_probability * (1.0 - spec.cluster_probability));
    const double clusters = static_cast<double>(audit.clusters.size());
    if (std::abs(clusters - expected) > kClusterSigmas * sigma) {
        detail = format("%zu clusters vs %.1f +- %.1f expected from %lld isolated seeds",
                        audit.clusters.size(), expected, kClusterSigmas * sigma,
                        static_cast<long long>(audit.isolated_white_noise));
        return false;
    }

    const double radius_cap = spec.cluster_radius_scale * audit.diagonal * (1.0 + kRadiusSlack);
    std::int64_t cluster_points = 0;
    for (const auto& cl : audit.clusters) {
        if (cl.radius > radius_cap) {
            detail = format("cluster radius %.17g exceeds 0.001 * diagonal", cl.radius);
            return false;
        }
        const pcdn::Point3 seed = dirty.points[cl.seed_point];
        for (std::int32_t k = 0; k < cl.count; ++k) {
            const std::size_t pi = cl.first_point + static_cast<std::size_t>(k);
            if (dirty.labels[pi] != pcdn::PointLabel::outlier ||
                pcdn::distance(dirty.points[pi], seed) > cl.radius * (1.0 + kRadiusSlack)) {
                detail = format("cluster point %zu escapes its recorded ball", pi);
                return false;
            }
        }
        cluster_points += cl.count;
    }
    std::int64_t outliers = 0;
    for (pcdn::PointLabel l : dirty.labels)
        if (l == pcdn::PointLabel::outlier) ++outliers;
    if (outliers != cluster_points) {
        detail = format("%lld outlier labels vs %lld cluster points",
                        static_cast<long long>(outliers), static_cast<long long>(cluster_points));
        return false;
    }

    pcdn::ContaminationAudit audit2;
    const pcdn::PointCloud rerun = pcdn::contaminate(base, spec, &audit2);
    bool identical = rerun.size() == dirty.size() && rerun.labels == dirty.labels &&
                     audit2.diagonal == audit.diagonal &&
                     audit2.isolated_white_noise == audit.isolated_white_noise &&
                     audit2.clusters.size() == audit.clusters.size();
    if (identical)
        identical = std::memcmp(rerun.points.data(), dirty.points.data(),
                                dirty.size() * sizeof(pcdn::Point3)) == 0;
    for (std::size_t c = 0; identical && c < audit.clusters.size(); ++c) {
        const auto& a = audit.clusters[c];
        const auto& b = audit2.clusters[c];
        identical = a.seed_point == b.seed_point && a.first_point == b.first_point &&
                    a.count == b.count && a.radius == b.radius;
    }
    if (!identical) {
        detail = "rerun with the same seed differs";
        return false;
    }

    detail = format(
        "%zu clusters within %.0f sigma of %.1f, %lld outliers inside their balls, rerun bit-identical",
        audit.clusters.size(), kClusterSigmas, expected, static_cast<long long>(outliers));
    return true;
}

// --- C4: noise removal by largest-component extraction -------------------------

bool c4_extraction_effectiveness(std::string& detail) {
    const auto t0 = Clock::now();
    const std::int64_t surface_count = 20000;
    const pcdn::PointCloud surface = fixtures::fibonacci_sphere(surface_count);
    pcdn::NoiseSpec spec;
    spec.gaussian_sigma_fraction = 0.0;
    spec.white_noise_count = surface_count; // white noise at 100% of the surface count
    spec.cluster_max_count = 100;
    spec.seed = 7301;
    const pcdn::PointCloud dirty = pcdn::contaminate(surface, spec);

    const pcdn::Octree tree = pcdn::build_adaptive_octree(dirty);
    const pcdn::UniformLeafGrid grid = pcdn::uniformize(tree, dirty, 2.0);
    const pcdn::LeafGraph graph = pcdn::build_leaf_graph(grid);
    const pcdn::ComponentLabeling labeling = pcdn::connected_components(graph);
    const pcdn::PointCloud kept = pcdn::extract_k_largest(grid, graph, labeling, 1, dirty);

    std::int64_t surface_kept = 0;
    std::int64_t noise_kept = 0;
    for (pcdn::PointLabel l : kept.labels)
        ++(l == pcdn::PointLabel::surface ? surface_kept : noise_kept);
    const std::int64_t noise_total = static_cast<std::int64_t>(dirty.size()) - surface_count;
    const double recall = static_cast<double>(surface_kept) / static_cast<double>(surface_count);
    const double removal = 1.0 - static_cast<double>(noise_kept) / static_cast<double>(noise_total);
    const double secs = seconds_since(t0);

    // Context: the documented protocol follows extraction with the density
    // filter; measure that combination on the same fixture.
    const std::vector<std::int32_t> order = pcdn::rank_components(labeling);
    const pcdn::UniformLeafGrid largest = pcdn::component_grid(grid, graph, labeling, order[0]);
    const pcdn::DensityFilterResult filtered = pcdn::prune_very_noisy(largest, 2.0);
    std::int64_t f_surface = 0;
    std::int64_t f_noise = 0;
    for (const auto& [coord, pts] : filtered.grid.cells)
        for (std::uint32_t pi : pts)
            ++(dirty.labels[pi] == pcdn::PointLabel::surface ? f_surface : f_noise);
    std::printf("[INFO] C4 extraction plus density filter (beta=2): recall %.4f, removal %.4f\n",
                static_cast<double>(f_surface) / static_cast<double>(surface_count),
                1.0 - static_cast<double>(f_noise) / static_cast<double>(noise_total));

    detail = format("recall %.4f (floor %.2f), removal %.4f (floor %.2f), %.1fs (budget %.0fs)",
                    recall, kRecallFloor, removal, kRemovalFloor, secs, kExtractionBudgetSeconds);
    return recall >= kRecallFloor && removal >= kRemovalFloor && secs < kExtractionBudgetSeconds;
}

// --- C5: density filter termination --------------------------------------------

bool c5_density_termination(std::string& detail) {
    int guarded = 0;
    std::int64_t iterations_total = 0;
    for (int i = 0; i < fixtures::kCorpusSize; ++i) {
        const pcdn::PointCloud cloud = fixtures::corpus_cloud(i);
        const pcdn::Octree tree = pcdn::build_adaptive_octree(cloud);
        const pcdn::UniformLeafGrid grid = pcdn::uniformize(tree, cloud, 2.0);
        const pcdn::DensityFilterResult result = pcdn::prune_very_noisy(grid, 2.0);
        const pcdn::DensityFilterReport& report = result.report;
        iterations_total += static_cast<std::int64_t>(report.iterations.size());

        std::int64_t cells_removed = 0;
        std::int64_t points_removed = 0;
        bool productive = true;
        for (const auto& it : report.iterations) {
            productive = productive && it.cells_removed >= 1 && it.points_removed >= it.cells_removed;
            cells_removed += it.cells_removed;
            points_removed += it.points_removed;
        }
        const bool tallies_match =
            cells_removed ==
                static_cast<std::int64_t>(grid.cells.size() - result.grid.cells.size()) &&
            points_removed ==
                static_cast<std::int64_t>(grid.point_count() - result.grid.point_count());

        double avg = 0.0;
        double sd = 0.0;
        oracles::recompute_block_stats(result.grid, avg, sd);
        const bool stats_match =
            std::abs(report.final_n_avg - avg) <= kStatsRelTolerance * std::max(1.0, std::abs(avg)) &&
            std::abs(report.final_n_sd - sd) <= kStatsRelTolerance * std::max(1.0, std::abs(sd));

        bool terminated = false;
        if (report.guard == pcdn::DensityGuard::none) {
            terminated = report.exit_condition_met && 2.0 * sd <= avg * (1.0 + kStatsRelTolerance);
        } else if (report.guard == pcdn::DensityGuard::min_cells) {
            terminated = result.grid.cells.size() < 8;
            ++guarded;
        } // zero_removal cannot fire: the smallest cell never exceeds the percentile cutoff

        if (!(productive && tallies_match && stats_match && terminated)) {
            detail = format("cloud %d (%s): guard %s, exit flag %d, stats ok %d, tallies ok %d", i,
                            fixtures::corpus_kind(i), pcdn::to_string(report.guard),
                            static_cast<int>(report.exit_condition_met),
                            static_cast<int>(stats_match), static_cast<int>(tallies_match));
            return false;
        }
    }
    detail = format(
        "%d runs terminated (%d via the small-grid guard), %lld productive iterations, moments recomputed to %.0e",
        fixtures::kCorpusSize, guarded, static_cast<long long>(iterations_total),
        kStatsRelTolerance);
    return true;
}

// --- C6: smoothing improvement --------------------------------------------------

double radial_rms(const std::vector<pcdn::Point3>& positions) {
    double ss = 0.0;
    for (const pcdn::Point3& p : positions) {
        const double d = pcdn::norm(p) - 1.0;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(positions.size()));
}

bool c6_smoothing_improvement(std::string& detail) {
    const pcdn::PointCloud clean = fixtures::sphere_surface(10000, 11);
    const pcdn::PointCloud noisy = pcdn::add_gaussian_perturbation(clean, 0.01, 5);
    std::vector<pcdn::Representative> reps = pcdn::build_representatives(noisy);
    pcdn::select_neighbors(reps);

    std::size_t max_neighbors = 0;
    for (const auto& r : reps) max_neighbors = std::max(max_neighbors, r.neighbor_ids.size());
    if (max_neighbors > kNeighborBudget) {
        detail = format("a representative holds %zu neighbors (budget %zu)", max_neighbors,
                        kNeighborBudget);
        return false;
    }

    std::vector<pcdn::Point3> initial;
    initial.reserve(reps.size());
    for (const auto& r : reps) initial.push_back(r.position);

    const pcdn::SmoothResult smoothed = pcdn::smooth(reps, pcdn::SmoothingConfig{});
    const double before = radial_rms(initial);
    const double after = radial_rms(smoothed.positions);
    const double ratio = after / before;
    if (!(smoothed.iterations >= 1 && ratio <= kRmsRatioCeiling)) {
        detail = format("radial RMS %.5f -> %.5f after %lld iterations, ratio %.3f (ceiling %.2f)",
                        before, after, static_cast<long long>(smoothed.iterations), ratio,
                        kRmsRatioCeiling);
        return false;
    }

    // Symmetric configuration: the balanced axis star must not move at all.
    std::vector<pcdn::Representative> star(7);
    star[0].position = {0.0, 0.0, 0.0};
    star[0].neighbor_ids = {1, 2, 3, 4, 5, 6};
    std::size_t s = 1;
    for (int axis = 0; axis < 3; ++axis)
        for (double sign : {1.0, -1.0}) {
            star[s].position = {0.0, 0.0, 0.0};
            star[s].position[axis] = sign;
            ++s;
        }
    for (auto& r : star) r.source_leaf_size = 1.0;
    const pcdn::SmoothResult fixed = pcdn::smooth(star, pcdn::SmoothingConfig{}, 5);
    bool fixpoint = fixed.iterations == 1;
    for (std::size_t i = 0; i < star.size(); ++i)
        fixpoint = fixpoint && fixed.positions[i] == star[i].position;
    if (!fixpoint) {
        detail = "the balanced star moved under smoothing";
        return false;
    }

    // Jacobi passes read only the previous snapshot, so the site processing
    // order cannot matter. Re-run with the sites shuffled; each site keeps its
    // own neighbor list order so only the processing order changes.
    std::mt19937_64 rng(606);
    std::vector<std::int32_t> order(reps.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::int32_t> to_new(reps.size());
    for (std::size_t k = 0; k < order.size(); ++k) to_new[order[k]] = static_cast<std::int32_t>(k);
    std::vector<pcdn::Representative> shuffled(reps.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        shuffled[k] = reps[order[k]];
        for (auto& id : shuffled[k].neighbor_ids) id = to_new[id];
    }

    const pcdn::SmoothResult again =
        pcdn::smooth(shuffled, pcdn::SmoothingConfig{}, smoothed.iteration_cap);
    double max_dev = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const pcdn::Point3 d = again.positions[k] - smoothed.positions[order[k]];
        max_dev = std::max({max_dev, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
    }
    if (again.iterations != smoothed.iterations || max_dev > kJacobiTolerance) {
        detail = format("shuffled re-run deviates by %.1e (tolerance %.0e)", max_dev,
                        kJacobiTolerance);
        return false;
    }

    detail = format(
        "radial RMS %.5f -> %.5f (ratio %.3f <= %.2f) in %lld iterations, max %zu neighbors, star fixed, shuffle dev %.1e",
        before, after, ratio, kRmsRatioCeiling, static_cast<long long>(smoothed.iterations),
        max_neighbors, max_dev);
    return true;
}

// --- C7: smoothing analytics -----------------------------------------------------

pcdn::PointCloud c7_fixture(int f) {
    const std::uint64_t seed = 4100 + static_cast<std::uint64_t>(f);
    switch (f % 3) {
    case 0: return fixtures::sphere_surface(1200 + 137 * f, seed);
    case 1: return fixtures::uniform_box(1000 + 151 * f, seed, 5.0);
    default: return fixtures::gaussian_blobs(900 + 173 * f, seed, 3 + f % 4, 8.0, 0.3);
    }
}

bool c7_smoothing_analytics(std::string& detail) {
    const pcdn::SmoothingConfig config;
    std::int64_t pairs_checked = 0;
    std::int64_t moves_checked = 0;
    double w_min = 1.0;

    for (int f = 0; f < 10; ++f) {
        const pcdn::PointCloud cloud = c7_fixture(f);
        std::vector<pcdn::Representative> reps = pcdn::build_representatives(cloud);
        pcdn::select_neighbors(reps);

        const std::int64_t cap = pcdn::compute_iteration_cap(reps);
        const std::int64_t oracle_cap = oracles::normalized_iteration_cap(reps);
        if (cap != oracle_cap) {
            detail = format("fixture %d: iteration cap %lld != oracle %lld", f,
                            static_cast<long long>(cap), static_cast<long long>(oracle_cap));
            return false;
        }

        std::vector<pcdn::Point3> current;
        current.reserve(reps.size());
        pcdn::Point3 lo = reps[0].position;
        pcdn::Point3 hi = reps[0].position;
        double extent = 0.0;
        for (const auto& r : reps) {
            current.push_back(r.position);
            for (int a = 0; a < 3; ++a) {
                lo[a] = std::min(lo[a], r.position[a]);
                hi[a] = std::max(hi[a], r.position[a]);
                extent = std::max(extent, std::abs(r.position[a]));
            }
        }
        const double tol = kConvexityTolerance * (1.0 + extent);

        for (std::int64_t step = 0; step < cap; ++step) {
            // Re-derive the whole pass: weights, convex update, accept rule.
            std::vector<pcdn::Point3> expected = current;
            for (std::size_t i = 0; i < reps.size(); ++i) {
                const auto& nbr = reps[i].neighbor_ids;
                if (nbr.empty()) continue;
                const pcdn::Point3 p = current[i];
                double mean_d = 0.0;
                double max_d = 0.0;
                for (std::int32_t j : nbr) {
                    const double d = pcdn::distance(current[j], p);
                    mean_d += d;
                    if (d > max_d) max_d = d;
                }
                mean_d /= static_cast<double>(nbr.size());
                if (max_d <= 0.0) continue;

                const double inv = 1.0 / (max_d * max_d);
                double wsum = 0.0;
                pcdn::Point3 pull;
                pcdn::Point3 blo = p;
                pcdn::Point3 bhi = p;
                for (std::int32_t j : nbr) {
                    const double w = std::exp(-pcdn::squared_distance(current[j], p) * inv);
                    if (!(w >= kWeightFloor && w <= 1.0)) {
                        detail = format("fixture %d step %lld: weight %.17g outside [1/e, 1]", f,
                                        static_cast<long long>(step), w);
                        return false;
                    }
                    w_min = std::min(w_min, w);
                    ++pairs_checked;
                    wsum += w;
                    pull += w * (current[j] - p);
                    for (int a = 0; a < 3; ++a) {
                        blo[a] = std::min(blo[a], current[j][a]);
                        bhi[a] = std::max(bhi[a], current[j][a]);
                    }
                }
                const pcdn::Point3 moved = p + config.lambda * (pull / wsum);
                for (int a = 0; a < 3; ++a)
                    if (moved[a] < blo[a] - tol || moved[a] > bhi[a] + tol) {
                        detail = format("fixture %d step %lld: update left its neighbor box", f,
                                        static_cast<long long>(step));
                        return false;
                    }
                if (pcdn::distance(moved, p) > mean_d / config.gamma) {
                    expected[i] = moved;
                    ++moves_checked;
                }
            }

            const pcdn::SmoothStepResult pass = pcdn::smooth_step(reps, current, config);
            for (std::size_t i = 0; i < reps.size(); ++i) {
                const pcdn::Point3 d = pass.positions[i] - expected[i];
                if (std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}) > tol) {
                    detail = format("fixture %d step %lld: pass disagrees with re-derivation", f,
                                    static_cast<long long>(step));
                    return false;
                }
                // positions never leave the initial bounding box
                for (int a = 0; a < 3; ++a)
                    if (pass.positions[i][a] < lo[a] - tol || pass.positions[i][a] > hi[a] + tol) {
                        detail = format("fixture %d step %lld: position left the initial box", f,
                                        static_cast<long long>(step));
                        return false;
                    }
            }
            const bool any_moved = pass.moved_count > 0;
            current = std::move(pass.positions);
            if (!any_moved) break;
        }
    }
    detail = format(
        "10 fixtures: caps match the oracle, %lld weights >= %.12f (floor %.12f), %lld accepted moves re-derived within %.0e",
        static_cast<long long>(pairs_checked), w_min, kWeightFloor,
        static_cast<long long>(moves_checked), kConvexityTolerance);
    return true;
}

// --- C8: mesh postprocessing -------------------------------------------------------

bool c8_mesh_postprocess(std::string& detail) {
    pcdn::TriangleMesh mesh = fixtures::icosphere(3);
    const std::size_t base_triangles = mesh.triangles.size();
    // Five oversized fill triangles on fresh vertices far from the sphere;
    // each is a 60-80-100 right triangle with circumradius exactly 50.
    for (int g = 0; g < 5; ++g) {
        const double bx = 200.0 * (g + 1);
        const std::int32_t v = static_cast<std::int32_t>(mesh.vertices.size());
        mesh.vertices.push_back({bx, 0.0, 0.0});
        mesh.vertices.push_back({bx + 60.0, 0.0, 0.0});
        mesh.vertices.push_back({bx + 60.0, 80.0, 0.0});
        mesh.triangles.push_back({v, v + 1, v + 2});
    }

    const pcdn::TriangleMesh pruned = pcdn::prune_large_triangles(mesh, 10.0);

    // Brute-force recomputation of the same rule with the independent
    // circumradius: mean, population deviation, strict cutoff.
    std::vector<double> radii;
    radii.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles)
        radii.push_back(oracles::circumradius_by_center(mesh.vertices[t[0]], mesh.vertices[t[1]],
                                                        mesh.vertices[t[2]]));
    double avg = 0.0;
    for (double r : radii) avg += r;
    avg /= static_cast<double>(radii.size());
    double ss = 0.0;
    for (double r : radii) ss += (r - avg) * (r - avg);
    const double cutoff = avg + 10.0 * std::sqrt(ss / static_cast<double>(radii.size()));

    std::vector<std::array<std::int32_t, 3>> expected;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        if (!(radii[t] > cutoff)) expected.push_back(mesh.triangles[t]);

    if (pruned.triangles != expected || pruned.triangles.size() != base_triangles ||
        pruned.vertices.size() != mesh.vertices.size()) {
        detail = format("prune kept %zu triangles, brute force kept %zu, sphere has %zu",
                        pruned.triangles.size(), expected.size(), base_triangles);
        return false;
    }

    // Closed form against the linear-system oracle on random triangles.
    std::mt19937_64 rng(888);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    double worst = 0.0;
    int checked = 0;
    while (checked < 1000) {
        const pcdn::Point3 a{coord(rng), coord(rng), coord(rng)};
        const pcdn::Point3 b{coord(rng), coord(rng), coord(rng)};
        const pcdn::Point3 c{coord(rng), coord(rng), coord(rng)};
        const double longest =
            std::max({pcdn::distance(a, b), pcdn::distance(b, c), pcdn::distance(c, a)});
        // skip near-degenerate draws; both formulas lose meaning there
        if (pcdn::norm(pcdn::cross(b - a, c - a)) <= 1e-6 * longest * longest) continue;
        const double closed = pcdn::circumradius(a, b, c);
        const double oracle = oracles::circumradius_by_center(a, b, c);
        worst = std::max(worst, std::abs(closed - oracle) / oracle);
        ++checked;
    }
    if (worst > kCircumradiusRelTol) {
        detail = format("worst circumradius deviation %.2e (tolerance %.0e)", worst,
                        kCircumradiusRelTol);
        return false;
    }

    detail = format(
        "prune kept exactly the %zu sphere triangles (set equality vs brute force), %d circumradii within %.0e (worst %.1e)",
        base_triangles, checked, kCircumradiusRelTol, worst);
    return true;
}

// --- C9: end-to-end throughput and determinism --------------------------------------

bool c9_throughput_determinism(std::string& detail) {
    const pcdn::PointCloud surface = fixtures::fibonacci_sphere(380000);
    pcdn::NoiseSpec spec;
    spec.gaussian_sigma_fraction = 0.01;
    spec.white_noise_count = 5000;
    spec.cluster_max_count = 400;
    spec.seed = 2026;
    const pcdn::PointCloud dirty = pcdn::contaminate(surface, spec);

    const auto t1 = Clock::now();
    const pcdn::PipelineResult a = pcdn::run_pipeline(dirty, pcdn::PipelineConfig{});
    const double s1 = seconds_since(t1);
    const auto t2 = Clock::now();
    const pcdn::PipelineResult b = pcdn::run_pipeline(dirty, pcdn::PipelineConfig{});
    const double s2 = seconds_since(t2);

    const bool identical =
        a.denoised.size() == b.denoised.size() &&
        std::memcmp(a.denoised.points.data(), b.denoised.points.data(),
                    a.denoised.size() * sizeof(pcdn::Point3)) == 0 &&
        a.report.extracted_points == b.report.extracted_points &&
        a.report.filtered_points == b.report.filtered_points &&
        a.report.output_points == b.report.output_points;

    detail = format("%zu points in, %zu out; runs %.1fs and %.1fs (budget %.0fs each); %s",
                    dirty.size(), a.denoised.size(), s1, s2, kRunBudgetSeconds,
                    identical ? "outputs byte-identical" : "OUTPUTS DIFFER");
    return identical && s1 < kRunBudgetSeconds && s2 < kRunBudgetSeconds;
}

// --- driver -----------------------------------------------------------------------

struct Criterion {
    const char* id;
    const char* title;
    bool (*run)(std::string&);
};

constexpr Criterion kCriteria[] = {
    {"C1", "octree balance and leaf invariants", c1_octree_invariants},
    {"C2", "uniform grid contract", c2_uniformization_contract},
    {"C3", "contamination protocol fidelity", c3_contamination_fidelity},
    {"C4", "noise removal by largest-component extraction", c4_extraction_effectiveness},
    {"C5", "density filter termination", c5_density_termination},
    {"C6", "smoothing improvement", c6_smoothing_improvement},
    {"C7", "smoothing analytics", c7_smoothing_analytics},
    {"C8", "mesh postprocessing", c8_mesh_postprocess},
    {"C9", "end-to-end throughput and determinism", c9_throughput_determinism},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted;
    for (int i = 1; i < argc; ++i) wanted.emplace_back(argv[i]);
    const bool all = wanted.empty() || (wanted.size() == 1 && wanted[0] == "all");

    bool matched = false;
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!all && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        matched = true;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = format("unexpected exception: %s", e.what());
        }
        std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.title, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (!matched) {
        std::fprintf(stderr, "usage: acceptance [C1 .. C9 | all]\n");
        return 2;
    }
    return failures;
}
