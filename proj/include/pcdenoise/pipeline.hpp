#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clustering.hpp"
#include "contamination.hpp"
#include "density_filter.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "kdtree.hpp"
#include "octree.hpp"
#include "smoothing.hpp"

namespace pcdn {

struct PipelineConfig {
    double alpha = 2.0;  // uniformization slack
    double beta = 2.0;   // density filter exit factor
    double lambda = 0.25; // smoothing step size
    double gamma = 40.0;  // minimum-move divisor
    int k = 1;            // clusters to keep
    std::int64_t max_iterations = -1; // smoothing cap override, -1 computes it
    bool uniform_representatives = false; // representatives from the uniform grid, not raw leaves
    bool run_density_filter = true;
    bool run_smoothing = true;
    int octree_max_depth = 64;
};

// Per-kept-component breakdown of the filtering and smoothing stages.
struct ComponentReport {
    std::int64_t cells = 0;
    std::int64_t points_in = 0;
    std::int64_t points_after_density = 0;
    std::int64_t representatives = 0;
    std::int64_t density_iterations = 0;
    std::string density_guard = "none";
    bool density_exit_condition = false;
    std::int64_t smoothing_cap = 0;
    std::int64_t smoothing_iterations = 0;
};

struct RunReport {
    // stage point counts: input >= extracted >= filtered; output == representatives
    std::int64_t input_points = 0;
    std::int64_t extracted_points = 0;
    std::int64_t filtered_points = 0;
    std::int64_t representative_points = 0;
    std::int64_t output_points = 0;

    double root_side = 0.0;
    double mean_leaf_size = 0.0; // adaptive octree, non-empty leaves
    double cell_size = 0.0;      // uniform resolution
    std::int32_t grid_depth = 0;
    std::int64_t occupied_cells = 0;
    std::int64_t octree_nodes = 0;

    std::int64_t components_found = 0;
    std::int64_t components_kept = 0;
    bool k_exceeds_components = false;
    std::vector<std::int64_t> kept_component_cells;
    std::vector<ComponentReport> components;

    // label-based quality, present when the input cloud carries labels;
    // measured on the extraction stage output
    bool has_label_metrics = false;
    std::int64_t surface_total = 0;
    std::int64_t surface_retained = 0;
    std::int64_t noise_total = 0;
    std::int64_t noise_removed = 0;
    double surface_recall = 0.0;
    double noise_removal_rate = 0.0;

    double octree_seconds = 0.0;
    double uniformize_seconds = 0.0;
    double clustering_seconds = 0.0;
    double density_seconds = 0.0;
    double smoothing_seconds = 0.0;
    double total_seconds = 0.0;
};

inline void to_json(nlohmann::json& j, const ComponentReport& c) {
    j = nlohmann::json{{"cells", c.cells},
                       {"points_in", c.points_in},
                       {"points_after_density", c.points_after_density},
                       {"representatives", c.representatives},
                       {"density_iterations", c.density_iterations},
                       {"density_guard", c.density_guard},
                       {"density_exit_condition", c.density_exit_condition},
                       {"smoothing_cap", c.smoothing_cap},
                       {"smoothing_iterations", c.smoothing_iterations}};
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
    j = nlohmann::json{{"input_points", r.input_points},
                       {"extracted_points", r.extracted_points},
                       {"filtered_points", r.filtered_points},
                       {"representative_points", r.representative_points},
                       {"output_points", r.output_points},
                       {"root_side", r.root_side},
                       {"mean_leaf_size", r.mean_leaf_size},
                       {"cell_size", r.cell_size},
                       {"grid_depth", r.grid_depth},
                       {"occupied_cells", r.occupied_cells},
                       {"octree_nodes", r.octree_nodes},
                       {"components_found", r.components_found},
                       {"components_kept", r.components_kept},
                       {"k_exceeds_components", r.k_exceeds_components},
                       {"kept_component_cells", r.kept_component_cells},
                       {"components", r.components},
                       {"timings_seconds",
                        {{"octree", r.octree_seconds},
                         {"uniformize", r.uniformize_seconds},
                         {"clustering", r.clustering_seconds},
                         {"density_filter", r.density_seconds},
                         {"smoothing", r.smoothing_seconds},
                         {"total", r.total_seconds}}}};
    if (r.has_label_metrics) {
        j["label_metrics"] = {{"surface_total", r.surface_total},
                              {"surface_retained", r.surface_retained},
                              {"surface_recall", r.surface_recall},
                              {"noise_total", r.noise_total},
                              {"noise_removed", r.noise_removed},
                              {"noise_removal_rate", r.noise_removal_rate}};
    }
}

struct PipelineResult {
    PointCloud denoised;
    RunReport report;
};

namespace detail {

template <typename F>
auto run_stage(const char* name, F&& f) {
    try {
        return std::forward<F>(f)();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Gather a component's points as a standalone cloud, indices ascending.
inline PointCloud gather_component(const UniformLeafGrid& grid, const PointCloud& source) {
    std::vector<std::uint32_t> indices;
    for (const auto& [coord, pts] : grid.cells) indices.insert(indices.end(), pts.begin(), pts.end());
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

} // namespace detail

// The full denoising chain: adaptive octree, uniform rebucketing, keep the k
// largest 26-connected cell clusters, then per kept component run the density
// filter and meshless smoothing. Component outputs are concatenated in rank
// order. Errors carry the failing stage's name.
inline PipelineResult run_pipeline(const PointCloud& input, const PipelineConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    PipelineResult result;
    RunReport& report = result.report;
    report.input_points = static_cast<std::int64_t>(input.size());

    auto t0 = std::chrono::steady_clock::now();
    const Octree tree = detail::run_stage(
        "octree", [&] { return build_adaptive_octree(input, config.octree_max_depth); });
    report.octree_seconds = detail::seconds_since(t0);
    report.root_side = tree.root_cube.side;
    report.octree_nodes = static_cast<std::int64_t>(tree.nodes.size());

    t0 = std::chrono::steady_clock::now();
    const UniformLeafGrid grid =
        detail::run_stage("uniformize", [&] { return uniformize(tree, input, config.alpha); });
    report.uniformize_seconds = detail::seconds_since(t0);
    report.mean_leaf_size = mean_leaf_size(tree);
    report.cell_size = grid.cell_size;
    report.grid_depth = grid.depth;
    report.occupied_cells = static_cast<std::int64_t>(grid.cells.size());

    t0 = std::chrono::steady_clock::now();
    const LeafGraph graph = detail::run_stage("clustering", [&] { return build_leaf_graph(grid); });
    const ComponentLabeling labeling =
        detail::run_stage("clustering", [&] { return connected_components(graph); });
    const auto ranking = rank_components(labeling);
    report.clustering_seconds = detail::seconds_since(t0);
    report.components_found = labeling.count();
    report.k_exceeds_components = config.k > labeling.count();
    const std::size_t keep = std::min<std::size_t>(config.k, ranking.size());
    report.components_kept = static_cast<std::int64_t>(keep);

    std::int64_t extracted = 0;
    PointCloud final_cloud;
    for (std::size_t rank = 0; rank < keep; ++rank) {
        const std::int32_t comp = ranking[rank];
        ComponentReport creport;
        UniformLeafGrid cgrid = component_grid(grid, graph, labeling, comp);
        creport.cells = static_cast<std::int64_t>(cgrid.cells.size());
        creport.points_in = static_cast<std::int64_t>(cgrid.point_count());
        extracted += creport.points_in;
        report.kept_component_cells.push_back(creport.cells);

        if (config.run_density_filter) {
            t0 = std::chrono::steady_clock::now();
            DensityFilterResult filtered = detail::run_stage(
                "density_filter", [&] { return prune_very_noisy(cgrid, config.beta); });
            report.density_seconds += detail::seconds_since(t0);
            creport.points_after_density = static_cast<std::int64_t>(filtered.grid.point_count());
            creport.density_iterations = static_cast<std::int64_t>(filtered.report.iterations.size());
            creport.density_guard = to_string(filtered.report.guard);
            creport.density_exit_condition = filtered.report.exit_condition_met;
            cgrid = std::move(filtered.grid);
        } else {
            creport.points_after_density = creport.points_in;
        }
        report.filtered_points += creport.points_after_density;

        const PointCloud component_cloud = detail::gather_component(cgrid, input);
        if (config.run_smoothing) {
            t0 = std::chrono::steady_clock::now();
            std::vector<Representative> reps = detail::run_stage("smoothing", [&] {
                return config.uniform_representatives
                           ? build_representatives_uniform(component_cloud, config.alpha,
                                                           config.octree_max_depth)
                           : build_representatives(component_cloud, config.octree_max_depth);
            });
            detail::run_stage("smoothing", [&] {
                select_neighbors(reps);
                return 0;
            });
            const SmoothResult smoothed = detail::run_stage("smoothing", [&] {
                return smooth(reps, SmoothingConfig{config.lambda, config.gamma}, config.max_iterations);
            });
            report.smoothing_seconds += detail::seconds_since(t0);

            creport.representatives = static_cast<std::int64_t>(reps.size());
            creport.smoothing_cap = smoothed.iteration_cap;
            creport.smoothing_iterations = smoothed.iterations;
            report.representative_points += creport.representatives;
            final_cloud.points.insert(final_cloud.points.end(), smoothed.positions.begin(),
                                      smoothed.positions.end());
        } else {
            final_cloud.points.insert(final_cloud.points.end(), component_cloud.points.begin(),
                                      component_cloud.points.end());
        }
        report.components.push_back(creport);
    }
    report.extracted_points = extracted;
    report.output_points = static_cast<std::int64_t>(final_cloud.size());

    if (input.has_labels()) {
        report.has_label_metrics = true;
        for (PointLabel l : input.labels) {
            if (l == PointLabel::surface) ++report.surface_total;
            else ++report.noise_total;
        }
        // Recount over the kept cells: extraction keeps whole cells, so label
        // counts come from the grid's per-cell index lists.
        std::vector<char> kept_comp(labeling.count(), 0);
        for (std::size_t rank = 0; rank < keep; ++rank) kept_comp[ranking[rank]] = 1;
        std::int64_t noise_kept = 0;
        for (std::int32_t v = 0; v < static_cast<std::int32_t>(graph.vertex_count()); ++v) {
            if (!kept_comp[labeling.component_of[v]]) continue;
            const auto it = grid.cells.find(graph.vertices[v]);
            for (std::uint32_t pi : it->second) {
                if (input.labels[pi] == PointLabel::surface) ++report.surface_retained;
                else ++noise_kept;
            }
        }
        report.noise_removed = report.noise_total - noise_kept;
        report.surface_recall = report.surface_total > 0
                                    ? static_cast<double>(report.surface_retained) /
                                          static_cast<double>(report.surface_total)
                                    : 0.0;
        report.noise_removal_rate = report.noise_total > 0
                                        ? static_cast<double>(report.noise_removed) /
                                              static_cast<double>(report.noise_total)
                                        : 0.0;
    }

    result.denoised = std::move(final_cloud);
    report.total_seconds = detail::seconds_since(t_start);
    return result;
}

// --- evaluation ------------------------------------------------------------------

// Analytic surfaces for measuring residual error: "sphere:r=1",
// "sphere:cx=0,cy=0,cz=0,r=1", "plane:z=0" (axis-aligned), or
// "torus:R=1,r=0.25" around the z axis.
struct SurfaceDescriptor {
    enum class Kind { sphere, plane, torus };
    Kind kind = Kind::sphere;
    Point3 center;
    double radius = 1.0;       // sphere radius or torus major radius
    double minor_radius = 0.0; // torus tube radius
    int plane_axis = 2;
    double plane_offset = 0.0;

    double distance_to(const Point3& p) const {
        switch (kind) {
        case Kind::sphere: return std::fabs(distance(p, center) - radius);
        case Kind::plane: return std::fabs(p[plane_axis] - plane_offset);
        default: {
            const double dx = p.x - center.x;
            const double dy = p.y - center.y;
            const double ring = std::sqrt(dx * dx + dy * dy) - radius;
            const double dz = p.z - center.z;
            return std::fabs(std::sqrt(ring * ring + dz * dz) - minor_radius);
        }
        }
    }

    static SurfaceDescriptor parse(const std::string& text);
};

inline SurfaceDescriptor SurfaceDescriptor::parse(const std::string& text) {
    const std::size_t colon = text.find(':');
    const std::string name = text.substr(0, colon);
    SurfaceDescriptor desc;
    if (name == "sphere") desc.kind = Kind::sphere;
    else if (name == "plane") desc.kind = Kind::plane;
    else if (name == "torus") { desc.kind = Kind::torus; desc.minor_radius = 0.25; }
    else throw std::invalid_argument("unknown surface: " + name);

    std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < params.size()) {
        std::size_t comma = params.find(',', pos);
        if (comma == std::string::npos) comma = params.size();
        const std::string item = params.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed surface parameter: " + item);
        const std::string key = item.substr(0, eq);
        double value = 0.0;
        if (key == "x" || key == "y" || key == "z") {
            // plane form: axis=offset
            if (desc.kind != Kind::plane) throw std::invalid_argument("malformed surface parameter: " + item);
            if (!detail::parse_double(item.substr(eq + 1), value))
                throw std::invalid_argument("malformed surface parameter: " + item);
            desc.plane_axis = key[0] - 'x';
            desc.plane_offset = value;
            continue;
        }
        if (!detail::parse_double(item.substr(eq + 1), value))
            throw std::invalid_argument("malformed surface parameter: " + item);
        if (key == "r") {
            if (desc.kind == Kind::torus) desc.minor_radius = value;
            else desc.radius = value;
        } else if (key == "R") desc.radius = value;
        else if (key == "cx") desc.center.x = value;
        else if (key == "cy") desc.center.y = value;
        else if (key == "cz") desc.center.z = value;
        else throw std::invalid_argument("unknown surface parameter: " + key);
    }
    return desc;
}

struct EvalMetrics {
    double rms = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

inline EvalMetrics evaluate_surface(const PointCloud& cloud, const SurfaceDescriptor& surface) {
    EvalMetrics m;
    m.count = cloud.size();
    if (cloud.empty()) return m;
    double ss = 0.0;
    for (const Point3& p : cloud.points) {
        const double d = surface.distance_to(p);
        ss += d * d;
        if (d > m.max) m.max = d;
    }
    m.rms = std::sqrt(ss / static_cast<double>(cloud.size()));
    return m;
}

// One-sided Chamfer error: for each cloud point, the distance to its nearest
// reference point.
inline EvalMetrics evaluate_chamfer(const PointCloud& cloud, const PointCloud& reference) {
    if (reference.empty()) throw std::invalid_argument("empty input");
    EvalMetrics m;
    m.count = cloud.size();
    if (cloud.empty()) return m;
    KdTree3 kd(reference.points);
    double ss = 0.0;
    for (const Point3& p : cloud.points) {
        double d = 0.0;
        kd.nearest(p, &d);
        ss += d * d;
        if (d > m.max) m.max = d;
    }
    m.rms = std::sqrt(ss / static_cast<double>(cloud.size()));
    return m;
}

} // namespace pcdn
