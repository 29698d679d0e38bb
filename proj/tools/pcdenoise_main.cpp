// Command-line front end: denoise, contaminate, octree-stats, mesh-post, eval.
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <pcdenoise/pcdenoise.hpp>

namespace {

using nlohmann::json;

int cmd_denoise(const std::string& input_path, const std::string& output_path,
                const pcdn::PipelineConfig& config, const std::string& report_path, bool binary) {
    const pcdn::PointCloud cloud = pcdn::read_point_cloud(input_path);
    const pcdn::PipelineResult result = pcdn::run_pipeline(cloud, config);
    pcdn::write_point_cloud(result.denoised, output_path, binary);

    if (!report_path.empty()) {
        const json j = result.report;
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write file: " + report_path);
        out << j.dump(2) << "\n";
    }

    const pcdn::RunReport& r = result.report;
    std::printf("input %lld -> extracted %lld -> filtered %lld -> output %lld points\n",
                static_cast<long long>(r.input_points), static_cast<long long>(r.extracted_points),
                static_cast<long long>(r.filtered_points), static_cast<long long>(r.output_points));
    std::printf("components kept %lld of %lld, cell size %.6g, %.2fs total\n",
                static_cast<long long>(r.components_kept), static_cast<long long>(r.components_found),
                r.cell_size, r.total_seconds);
    if (r.has_label_metrics)
        std::printf("surface recall %.4f, noise removal %.4f\n", r.surface_recall, r.noise_removal_rate);
    return 0;
}

int cmd_contaminate(const std::string& input_path, const std::string& output_path,
                    const pcdn::NoiseSpec& spec, bool binary) {
    const pcdn::PointCloud cloud = pcdn::read_point_cloud(input_path);
    pcdn::ContaminationAudit audit;
    const pcdn::PointCloud noisy = pcdn::contaminate(cloud, spec, &audit);
    pcdn::write_point_cloud(noisy, output_path, binary);

    // Sidecar echoes the applied parameters and cluster audit next to the cloud.
    json sidecar;
    sidecar["input"] = input_path;
    sidecar["input_points"] = cloud.size();
    sidecar["output_points"] = noisy.size();
    sidecar["gaussian_sigma_fraction"] = spec.gaussian_sigma_fraction;
    sidecar["white_noise_count"] = spec.white_noise_count;
    sidecar["white_noise_fraction"] = spec.white_noise_fraction;
    sidecar["cluster_probability"] = spec.cluster_probability;
    sidecar["isolation_radius_fraction"] = spec.isolation_radius_fraction;
    sidecar["cluster_max_count"] = spec.cluster_max_count;
    sidecar["cluster_radius_scale"] = spec.cluster_radius_scale;
    sidecar["seed"] = spec.seed;
    sidecar["surface_diagonal"] = audit.diagonal;
    sidecar["isolated_white_noise"] = audit.isolated_white_noise;
    sidecar["clusters"] = json::array();
    for (const auto& c : audit.clusters)
        sidecar["clusters"].push_back({{"seed_point", c.seed_point},
                                       {"first_point", c.first_point},
                                       {"count", c.count},
                                       {"radius", c.radius}});
    const std::string sidecar_path = output_path + ".json";
    std::ofstream out(sidecar_path);
    if (!out) throw std::runtime_error("cannot write file: " + sidecar_path);
    out << sidecar.dump(2) << "\n";

    std::size_t white = 0, outliers = 0;
    for (pcdn::PointLabel l : noisy.labels) {
        if (l == pcdn::PointLabel::white_noise) ++white;
        else if (l == pcdn::PointLabel::outlier) ++outliers;
    }
    std::printf("wrote %zu points (%zu surface, %zu white noise, %zu outliers in %zu clusters) to %s\n",
                noisy.size(), noisy.size() - white - outliers, white, outliers, audit.clusters.size(),
                output_path.c_str());
    return 0;
}

int cmd_octree_stats(const std::string& input_path, double alpha) {
    const pcdn::PointCloud cloud = pcdn::read_point_cloud(input_path);
    const pcdn::Octree tree = pcdn::build_adaptive_octree(cloud);
    const pcdn::UniformLeafGrid grid = pcdn::uniformize(tree, cloud, alpha);

    std::map<int, std::pair<std::size_t, std::size_t>> histogram; // level -> (leaves, non-empty)
    for (const auto& n : tree.nodes) {
        if (!n.is_leaf()) continue;
        auto& h = histogram[n.level];
        ++h.first;
        if (!n.point_indices.empty()) ++h.second;
    }

    std::printf("points            %zu\n", cloud.size());
    std::printf("root side         %.17g\n", tree.root_cube.side);
    std::printf("nodes             %zu\n", tree.nodes.size());
    std::printf("level   leaves   non-empty   side\n");
    for (const auto& [level, counts] : histogram)
        std::printf("%5d %8zu %11zu   %.17g\n", level, counts.first, counts.second,
                    tree.node_size(level));
    std::printf("mean leaf size    %.17g\n", pcdn::mean_leaf_size(tree));
    std::printf("uniform cell size %.17g (depth %d)\n", grid.cell_size, grid.depth);
    std::printf("occupied cells    %zu\n", grid.cells.size());
    return 0;
}

int cmd_mesh_post(const std::string& input_path, const std::string& output_path, double epsilon,
                  bool skip_prune, int smooth_iterations, double smooth_step, bool compact) {
    pcdn::TriangleMesh mesh = pcdn::read_mesh(input_path);
    const std::size_t before = mesh.triangles.size();
    if (!skip_prune) mesh = pcdn::prune_large_triangles(mesh, epsilon);
    const std::size_t pruned = before - mesh.triangles.size();
    if (compact) mesh = pcdn::drop_orphan_vertices(mesh);
    mesh = pcdn::mesh_laplacian_smooth(mesh, smooth_iterations, smooth_step);
    pcdn::write_mesh(mesh, output_path);
    std::printf("pruned %zu of %zu triangles, smoothed %d iterations, wrote %s\n", pruned, before,
                smooth_iterations, output_path.c_str());
    return 0;
}

int cmd_eval(const std::string& input_path, const std::string& surface_text,
             const std::string& reference_path) {
    const pcdn::PointCloud cloud = pcdn::read_point_cloud(input_path);
    pcdn::EvalMetrics metrics;
    if (!surface_text.empty()) {
        metrics = pcdn::evaluate_surface(cloud, pcdn::SurfaceDescriptor::parse(surface_text));
    } else {
        metrics = pcdn::evaluate_chamfer(cloud, pcdn::read_point_cloud(reference_path));
    }
    std::printf("points %zu\nrms    %.17g\nmax    %.17g\n", metrics.count, metrics.rms, metrics.max);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point cloud denoising for surface reconstruction"};
    app.require_subcommand(1);

    // denoise
    auto* denoise = app.add_subcommand("denoise", "Run the denoising pipeline");
    std::string in_path, out_path, report_path;
    pcdn::PipelineConfig config;
    bool uniform_q = false, skip_density = false, skip_smoothing = false, binary = false;
    denoise->add_option("input", in_path, "Input cloud (.xyz or .ply)")->required();
    denoise->add_option("-o,--output", out_path, "Output cloud (.xyz or .ply)")->required();
    denoise->add_option("--alpha", config.alpha, "Uniform cell size slack, >= 1")->check(CLI::Range(1.0, 1e9));
    denoise->add_option("--beta", config.beta, "Density filter exit factor, > 0")
        ->check(CLI::Range(1e-12, 1e9));
    denoise->add_option("--lambda", config.lambda, "Smoothing step size");
    denoise->add_option("--gamma", config.gamma, "Minimum-move divisor")->check(CLI::Range(1e-12, 1e12));
    denoise->add_option("-k,--keep", config.k, "Clusters to keep")->check(CLI::Range(1, 1 << 30));
    denoise->add_option("--max-iters", config.max_iterations, "Smoothing iteration cap override");
    denoise->add_option("--report", report_path, "Write a JSON run report here");
    denoise->add_flag("--uniform-q", uniform_q, "Representatives from uniform cells instead of octree leaves");
    denoise->add_flag("--skip-density", skip_density, "Skip the density filter stage");
    denoise->add_flag("--skip-smoothing", skip_smoothing, "Skip the smoothing stage");
    denoise->add_flag("--binary", binary, "Write binary PLY");

    // contaminate
    auto* contaminate = app.add_subcommand("contaminate", "Add synthetic noise to a cloud");
    std::string c_in, c_out;
    pcdn::NoiseSpec spec;
    double sigma_pct = 0.0, white_noise_pct = -1.0, isolation_pct = 5.0, cluster_radius_pct = 0.1;
    bool c_binary = false;
    contaminate->add_option("input", c_in, "Input cloud (.xyz or .ply)")->required();
    contaminate->add_option("-o,--output", c_out, "Output cloud (.xyz or .ply)")->required();
    contaminate->add_option("--sigma-pct", sigma_pct, "Gaussian sigma, percent of the diagonal")
        ->check(CLI::Range(0.0, 100.0));
    contaminate->add_option("--white-noise", spec.white_noise_count, "White noise point count");
    contaminate->add_option("--white-noise-pct", white_noise_pct,
                            "White noise as a percentage of the input size (overrides --white-noise)");
    contaminate->add_option("--cluster-prob", spec.cluster_probability,
                            "Chance an isolated white-noise point seeds a cluster")
        ->check(CLI::Range(0.0, 1.0));
    contaminate->add_option("--cluster-max", spec.cluster_max_count, "Largest cluster size R")
        ->check(CLI::Range(1, 1 << 30));
    contaminate->add_option("--isolation-pct", isolation_pct,
                            "Isolation radius, percent of the diagonal");
    contaminate->add_option("--cluster-radius-pct", cluster_radius_pct,
                            "Cluster ball radius cap, percent of the diagonal");
    contaminate->add_option("--seed", spec.seed, "Random seed");
    contaminate->add_flag("--binary", c_binary, "Write binary PLY");

    // octree-stats
    auto* stats = app.add_subcommand("octree-stats", "Print octree and grid statistics");
    std::string s_in;
    double s_alpha = 2.0;
    stats->add_option("input", s_in, "Input cloud (.xyz or .ply)")->required();
    stats->add_option("--alpha", s_alpha, "Uniform cell size slack, >= 1")->check(CLI::Range(1.0, 1e9));

    // mesh-post
    auto* mesh_post = app.add_subcommand("mesh-post", "Prune oversized triangles and smooth a mesh");
    std::string m_in, m_out;
    double epsilon = 10.0, m_step = 0.5;
    int m_iters = 3;
    bool skip_prune = false, compact = false;
    mesh_post->add_option("input", m_in, "Input mesh (.off or ASCII .ply)")->required();
    mesh_post->add_option("-o,--output", m_out, "Output mesh (.off or .ply)")->required();
    mesh_post->add_option("--epsilon", epsilon, "Circumradius cutoff factor");
    mesh_post->add_option("--smooth-iters", m_iters, "Laplacian smoothing passes")->check(CLI::Range(0, 1 << 20));
    mesh_post->add_option("--smooth-step", m_step, "Laplacian step size");
    mesh_post->add_flag("--skip-prune", skip_prune, "Skip the circumradius prune");
    mesh_post->add_flag("--compact", compact, "Drop orphaned vertices after pruning");

    // eval
    auto* eval = app.add_subcommand("eval", "Measure cloud error against a surface or reference cloud");
    std::string e_in, e_surface, e_ref;
    eval->add_option("input", e_in, "Cloud to evaluate (.xyz or .ply)")->required();
    auto* opt_surface = eval->add_option("--surface", e_surface,
                                         "Analytic surface, e.g. sphere:r=1 or torus:R=1,r=0.25");
    auto* opt_ref = eval->add_option("--ref", e_ref, "Reference cloud for one-sided Chamfer error");
    opt_surface->excludes(opt_ref);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(denoise)) {
            config.uniform_representatives = uniform_q;
            config.run_density_filter = !skip_density;
            config.run_smoothing = !skip_smoothing;
            return cmd_denoise(in_path, out_path, config, report_path, binary);
        }
        if (app.got_subcommand(contaminate)) {
            spec.gaussian_sigma_fraction = sigma_pct / 100.0;
            spec.white_noise_fraction = white_noise_pct < 0.0 ? -1.0 : white_noise_pct / 100.0;
            spec.isolation_radius_fraction = isolation_pct / 100.0;
            spec.cluster_radius_scale = cluster_radius_pct / 100.0;
            return cmd_contaminate(c_in, c_out, spec, c_binary);
        }
        if (app.got_subcommand(stats)) return cmd_octree_stats(s_in, s_alpha);
        if (app.got_subcommand(mesh_post))
            return cmd_mesh_post(m_in, m_out, epsilon, skip_prune, m_iters, m_step, compact);
        if (app.got_subcommand(eval)) {
            if (e_surface.empty() && e_ref.empty())
                throw std::runtime_error("eval needs --surface or --ref");
            return cmd_eval(e_in, e_surface, e_ref);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
