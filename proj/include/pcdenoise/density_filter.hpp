#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "octree.hpp"

namespace pcdn {

// Point count inside the 5x5x5 block of cells centered on `cell` (the cell
// itself included). Cells outside the grid bounds contribute nothing.
inline std::int64_t neighborhood_size(const UniformLeafGrid& grid, const GridCoord& cell) {
    std::int64_t n = 0;
    for (std::int64_t dx = -2; dx <= 2; ++dx)
        for (std::int64_t dy = -2; dy <= 2; ++dy)
            for (std::int64_t dz = -2; dz <= 2; ++dz) {
                const auto it = grid.cells.find(GridCoord{cell[0] + dx, cell[1] + dy, cell[2] + dz});
                if (it != grid.cells.end()) n += static_cast<std::int64_t>(it->second.size());
            }
    return n;
}

// Neighborhood sizes for every occupied cell (in grid iteration order) with
// their population mean and standard deviation.
struct NeighborhoodStats {
    std::vector<std::int64_t> sizes;
    double n_avg = 0.0;
    double n_sd = 0.0;
};

inline NeighborhoodStats neighborhood_stats(const UniformLeafGrid& grid) {
    NeighborhoodStats stats;
    stats.sizes.reserve(grid.cells.size());

    std::unordered_map<GridCoord, std::int64_t, GridCoordHash> counts;
    counts.reserve(grid.cells.size() * 2);
    for (const auto& [coord, pts] : grid.cells) counts.emplace(coord, pts.size());

    for (const auto& [coord, pts] : grid.cells) {
        std::int64_t n = 0;
        for (std::int64_t dx = -2; dx <= 2; ++dx)
            for (std::int64_t dy = -2; dy <= 2; ++dy)
                for (std::int64_t dz = -2; dz <= 2; ++dz) {
                    const auto it = counts.find(GridCoord{coord[0] + dx, coord[1] + dy, coord[2] + dz});
                    if (it != counts.end()) n += it->second;
                }
        stats.sizes.push_back(n);
    }

    const std::size_t m = stats.sizes.size();
    if (m == 0) return stats;
    double sum = 0.0;
    for (std::int64_t s : stats.sizes) sum += static_cast<double>(s);
    stats.n_avg = sum / static_cast<double>(m);
    double ss = 0.0;
    for (std::int64_t s : stats.sizes) {
        const double d = static_cast<double>(s) - stats.n_avg;
        ss += d * d;
    }
    stats.n_sd = std::sqrt(ss / static_cast<double>(m));
    return stats;
}

// Nearest-rank 1st percentile of the neighborhood sizes: the value at 1-based
// position ceil(0.01 * m) of the ascending sizes.
inline std::int64_t first_percentile(std::vector<std::int64_t> sizes) {
    std::sort(sizes.begin(), sizes.end());
    const std::size_t m = sizes.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(0.01 * static_cast<double>(m)));
    if (rank < 1) rank = 1;
    return sizes[rank - 1];
}

enum class DensityGuard {
    none,         // loop exited because beta * n_sd <= n_avg
    zero_removal, // an iteration removed no cells
    min_cells,    // fewer than 8 cells remained
};

inline const char* to_string(DensityGuard g) {
    switch (g) {
    case DensityGuard::zero_removal: return "zero_removal";
    case DensityGuard::min_cells: return "min_cells";
    default: return "none";
    }
}

struct DensityFilterIteration {
    std::int64_t threshold = 0;     // 1st-percentile neighborhood size
    std::int64_t cells_removed = 0;
    std::int64_t points_removed = 0;
};

struct DensityFilterReport {
    std::vector<DensityFilterIteration> iterations;
    DensityGuard guard = DensityGuard::none;
    bool exit_condition_met = false; // beta * n_sd <= n_avg on the final grid
    double final_n_avg = 0.0;
    double final_n_sd = 0.0;
};

struct DensityFilterResult {
    UniformLeafGrid grid;
    DensityFilterReport report;
};

// Remove sparse cells until the neighborhood sizes even out: while
// beta * n_sd > n_avg, drop every cell whose neighborhood size is at or below
// the 1st percentile. Two guards stop degenerate loops: an iteration that
// removes nothing, or a grid shrunk below 8 cells.
inline DensityFilterResult prune_very_noisy(const UniformLeafGrid& input, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    DensityFilterResult result;
    result.grid = input;

    for (;;) {
        if (result.grid.cells.size() < 8) {
            result.report.guard = DensityGuard::min_cells;
            break;
        }
        const NeighborhoodStats stats = neighborhood_stats(result.grid);
        if (beta * stats.n_sd <= stats.n_avg) break;

        const std::int64_t threshold = first_percentile(stats.sizes);
        DensityFilterIteration iter;
        iter.threshold = threshold;

        std::size_t si = 0;
        for (auto it = result.grid.cells.begin(); it != result.grid.cells.end(); ++si) {
            if (stats.sizes[si] <= threshold) {
                iter.points_removed += static_cast<std::int64_t>(it->second.size());
                ++iter.cells_removed;
                it = result.grid.cells.erase(it);
            } else {
                ++it;
            }
        }

        if (iter.cells_removed == 0) {
            result.report.guard = DensityGuard::zero_removal;
            break;
        }
        result.report.iterations.push_back(iter);
    }

    const NeighborhoodStats final_stats = neighborhood_stats(result.grid);
    result.report.final_n_avg = final_stats.n_avg;
    result.report.final_n_sd = final_stats.n_sd;
    result.report.exit_condition_met = beta * final_stats.n_sd <= final_stats.n_avg;
    return result;
}

} // namespace pcdn
