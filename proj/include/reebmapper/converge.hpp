#pragma once

#include <string>
#include <vector>

#include "reebmapper/cover.hpp"
#include "reebmapper/simplicial.hpp"

namespace reebmapper {

struct ConvergenceRow {
    double resolution = 0.0;
    int mapper_vertices = 0;
    int mapper_edges = 0;
    long b0 = 0;
    long b1 = 0;
    bool interleaving_verified = false;
    std::string geom_reeb_iso = "na";  // "na" | "true" | "false"
    double wall_ms = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
};

/// One row per refinement step: mapper size, Betti numbers of the
/// nerve 1-skeleton, the interleaving verification flag at eps = res,
/// and (d = 1, once the cover is adapted) the monotone-mode
/// isomorphism of the geometric mapper against the Reeb graph.
ConvergenceReport run_convergence(const RdSpace& space, Cover initial, int steps);

/// CSV with fixed column order; wall time is emitted only on request
/// so default outputs are byte-identical across runs.
std::string convergence_to_csv(const ConvergenceReport& report, bool timings = false);

}  // namespace reebmapper
