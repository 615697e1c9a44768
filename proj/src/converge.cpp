#include "reebmapper/converge.hpp"

#include <chrono>
#include <sstream>

#include "reebmapper/errors.hpp"
#include "reebmapper/interleave.hpp"
#include "reebmapper/io.hpp"
#include "reebmapper/mapper.hpp"
#include "reebmapper/reeb.hpp"

namespace reebmapper {

ConvergenceReport run_convergence(const RdSpace& space, Cover cover, int steps) {
    if (steps < 1) throw PreconditionError("convergence sweep needs steps >= 1");
    ConvergenceReport report;
    std::vector<double> crits;
    ReebGraph reeb;
    if (space.dim_range() == 1) {
        crits = critical_values(space);
        reeb = reeb_graph(space);
    }
    for (int step = 0; step < steps; ++step) {
        if (step > 0) cover = refine(cover);
        auto t0 = std::chrono::steady_clock::now();
        ConvergenceRow row;
        row.resolution = resolution(cover);

        CategoricalMapper cm = categorical_mapper(space, cover);
        MapperNerve mn = mapper_nerve(cm);
        row.mapper_vertices = static_cast<int>(mn.vertices.size());
        row.mapper_edges = static_cast<int>(mn.edges().size());
        BettiPair bp = betti_skeleton(mn);
        row.b0 = bp.b0;
        row.b1 = bp.b1;

        DiagramReport diag = verify_interleaving(build_interleaving(space, cover, row.resolution));
        row.interleaving_verified = diag.pass;

        if (space.dim_range() == 1 && is_adapted_cover(cover, crits)) {
            bool iso = rgraph_isomorphic(geometric_mapper(cm), reeb, IsoMode::Monotone);
            row.geom_reeb_iso = iso ? "true" : "false";
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string convergence_to_csv(const ConvergenceReport& report, bool timings) {
    std::ostringstream os;
    os << "resolution,mapper_vertices,mapper_edges,b0,b1,interleaving_verified,geom_reeb_iso";
    if (timings) os << ",wall_ms";
    os << "\n";
    for (const auto& row : report.rows) {
        os << format_double(row.resolution) << "," << row.mapper_vertices << "," << row.mapper_edges << ","
           << row.b0 << "," << row.b1 << "," << (row.interleaving_verified ? "true" : "false") << ","
           << row.geom_reeb_iso;
        if (timings) os << "," << format_double(row.wall_ms);
        os << "\n";
    }
    return os.str();
}

}  // namespace reebmapper
