#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "reebmapper/converge.hpp"
#include "reebmapper/errors.hpp"
#include "reebmapper/fixtures.hpp"
#include "reebmapper/interleave.hpp"
#include "reebmapper/io.hpp"
#include "reebmapper/mapper.hpp"
#include "reebmapper/reeb.hpp"
#include "reebmapper/tolerance.hpp"

namespace py = pybind11;
using namespace reebmapper;

namespace {

Box box_from_list(const std::vector<std::pair<double, double>>& axes) {
    Box b;
    for (const auto& [lo, hi] : axes) b.axes.push_back({lo, hi});
    return b;
}

std::vector<std::pair<double, double>> box_to_list(const Box& b) {
    std::vector<std::pair<double, double>> out;
    for (const auto& iv : b.axes) out.emplace_back(iv.lo, iv.hi);
    return out;
}

py::dict mapper_dict(const MapperNerve& mn) {
    py::list vertices;
    for (const auto& v : mn.vertices) {
        vertices.append(py::make_tuple(v.cover_index, v.component_label));
    }
    py::list simplices;
    for (const auto& s : mn.simplices) simplices.append(py::cast(s));
    BettiPair bp = betti_skeleton(mn);
    py::dict out;
    out["vertices"] = vertices;
    out["simplices"] = simplices;
    out["b0"] = bp.b0;
    out["b1"] = bp.b1;
    return out;
}

}  // namespace

PYBIND11_MODULE(_reebmapper, m) {
    m.doc() = "mapper / JCN discretizations of PL maps with certified Reeb-space approximation bounds";

    py::register_exception<ParseError>(m, "MeshParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "MeshValidationError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<CheckError>(m, "CheckFailure", PyExc_RuntimeError);

    py::class_<RdSpace, std::shared_ptr<RdSpace>>(m, "Space")
        .def_property_readonly("dim_range", [](const RdSpace& s) { return s.map.dim_range; })
        .def_property_readonly("vertex_count", [](const RdSpace& s) { return s.complex.vertex_count(); })
        .def_property_readonly("simplex_count", [](const RdSpace& s) { return s.complex.size(); })
        .def("values", [](const RdSpace& s) { return s.map.values; })
        .def("save", [](const RdSpace& s, const std::string& path) { save_mesh(s, path); })
        .def("to_json", [](const RdSpace& s) { return mesh_to_json(s); })
        .def("__repr__", [](const RdSpace& s) {
            return "<reebmapper.Space d=" + std::to_string(s.map.dim_range) + " vertices=" +
                   std::to_string(s.complex.vertex_count()) + " simplices=" +
                   std::to_string(s.complex.size()) + ">";
        });

    py::class_<Cover>(m, "Cover")
        .def_property_readonly("dim_range", [](const Cover& c) { return c.dim_range; })
        .def_property_readonly("resolution", [](const Cover& c) { return resolution(c); })
        .def("elements",
             [](const Cover& c) {
                 std::vector<std::vector<std::pair<double, double>>> out;
                 for (const Box& b : c.elements) out.push_back(box_to_list(b));
                 return out;
             })
        .def("refine", [](const Cover& c) { return refine(c); })
        .def("to_json", [](const Cover& c) { return cover_to_json(c); });

    py::class_<ReebGraph>(m, "ReebGraph")
        .def("nodes",
             [](const ReebGraph& g) {
                 std::vector<std::pair<int, double>> out;
                 for (const auto& n : g.nodes) out.emplace_back(n.id, n.value);
                 return out;
             })
        .def("edges", [](const ReebGraph& g) { return g.edges; })
        .def("betti",
             [](const ReebGraph& g) {
                 BettiPair bp = betti(g);
                 return py::make_tuple(bp.b0, bp.b1);
             })
        .def("non_regular_count", &ReebGraph::non_regular_count)
        .def("to_json", [](const ReebGraph& g) { return reeb_to_json(g); })
        .def("to_dot", [](const ReebGraph& g) { return reeb_to_dot(g); });

    m.def("load_mesh", [](const std::string& path) { return std::make_shared<RdSpace>(load_mesh(path)); },
          py::arg("path"));
    m.def("parse_mesh_json",
          [](const std::string& text) { return std::make_shared<RdSpace>(parse_mesh_json(text)); },
          py::arg("text"));
    m.def("fixture", [](const std::string& name) { return std::make_shared<RdSpace>(canned(name).space); },
          py::arg("name"), "canned inputs: tent, circle4, torus, square_grid_2d");

    m.def("uniform_cover",
          [](const std::vector<std::pair<double, double>>& range, const std::vector<int>& counts,
             double gain) { return uniform_cover(box_from_list(range), counts, gain); },
          py::arg("range"), py::arg("counts"), py::arg("gain") = 0.5);
    m.def("auto_cover",
          [](const RdSpace& space, const std::vector<int>& counts, double gain) {
              return uniform_cover(image_bounding_box(space), counts, gain);
          },
          py::arg("space"), py::arg("counts"), py::arg("gain") = 0.5,
          "uniform cover over the bounding box of image(f)");
    m.def("image_bbox", [](const RdSpace& s) { return box_to_list(image_bounding_box(s)); });

    m.def("mapper",
          [](const RdSpace& space, const Cover& cover) {
              return mapper_dict(mapper_nerve(categorical_mapper(space, cover)));
          },
          py::arg("space"), py::arg("cover"));
    m.def("jcn",
          [](const RdSpace& space, const std::vector<int>& counts, double gain) {
              return mapper_dict(jcn(space, counts, gain));
          },
          py::arg("space"), py::arg("counts"), py::arg("gain") = 0.5);

    m.def("critical_values", [](const RdSpace& s) { return critical_values(s); });
    m.def("reeb_graph",
          [](const RdSpace& s, bool contract) { return reeb_graph(s, contract); },
          py::arg("space"), py::arg("contract") = true);
    m.def("geometric_mapper",
          [](const RdSpace& space, const Cover& cover, bool contract) {
              return geometric_mapper(categorical_mapper(space, cover), contract);
          },
          py::arg("space"), py::arg("cover"), py::arg("contract") = true);
    m.def("rgraph_isomorphic",
          [](const ReebGraph& a, const ReebGraph& b, const std::string& mode) {
              IsoMode iso = mode == "exact" ? IsoMode::ExactValues : IsoMode::Monotone;
              return rgraph_isomorphic(a, b, iso);
          },
          py::arg("a"), py::arg("b"), py::arg("mode") = "monotone");

    m.def("components",
          [](const RdSpace& space, const std::vector<std::vector<std::pair<double, double>>>& boxes) {
              std::vector<Box> region;
              for (const auto& axes : boxes) region.push_back(box_from_list(axes));
              ComponentSet cs = components(space, ActiveRegion(std::move(region)));
              py::dict out;
              for (const auto& [label, ids] : cs.members) out[py::int_(label)] = ids;
              return out;
          },
          py::arg("space"), py::arg("boxes"));

    m.def("colimit_equivalence_check",
          [](const RdSpace& space, const Cover& cover, int boxes, std::uint64_t seed) {
              EquivalenceReport r = colimit_equivalence_check(space, cover, default_test_boxes(space, cover, boxes, seed));
              py::dict out;
              out["pass"] = r.pass;
              out["boxes_checked"] = r.boxes_checked;
              out["pairs_checked"] = r.pairs_checked;
              out["failures"] = r.failures;
              return out;
          },
          py::arg("space"), py::arg("cover"), py::arg("boxes") = 64, py::arg("seed") = 17);

    m.def("verify_interleaving",
          [](const RdSpace& space, const Cover& cover, double eps, int boxes, std::uint64_t seed) {
              DiagramReport r = verify_interleaving(build_interleaving(space, cover, eps, boxes, seed));
              py::dict out;
              out["pass"] = r.pass;
              out["eps"] = r.eps;
              out["sampled"] = r.sampled;
              out["naturality_checked"] = r.naturality_checked;
              out["naturality_failed"] = r.naturality_failed;
              out["triangles_checked"] = r.triangles_checked;
              out["triangles_failed"] = r.triangles_failed;
              return out;
          },
          py::arg("space"), py::arg("cover"), py::arg("eps") = -1.0, py::arg("boxes") = 64,
          py::arg("seed") = 2027);
    m.def("certified_upper_bound",
          [](const RdSpace& space, const Cover& cover) { return certified_upper_bound(space, cover); },
          py::arg("space"), py::arg("cover"));

    m.def("convergence_csv",
          [](const RdSpace& space, const Cover& cover, int steps, bool timings) {
              return convergence_to_csv(run_convergence(space, cover, steps), timings);
          },
          py::arg("space"), py::arg("cover"), py::arg("steps") = 4, py::arg("timings") = false);

    m.def("tolerance", []() { return tolerance(); });
    m.def("set_tolerance", [](double v) { set_tolerance(v); }, py::arg("value"));
}
