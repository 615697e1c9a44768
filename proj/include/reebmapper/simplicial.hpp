#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace reebmapper {

/// Abstract simplex: strictly increasing vertex id list.
struct Simplex {
    std::vector<int> vertices;

    Simplex() = default;
    explicit Simplex(std::vector<int> v);

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool operator==(const Simplex& o) const { return vertices == o.vertices; }
};

/// Finite simplicial complex stored as its full face closure, with
/// facet (codimension-1) adjacency in both directions.  Simplex ids are
/// assigned by (dimension, lexicographic) order, so the id of a vertex
/// simplex {v} is v itself.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    // Builds the face closure of the given maximal simplices over
    // vertices 0..vertex_count-1.  Every vertex is a simplex even when
    // it appears in no listed simplex.
    static SimplicialComplex from_maximal(int vertex_count, const std::vector<Simplex>& maximal);

    int vertex_count() const { return vertex_count_; }
    int size() const { return static_cast<int>(simplices_.size()); }
    const Simplex& simplex(int id) const { return simplices_[id]; }
    const std::vector<Simplex>& simplices() const { return simplices_; }

    /// Id lookup; -1 when absent.
    int id_of(const std::vector<int>& sorted_vertices) const;

    const std::vector<int>& facets(int id) const { return facets_[id]; }
    const std::vector<int>& cofacets(int id) const { return cofacets_[id]; }

    /// Simplices that are not a proper face of any stored simplex.
    const std::vector<int>& maximal_ids() const { return maximal_; }
    std::vector<Simplex> maximal_simplices() const;

    int max_dim() const { return max_dim_; }

private:
    int vertex_count_ = 0;
    int max_dim_ = -1;
    std::vector<Simplex> simplices_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> facets_;
    std::vector<std::vector<int>> cofacets_;
    std::vector<int> maximal_;
};

/// PL map to R^d given by one value vector per vertex.
struct PLMap {
    int dim_range = 1;
    std::vector<std::vector<double>> values;
};

/// A simplicial complex together with a PL map: the (X, f) pair all
/// pipeline operations consume.  Immutable after construction; per
/// simplex value bounding boxes are cached for the intersection tests.
struct RdSpace {
    SimplicialComplex complex;
    PLMap map;

    // bbox_lo[s * d + axis], bbox_hi[s * d + axis]
    std::vector<double> bbox_lo;
    std::vector<double> bbox_hi;

    int dim_range() const { return map.dim_range; }
    double lo(int simplex_id, int axis) const { return bbox_lo[simplex_id * map.dim_range + axis]; }
    double hi(int simplex_id, int axis) const { return bbox_hi[simplex_id * map.dim_range + axis]; }
};

/// Validates the pair and caches the per-simplex value bounds.
RdSpace make_space(SimplicialComplex complex, PLMap map);

/// Mesh JSON IO (fields: dim_range, vertices, simplices).
RdSpace load_mesh(const std::string& path, std::vector<std::string>* warnings = nullptr);
RdSpace parse_mesh_json(const std::string& text, std::vector<std::string>* warnings = nullptr);
void save_mesh(const RdSpace& space, const std::string& path);
std::string mesh_to_json(const RdSpace& space);

/// Vertex images of s under m, in vertex order; their convex hull is f(s).
std::vector<std::vector<double>> image_polytope(const Simplex& s, const PLMap& m);

/// d=1 genericity advisories: pairs of vertices sharing a value.
std::vector<std::string> genericity_warnings(const RdSpace& space);

}  // namespace reebmapper
