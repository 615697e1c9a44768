#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reebmapper/cover.hpp"
#include "reebmapper/preimage.hpp"
#include "reebmapper/simplicial.hpp"

namespace reebmapper {

/// The functor C_K^f: one component set per nerve simplex, with the
/// restriction map C(tau) -> C(sigma) for every covering face relation
/// sigma <= tau.  General relations compose; composition consistency is
/// asserted at construction.
struct CategoricalMapper {
    Cover cover;
    CoverNerve nerve;
    std::vector<ComponentSet> value;                    // per nerve simplex id
    std::map<std::pair<int, int>, LabelMap> face_map;   // (tau, sigma) codim-1

    const LabelMap& codim1_map(int tau, int sigma) const;
    /// Composed map C(tau) -> C(sigma) for any face sigma <= tau.
    LabelMap face_map_general(int tau, int sigma) const;
};

CategoricalMapper categorical_mapper(const RdSpace& space, const Cover& cover);

/// The classic mapper nerve M(U, f), derived from the categorical data:
/// vertices are components over singleton cover elements, a simplex per
/// component of each f^{-1}(U_sigma) through its face-map images.
struct MapperNerve {
    struct Vertex {
        int cover_index;
        int component_label;
    };
    std::vector<Vertex> vertices;
    std::vector<std::vector<int>> simplices;  // face-closed, (dim, lex) ordered vertex-id lists

    std::vector<std::array<int, 2>> edges() const;  // the 1-skeleton
    int vertex_id(int cover_index, int component_label) const;
};

MapperNerve mapper_nerve(const CategoricalMapper& cm);

/// Joint Contour Net: the mapper nerve for a uniform quantization cover
/// over the bounding box of image(f), one count per range axis.
MapperNerve jcn(const RdSpace& space, const std::vector<int>& counts, double gain);
Cover jcn_cover(const RdSpace& space, const std::vector<int>& counts, double gain);
/// Bounding box of image(f); degenerate axes padded by 0.5 per side.
Box image_bounding_box(const RdSpace& space);

/// Colimit evaluation P_K(C_K)(I): disjoint union of C(sigma) over
/// sigma in K_I, quotiented along the face-map identifications.
/// Elements are (nerve simplex id, component label) pairs; a class is
/// labeled by its lexicographically smallest member.
struct PkValue {
    Box region;
    std::vector<int> k_sub;                                        // nerve simplex ids
    std::vector<std::vector<std::pair<int, int>>> classes;         // sorted members per class
    std::map<std::pair<int, int>, int> class_of;

    std::size_t size() const { return classes.size(); }
    std::pair<int, int> class_label(int class_index) const { return classes[class_index].front(); }
};

PkValue pk_evaluate(const CategoricalMapper& cm, const Box& region);

/// The induced map pk(I) -> pk(J) for I inside J (K_I is a subdiagram
/// of K_J, so each class includes into a class of the larger colimit).
std::vector<int> pk_map(const CategoricalMapper& cm, const PkValue& small, const PkValue& large);

/// Direct evaluation: components over the union of U_sigma for
/// sigma in K_I.  Empty K_I yields the empty set.
ComponentSet f_direct(const RdSpace& space, const Cover& cover, const CoverNerve& nerve, const Box& region);

struct EquivalenceReport {
    bool pass = true;
    int boxes_checked = 0;
    int pairs_checked = 0;
    std::vector<std::string> failures;  // capped

    std::string summary() const;
};

/// Builds the canonical containment map from each colimit class to a
/// direct component and checks it is a bijection, plus naturality on
/// every nested pair of test boxes.  Failures are data in the report.
EquivalenceReport colimit_equivalence_check(const RdSpace& space, const Cover& cover, const std::vector<Box>& test_boxes);

/// Default test-box family: for d=1 all intervals with endpoints at
/// midpoints of consecutive breakpoints (cover endpoints and vertex
/// values); for d>=2 seeded random boxes at mixed scales, including
/// nested pairs.
std::vector<Box> default_test_boxes(const RdSpace& space, const Cover& cover, int count = 64,
                                    std::uint64_t seed = 17);

}  // namespace reebmapper
