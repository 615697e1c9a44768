#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "reebmapper/cover.hpp"
#include "reebmapper/simplicial.hpp"

namespace reebmapper {

/// A single open box or a finite union of open boxes.
struct ActiveRegion {
    std::vector<Box> boxes;

    ActiveRegion() = default;
    explicit ActiveRegion(std::vector<Box> b) : boxes(std::move(b)) {}
    static ActiveRegion single(Box b) { return ActiveRegion({std::move(b)}); }

    bool empty() const { return boxes.empty(); }
    int dim() const { return boxes.empty() ? 0 : boxes.front().dim(); }
};

/// true iff conv(f(vertices of s)) meets the region.  Decided per box:
/// interval overlap for d = 1, otherwise linear feasibility over the
/// barycentric coordinates, with the open bounds shrunk by tolerance().
/// For a union region: true iff true for some box.
bool simplex_region_intersects(const RdSpace& space, int simplex_id, const ActiveRegion& region);

/// Partition of the active simplices of f^{-1}(region) into connected
/// classes of the facet-gluing relation.  Labels are the smallest
/// active simplex id of each class, so results are reproducible and
/// maps comparable across invocations.
struct ComponentSet {
    ActiveRegion region;
    std::vector<int> active;                       // sorted simplex ids
    std::unordered_map<int, int> label_by_simplex; // active simplex -> class label
    std::vector<int> labels;                       // sorted class labels
    std::map<int, std::vector<int>> members;       // label -> sorted simplex ids

    bool empty() const { return labels.empty(); }
    std::size_t size() const { return labels.size(); }
    int label_of(int simplex_id) const;  // -1 when inactive
};

ComponentSet components(const RdSpace& space, const ActiveRegion& region);

/// d = 1 level-set components at value t: the degenerate-interval
/// computation (closed test |f(s) - t| within tolerance) used by the
/// Reeb sweep.
ComponentSet level_components(const RdSpace& space, double t);

using LabelMap = std::map<int, int>;

/// The map on components induced by the inclusion of regions.  Requires
/// either box-wise region containment or, failing that, containment of
/// the active simplex sets (the image-restricted inclusions of the
/// interleaving construction); otherwise throws PreconditionError.
/// A class split across two target classes is an InternalError.
LabelMap component_map(const RdSpace& space, const ComponentSet& small, const ComponentSet& large);

}  // namespace reebmapper
