#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace reebmapper {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Axis-aligned open box in R^d.
struct Box {
    std::vector<Interval> axes;

    Box() = default;
    explicit Box(std::vector<Interval> a) : axes(std::move(a)) {}
    static Box interval(double lo, double hi) { return Box(std::vector<Interval>{{lo, hi}}); }
    static Box rect(double xlo, double xhi, double ylo, double yhi) {
        return Box(std::vector<Interval>{{xlo, xhi}, {ylo, yhi}});
    }

    int dim() const { return static_cast<int>(axes.size()); }
};

bool box_nonempty(const Box& b, double tol);
/// Open-box overlap with slack > tol on every axis.
bool boxes_overlap(const Box& a, const Box& b, double tol);
std::optional<Box> box_intersection(const Box& a, const Box& b, double tol);
/// Axis-wise containment inner ⊆ outer.
bool box_contains(const Box& outer, const Box& inner);
/// l-infinity diameter: the longest axis.
double box_diameter(const Box& b);
/// Per-axis (lo - eps, hi + eps); the exact eps-thickening under the
/// sup norm.  thicken(b, 0) == b by convention.
Box thicken(const Box& b, double eps);

struct UniformSpec {
    Box range;
    std::vector<int> counts;
    double gain = 0.5;
};

/// Finite indexed cover by open boxes.  Restricting elements to boxes
/// keeps every finite intersection a box, so the cover is good by
/// construction and all nerve tests are interval arithmetic.
struct Cover {
    int dim_range = 1;
    std::vector<Box> elements;
    std::optional<UniformSpec> uniform;  // present when generated by uniform_cover
};

/// Per axis: n interval centers evenly spaced across [lo, hi] including
/// the endpoints, step s = (hi-lo)/(n-1), radius (1+g)s/2.  With n = 1
/// one interval of radius (1+g)(hi-lo)/2 spans the padded axis.
/// Guarantees (0 < g < 1): consecutive intervals overlap, non-consecutive
/// do not, and the closed range lies strictly inside the union.
Cover uniform_cover(const Box& range, const std::vector<int>& counts, double gain);

/// sup over elements of the box diameter.
double resolution(const Cover& c);

/// Same range and gain with per-axis counts 2n-1 (n=1 refines to 3);
/// the resolution halves.
Cover refine(const Cover& c);

/// Nerve of the cover with the intersection box U_sigma attached to
/// every simplex.  Simplex ids ordered by (dimension, lex); the vertex
/// simplex {alpha} has id alpha.
struct CoverNerve {
    std::vector<std::vector<int>> simplices;
    std::vector<Box> intersection_box;
    std::vector<std::vector<int>> facets;
    std::vector<std::vector<int>> cofacets;

    int size() const { return static_cast<int>(simplices.size()); }
    int id_of(const std::vector<int>& sorted_indices) const;

private:
    friend CoverNerve nerve_of_cover(const Cover&);
    std::unordered_map<std::string, int> index_;
};

CoverNerve nerve_of_cover(const Cover& c);

/// K_a: ids of nerve simplices whose U_sigma meets the box a.  Closed
/// under faces since U_sigma grows along face relations.
std::vector<int> k_sub(const Cover& c, const CoverNerve& k, const Box& a);

}  // namespace reebmapper
