#include "reebmapper/preimage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

// Phase-1 simplex feasibility for
//   lambda >= 0,  sum lambda = 1,  lo_i <= (V lambda)_i <= hi_i
// over the k barycentric variables.  Dense tableau, Bland's rule.
class FeasibilityLP {
public:
    // points: k rows of d coordinates; bounds already tolerance-shrunk.
    static bool feasible(const std::vector<const double*>& points, int d,
                         const std::vector<double>& lo, const std::vector<double>& hi) {
        const int k = static_cast<int>(points.size());
        const int m = 1 + 2 * d;        // constraint rows
        const int ns = k + 2 * d;       // structural variables (lambda, upper/lower slacks)
        const int n = ns + m;           // plus one artificial per row

        std::vector<std::vector<double>> a(m, std::vector<double>(n + 1, 0.0));
        // Row 0: sum lambda = 1.
        for (int j = 0; j < k; ++j) a[0][j] = 1.0;
        a[0][n] = 1.0;
        // Rows 1..d: (V lambda)_i + s+_i = hi_i.
        // Rows d+1..2d: (V lambda)_i - s-_i = lo_i.
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < k; ++j) {
                a[1 + i][j] = points[j][i];
                a[1 + d + i][j] = points[j][i];
            }
            a[1 + i][k + i] = 1.0;
            a[1 + d + i][k + d + i] = -1.0;
            a[1 + i][n] = hi[i];
            a[1 + d + i][n] = lo[i];
        }
        // Normalize rows and make rhs non-negative, then install the
        // artificial identity basis.
        std::vector<int> basis(m);
        for (int r = 0; r < m; ++r) {
            double scale = 0.0;
            for (int j = 0; j < ns; ++j) scale = std::max(scale, std::abs(a[r][j]));
            scale = std::max(scale, std::abs(a[r][n]));
            if (scale > 0.0) {
                for (int j = 0; j <= n; ++j) a[r][j] /= scale;
            }
            if (a[r][n] < 0.0) {
                for (int j = 0; j <= n; ++j) a[r][j] = -a[r][j];
            }
            a[r][ns + r] = 1.0;
            basis[r] = ns + r;
        }

        constexpr double kPivotEps = 1e-11;
        auto is_artificial = [&](int col) { return col >= ns; };
        while (true) {
            // Reduced cost of column j for min sum(artificials).
            int enter = -1;
            for (int j = 0; j < n && enter < 0; ++j) {
                double z = 0.0;
                for (int r = 0; r < m; ++r) {
                    if (is_artificial(basis[r])) z += a[r][j];
                }
                if (is_artificial(j)) z -= 1.0;
                if (z > kPivotEps) enter = j;  // Bland: smallest index
            }
            if (enter < 0) break;
            int leave = -1;
            double best = 0.0;
            for (int r = 0; r < m; ++r) {
                if (a[r][enter] > kPivotEps) {
                    double ratio = a[r][n] / a[r][enter];
                    if (leave < 0 || ratio < best - kPivotEps ||
                        (std::abs(ratio - best) <= kPivotEps && basis[r] < basis[leave])) {
                        leave = r;
                        best = ratio;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded phase-1: cannot happen, treat as infeasible
            double piv = a[leave][enter];
            for (int j = 0; j <= n; ++j) a[leave][j] /= piv;
            for (int r = 0; r < m; ++r) {
                if (r == leave) continue;
                double f = a[r][enter];
                if (f == 0.0) continue;
                for (int j = 0; j <= n; ++j) a[r][j] -= f * a[leave][j];
            }
            basis[leave] = enter;
        }
        double infeasibility = 0.0;
        for (int r = 0; r < m; ++r) {
            if (is_artificial(basis[r])) infeasibility += std::max(0.0, a[r][n]);
        }
        return infeasibility <= 1e-9;
    }
};

bool simplex_box_intersects(const RdSpace& space, int sid, const Box& box, double tol) {
    const int d = space.dim_range();
    // Necessary: the value bounding box must meet the shrunk open box.
    bool bbox_inside = true;
    for (int axis = 0; axis < d; ++axis) {
        double lo = box.axes[axis].lo + tol;
        double hi = box.axes[axis].hi - tol;
        if (hi < lo) return false;
        if (space.hi(sid, axis) < lo || space.lo(sid, axis) > hi) return false;
        if (space.lo(sid, axis) < lo || space.hi(sid, axis) > hi) bbox_inside = false;
    }
    const auto& vs = space.complex.simplex(sid).vertices;
    if (d == 1 || vs.size() == 1 || bbox_inside) return true;  // bbox test exact in these cases
    std::vector<const double*> points;
    points.reserve(vs.size());
    for (int v : vs) points.push_back(space.map.values[v].data());
    std::vector<double> lo(d), hi(d);
    for (int axis = 0; axis < d; ++axis) {
        lo[axis] = box.axes[axis].lo + tol;
        hi[axis] = box.axes[axis].hi - tol;
    }
    return FeasibilityLP::feasible(points, d, lo, hi);
}

// Merge clearly-overlapping open intervals of a d=1 union; the union is
// the same point set, so activity only shifts inside sub-tolerance
// seams.  Keeps components() linear for the large nerve unions.
std::vector<Box> normalized_boxes(const ActiveRegion& region, double tol) {
    if (region.boxes.size() <= 1 || region.dim() != 1) return region.boxes;
    std::vector<Interval> ivs;
    ivs.reserve(region.boxes.size());
    for (const Box& b : region.boxes) ivs.push_back(b.axes[0]);
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Box> out;
    Interval cur = ivs[0];
    for (size_t i = 1; i < ivs.size(); ++i) {
        if (ivs[i].lo <= cur.hi - tol) {
            cur.hi = std::max(cur.hi, ivs[i].hi);
        } else {
            out.push_back(Box({cur}));
            cur = ivs[i];
        }
    }
    out.push_back(Box({cur}));
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

ComponentSet finish_components(const RdSpace& space, ActiveRegion region, std::vector<char>&& is_active) {
    const int n = space.complex.size();
    ComponentSet out;
    out.region = std::move(region);
    for (int id = 0; id < n; ++id) {
        if (is_active[id]) out.active.push_back(id);
    }
    UnionFind uf(n);
    for (int id : out.active) {
        for (int facet : space.complex.facets(id)) {
            if (is_active[facet]) uf.unite(id, facet);
        }
    }
    std::unordered_map<int, int> label_of_root;
    for (int id : out.active) {
        int root = uf.find(id);
        auto it = label_of_root.find(root);
        if (it == label_of_root.end()) it = label_of_root.emplace(root, id).first;  // ids ascend
        out.label_by_simplex.emplace(id, it->second);
        out.members[it->second].push_back(id);
    }
    for (const auto& [label, ids] : out.members) {
        (void)ids;
        out.labels.push_back(label);
    }
    std::sort(out.labels.begin(), out.labels.end());
    return out;
}

}  // namespace

int ComponentSet::label_of(int simplex_id) const {
    auto it = label_by_simplex.find(simplex_id);
    return it == label_by_simplex.end() ? -1 : it->second;
}

bool simplex_region_intersects(const RdSpace& space, int simplex_id, const ActiveRegion& region) {
    const double tol = tolerance();
    for (const Box& b : region.boxes) {
        if (b.dim() != space.dim_range()) throw PreconditionError("region dimension mismatch");
        if (simplex_box_intersects(space, simplex_id, b, tol)) return true;
    }
    return false;
}

ComponentSet components(const RdSpace& space, const ActiveRegion& region) {
    const double tol = tolerance();
    for (const Box& b : region.boxes) {
        if (b.dim() != space.dim_range()) throw PreconditionError("region dimension mismatch");
    }
    const std::vector<Box> boxes = normalized_boxes(region, tol);
    const int n = space.complex.size();
    std::vector<char> is_active(n, 0);
    for (int id = 0; id < n; ++id) {
        for (const Box& b : boxes) {
            if (simplex_box_intersects(space, id, b, tol)) {
                is_active[id] = 1;
                break;
            }
        }
    }
    return finish_components(space, region, std::move(is_active));
}

ComponentSet level_components(const RdSpace& space, double t) {
    if (space.dim_range() != 1) throw PreconditionError("level_components requires d = 1");
    const double tol = tolerance();
    const int n = space.complex.size();
    std::vector<char> is_active(n, 0);
    for (int id = 0; id < n; ++id) {
        if (space.lo(id, 0) <= t + tol && space.hi(id, 0) >= t - tol) is_active[id] = 1;
    }
    ActiveRegion region = ActiveRegion::single(Box::interval(t, t));  // degenerate marker
    return finish_components(space, std::move(region), std::move(is_active));
}

LabelMap component_map(const RdSpace& space, const ComponentSet& small, const ComponentSet& large) {
    (void)space;
    // Containment: box-wise when it holds, otherwise at the level of
    // active simplices (covers the image-restricted inclusions).
    bool boxwise = true;
    for (const Box& sb : small.region.boxes) {
        bool contained = false;
        for (const Box& lb : large.region.boxes) {
            if (box_contains(lb, sb)) {
                contained = true;
                break;
            }
        }
        if (!contained) {
            boxwise = false;
            break;
        }
    }
    if (!boxwise) {
        for (int id : small.active) {
            if (large.label_of(id) < 0) {
                throw PreconditionError("containment violation: small region is not inside the large one");
            }
        }
    }
    LabelMap out;
    for (const auto& [label, ids] : small.members) {
        int image = -1;
        for (int id : ids) {
            int l = large.label_of(id);
            if (l < 0) throw InternalError("active simplex of the small region inactive in the large one");
            if (image < 0) {
                image = l;
            } else if (image != l) {
                throw InternalError("component map not well defined: class split across targets");
            }
        }
        out.emplace(label, image);
    }
    return out;
}

}  // namespace reebmapper
