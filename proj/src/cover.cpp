#include "reebmapper/cover.hpp"

#include <algorithm>
#include <cmath>

#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

std::string index_key(const std::vector<int>& vs) {
    std::string key;
    for (int v : vs) {
        key += std::to_string(v);
        key += ',';
    }
    return key;
}

}  // namespace

bool box_nonempty(const Box& b, double tol) {
    for (const Interval& iv : b.axes) {
        if (!(iv.hi - iv.lo > tol)) return false;
    }
    return !b.axes.empty();
}

bool boxes_overlap(const Box& a, const Box& b, double tol) {
    if (a.dim() != b.dim()) throw PreconditionError("box dimension mismatch");
    for (int i = 0; i < a.dim(); ++i) {
        double lo = std::max(a.axes[i].lo, b.axes[i].lo);
        double hi = std::min(a.axes[i].hi, b.axes[i].hi);
        if (!(hi - lo > tol)) return false;
    }
    return true;
}

std::optional<Box> box_intersection(const Box& a, const Box& b, double tol) {
    if (!boxes_overlap(a, b, tol)) return std::nullopt;
    Box out;
    out.axes.resize(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        out.axes[i].lo = std::max(a.axes[i].lo, b.axes[i].lo);
        out.axes[i].hi = std::min(a.axes[i].hi, b.axes[i].hi);
    }
    return out;
}

bool box_contains(const Box& outer, const Box& inner) {
    if (outer.dim() != inner.dim()) return false;
    for (int i = 0; i < outer.dim(); ++i) {
        if (inner.axes[i].lo < outer.axes[i].lo || inner.axes[i].hi > outer.axes[i].hi) return false;
    }
    return true;
}

double box_diameter(const Box& b) {
    double d = 0.0;
    for (const Interval& iv : b.axes) d = std::max(d, iv.hi - iv.lo);
    return d;
}

Box thicken(const Box& b, double eps) {
    if (eps < 0.0) throw PreconditionError("thickening radius must be non-negative");
    if (eps == 0.0) return b;
    Box out = b;
    for (Interval& iv : out.axes) {
        iv.lo -= eps;
        iv.hi += eps;
    }
    return out;
}

Cover uniform_cover(const Box& range, const std::vector<int>& counts, double gain) {
    const int d = range.dim();
    if (d < 1) throw PreconditionError("cover range must have dimension >= 1");
    if (static_cast<int>(counts.size()) != d) {
        throw PreconditionError("one interval count per axis required");
    }
    if (!(gain > 0.0 && gain < 1.0)) throw PreconditionError("invalid gain: need 0 < g < 1");
    for (int axis = 0; axis < d; ++axis) {
        if (counts[axis] < 1) throw PreconditionError("invalid counts: need n >= 1 per axis");
        if (!(range.axes[axis].hi > range.axes[axis].lo)) {
            throw PreconditionError("cover range must be a nonempty open box");
        }
    }

    // Per-axis interval lists, then all products.
    std::vector<std::vector<Interval>> per_axis(d);
    for (int axis = 0; axis < d; ++axis) {
        const double lo = range.axes[axis].lo;
        const double hi = range.axes[axis].hi;
        const int n = counts[axis];
        if (n == 1) {
            double r = (1.0 + gain) * (hi - lo) / 2.0;
            double c = (lo + hi) / 2.0;
            per_axis[axis].push_back({c - r, c + r});
        } else {
            double s = (hi - lo) / (n - 1);
            double r = (1.0 + gain) * s / 2.0;
            for (int i = 0; i < n; ++i) {
                double c = lo + s * i;
                per_axis[axis].push_back({c - r, c + r});
            }
        }
    }

    Cover cover;
    cover.dim_range = d;
    std::vector<int> idx(d, 0);
    while (true) {
        Box b;
        b.axes.resize(d);
        for (int axis = 0; axis < d; ++axis) b.axes[axis] = per_axis[axis][idx[axis]];
        cover.elements.push_back(std::move(b));
        int axis = d - 1;
        while (axis >= 0) {
            if (++idx[axis] < static_cast<int>(per_axis[axis].size())) break;
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    cover.uniform = UniformSpec{range, counts, gain};
    return cover;
}

double resolution(const Cover& c) {
    double res = 0.0;
    for (const Box& b : c.elements) res = std::max(res, box_diameter(b));
    return res;
}

Cover refine(const Cover& c) {
    if (!c.uniform) throw PreconditionError("refine requires a cover produced by uniform_cover");
    std::vector<int> counts = c.uniform->counts;
    for (int& n : counts) n = (n == 1) ? 3 : 2 * n - 1;
    return uniform_cover(c.uniform->range, counts, c.uniform->gain);
}

int CoverNerve::id_of(const std::vector<int>& sorted_indices) const {
    auto it = index_.find(index_key(sorted_indices));
    return it == index_.end() ? -1 : it->second;
}

CoverNerve nerve_of_cover(const Cover& c) {
    if (c.elements.empty()) throw PreconditionError("cover must be nonempty");
    const double tol = tolerance();
    const int n = static_cast<int>(c.elements.size());
    for (const Box& b : c.elements) {
        if (b.dim() != c.dim_range) throw ValidationError("cover element dimension mismatch");
        if (!box_nonempty(b, tol)) throw ValidationError("cover element is an empty box");
    }

    // Depth-first extension: a subset is present iff its intersection
    // box is nonempty, and every extension intersects incrementally.
    std::vector<std::pair<std::vector<int>, Box>> found;
    std::vector<std::pair<std::vector<int>, Box>> stack;
    for (int a = 0; a < n; ++a) stack.push_back({{a}, c.elements[a]});
    while (!stack.empty()) {
        auto [vs, box] = std::move(stack.back());
        stack.pop_back();
        found.push_back({vs, box});
        for (int next = vs.back() + 1; next < n; ++next) {
            if (auto inter = box_intersection(box, c.elements[next], tol)) {
                std::vector<int> ext = vs;
                ext.push_back(next);
                stack.push_back({std::move(ext), *inter});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });

    CoverNerve k;
    for (auto& [vs, box] : found) {
        k.index_.emplace(index_key(vs), k.size());
        k.simplices.push_back(std::move(vs));
        k.intersection_box.push_back(std::move(box));
    }
    k.facets.resize(k.size());
    k.cofacets.resize(k.size());
    for (int id = 0; id < k.size(); ++id) {
        const auto& vs = k.simplices[id];
        if (vs.size() == 1) continue;
        std::vector<int> face(vs.size() - 1);
        for (size_t skip = 0; skip < vs.size(); ++skip) {
            size_t w = 0;
            for (size_t i = 0; i < vs.size(); ++i) {
                if (i != skip) face[w++] = vs[i];
            }
            int fid = k.id_of(face);
            if (fid < 0) throw InternalError("cover nerve is not face closed");
            k.facets[id].push_back(fid);
            k.cofacets[fid].push_back(id);
        }
    }
    return k;
}

std::vector<int> k_sub(const Cover& c, const CoverNerve& k, const Box& a) {
    if (a.dim() != c.dim_range) throw PreconditionError("query box dimension mismatch");
    const double tol = tolerance();
    std::vector<int> out;
    for (int id = 0; id < k.size(); ++id) {
        if (boxes_overlap(k.intersection_box[id], a, tol)) out.push_back(id);
    }
    return out;
}

}  // namespace reebmapper
