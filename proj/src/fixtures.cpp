#include "reebmapper/fixtures.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "reebmapper/errors.hpp"
#include "reebmapper/mapper.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct OracleUnionFind {
    std::vector<int> parent;
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
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    }
};

// Barycentric lattice point in lowest terms: a denominator and the
// (vertex id, weight) pairs with positive weight, sorted by vertex id.
// Reduced keys identify coincident samples across simplices and across
// sampling depths.
struct SampleKey {
    int denominator = 1;
    std::vector<std::pair<int, int>> support;

    bool operator<(const SampleKey& o) const {
        if (denominator != o.denominator) return denominator < o.denominator;
        return support < o.support;
    }
};

SampleKey reduced_key(const std::vector<int>& vertices, const std::vector<int>& weights, int depth) {
    int g = depth;
    for (int w : weights) {
        if (w > 0) g = std::gcd(g, w);
    }
    SampleKey key;
    key.denominator = depth / g;
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (weights[i] > 0) key.support.emplace_back(vertices[i], weights[i] / g);
    }
    std::sort(key.support.begin(), key.support.end());
    return key;
}

bool sample_in_box(const RdSpace& space, const SampleKey& key, const Box& b, double tol) {
    const int d = space.dim_range();
    for (int axis = 0; axis < d; ++axis) {
        double acc = 0.0;
        for (const auto& [v, wgt] : key.support) acc += wgt * space.map.values[v][axis];
        acc /= key.denominator;
        if (acc < b.axes[axis].lo + tol || acc > b.axes[axis].hi - tol) return false;
    }
    return true;
}

void enumerate_compositions(int slots, int total, std::vector<int>& cur,
                            const std::function<void(const std::vector<int>&)>& emit) {
    if (slots == 1) {
        cur.push_back(total);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int take = 0; take <= total; ++take) {
        cur.push_back(take);
        enumerate_compositions(slots - 1, total - take, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

RdSpace path_space(const std::vector<double>& heights) {
    std::vector<Simplex> edges;
    for (size_t i = 0; i + 1 < heights.size(); ++i) {
        edges.push_back(Simplex({static_cast<int>(i), static_cast<int>(i + 1)}));
    }
    PLMap map;
    map.dim_range = 1;
    for (double h : heights) map.values.push_back({h});
    return make_space(SimplicialComplex::from_maximal(static_cast<int>(heights.size()), edges),
                      std::move(map));
}

RdSpace cycle_space(const std::vector<double>& heights) {
    const int n = static_cast<int>(heights.size());
    if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i) edges.push_back(Simplex({i, (i + 1) % n}));
    PLMap map;
    map.dim_range = 1;
    for (double h : heights) map.values.push_back({h});
    return make_space(SimplicialComplex::from_maximal(n, edges), std::move(map));
}

RdSpace grid_with_fields(int n, const std::vector<std::vector<double>>& per_vertex_values) {
    if (n < 2) throw PreconditionError("grid needs n >= 2");
    if (static_cast<int>(per_vertex_values.size()) != n * n) {
        throw PreconditionError("grid field must carry one value vector per vertex");
    }
    std::vector<Simplex> tris;
    auto id = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            tris.push_back(Simplex({id(i, j), id(i + 1, j), id(i + 1, j + 1)}));
            tris.push_back(Simplex({id(i, j), id(i + 1, j + 1), id(i, j + 1)}));
        }
    }
    PLMap map;
    map.dim_range = static_cast<int>(per_vertex_values.front().size());
    map.values = per_vertex_values;
    return make_space(SimplicialComplex::from_maximal(n * n, tris), std::move(map));
}

RdSpace square_grid(int n, const std::vector<double>* scalar_field) {
    std::vector<std::vector<double>> values;
    values.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (scalar_field) {
                values.push_back({(*scalar_field)[static_cast<size_t>(i) * n + j]});
            } else {
                values.push_back({static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1)});
            }
        }
    }
    return grid_with_fields(n, values);
}

Fixture canned(const std::string& name) {
    if (name == "tent") return {name, path_space({0.0, 1.0, 0.0})};
    if (name == "circle4") return {name, cycle_space({0.0, 1.0, 2.0, 1.0})};
    if (name == "square_grid_2d") return {name, square_grid(8)};
    if (name == "torus") {
        // 8x8 grid torus; height of an upright torus (tube radius 1,
        // center radius 2) with the four critical points of the height
        // function sitting on grid vertices: max 3, saddles +-1, min -3.
        const int N = 8, M = 8;
        std::vector<Simplex> tris;
        auto id = [N, M](int i, int j) { return (((i % N) + N) % N) * M + (((j % M) + M) % M); };
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < M; ++j) {
                tris.push_back(Simplex({id(i, j), id(i + 1, j), id(i + 1, j + 1)}));
                tris.push_back(Simplex({id(i, j), id(i + 1, j + 1), id(i, j + 1)}));
            }
        }
        PLMap map;
        map.dim_range = 1;
        map.values.resize(N * M);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < M; ++j) {
                double theta = 2.0 * kPi * i / N;
                double phi = kPi / 2.0 + 2.0 * kPi * j / M;
                map.values[id(i, j)] = {(2.0 + std::cos(theta)) * std::sin(phi)};
            }
        }
        return {name, make_space(SimplicialComplex::from_maximal(N * M, tris), std::move(map))};
    }
    throw PreconditionError("unknown fixture: " + name);
}

RandomInstance random_instance(std::uint64_t seed, const RandomParams& params) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomInstance out;

    SimplicialComplex complex;
    if (params.domain_dim == 1) {
        const int max_edges = std::max(3, params.max_simplices / 2 - 1);
        const int kind = static_cast<int>(rng() % 4);
        std::vector<Simplex> edges;
        int vertex_count = 0;
        auto build_path = [&](int base, int len) {
            for (int i = 0; i < len; ++i) edges.push_back(Simplex({base + i, base + i + 1}));
            return base + len + 1;
        };
        auto build_cycle = [&](int base, int len) {
            for (int i = 0; i < len; ++i) edges.push_back(Simplex({base + i, base + (i + 1) % len}));
            return base + len;
        };
        if (kind == 0) {
            vertex_count = build_path(0, 2 + static_cast<int>(rng() % std::max(1, max_edges - 2)));
        } else if (kind == 1) {
            vertex_count = build_cycle(0, 3 + static_cast<int>(rng() % std::max(1, max_edges - 3)));
        } else if (kind == 2) {  // random tree plus a few extra edges
            int n = 3 + static_cast<int>(rng() % std::max(1, max_edges - 3));
            for (int v = 1; v < n; ++v) edges.push_back(Simplex({static_cast<int>(rng() % v), v}));
            int extras = static_cast<int>(rng() % 3);
            for (int t = 0; t < extras && n >= 4; ++t) {
                int a = static_cast<int>(rng() % n);
                int b = static_cast<int>(rng() % n);
                if (a != b) edges.push_back(Simplex({std::min(a, b), std::max(a, b)}));
            }
            vertex_count = n;
        } else {  // two components
            int la = 2 + static_cast<int>(rng() % std::max(1, max_edges / 2 - 2));
            int base = build_path(0, la);
            vertex_count = build_path(base, 2 + static_cast<int>(rng() % std::max(1, max_edges / 2 - 2)));
        }
        std::set<std::vector<int>> uniq;
        std::vector<Simplex> dedup;
        for (auto& e : edges) {
            if (uniq.insert(e.vertices).second) dedup.push_back(e);
        }
        complex = SimplicialComplex::from_maximal(vertex_count, dedup);
    } else {
        // connected random walk over the cells of a grid triangulation
        const int g = 6;
        const int cells_max = std::max(1, params.max_simplices / 11);
        const int want = 1 + static_cast<int>(rng() % cells_max);
        std::set<std::pair<int, int>> chosen;
        std::vector<std::pair<int, int>> frontier;
        std::pair<int, int> cur{static_cast<int>(rng() % (g - 1)), static_cast<int>(rng() % (g - 1))};
        chosen.insert(cur);
        frontier.push_back(cur);
        int guard = 0;
        while (static_cast<int>(chosen.size()) < want && ++guard < 10000) {
            const auto& from = frontier[rng() % frontier.size()];
            int dir = static_cast<int>(rng() % 4);
            int di = (dir == 0) - (dir == 1);
            int dj = (dir == 2) - (dir == 3);
            std::pair<int, int> next{from.first + di, from.second + dj};
            if (next.first < 0 || next.first >= g - 1 || next.second < 0 || next.second >= g - 1) continue;
            if (chosen.insert(next).second) frontier.push_back(next);
        }
        std::map<int, int> reindex;
        auto vid = [g](int i, int j) { return i * g + j; };
        auto use = [&](int raw) {
            auto it = reindex.find(raw);
            if (it == reindex.end()) it = reindex.emplace(raw, static_cast<int>(reindex.size())).first;
            return it->second;
        };
        std::vector<Simplex> tris;
        for (const auto& [i, j] : chosen) {
            tris.push_back(Simplex({use(vid(i, j)), use(vid(i + 1, j)), use(vid(i + 1, j + 1))}));
            tris.push_back(Simplex({use(vid(i, j)), use(vid(i + 1, j + 1)), use(vid(i, j + 1))}));
        }
        complex = SimplicialComplex::from_maximal(static_cast<int>(reindex.size()), tris);
    }

    PLMap map;
    map.dim_range = params.range_dim;
    map.values.resize(complex.vertex_count());
    for (auto& v : map.values) {
        v.resize(params.range_dim);
        for (double& x : v) x = unit(rng);
    }
    out.space = make_space(std::move(complex), std::move(map));

    if (params.range_dim == 1) {
        out.non_generic = !genericity_warnings(out.space).empty();
    }

    const int span = params.max_cover_count - params.min_cover_count + 1;
    std::vector<int> counts(params.range_dim);
    for (int& c : counts) c = params.min_cover_count + static_cast<int>(rng() % std::max(1, span));
    double gain = 0.25 + 0.5 * unit(rng);
    out.cover = uniform_cover(image_bounding_box(out.space), counts, gain);
    return out;
}

OracleResult sampling_oracle(const RdSpace& space, const ActiveRegion& region, int depth) {
    if (depth < 4) throw PreconditionError("oracle depth must be >= 4");
    const double tol = tolerance();
    OracleResult out;
    out.depth_used = depth;

    std::map<SampleKey, int> node_of;
    OracleUnionFind uf;

    auto node_for = [&](const SampleKey& key) {
        auto it = node_of.find(key);
        if (it != node_of.end()) return it->second;
        int id = uf.add();
        node_of.emplace(key, id);
        return id;
    };

    // Within one closed simplex the preimage of a convex box is convex,
    // so any two of its in-box samples are genuinely connected; every
    // in-box sample of a face lies in the closed simplex too.  Per
    // (simplex, box): clique the simplex's own in-box samples and chain
    // to each facet's clique anchor.  One-dimensional simplices are
    // sampled densely so thin corner windows on segments still carry
    // evidence.
    const int nbox = static_cast<int>(region.boxes.size());
    std::vector<std::vector<int>> anchor(space.complex.size(), std::vector<int>(nbox, -1));
    for (int sid = 0; sid < space.complex.size(); ++sid) {
        const auto& vs = space.complex.simplex(sid).vertices;
        const int k = static_cast<int>(vs.size());
        int local_depth = depth;
        if (k == 2) local_depth = std::max(depth, 2048);
        if (k == 1) local_depth = 1;
        std::vector<int> cur;
        std::vector<SampleKey> keys;
        enumerate_compositions(k, local_depth, cur, [&](const std::vector<int>& weights) {
            keys.push_back(reduced_key(vs, weights, local_depth));
        });
        for (int b = 0; b < nbox; ++b) {
            for (const SampleKey& key : keys) {
                if (!sample_in_box(space, key, region.boxes[b], tol)) continue;
                int node = node_for(key);
                if (anchor[sid][b] < 0) {
                    anchor[sid][b] = node;
                } else {
                    uf.unite(anchor[sid][b], node);
                }
            }
            if (anchor[sid][b] < 0) continue;
            for (int facet : space.complex.facets(sid)) {
                if (anchor[facet][b] >= 0) uf.unite(anchor[sid][b], anchor[facet][b]);
            }
        }
    }

    std::map<int, int> component_id;
    for (const auto& [key, node] : node_of) {
        (void)key;
        int root = uf.find(node);
        if (!component_id.count(root)) component_id.emplace(root, static_cast<int>(component_id.size()));
    }
    out.component_count = static_cast<int>(component_id.size());
    for (int v = 0; v < space.complex.vertex_count(); ++v) {
        SampleKey key;
        key.denominator = 1;
        key.support = {{v, 1}};
        auto it = node_of.find(key);
        if (it != node_of.end()) {
            out.vertex_component.emplace(v, component_id.at(uf.find(it->second)));
        }
    }
    return out;
}

OracleResult sampling_oracle_stable(const RdSpace& space, const ActiveRegion& region, int base_depth,
                                    int max_depth) {
    // Depth floor from geometry alone: a face whose value extent is E
    // only carries a lattice sample inside a window of width w once the
    // step E/depth drops below w.  Independent of the engine.
    double width = std::numeric_limits<double>::infinity();
    for (const Box& b : region.boxes) {
        for (const Interval& iv : b.axes) width = std::min(width, iv.hi - iv.lo - 2.0 * tolerance());
    }
    double extent = 0.0;
    for (int sid = 0; sid < space.complex.size(); ++sid) {
        for (int axis = 0; axis < space.dim_range(); ++axis) {
            extent = std::max(extent, space.hi(sid, axis) - space.lo(sid, axis));
        }
    }
    int required = base_depth;
    if (width > 0.0 && extent > 0.0) {
        required = std::max(required, static_cast<int>(std::ceil(extent / width)) + 2);
    }
    required = std::min(required, 48);
    int ceiling = std::max(max_depth, required + 4);

    OracleResult prev = sampling_oracle(space, region, required);
    for (int depth = required + 2; depth <= ceiling; depth += 2) {
        OracleResult next = sampling_oracle(space, region, depth);
        if (next.component_count == prev.component_count) return next;
        prev = std::move(next);
    }
    return prev;
}

namespace {

// Separating-axis overlap between a small convex polygon (2-3 points in
// value space) and a closed box; exact up to floating point and
// independent of the engine's feasibility routine.
bool polygon_meets_box_2d(const std::vector<std::array<double, 2>>& poly, double lo0, double hi0,
                          double lo1, double hi1) {
    if (hi0 < lo0 || hi1 < lo1) return false;
    double pmin0 = poly[0][0], pmax0 = poly[0][0], pmin1 = poly[0][1], pmax1 = poly[0][1];
    for (const auto& p : poly) {
        pmin0 = std::min(pmin0, p[0]);
        pmax0 = std::max(pmax0, p[0]);
        pmin1 = std::min(pmin1, p[1]);
        pmax1 = std::max(pmax1, p[1]);
    }
    if (pmax0 < lo0 || pmin0 > hi0 || pmax1 < lo1 || pmin1 > hi1) return false;
    const double corners[4][2] = {{lo0, lo1}, {hi0, lo1}, {lo0, hi1}, {hi0, hi1}};
    const size_t k = poly.size();
    for (size_t e = 0; e < k; ++e) {
        double nx = -(poly[(e + 1) % k][1] - poly[e][1]);
        double ny = poly[(e + 1) % k][0] - poly[e][0];
        if (nx == 0.0 && ny == 0.0) continue;
        double tmin = poly[0][0] * nx + poly[0][1] * ny, tmax = tmin;
        for (const auto& p : poly) {
            double proj = p[0] * nx + p[1] * ny;
            tmin = std::min(tmin, proj);
            tmax = std::max(tmax, proj);
        }
        double bmin = corners[0][0] * nx + corners[0][1] * ny, bmax = bmin;
        for (const auto& c : corners) {
            double proj = c[0] * nx + c[1] * ny;
            bmin = std::min(bmin, proj);
            bmax = std::max(bmax, proj);
        }
        if (tmax < bmin || tmin > bmax) return false;
    }
    return true;
}

}  // namespace

int raster_jcn_vertex_count(const RdSpace& grid_space, int grid_n, const Cover& cover, int raster) {
    const int n = grid_n;
    const int cells = n - 1;
    if (grid_space.dim_range() != 2) throw PreconditionError("raster oracle requires a bivariate field");
    if (raster % cells != 0) {
        throw PreconditionError("raster must be a multiple of the grid cell count for exact alignment");
    }
    const double tol = tolerance();
    auto vertex_value = [&](int i, int j, int axis) { return grid_space.map.values[i * n + j][axis]; };

    // f at every pixel corner; corners align with the cell lattice, so
    // every pixel square lies in one cell and is cut (at most) by its
    // own diagonal, with breakpoints at pixel corners.
    const int corners = raster + 1;
    std::vector<std::array<double, 2>> corner_value(static_cast<size_t>(corners) * corners);
    for (int cy = 0; cy < corners; ++cy) {
        for (int cx = 0; cx < corners; ++cx) {
            double x = static_cast<double>(cx) / raster;
            double y = static_cast<double>(cy) / raster;
            int i = std::min(cx * cells / raster, cells - 1);
            int j = std::min(cy * cells / raster, cells - 1);
            double u = x * cells - i;
            double v = y * cells - j;
            std::array<double, 2> f{};
            for (int axis = 0; axis < 2; ++axis) {
                if (u >= v) {
                    f[axis] = vertex_value(i, j, axis) * (1.0 - u) + vertex_value(i + 1, j, axis) * (u - v) +
                              vertex_value(i + 1, j + 1, axis) * v;
                } else {
                    f[axis] = vertex_value(i, j, axis) * (1.0 - v) + vertex_value(i, j + 1, axis) * (v - u) +
                              vertex_value(i + 1, j + 1, axis) * u;
                }
            }
            corner_value[static_cast<size_t>(cy) * corners + cx] = f;
        }
    }
    auto cv = [&](int cx, int cy) -> const std::array<double, 2>& {
        return corner_value[static_cast<size_t>(cy) * corners + cx];
    };

    int total = 0;
    const int npix = raster * raster;
    std::vector<char> mask(npix);
    std::vector<char> visited(npix);
    std::vector<int> stack;
    for (const Box& box : cover.elements) {
        const double lo0 = box.axes[0].lo + tol, hi0 = box.axes[0].hi - tol;
        const double lo1 = box.axes[1].lo + tol, hi1 = box.axes[1].hi - tol;
        // A pixel square is in the mask when the image of the square
        // meets the box: the two corner triangles cover the square's PL
        // image whether or not the cell diagonal cuts it.
        for (int py = 0; py < raster; ++py) {
            for (int px = 0; px < raster; ++px) {
                std::vector<std::array<double, 2>> lower{cv(px, py), cv(px + 1, py), cv(px + 1, py + 1)};
                bool inside = polygon_meets_box_2d(lower, lo0, hi0, lo1, hi1);
                if (!inside) {
                    std::vector<std::array<double, 2>> upper{cv(px, py), cv(px + 1, py + 1), cv(px, py + 1)};
                    inside = polygon_meets_box_2d(upper, lo0, hi0, lo1, hi1);
                }
                mask[py * raster + px] = inside ? 1 : 0;
            }
        }
        // Two squares connect when the image of their shared edge meets
        // the box; pixel edges never cross the cell diagonal, so each
        // edge image is the segment between its corner values.
        auto edge_open = [&](int ax, int ay, int bx, int by) {
            std::vector<std::array<double, 2>> seg{cv(ax, ay), cv(bx, by)};
            return polygon_meets_box_2d(seg, lo0, hi0, lo1, hi1);
        };
        std::fill(visited.begin(), visited.end(), 0);
        for (int start = 0; start < npix; ++start) {
            if (!mask[start] || visited[start]) continue;
            ++total;
            stack.assign(1, start);
            visited[start] = 1;
            while (!stack.empty()) {
                int p = stack.back();
                stack.pop_back();
                int px = p % raster, py = p / raster;
                struct Step {
                    int dx, dy, ax, ay, bx, by;
                };
                const Step steps[4] = {
                    {1, 0, px + 1, py, px + 1, py + 1},   // right edge
                    {-1, 0, px, py, px, py + 1},          // left edge
                    {0, 1, px, py + 1, px + 1, py + 1},   // top edge
                    {0, -1, px, py, px + 1, py},          // bottom edge
                };
                for (const auto& s : steps) {
                    int qx = px + s.dx, qy = py + s.dy;
                    if (qx < 0 || qx >= raster || qy < 0 || qy >= raster) continue;
                    int q = qy * raster + qx;
                    if (!mask[q] || visited[q]) continue;
                    if (!edge_open(s.ax, s.ay, s.bx, s.by)) continue;
                    visited[q] = 1;
                    stack.push_back(q);
                }
            }
        }
    }
    return total;
}

}  // namespace reebmapper
