#include "reebmapper/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

struct NodeUnionFind {
    std::vector<int> parent;
    explicit NodeUnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

// Tolerance-clustered value ranks; returns rank per node plus one
// representative value per rank.
std::pair<std::vector<int>, std::vector<double>> value_ranks(const ReebGraph& g) {
    const double tol = tolerance();
    std::vector<double> sorted;
    sorted.reserve(g.nodes.size());
    for (const auto& n : g.nodes) sorted.push_back(n.value);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> reps;
    for (double v : sorted) {
        if (reps.empty() || v - reps.back() > tol) reps.push_back(v);
    }
    std::vector<int> rank(g.nodes.size(), 0);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        auto it = std::upper_bound(reps.begin(), reps.end(), g.nodes[i].value + tol);
        rank[i] = static_cast<int>(it - reps.begin()) - 1;
    }
    return {rank, reps};
}

}  // namespace

int ReebGraph::degree(int node_id) const {
    int d = 0;
    for (const auto& e : edges) d += (e[0] == node_id) + (e[1] == node_id);
    return d;
}

bool ReebGraph::is_regular(int node_id) const {
    int below = 0, above = 0, incident = 0;
    double value = 0.0;
    for (const auto& n : nodes) {
        if (n.id == node_id) value = n.value;
    }
    auto value_of = [&](int nid) {
        for (const auto& n : nodes) {
            if (n.id == nid) return n.value;
        }
        throw InternalError("dangling node id in reeb graph");
    };
    for (const auto& e : edges) {
        for (int side = 0; side < 2; ++side) {
            if (e[side] != node_id) continue;
            ++incident;
            double other = value_of(e[1 - side]);
            if (other < value) ++below;
            if (other > value) ++above;
        }
    }
    return incident == 2 && below == 1 && above == 1;
}

int ReebGraph::non_regular_count() const {
    int c = 0;
    for (const auto& n : nodes) {
        if (!is_regular(n.id)) ++c;
    }
    return c;
}

std::vector<double> critical_values(const RdSpace& space) {
    if (space.dim_range() != 1) throw PreconditionError("critical_values requires d = 1");
    const double tol = tolerance();
    std::vector<double> vals;
    vals.reserve(space.map.values.size());
    for (const auto& v : space.map.values) vals.push_back(v[0]);
    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals) {
        if (out.empty() || v - out.back() > tol) out.push_back(v);
    }
    return out;
}

ReebGraph contract_regular_nodes(ReebGraph g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t n = 0; n < g.nodes.size(); ++n) {
            int id = g.nodes[n].id;
            int e1 = -1, e2 = -1, incident = 0;
            for (size_t e = 0; e < g.edges.size(); ++e) {
                if (g.edges[e][0] == id || g.edges[e][1] == id) {
                    ++incident;
                    if (e1 < 0) {
                        e1 = static_cast<int>(e);
                    } else {
                        e2 = static_cast<int>(e);
                    }
                }
            }
            if (incident != 2 || e1 < 0 || e2 < 0) continue;
            int u = g.edges[e1][0] == id ? g.edges[e1][1] : g.edges[e1][0];
            int w = g.edges[e2][0] == id ? g.edges[e2][1] : g.edges[e2][0];
            double val = g.nodes[n].value;
            auto value_of = [&](int nid) {
                for (const auto& node : g.nodes) {
                    if (node.id == nid) return node.value;
                }
                throw InternalError("dangling node id in reeb graph");
            };
            double vu = value_of(u), vw = value_of(w);
            bool opposite = (vu < val && val < vw) || (vw < val && val < vu);
            if (!opposite) continue;
            g.edges[e1] = {std::min(u, w), std::max(u, w)};
            g.edges.erase(g.edges.begin() + e2);
            g.nodes.erase(g.nodes.begin() + n);
            changed = true;
            break;
        }
    }
    std::map<int, int> remap;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        remap[g.nodes[i].id] = static_cast<int>(i);
        g.nodes[i].id = static_cast<int>(i);
    }
    for (auto& e : g.edges) e = {remap.at(e[0]), remap.at(e[1])};
    return g;
}

ReebGraph reeb_graph(const RdSpace& space, bool contract_regular) {
    if (space.dim_range() != 1) throw PreconditionError("reeb_graph requires d = 1");
    ReebGraph g;
    if (space.complex.vertex_count() == 0) return g;
    const std::vector<double> crits = critical_values(space);
    const int m = static_cast<int>(crits.size());

    std::vector<ComponentSet> levels(m);
    std::map<std::pair<int, int>, int> node_of;  // (level, label) -> node id
    for (int i = 0; i < m; ++i) {
        levels[i] = level_components(space, crits[i]);
        for (int label : levels[i].labels) {
            node_of.emplace(std::make_pair(i, label), static_cast<int>(g.nodes.size()));
            g.nodes.push_back({static_cast<int>(g.nodes.size()), crits[i]});
        }
    }
    // One edge per slab component; a slab-active simplex spans the whole
    // closed slab, so its component sits inside exactly one level
    // component at each bounding value.
    for (int i = 0; i + 1 < m; ++i) {
        ComponentSet slab = components(space, ActiveRegion::single(Box::interval(crits[i], crits[i + 1])));
        for (int label : slab.labels) {
            const auto& ids = slab.members.at(label);
            int lower = levels[i].label_of(ids.front());
            int upper = levels[i + 1].label_of(ids.front());
            if (lower < 0 || upper < 0) {
                throw InternalError("slab component not anchored at both bounding levels");
            }
            g.edges.push_back({node_of.at({i, lower}), node_of.at({i + 1, upper})});
        }
    }
    return contract_regular ? contract_regular_nodes(std::move(g)) : g;
}

BettiPair betti(const ReebGraph& g) {
    BettiPair out;
    if (g.nodes.empty()) return out;
    std::map<int, int> index;
    for (size_t i = 0; i < g.nodes.size(); ++i) index.emplace(g.nodes[i].id, static_cast<int>(i));
    NodeUnionFind uf(static_cast<int>(g.nodes.size()));
    for (const auto& e : g.edges) uf.unite(index.at(e[0]), index.at(e[1]));
    std::set<int> roots;
    for (size_t i = 0; i < g.nodes.size(); ++i) roots.insert(uf.find(static_cast<int>(i)));
    out.b0 = static_cast<long>(roots.size());
    out.b1 = static_cast<long>(g.edges.size()) - static_cast<long>(g.nodes.size()) + out.b0;
    return out;
}

BettiPair betti_skeleton(const MapperNerve& mn) {
    BettiPair out;
    if (mn.vertices.empty()) return out;
    NodeUnionFind uf(static_cast<int>(mn.vertices.size()));
    long edge_count = 0;
    for (const auto& s : mn.simplices) {
        if (s.size() == 2) {
            uf.unite(s[0], s[1]);
            ++edge_count;
        }
    }
    std::set<int> roots;
    for (size_t i = 0; i < mn.vertices.size(); ++i) roots.insert(uf.find(static_cast<int>(i)));
    out.b0 = static_cast<long>(roots.size());
    out.b1 = edge_count - static_cast<long>(mn.vertices.size()) + out.b0;
    return out;
}

CosheafRep cosheaf_rep(const RdSpace& space) {
    if (space.dim_range() != 1) throw PreconditionError("cosheaf_rep requires d = 1");
    CosheafRep rep;
    if (space.complex.vertex_count() == 0) return rep;
    rep.critical_set = critical_values(space);
    const int m = static_cast<int>(rep.critical_set.size());
    const auto& S = rep.critical_set;

    auto gap_below = [&](int i) { return i == 0 ? 1.0 : S[i] - S[i - 1]; };
    auto gap_above = [&](int i) { return i == m - 1 ? 1.0 : S[i + 1] - S[i]; };

    for (int i = 0; i < m; ++i) {
        Box e = Box::interval(S[i] - gap_below(i) / 4.0, S[i] + gap_above(i) / 4.0);
        rep.point_strata.push_back({e, components(space, ActiveRegion::single(e))});
    }
    {
        Box below = Box::interval(S.front() - 1.0, S.front());
        rep.open_strata.push_back({below, components(space, ActiveRegion::single(below))});
    }
    for (int i = 0; i + 1 < m; ++i) {
        Box o = Box::interval(S[i], S[i + 1]);
        rep.open_strata.push_back({o, components(space, ActiveRegion::single(o))});
    }
    {
        Box above = Box::interval(S.back(), S.back() + 1.0);
        rep.open_strata.push_back({above, components(space, ActiveRegion::single(above))});
    }
    for (int i = 0; i + 1 < m; ++i) {
        Box w = Box::interval(rep.point_strata[i].interval.axes[0].lo,
                              rep.point_strata[i + 1].interval.axes[0].hi);
        ComponentSet wc = components(space, ActiveRegion::single(w));
        rep.slab_to_union.push_back(component_map(space, rep.open_strata[i + 1].comps, wc));
        rep.lower_to_union.push_back(component_map(space, rep.point_strata[i].comps, wc));
        rep.upper_to_union.push_back(component_map(space, rep.point_strata[i + 1].comps, wc));
        rep.union_strata.push_back({w, std::move(wc)});
    }
    return rep;
}

ReebGraph geometric_mapper(const CategoricalMapper& cm, bool contract_regular) {
    if (cm.cover.dim_range != 1) throw PreconditionError("geometric_mapper requires d = 1");
    const int n = static_cast<int>(cm.cover.elements.size());
    if (n == 0) return ReebGraph{};

    // Sort intervals and verify the consecutive-overlap ordering
    // a_1 < a_2 < b_1 < a_3 < b_2 < ... < b_n.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return cm.cover.elements[x].axes[0].lo < cm.cover.elements[y].axes[0].lo;
    });
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = cm.cover.elements[order[i]].axes[0].lo;
        b[i] = cm.cover.elements[order[i]].axes[0].hi;
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (!(a[i] < a[i + 1] && a[i + 1] < b[i] && b[i] < b[i + 1])) {
            throw PreconditionError("cover intervals violate the consecutive-overlap ordering");
        }
        if (i + 2 < n && !(b[i] <= a[i + 2])) {
            throw PreconditionError("cover has a non-consecutive overlap");
        }
    }

    std::vector<int> vertex_nerve(n);
    for (int i = 0; i < n; ++i) {
        vertex_nerve[i] = cm.nerve.id_of({order[i]});
        if (vertex_nerve[i] < 0) throw InternalError("cover element missing from nerve");
    }
    std::map<std::pair<int, int>, int> elem_index;  // (sorted interval, label) -> index
    std::vector<std::pair<int, int>> elems;
    for (int i = 0; i < n; ++i) {
        for (int label : cm.value[vertex_nerve[i]].labels) {
            elem_index.emplace(std::make_pair(i, label), static_cast<int>(elems.size()));
            elems.emplace_back(i, label);
        }
    }
    // Components of M[i, i+1]: mapper vertices over U_i and U_{i+1}
    // joined through the components of the overlap.
    auto overlap_components = [&](int i) {
        NodeUnionFind uf(static_cast<int>(std::max<size_t>(elems.size(), 1)));
        int eid = cm.nerve.id_of({std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])});
        if (eid >= 0) {
            const LabelMap to_lo = cm.face_map_general(eid, vertex_nerve[i]);
            const LabelMap to_hi = cm.face_map_general(eid, vertex_nerve[i + 1]);
            for (int label : cm.value[eid].labels) {
                uf.unite(elem_index.at({i, to_lo.at(label)}), elem_index.at({i + 1, to_hi.at(label)}));
            }
        }
        std::map<int, std::vector<std::pair<int, int>>> classes;
        for (int side = i; side <= i + 1; ++side) {
            for (int label : cm.value[vertex_nerve[side]].labels) {
                classes[uf.find(elem_index.at({side, label}))].emplace_back(side, label);
            }
        }
        std::vector<std::vector<std::pair<int, int>>> out;
        for (auto& [root, members] : classes) {
            (void)root;
            std::sort(members.begin(), members.end());
            out.push_back(std::move(members));
        }
        return out;
    };

    // Phantom end intervals realized degenerately (b_0 = a_1 and
    // a_{n+1} = b_n): the zero-length boundary stubs vanish and node
    // values come from the real cover endpoints.
    struct Endpoint {
        double value;
    };
    std::vector<Endpoint> endpoints;
    std::vector<std::array<int, 2>> raw_edges;
    auto new_endpoint = [&](double v) {
        endpoints.push_back({v});
        return static_cast<int>(endpoints.size()) - 1;
    };

    auto shares_simplex = [&](int i, int label, const std::vector<std::pair<int, int>>& comp) {
        const auto& mine = cm.value[vertex_nerve[i]].members.at(label);
        for (const auto& [side, other_label] : comp) {
            const auto& theirs = cm.value[vertex_nerve[side]].members.at(other_label);
            std::vector<int> common;
            std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(),
                                  std::back_inserter(common));
            if (!common.empty()) return true;
        }
        return false;
    };

    std::vector<std::vector<std::vector<std::pair<int, int>>>> overlaps(std::max(0, n - 1));
    std::vector<std::vector<std::pair<int, int>>> pink_lo(n), pink_hi(n);
    std::vector<std::vector<std::pair<int, int>>> yellow_lo(std::max(0, n - 1)), yellow_hi(std::max(0, n - 1));

    for (int i = 0; i < n; ++i) {
        double lo_val = (i == 0) ? a[0] : b[i - 1];
        double hi_val = (i == n - 1) ? b[n - 1] : a[i + 1];
        for (int label : cm.value[vertex_nerve[i]].labels) {
            int e0 = new_endpoint(lo_val);
            int e1 = new_endpoint(hi_val);
            raw_edges.push_back({e0, e1});
            pink_lo[i].emplace_back(label, e0);
            pink_hi[i].emplace_back(label, e1);
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        overlaps[i] = overlap_components(i);
        for (size_t c = 0; c < overlaps[i].size(); ++c) {
            int e0 = new_endpoint(a[i + 1]);
            int e1 = new_endpoint(b[i]);
            raw_edges.push_back({e0, e1});
            yellow_lo[i].emplace_back(static_cast<int>(c), e0);
            yellow_hi[i].emplace_back(static_cast<int>(c), e1);
        }
    }

    NodeUnionFind glue(static_cast<int>(std::max<size_t>(endpoints.size(), 1)));
    for (int i = 0; i + 1 < n; ++i) {
        for (const auto& [label, pe] : pink_hi[i]) {
            for (const auto& [c, ye] : yellow_lo[i]) {
                if (shares_simplex(i, label, overlaps[i][c])) glue.unite(pe, ye);
            }
        }
        for (const auto& [label, pe] : pink_lo[i + 1]) {
            for (const auto& [c, ye] : yellow_hi[i]) {
                if (shares_simplex(i + 1, label, overlaps[i][c])) glue.unite(pe, ye);
            }
        }
    }

    ReebGraph g;
    std::map<int, int> node_of_root;
    for (size_t e = 0; e < endpoints.size(); ++e) {
        int root = glue.find(static_cast<int>(e));
        if (!node_of_root.count(root)) {
            node_of_root.emplace(root, static_cast<int>(g.nodes.size()));
            g.nodes.push_back({static_cast<int>(g.nodes.size()), endpoints[root].value});
        }
    }
    for (const auto& re : raw_edges) {
        g.edges.push_back({node_of_root.at(glue.find(re[0])), node_of_root.at(glue.find(re[1]))});
    }
    return contract_regular ? contract_regular_nodes(std::move(g)) : g;
}

bool rgraph_isomorphic(const ReebGraph& a, const ReebGraph& b, IsoMode mode) {
    if (a.nodes.size() > 200 || b.nodes.size() > 200) {
        throw PreconditionError("rgraph_isomorphic size limit exceeded (200 nodes)");
    }
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
    const int n = static_cast<int>(a.nodes.size());
    if (n == 0) return true;

    auto [rank_a, reps_a] = value_ranks(a);
    auto [rank_b, reps_b] = value_ranks(b);
    if (reps_a.size() != reps_b.size()) return false;
    if (mode == IsoMode::ExactValues) {
        const double tol = tolerance();
        for (size_t i = 0; i < reps_a.size(); ++i) {
            if (std::abs(reps_a[i] - reps_b[i]) > tol) return false;
        }
    }

    std::map<int, int> pos_a, pos_b;
    for (int i = 0; i < n; ++i) {
        pos_a.emplace(a.nodes[i].id, i);
        pos_b.emplace(b.nodes[i].id, i);
    }
    std::vector<std::vector<int>> mult_a(n, std::vector<int>(n, 0)), mult_b(n, std::vector<int>(n, 0));
    for (const auto& e : a.edges) {
        int u = pos_a.at(e[0]), v = pos_a.at(e[1]);
        ++mult_a[u][v];
        ++mult_a[v][u];
    }
    for (const auto& e : b.edges) {
        int u = pos_b.at(e[0]), v = pos_b.at(e[1]);
        ++mult_b[u][v];
        ++mult_b[v][u];
    }
    std::vector<int> deg_a(n, 0), deg_b(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            deg_a[i] += mult_a[i][j];
            deg_b[i] += mult_b[i][j];
        }
    }

    std::vector<std::vector<int>> candidates(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (rank_a[i] == rank_b[j] && deg_a[i] == deg_b[j]) candidates[i].push_back(j);
        }
        if (candidates[i].empty()) return false;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return candidates[x].size() < candidates[y].size(); });

    std::vector<int> assign(n, -1);
    std::vector<char> used(n, 0);
    auto backtrack = [&](auto&& self, int step) -> bool {
        if (step == n) return true;
        int u = order[step];
        for (int x : candidates[u]) {
            if (used[x]) continue;
            bool ok = true;
            for (int s = 0; s < step && ok; ++s) {
                int v = order[s];
                if (mult_a[u][v] != mult_b[x][assign[v]]) ok = false;
            }
            if (!ok) continue;
            assign[u] = x;
            used[x] = 1;
            if (self(self, step + 1)) return true;
            assign[u] = -1;
            used[x] = 0;
        }
        return false;
    };
    return backtrack(backtrack, 0);
}

bool is_adapted_cover(const Cover& cover, const std::vector<double>& crits) {
    if (cover.dim_range != 1) return false;
    const int n = static_cast<int>(cover.elements.size());
    if (n == 0) return false;
    std::vector<double> a(n), b(n);
    {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return cover.elements[x].axes[0].lo < cover.elements[y].axes[0].lo;
        });
        for (int i = 0; i < n; ++i) {
            a[i] = cover.elements[order[i]].axes[0].lo;
            b[i] = cover.elements[order[i]].axes[0].hi;
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (!(a[i] < a[i + 1] && a[i + 1] < b[i] && b[i] < b[i + 1])) return false;
        if (i + 2 < n && !(b[i] <= a[i + 2])) return false;
    }
    for (int i = 0; i < n; ++i) {
        double core_lo = (i == 0) ? a[0] : b[i - 1];
        double core_hi = (i == n - 1) ? b[n - 1] : a[i + 1];
        int inside = 0;
        for (double c : crits) {
            if (c >= core_lo && c <= core_hi) ++inside;
        }
        if (inside > 1) return false;
    }
    for (int i = 0; i + 1 < n; ++i) {
        for (double c : crits) {
            if (c > a[i + 1] && c < b[i]) return false;
        }
    }
    return true;
}

Cover adapted_cover(const RdSpace& space) {
    std::vector<double> crits = critical_values(space);
    Cover cover;
    cover.dim_range = 1;
    if (crits.empty()) throw PreconditionError("adapted_cover requires a nonempty mesh");
    const int m = static_cast<int>(crits.size());
    if (m == 1) {
        cover.elements.push_back(Box::interval(crits[0] - 0.75, crits[0] + 0.75));
        return cover;
    }
    double min_gap = crits[1] - crits[0];
    for (int i = 1; i + 1 < m; ++i) min_gap = std::min(min_gap, crits[i + 1] - crits[i]);
    const double eta = min_gap / 4.0;
    auto left_of = [&](int i) { return i == 0 ? crits[0] - min_gap / 2.0 : (crits[i - 1] + crits[i]) / 2.0; };
    auto right_of = [&](int i) {
        return i == m - 1 ? crits[m - 1] + min_gap / 2.0 : (crits[i] + crits[i + 1]) / 2.0;
    };
    for (int i = 0; i < m; ++i) {
        cover.elements.push_back(Box::interval(left_of(i) - eta, right_of(i) + eta));
    }
    return cover;
}

}  // namespace reebmapper
