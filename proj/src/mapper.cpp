#include "reebmapper/mapper.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

std::string box_to_string(const Box& b) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < b.dim(); ++i) {
        if (i) os << " x ";
        os << "(" << b.axes[i].lo << "," << b.axes[i].hi << ")";
    }
    os << "]";
    return os.str();
}

struct PairUnionFind {
    std::vector<int> parent;
    explicit PairUnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

}  // namespace

const LabelMap& CategoricalMapper::codim1_map(int tau, int sigma) const {
    auto it = face_map.find({tau, sigma});
    if (it == face_map.end()) throw PreconditionError("no codimension-1 face relation between simplices");
    return it->second;
}

LabelMap CategoricalMapper::face_map_general(int tau, int sigma) const {
    if (tau == sigma) {
        LabelMap id;
        for (int l : value[tau].labels) id.emplace(l, l);
        return id;
    }
    const auto& tvs = nerve.simplices[tau];
    const auto& svs = nerve.simplices[sigma];
    if (!std::includes(tvs.begin(), tvs.end(), svs.begin(), svs.end())) {
        throw PreconditionError("face_map_general: sigma is not a face of tau");
    }
    // Walk down one index at a time; composition order is immaterial
    // (verified at construction).
    LabelMap acc;
    for (int l : value[tau].labels) acc.emplace(l, l);
    int cur = tau;
    std::vector<int> cur_vs = tvs;
    while (cur != sigma) {
        // Drop one vertex not in sigma.
        int drop = -1;
        for (int v : cur_vs) {
            if (!std::binary_search(svs.begin(), svs.end(), v)) {
                drop = v;
                break;
            }
        }
        std::vector<int> next_vs;
        for (int v : cur_vs) {
            if (v != drop) next_vs.push_back(v);
        }
        int next = nerve.id_of(next_vs);
        if (next < 0) throw InternalError("nerve not face closed in face_map_general");
        const LabelMap& step = codim1_map(cur, next);
        for (auto& [src, mid] : acc) mid = step.at(mid);
        cur = next;
        cur_vs = std::move(next_vs);
    }
    return acc;
}

CategoricalMapper categorical_mapper(const RdSpace& space, const Cover& cover) {
    if (cover.dim_range != space.dim_range()) {
        throw PreconditionError("cover dimension differs from the map's range dimension");
    }
    CategoricalMapper cm;
    cm.cover = cover;
    cm.nerve = nerve_of_cover(cover);

    cm.value.reserve(cm.nerve.size());
    for (int id = 0; id < cm.nerve.size(); ++id) {
        cm.value.push_back(components(space, ActiveRegion::single(cm.nerve.intersection_box[id])));
    }
    // Codimension-1 restriction maps, induced by U_tau inside U_sigma.
    for (int tau = 0; tau < cm.nerve.size(); ++tau) {
        for (int sigma : cm.nerve.facets[tau]) {
            cm.face_map.emplace(std::make_pair(tau, sigma), component_map(space, cm.value[tau], cm.value[sigma]));
        }
    }
    // Composition consistency: all codim-2 routes agree.
    for (int tau = 0; tau < cm.nerve.size(); ++tau) {
        for (int mid : cm.nerve.facets[tau]) {
            for (int sigma : cm.nerve.facets[mid]) {
                const LabelMap& a = cm.codim1_map(tau, mid);
                const LabelMap& b = cm.codim1_map(mid, sigma);
                LabelMap composed;
                for (const auto& [src, m] : a) composed.emplace(src, b.at(m));
                // Compare against any other route.
                for (int mid2 : cm.nerve.facets[tau]) {
                    if (mid2 == mid) continue;
                    const auto& svs = cm.nerve.simplices[sigma];
                    const auto& m2vs = cm.nerve.simplices[mid2];
                    if (!std::includes(m2vs.begin(), m2vs.end(), svs.begin(), svs.end())) continue;
                    const LabelMap& a2 = cm.codim1_map(tau, mid2);
                    const LabelMap& b2 = cm.codim1_map(mid2, sigma);
                    for (const auto& [src, m] : a2) {
                        if (composed.at(src) != b2.at(m)) {
                            throw InternalError("face maps do not compose consistently");
                        }
                    }
                }
            }
        }
    }
    return cm;
}

std::vector<std::array<int, 2>> MapperNerve::edges() const {
    std::vector<std::array<int, 2>> out;
    for (const auto& s : simplices) {
        if (s.size() == 2) out.push_back({s[0], s[1]});
    }
    return out;
}

int MapperNerve::vertex_id(int cover_index, int component_label) const {
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].cover_index == cover_index && vertices[i].component_label == component_label) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

MapperNerve mapper_nerve(const CategoricalMapper& cm) {
    MapperNerve mn;
    std::map<std::pair<int, int>, int> vertex_of;  // (cover index, label) -> vertex id
    const int ncover = static_cast<int>(cm.cover.elements.size());
    for (int alpha = 0; alpha < ncover; ++alpha) {
        int nid = cm.nerve.id_of({alpha});
        if (nid < 0) throw InternalError("cover element missing from its own nerve");
        for (int label : cm.value[nid].labels) {
            vertex_of.emplace(std::make_pair(alpha, label), static_cast<int>(mn.vertices.size()));
            mn.vertices.push_back({alpha, label});
        }
    }
    std::set<std::vector<int>> seen;
    for (int sid = 0; sid < cm.nerve.size(); ++sid) {
        const auto& sigma = cm.nerve.simplices[sid];
        if (cm.value[sid].empty()) continue;
        // Face maps down to each vertex of sigma.
        std::vector<LabelMap> to_vertex;
        to_vertex.reserve(sigma.size());
        for (int alpha : sigma) to_vertex.push_back(cm.face_map_general(sid, cm.nerve.id_of({alpha})));
        for (int label : cm.value[sid].labels) {
            std::vector<int> simplex;
            simplex.reserve(sigma.size());
            for (size_t i = 0; i < sigma.size(); ++i) {
                simplex.push_back(vertex_of.at({sigma[i], to_vertex[i].at(label)}));
            }
            std::sort(simplex.begin(), simplex.end());
            // All faces, to keep the complex closed under subsets.
            const size_t n = simplex.size();
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                std::vector<int> face;
                for (size_t i = 0; i < n; ++i) {
                    if (mask & (1u << i)) face.push_back(simplex[i]);
                }
                seen.insert(std::move(face));
            }
        }
    }
    mn.simplices.assign(seen.begin(), seen.end());
    std::sort(mn.simplices.begin(), mn.simplices.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return mn;
}

Box image_bounding_box(const RdSpace& space) {
    const int d = space.dim_range();
    Box out;
    out.axes.assign(d, {0.0, 0.0});
    if (space.map.values.empty()) {
        for (auto& iv : out.axes) iv = {-0.5, 0.5};
        return out;
    }
    for (int axis = 0; axis < d; ++axis) {
        double lo = space.map.values[0][axis];
        double hi = lo;
        for (const auto& v : space.map.values) {
            lo = std::min(lo, v[axis]);
            hi = std::max(hi, v[axis]);
        }
        if (!(hi > lo)) {  // degenerate axis: pad so the box is open
            lo -= 0.5;
            hi += 0.5;
        }
        out.axes[axis] = {lo, hi};
    }
    return out;
}

Cover jcn_cover(const RdSpace& space, const std::vector<int>& counts, double gain) {
    if (static_cast<int>(counts.size()) != space.dim_range()) {
        throw PreconditionError("jcn: one quantization count per range axis required");
    }
    return uniform_cover(image_bounding_box(space), counts, gain);
}

MapperNerve jcn(const RdSpace& space, const std::vector<int>& counts, double gain) {
    return mapper_nerve(categorical_mapper(space, jcn_cover(space, counts, gain)));
}

PkValue pk_evaluate(const CategoricalMapper& cm, const Box& region) {
    PkValue out;
    out.region = region;
    out.k_sub = k_sub(cm.cover, cm.nerve, region);

    std::vector<std::pair<int, int>> elements;  // (nerve simplex, component label)
    std::map<std::pair<int, int>, int> index;
    for (int sid : out.k_sub) {
        for (int label : cm.value[sid].labels) {
            index.emplace(std::make_pair(sid, label), static_cast<int>(elements.size()));
            elements.emplace_back(sid, label);
        }
    }
    PairUnionFind uf(static_cast<int>(elements.size()));
    std::vector<char> in_k(cm.nerve.size(), 0);
    for (int sid : out.k_sub) in_k[sid] = 1;
    for (int tau : out.k_sub) {
        for (int sigma : cm.nerve.facets[tau]) {
            if (!in_k[sigma]) continue;  // cannot happen: K_I is face closed
            const LabelMap& fm = cm.codim1_map(tau, sigma);
            for (const auto& [src, dst] : fm) {
                uf.unite(index.at({tau, src}), index.at({sigma, dst}));
            }
        }
    }
    std::map<int, int> class_of_root;
    for (size_t i = 0; i < elements.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        auto it = class_of_root.find(root);
        if (it == class_of_root.end()) {
            it = class_of_root.emplace(root, static_cast<int>(out.classes.size())).first;
            out.classes.emplace_back();
        }
        out.classes[it->second].push_back(elements[i]);
        out.class_of.emplace(elements[i], it->second);
    }
    for (auto& cls : out.classes) std::sort(cls.begin(), cls.end());
    return out;
}

std::vector<int> pk_map(const CategoricalMapper& cm, const PkValue& small, const PkValue& large) {
    (void)cm;
    std::vector<int> out(small.classes.size(), -1);
    for (size_t c = 0; c < small.classes.size(); ++c) {
        for (const auto& member : small.classes[c]) {
            auto it = large.class_of.find(member);
            if (it == large.class_of.end()) {
                throw PreconditionError("pk_map: small evaluation is not a subdiagram of the large one");
            }
            if (out[c] < 0) {
                out[c] = it->second;
            } else if (out[c] != it->second) {
                throw InternalError("pk_map: colimit class split across targets");
            }
        }
    }
    return out;
}

ComponentSet f_direct(const RdSpace& space, const Cover& cover, const CoverNerve& nerve, const Box& region) {
    std::vector<int> ks = k_sub(cover, nerve, region);
    if (ks.empty()) {
        ComponentSet empty;
        empty.region = ActiveRegion{};
        return empty;
    }
    std::vector<Box> boxes;
    boxes.reserve(ks.size());
    for (int sid : ks) boxes.push_back(nerve.intersection_box[sid]);
    return components(space, ActiveRegion(std::move(boxes)));
}

std::string EquivalenceReport::summary() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " (boxes=" << boxes_checked << ", nested pairs=" << pairs_checked;
    if (!failures.empty()) os << ", first failure: " << failures.front();
    os << ")";
    return os.str();
}

EquivalenceReport colimit_equivalence_check(const RdSpace& space, const Cover& cover, const std::vector<Box>& test_boxes) {
    EquivalenceReport report;
    CategoricalMapper cm = categorical_mapper(space, cover);

    auto fail = [&report](const std::string& msg) {
        report.pass = false;
        if (report.failures.size() < 16) report.failures.push_back(msg);
    };

    std::vector<PkValue> pk;
    std::vector<ComponentSet> direct;
    std::vector<std::vector<int>> psi;  // per box: colimit class index -> direct label
    pk.reserve(test_boxes.size());
    direct.reserve(test_boxes.size());

    for (const Box& box : test_boxes) {
        PkValue p = pk_evaluate(cm, box);
        ComponentSet d = f_direct(space, cover, cm.nerve, box);
        ++report.boxes_checked;

        // psi_I: each colimit class contains components that live inside
        // one direct component; map by containment.
        std::vector<int> map_c(p.classes.size(), -1);
        bool ok = true;
        for (size_t c = 0; c < p.classes.size() && ok; ++c) {
            for (const auto& [sid, label] : p.classes[c]) {
                const auto& comp = cm.value[sid].members.at(label);
                for (int simplex : comp) {
                    int dl = d.label_of(simplex);
                    if (dl < 0) {
                        fail("box " + box_to_string(box) + ": component simplex inactive in the union");
                        ok = false;
                        break;
                    }
                    if (map_c[c] < 0) {
                        map_c[c] = dl;
                    } else if (map_c[c] != dl) {
                        fail("box " + box_to_string(box) + ": colimit class maps to two direct components");
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        if (ok) {
            // Bijection: class count equals component count and the map
            // is injective onto the direct labels.
            std::set<int> image(map_c.begin(), map_c.end());
            if (map_c.size() != p.classes.size() || image.size() != map_c.size() ||
                map_c.size() != d.labels.size()) {
                fail("box " + box_to_string(box) + ": |colim| = " + std::to_string(p.classes.size()) +
                     " vs |direct| = " + std::to_string(d.labels.size()) + " with image " +
                     std::to_string(image.size()));
            }
        }
        pk.push_back(std::move(p));
        direct.push_back(std::move(d));
        psi.push_back(std::move(map_c));
    }

    // Naturality on nested pairs: psi_J ∘ pk(I->J) = direct(I->J) ∘ psi_I.
    for (size_t i = 0; i < test_boxes.size(); ++i) {
        for (size_t j = 0; j < test_boxes.size(); ++j) {
            if (i == j || !box_contains(test_boxes[j], test_boxes[i])) continue;
            ++report.pairs_checked;
            std::vector<int> up;
            LabelMap dmap;
            try {
                up = pk_map(cm, pk[i], pk[j]);
                dmap = component_map(space, direct[i], direct[j]);
            } catch (const Error& e) {
                fail(std::string("nested pair map construction failed: ") + e.what());
                continue;
            }
            for (size_t c = 0; c < pk[i].classes.size(); ++c) {
                int via_pk = psi[j][up[c]];
                int via_direct = dmap.at(psi[i][c]);
                if (via_pk != via_direct) {
                    fail("naturality failure on nested boxes " + box_to_string(test_boxes[i]) + " in " +
                         box_to_string(test_boxes[j]));
                    break;
                }
            }
        }
    }
    return report;
}

std::vector<Box> default_test_boxes(const RdSpace& space, const Cover& cover, int count, std::uint64_t seed) {
    const int d = space.dim_range();
    std::vector<Box> out;
    if (d == 1) {
        std::vector<double> breaks;
        for (const Box& b : cover.elements) {
            breaks.push_back(b.axes[0].lo);
            breaks.push_back(b.axes[0].hi);
        }
        for (const auto& v : space.map.values) breaks.push_back(v[0]);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double a, double b) { return std::abs(a - b) <= tolerance(); }),
                     breaks.end());
        std::vector<double> mids;
        for (size_t i = 0; i + 1 < breaks.size(); ++i) mids.push_back((breaks[i] + breaks[i + 1]) / 2.0);
        for (size_t i = 0; i < mids.size(); ++i) {
            for (size_t j = i + 1; j < mids.size(); ++j) out.push_back(Box::interval(mids[i], mids[j]));
        }
        return out;
    }
    // d >= 2: seeded random boxes at three scales, plus a shrunken copy
    // of each so nested pairs always exist.
    Box bbox = image_bounding_box(space);
    const double res = resolution(cover);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double scales[3] = {res / 2.0, res, 2.0 * res};
    while (static_cast<int>(out.size()) < count) {
        Box b;
        b.axes.resize(d);
        double scale = scales[rng() % 3];
        for (int axis = 0; axis < d; ++axis) {
            double span = bbox.axes[axis].hi - bbox.axes[axis].lo;
            double c = bbox.axes[axis].lo - 0.5 * res + unit(rng) * (span + res);
            double half = scale * (0.35 + 0.65 * unit(rng));
            b.axes[axis] = {c - half, c + half};
        }
        Box inner = b;
        for (int axis = 0; axis < d; ++axis) {
            double quarter = (b.axes[axis].hi - b.axes[axis].lo) / 4.0;
            inner.axes[axis] = {b.axes[axis].lo + quarter, b.axes[axis].hi - quarter};
        }
        out.push_back(std::move(b));
        if (static_cast<int>(out.size()) < count) out.push_back(std::move(inner));
    }
    return out;
}

}  // namespace reebmapper
