#include "reebmapper/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

std::string simplex_key(const std::vector<int>& sorted_vertices) {
    std::string key;
    key.reserve(sorted_vertices.size() * 4);
    for (int v : sorted_vertices) {
        key += std::to_string(v);
        key += ',';
    }
    return key;
}

bool simplex_less(const Simplex& a, const Simplex& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

}  // namespace

Simplex::Simplex(std::vector<int> v) : vertices(std::move(v)) {
    std::sort(vertices.begin(), vertices.end());
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        if (vertices[i] == vertices[i + 1]) {
            throw ValidationError("duplicate vertex " + std::to_string(vertices[i]) + " in simplex");
        }
    }
    if (vertices.empty()) throw ValidationError("empty simplex");
}

SimplicialComplex SimplicialComplex::from_maximal(int vertex_count, const std::vector<Simplex>& maximal) {
    if (vertex_count < 0) throw ValidationError("negative vertex count");
    SimplicialComplex c;
    c.vertex_count_ = vertex_count;

    // Face closure, collected per dimension.
    std::vector<std::vector<std::vector<int>>> by_dim;  // dim -> list of vertex lists
    std::unordered_map<std::string, bool> seen;
    auto add = [&](const std::vector<int>& vs) {
        std::string key = simplex_key(vs);
        if (seen.emplace(key, true).second) {
            size_t d = vs.size() - 1;
            if (by_dim.size() <= d) by_dim.resize(d + 1);
            by_dim[d].push_back(vs);
        }
    };
    for (int v = 0; v < vertex_count; ++v) add({v});
    // Enumerate every subset of each maximal simplex (they are small).
    for (const Simplex& s : maximal) {
        for (int v : s.vertices) {
            if (v < 0 || v >= vertex_count) {
                throw ValidationError("simplex references vertex id " + std::to_string(v) +
                                      " outside 0.." + std::to_string(vertex_count - 1));
            }
        }
        const auto& vs = s.vertices;
        const size_t n = vs.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> face;
            for (size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) face.push_back(vs[i]);
            }
            add(face);
        }
    }

    for (auto& dim_list : by_dim) std::sort(dim_list.begin(), dim_list.end());
    for (auto& dim_list : by_dim) {
        for (auto& vs : dim_list) {
            Simplex s;
            s.vertices = std::move(vs);
            c.index_.emplace(simplex_key(s.vertices), static_cast<int>(c.simplices_.size()));
            c.simplices_.push_back(std::move(s));
        }
    }
    c.max_dim_ = static_cast<int>(by_dim.size()) - 1;

    const int n = c.size();
    c.facets_.resize(n);
    c.cofacets_.resize(n);
    for (int id = 0; id < n; ++id) {
        const auto& vs = c.simplices_[id].vertices;
        if (vs.size() == 1) continue;
        std::vector<int> face(vs.size() - 1);
        for (size_t skip = 0; skip < vs.size(); ++skip) {
            size_t w = 0;
            for (size_t i = 0; i < vs.size(); ++i) {
                if (i != skip) face[w++] = vs[i];
            }
            int fid = c.id_of(face);
            if (fid < 0) throw InternalError("face closure missed a facet");
            c.facets_[id].push_back(fid);
            c.cofacets_[fid].push_back(id);
        }
    }
    for (int id = 0; id < n; ++id) {
        if (c.cofacets_[id].empty()) c.maximal_.push_back(id);
    }
    return c;
}

int SimplicialComplex::id_of(const std::vector<int>& sorted_vertices) const {
    auto it = index_.find(simplex_key(sorted_vertices));
    return it == index_.end() ? -1 : it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    out.reserve(maximal_.size());
    for (int id : maximal_) out.push_back(simplices_[id]);
    std::sort(out.begin(), out.end(), simplex_less);
    return out;
}

RdSpace make_space(SimplicialComplex complex, PLMap map) {
    if (map.dim_range < 1) throw ValidationError("dim_range must be >= 1");
    if (static_cast<int>(map.values.size()) != complex.vertex_count()) {
        throw ValidationError("map must carry exactly one value vector per vertex");
    }
    for (const auto& v : map.values) {
        if (static_cast<int>(v.size()) != map.dim_range) {
            throw ValidationError("value vector length differs from dim_range");
        }
        for (double x : v) {
            if (!std::isfinite(x)) throw ValidationError("non-finite vertex value");
        }
    }
    RdSpace space;
    space.complex = std::move(complex);
    space.map = std::move(map);

    const int d = space.map.dim_range;
    const int n = space.complex.size();
    space.bbox_lo.assign(static_cast<size_t>(n) * d, 0.0);
    space.bbox_hi.assign(static_cast<size_t>(n) * d, 0.0);
    for (int id = 0; id < n; ++id) {
        const auto& vs = space.complex.simplex(id).vertices;
        for (int axis = 0; axis < d; ++axis) {
            double lo = space.map.values[vs[0]][axis];
            double hi = lo;
            for (size_t i = 1; i < vs.size(); ++i) {
                lo = std::min(lo, space.map.values[vs[i]][axis]);
                hi = std::max(hi, space.map.values[vs[i]][axis]);
            }
            space.bbox_lo[static_cast<size_t>(id) * d + axis] = lo;
            space.bbox_hi[static_cast<size_t>(id) * d + axis] = hi;
        }
    }
    return space;
}

RdSpace parse_mesh_json(const std::string& text, std::vector<std::string>* warnings) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("mesh JSON parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim_range") || !j.contains("vertices") || !j.contains("simplices")) {
        throw ParseError("mesh JSON must contain dim_range, vertices, simplices");
    }
    PLMap map;
    try {
        map.dim_range = j.at("dim_range").get<int>();
        map.values = j.at("vertices").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("mesh JSON field error: ") + e.what());
    }
    std::vector<Simplex> maximal;
    try {
        for (const auto& arr : j.at("simplices")) {
            maximal.emplace_back(arr.get<std::vector<int>>());
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("mesh JSON simplex error: ") + e.what());
    }
    const int vertex_count = static_cast<int>(map.values.size());
    RdSpace space = make_space(SimplicialComplex::from_maximal(vertex_count, maximal), std::move(map));
    if (warnings) {
        auto w = genericity_warnings(space);
        warnings->insert(warnings->end(), w.begin(), w.end());
    }
    return space;
}

RdSpace load_mesh(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open mesh file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_mesh_json(buf.str(), warnings);
}

std::string mesh_to_json(const RdSpace& space) {
    nlohmann::json j;
    j["dim_range"] = space.map.dim_range;
    j["vertices"] = space.map.values;
    nlohmann::json simps = nlohmann::json::array();
    for (const Simplex& s : space.complex.maximal_simplices()) {
        if (s.dim() == 0) continue;  // vertices are implied by the vertex table
        simps.push_back(s.vertices);
    }
    j["simplices"] = simps;
    return j.dump(2) + "\n";
}

void save_mesh(const RdSpace& space, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write mesh file: " + path);
    out << mesh_to_json(space);
}

std::vector<std::vector<double>> image_polytope(const Simplex& s, const PLMap& m) {
    std::vector<std::vector<double>> pts;
    pts.reserve(s.vertices.size());
    for (int v : s.vertices) {
        if (v < 0 || v >= static_cast<int>(m.values.size())) {
            throw PreconditionError("simplex vertex outside the map's vertex set");
        }
        pts.push_back(m.values[v]);
    }
    return pts;
}

std::vector<std::string> genericity_warnings(const RdSpace& space) {
    std::vector<std::string> out;
    if (space.map.dim_range != 1) return out;
    const double tol = tolerance();
    std::vector<std::pair<double, int>> vals;
    vals.reserve(space.map.values.size());
    for (size_t v = 0; v < space.map.values.size(); ++v) {
        vals.emplace_back(space.map.values[v][0], static_cast<int>(v));
    }
    std::sort(vals.begin(), vals.end());
    for (size_t i = 0; i + 1 < vals.size() && out.size() < 8; ++i) {
        if (std::abs(vals[i].first - vals[i + 1].first) <= tol) {
            out.push_back("non-generic input: vertices " + std::to_string(vals[i].second) + " and " +
                          std::to_string(vals[i + 1].second) + " share value " +
                          std::to_string(vals[i].first));
        }
    }
    return out;
}

}  // namespace reebmapper
