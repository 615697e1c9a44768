#include <doctest.h>

#include <cstdio>
#include <cmath>
#include <fstream>

#include "reebmapper/errors.hpp"
#include "reebmapper/fixtures.hpp"
#include "reebmapper/simplicial.hpp"

using namespace reebmapper;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/reebmapper_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("load_mesh: tent path has the full face closure") {
    auto path = write_temp("tent.json",
                           R"({"dim_range": 1, "vertices": [[0],[1],[0]], "simplices": [[0,1],[1,2]]})");
    RdSpace space = load_mesh(path);
    CHECK(space.complex.size() == 5);  // 3 vertices + 2 edges
    CHECK(space.complex.vertex_count() == 3);
    CHECK(space.complex.max_dim() == 1);
}

TEST_CASE("load_mesh: singleton vertex") {
    auto path = write_temp("single.json", R"({"dim_range": 1, "vertices": [[2.5]], "simplices": []})");
    RdSpace space = load_mesh(path);
    CHECK(space.complex.size() == 1);
}

TEST_CASE("load_mesh: out-of-range vertex id is a validation error") {
    auto path = write_temp("bad_id.json",
                           R"({"dim_range": 1, "vertices": [[0],[1],[0]], "simplices": [[0,7]]})");
    CHECK_THROWS_AS(load_mesh(path), ValidationError);
}

TEST_CASE("load_mesh: duplicate vertex in a simplex is a validation error") {
    auto path = write_temp("dup.json",
                           R"({"dim_range": 1, "vertices": [[0],[1]], "simplices": [[0,0]]})");
    CHECK_THROWS_AS(load_mesh(path), ValidationError);
}

TEST_CASE("load_mesh: dim_range below 1 rejected") {
    auto path = write_temp("d0.json", R"({"dim_range": 0, "vertices": [[ ]], "simplices": []})");
    CHECK_THROWS_AS(load_mesh(path), ValidationError);
}

TEST_CASE("load_mesh: malformed JSON is a parse error") {
    auto path = write_temp("broken.json", "{nope");
    CHECK_THROWS_AS(load_mesh(path), ParseError);
}

TEST_CASE("image_polytope returns vertex images in order") {
    PLMap m1{1, {{0.0}, {1.0}, {0.0}}};
    auto pts = image_polytope(Simplex({0, 1}), m1);
    CHECK(pts == std::vector<std::vector<double>>{{0.0}, {1.0}});

    PLMap m2{2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
    auto tri = image_polytope(Simplex({0, 1, 2}), m2);
    CHECK(tri.size() == 3);
    CHECK(tri[1] == std::vector<double>{1.0, 0.0});

    auto vertex = image_polytope(Simplex({2}), m1);
    CHECK(vertex == std::vector<std::vector<double>>{{0.0}});
}

TEST_CASE("facet adjacency is symmetric") {
    RdSpace space = canned("torus").space;
    const auto& c = space.complex;
    for (int id = 0; id < c.size(); ++id) {
        for (int f : c.facets(id)) {
            const auto& cof = c.cofacets(f);
            CHECK(std::find(cof.begin(), cof.end(), id) != cof.end());
        }
    }
}

TEST_CASE("face closure: every facet of every stored simplex is stored") {
    RdSpace space = random_instance(99, {2, 2, 150}).space;
    const auto& c = space.complex;
    for (int id = 0; id < c.size(); ++id) {
        if (c.simplex(id).dim() == 0) continue;
        CHECK(static_cast<int>(c.facets(id).size()) == c.simplex(id).dim() + 1);
    }
}

TEST_CASE("triangulated circle with n vertices has n edges") {
    for (int n : {3, 5, 8, 13}) {
        std::vector<double> heights(n);
        for (int i = 0; i < n; ++i) heights[i] = std::sin(2.0 * 3.14159 * i / n);
        RdSpace space = cycle_space(heights);
        int edges = 0;
        for (int id = 0; id < space.complex.size(); ++id) {
            if (space.complex.simplex(id).dim() == 1) ++edges;
        }
        CHECK(edges == n);
    }
}

TEST_CASE("save then load reproduces the complex and bitwise-equal values") {
    RdSpace space = random_instance(7, {2, 2, 120}).space;
    std::string path = "/tmp/reebmapper_roundtrip.json";
    save_mesh(space, path);
    RdSpace reloaded = load_mesh(path);
    CHECK(reloaded.complex.size() == space.complex.size());
    CHECK(reloaded.map.dim_range == space.map.dim_range);
    REQUIRE(reloaded.map.values.size() == space.map.values.size());
    for (size_t v = 0; v < space.map.values.size(); ++v) {
        for (size_t a = 0; a < space.map.values[v].size(); ++a) {
            CHECK(reloaded.map.values[v][a] == space.map.values[v][a]);  // bitwise
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("genericity warnings fire on shared d=1 values") {
    RdSpace space = path_space({0.0, 1.0, 0.0});
    CHECK(!genericity_warnings(space).empty());
    RdSpace generic = path_space({0.0, 1.0, 2.0});
    CHECK(genericity_warnings(generic).empty());
}
