#include <doctest.h>

#include <cmath>

#include "reebmapper/errors.hpp"
#include "reebmapper/fixtures.hpp"
#include "reebmapper/mapper.hpp"

using namespace reebmapper;

TEST_CASE("canned fixtures") {
    Fixture tent = canned("tent");
    CHECK(tent.space.complex.vertex_count() == 3);
    CHECK(tent.space.complex.size() == 5);

    Fixture circle = canned("circle4");
    CHECK(circle.space.complex.vertex_count() == 4);
    int edges = 0;
    for (int id = 0; id < circle.space.complex.size(); ++id) {
        edges += circle.space.complex.simplex(id).dim() == 1;
    }
    CHECK(edges == 4);

    CHECK_THROWS_AS(canned("nope"), PreconditionError);
}

TEST_CASE("random instances regenerate bit-identically from the seed") {
    for (std::uint64_t seed : {1u, 17u, 91u}) {
        RandomInstance a = random_instance(seed, {1, 1, 120});
        RandomInstance b = random_instance(seed, {1, 1, 120});
        CHECK(a.space.complex.size() == b.space.complex.size());
        REQUIRE(a.space.map.values.size() == b.space.map.values.size());
        for (size_t v = 0; v < a.space.map.values.size(); ++v) {
            CHECK(a.space.map.values[v][0] == b.space.map.values[v][0]);  // bitwise
        }
        REQUIRE(a.cover.elements.size() == b.cover.elements.size());
        for (size_t e = 0; e < a.cover.elements.size(); ++e) {
            CHECK(a.cover.elements[e].axes[0].lo == b.cover.elements[e].axes[0].lo);
        }
    }
}

TEST_CASE("random instances respect the simplex budget") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        RandomInstance one = random_instance(seed, {1, 1, 200});
        CHECK(one.space.complex.size() <= 200);
        RandomInstance two = random_instance(seed, {2, 2, 200});
        CHECK(two.space.complex.size() <= 200);
    }
}

TEST_CASE("duplicate-value instances are flagged non-generic") {
    RdSpace dup = path_space({0.25, 0.75, 0.25});
    CHECK(!genericity_warnings(dup).empty());
    // randomized doubles collide with probability ~0; flags stay false
    RandomInstance inst = random_instance(3, {1, 1, 60});
    CHECK(inst.non_generic == !genericity_warnings(inst.space).empty());
}

TEST_CASE("sampling oracle canned values") {
    RdSpace tent = path_space({0.0, 1.0, 0.0});
    CHECK(sampling_oracle(tent, ActiveRegion::single(Box::interval(0.5, 1.5)), 8).component_count == 1);
    CHECK(sampling_oracle(tent, ActiveRegion::single(Box::interval(-0.5, 0.5)), 8).component_count == 2);
    CHECK(sampling_oracle(tent, ActiveRegion::single(Box::interval(9, 10)), 8).component_count == 0);
    CHECK_THROWS_AS(sampling_oracle(tent, ActiveRegion::single(Box::interval(0, 1)), 2),
                    PreconditionError);
}

TEST_CASE("oracle depth stability on canned fixtures") {
    RdSpace torus = canned("torus").space;
    ActiveRegion slab = ActiveRegion::single(Box::interval(-0.9, 0.9));
    OracleResult a = sampling_oracle(torus, slab, 8);
    OracleResult b = sampling_oracle(torus, slab, 10);
    CHECK(a.component_count == b.component_count);
}

TEST_CASE("oracle vertex partition matches the engine on random instances") {
    for (std::uint64_t seed = 100; seed < 112; ++seed) {
        RandomParams params{static_cast<int>(1 + seed % 2), 1, 100};
        RandomInstance inst = random_instance(seed, params);
        Box probe = Box::interval(0.2 + 0.01 * (seed % 5), 0.65 + 0.02 * (seed % 4));
        ComponentSet engine = components(inst.space, ActiveRegion::single(probe));
        OracleResult oracle = sampling_oracle_stable(inst.space, ActiveRegion::single(probe));
        CHECK(engine.size() == static_cast<size_t>(oracle.component_count));
        // active vertices agree and the partitions match
        for (int v = 0; v < inst.space.complex.vertex_count(); ++v) {
            bool engine_active = engine.label_of(v) >= 0;
            bool oracle_active = oracle.vertex_component.count(v) > 0;
            CHECK(engine_active == oracle_active);
        }
        for (const auto& [v, comp_v] : oracle.vertex_component) {
            for (const auto& [w, comp_w] : oracle.vertex_component) {
                bool same_oracle = comp_v == comp_w;
                bool same_engine = engine.label_of(v) == engine.label_of(w);
                CHECK(same_oracle == same_engine);
            }
        }
    }
}

TEST_CASE("raster jcn oracle agrees with the engine on a smooth field") {
    const int n = 17;
    std::vector<std::vector<double>> values;
    values.reserve(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double x = static_cast<double>(i) / (n - 1);
            double y = static_cast<double>(j) / (n - 1);
            values.push_back({std::sin(2.5 * x + 0.3) + 0.4 * std::cos(3.1 * y),
                              std::cos(1.7 * x) - 0.6 * std::sin(2.2 * y + 0.5)});
        }
    }
    RdSpace space = grid_with_fields(n, values);
    Cover cover = jcn_cover(space, {3, 3}, 0.5);
    MapperNerve mn = jcn(space, {3, 3}, 0.5);
    int expected = raster_jcn_vertex_count(space, n, cover);
    CHECK(static_cast<int>(mn.vertices.size()) == expected);
}
