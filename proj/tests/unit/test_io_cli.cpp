#include <doctest.h>

#include "reebmapper/converge.hpp"
#include "reebmapper/fixtures.hpp"
#include "reebmapper/io.hpp"
#include "reebmapper/preimage.hpp"
#include "reebmapper/mapper.hpp"
#include "reebmapper/reeb.hpp"

using namespace reebmapper;

TEST_CASE("format_double: shortest round-trip capped at 12 digits") {
    CHECK(format_double(0.75) == "0.75");
    CHECK(format_double(-0.375) == "-0.375");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("cover JSON round trip") {
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    Cover back = cover_from_json(cover_to_json(c));
    REQUIRE(back.elements.size() == c.elements.size());
    for (size_t i = 0; i < c.elements.size(); ++i) {
        CHECK(back.elements[i].axes[0].lo == c.elements[i].axes[0].lo);
        CHECK(back.elements[i].axes[0].hi == c.elements[i].axes[0].hi);
    }
    REQUIRE(back.uniform.has_value());
    CHECK(back.uniform->counts == c.uniform->counts);
}

TEST_CASE("component set JSON carries the region and the partition") {
    RdSpace tent = path_space({0.0, 1.0, 0.0});
    ComponentSet cs = components(tent, ActiveRegion::single(Box::interval(-0.5, 0.5)));
    std::string j = component_set_to_json(cs);
    CHECK(j.find("\"region\"") != std::string::npos);
    CHECK(j.find("\"components\"") != std::string::npos);
    CHECK(component_set_to_json(cs) == j);
}

TEST_CASE("mapper and reeb exports are non-empty and deterministic") {
    RdSpace tent = path_space({0.0, 1.0, 0.0});
    CategoricalMapper cm = categorical_mapper(tent, uniform_cover(Box::interval(0, 1), {2}, 0.5));
    MapperNerve mn = mapper_nerve(cm);
    CHECK(mapper_to_json(mn) == mapper_to_json(mn));
    CHECK(mapper_to_dot(mn).find("v0 -- ") != std::string::npos);

    ReebGraph g = reeb_graph(tent);
    CHECK(reeb_to_json(g) == reeb_to_json(g));
    CHECK(reeb_to_dot(g).find("rank=same") != std::string::npos);
}

TEST_CASE("convergence sweep on the tent") {
    RdSpace tent = path_space({0.0, 1.0, 0.0});
    Cover initial = uniform_cover(image_bounding_box(tent), {2}, 0.5);
    ConvergenceReport report = run_convergence(tent, initial, 3);
    REQUIRE(report.rows.size() == 3);
    for (size_t i = 0; i + 1 < report.rows.size(); ++i) {
        CHECK(report.rows[i + 1].resolution < report.rows[i].resolution);
    }
    for (const auto& row : report.rows) {
        CHECK(row.b1 == 0);
        CHECK(row.interleaving_verified);
    }
}

TEST_CASE("convergence CSV is byte-identical across runs and hides wall time") {
    RdSpace circle = cycle_space({0, 1, 2, 1});
    Cover initial = uniform_cover(image_bounding_box(circle), {2}, 0.5);
    std::string a = convergence_to_csv(run_convergence(circle, initial, 3));
    std::string b = convergence_to_csv(run_convergence(circle, initial, 3));
    CHECK(a == b);
    CHECK(a.find("wall") == std::string::npos);
    std::string with_times = convergence_to_csv(run_convergence(circle, initial, 2), true);
    CHECK(with_times.find("wall_ms") != std::string::npos);
}

TEST_CASE("convergence on circle4 reaches and holds b1 = 1") {
    RdSpace circle = cycle_space({0, 1, 2, 1});
    Cover initial = uniform_cover(image_bounding_box(circle), {2}, 0.5);
    ConvergenceReport report = run_convergence(circle, initial, 4);
    bool reached = false;
    for (const auto& row : report.rows) {
        if (row.b1 == 1) reached = true;
        if (reached) CHECK(row.b1 == 1);
        CHECK(row.interleaving_verified);
    }
    CHECK(reached);
}
