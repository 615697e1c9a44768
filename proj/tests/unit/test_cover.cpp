#include <doctest.h>

#include <cmath>

#include "reebmapper/cover.hpp"
#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

using namespace reebmapper;

TEST_CASE("uniform_cover: n=3 g=0.5 over (0,1)") {
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    REQUIRE(c.elements.size() == 3);
    CHECK(c.elements[0].axes[0].lo == doctest::Approx(-0.375));
    CHECK(c.elements[0].axes[0].hi == doctest::Approx(0.375));
    CHECK(c.elements[1].axes[0].lo == doctest::Approx(0.125));
    CHECK(c.elements[1].axes[0].hi == doctest::Approx(0.875));
    CHECK(c.elements[2].axes[0].lo == doctest::Approx(0.625));
    CHECK(c.elements[2].axes[0].hi == doctest::Approx(1.375));
    CHECK(resolution(c) == doctest::Approx(0.75));
}

TEST_CASE("uniform_cover: n=2 g=0.5 over (0,1)") {
    Cover c = uniform_cover(Box::interval(0, 1), {2}, 0.5);
    REQUIRE(c.elements.size() == 2);
    CHECK(c.elements[0].axes[0].lo == doctest::Approx(-0.75));
    CHECK(c.elements[0].axes[0].hi == doctest::Approx(0.75));
    CHECK(c.elements[1].axes[0].lo == doctest::Approx(0.25));
    CHECK(c.elements[1].axes[0].hi == doctest::Approx(1.75));
    CHECK(resolution(c) == doctest::Approx(1.5));
}

TEST_CASE("uniform_cover: invalid gain and counts") {
    CHECK_THROWS_AS(uniform_cover(Box::interval(0, 1), {3}, 1.5), PreconditionError);
    CHECK_THROWS_AS(uniform_cover(Box::interval(0, 1), {3}, 0.0), PreconditionError);
    CHECK_THROWS_AS(uniform_cover(Box::interval(0, 1), {0}, 0.5), PreconditionError);
}

TEST_CASE("resolution of a single box is its longest axis") {
    Cover c;
    c.dim_range = 2;
    c.elements.push_back(Box::rect(0, 1, 0, 2));
    CHECK(resolution(c) == doctest::Approx(2.0));
}

TEST_CASE("uniform cover guarantees: overlaps consecutive only, range covered") {
    const double tol = tolerance();
    for (double gain : {0.2, 0.5, 0.8}) {
        for (int n : {2, 3, 5, 9}) {
            Cover c = uniform_cover(Box::interval(-1, 2), {n}, gain);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    bool overlap = boxes_overlap(c.elements[i], c.elements[j], tol);
                    CHECK(overlap == (j == i + 1));
                }
            }
            CHECK(c.elements.front().axes[0].lo < -1.0);
            CHECK(c.elements.back().axes[0].hi > 2.0);
        }
    }
}

TEST_CASE("nerve of the n=3 cover is a path with the right overlap box") {
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    CoverNerve k = nerve_of_cover(c);
    CHECK(k.size() == 5);  // {0},{1},{2},{01},{12}
    CHECK(k.id_of({0, 1}) >= 0);
    CHECK(k.id_of({1, 2}) >= 0);
    CHECK(k.id_of({0, 2}) < 0);
    int e01 = k.id_of({0, 1});
    CHECK(k.intersection_box[e01].axes[0].lo == doctest::Approx(0.125));
    CHECK(k.intersection_box[e01].axes[0].hi == doctest::Approx(0.375));
}

TEST_CASE("nerve of two disjoint boxes is two isolated vertices") {
    Cover c;
    c.dim_range = 1;
    c.elements.push_back(Box::interval(0, 1));
    c.elements.push_back(Box::interval(2, 3));
    CoverNerve k = nerve_of_cover(c);
    CHECK(k.size() == 2);
}

TEST_CASE("2x2 cover of the unit square includes the 4-fold intersection") {
    Cover c = uniform_cover(Box::rect(0, 1, 0, 1), {2, 2}, 0.5);
    CoverNerve k = nerve_of_cover(c);
    CHECK(k.id_of({0, 1, 2, 3}) >= 0);
    CHECK(k.size() == 15);  // full simplex on 4 vertices
}

TEST_CASE("nerve invariants: face closure and U_sigma monotonicity") {
    Cover c = uniform_cover(Box::rect(0, 1, 0, 2), {3, 2}, 0.4);
    CoverNerve k = nerve_of_cover(c);
    for (int id = 0; id < k.size(); ++id) {
        if (k.simplices[id].size() == 1) continue;
        CHECK(k.facets[id].size() == k.simplices[id].size());
        for (int f : k.facets[id]) {
            CHECK(box_contains(k.intersection_box[f], k.intersection_box[id]));
        }
        CHECK(box_nonempty(k.intersection_box[id], tolerance()));
    }
}

TEST_CASE("k_sub on the n=3 cover") {
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    CoverNerve k = nerve_of_cover(c);
    auto ks = k_sub(c, k, Box::interval(0.2, 0.3));
    REQUIRE(ks.size() == 3);
    CHECK(k.simplices[ks[0]] == std::vector<int>{0});
    CHECK(k.simplices[ks[1]] == std::vector<int>{1});
    CHECK(k.simplices[ks[2]] == std::vector<int>{0, 1});

    CHECK(k_sub(c, k, Box::interval(5, 6)).empty());
    CHECK(k_sub(c, k, Box::interval(-10, 10)).size() == static_cast<size_t>(k.size()));
}

TEST_CASE("thicken") {
    Box b = Box::interval(0, 1);
    Box t = thicken(b, 0.5);
    CHECK(t.axes[0].lo == doctest::Approx(-0.5));
    CHECK(t.axes[0].hi == doctest::Approx(1.5));

    Box same = thicken(b, 0.0);
    CHECK(same.axes[0].lo == b.axes[0].lo);
    CHECK(same.axes[0].hi == b.axes[0].hi);

    Box b2 = Box::rect(0, 1, 2, 3);
    Box t2 = thicken(b2, 1.0);
    CHECK(t2.axes[0].lo == doctest::Approx(-1));
    CHECK(t2.axes[0].hi == doctest::Approx(2));
    CHECK(t2.axes[1].lo == doctest::Approx(1));
    CHECK(t2.axes[1].hi == doctest::Approx(4));
}

TEST_CASE("refine halves the resolution and keeps the range") {
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    Cover r = refine(c);
    CHECK(r.uniform->counts == std::vector<int>{5});
    CHECK(resolution(r) == doctest::Approx(0.375));

    Cover c2 = uniform_cover(Box::interval(0, 1), {2}, 0.5);
    CHECK(refine(c2).uniform->counts == std::vector<int>{3});

    Cover hand;
    hand.dim_range = 1;
    hand.elements.push_back(Box::interval(0, 1));
    CHECK_THROWS_AS(refine(hand), PreconditionError);
}

TEST_CASE("refine strictly decreases resolution, n=1 included") {
    for (int n : {1, 2, 3, 6}) {
        Cover c = uniform_cover(Box::interval(-2, 5), {n}, 0.3);
        CHECK(resolution(refine(c)) < resolution(c));
    }
}
