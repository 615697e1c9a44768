#include <doctest.h>

#include <cmath>

#include "reebmapper/errors.hpp"
#include "reebmapper/fixtures.hpp"
#include "reebmapper/interleave.hpp"

using namespace reebmapper;

namespace {

RdSpace tent() { return path_space({0.0, 1.0, 0.0}); }

}  // namespace

TEST_CASE("build + verify on the tent at eps = res") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {2}, 0.5);
    InterleavingWitness w = build_interleaving(t, c);
    CHECK(w.eps == doctest::Approx(1.5));
    DiagramReport report = verify_interleaving(w);
    INFO(report.summary());
    CHECK(report.pass);
    CHECK(report.triangles_checked > 0);
    CHECK(report.naturality_checked > 0);
}

TEST_CASE("eps below resolution is rejected") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {2}, 0.5);
    CHECK_THROWS_AS(build_interleaving(t, c, 0.0), PreconditionError);
    CHECK_THROWS_AS(build_interleaving(t, c, 0.5), PreconditionError);
}

TEST_CASE("certified upper bound equals the resolution") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    CHECK(certified_upper_bound(t, c) == doctest::Approx(0.75));
    Cover r = refine(c);
    CHECK(certified_upper_bound(t, r) == doctest::Approx(0.375));
}

TEST_CASE("corrupted witness fails verification with a counterexample") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    InterleavingWitness w = build_interleaving(t, c);
    REQUIRE(verify_interleaving(w).pass);
    REQUIRE(corrupt_witness(w));
    DiagramReport report = verify_interleaving(w);
    CHECK(!report.pass);
    CHECK(!report.counterexamples.empty());
}

TEST_CASE("swapped witness verifies identically") {
    RdSpace circle = cycle_space({0, 1, 2, 1});
    Cover c = uniform_cover(Box::interval(0, 2), {3}, 0.5);
    InterleavingWitness w = build_interleaving(circle, c);
    CHECK(verify_interleaving(w).pass);
    CHECK(verify_interleaving(swapped_witness(w)).pass);
}

TEST_CASE("identity witness at eps = 0 verifies") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {2}, 0.5);
    auto space_ptr = std::make_shared<RdSpace>(t);
    auto direct = std::make_shared<DirectFunctor>(space_ptr);
    GeneratorFamily fam = interleave_generators(t, c, 0.0);
    InterleavingWitness w = identity_witness(direct, fam.boxes, fam.nested_pairs);
    CHECK(w.eps == 0.0);
    CHECK(verify_interleaving(w).pass);
}

TEST_CASE("witness induced at a larger eps still verifies") {
    RdSpace circle = cycle_space({0, 1, 2, 1});
    Cover c = uniform_cover(Box::interval(0, 2), {3}, 0.4);
    InterleavingWitness w = build_interleaving(circle, c);
    REQUIRE(verify_interleaving(w).pass);
    for (double factor : {1.25, 2.0}) {
        InterleavingWitness larger = witness_at_eps(w, w.eps * factor);
        CHECK(verify_interleaving(larger).pass);
    }
}

TEST_CASE("d=2 sampled witness verifies") {
    RandomInstance inst = random_instance(71, {2, 2, 100});
    InterleavingWitness w = build_interleaving(inst.space, inst.cover, -1.0, 32, 71);
    CHECK(w.sampled);
    DiagramReport report = verify_interleaving(w);
    INFO(report.summary());
    CHECK(report.pass);
    CHECK(report.sampled);
}

TEST_CASE("cardinality lower bound: identical functors give 0") {
    RdSpace t = tent();
    auto space_ptr = std::make_shared<RdSpace>(t);
    ComponentSetFunctor direct(std::make_shared<DirectFunctor>(space_ptr));
    std::vector<Box> probes = {Box::interval(0.1, 0.4), Box::interval(-0.2, 1.1)};
    CHECK(cardinality_lower_bound(direct, direct, probes, default_candidate_grid(1.0)) == 0.0);
}

TEST_CASE("cardinality lower bound: empty target forces infinity") {
    RdSpace t = tent();
    auto space_ptr = std::make_shared<RdSpace>(t);
    ComponentSetFunctor direct(std::make_shared<DirectFunctor>(space_ptr));
    EmptySetFunctor empty;
    std::vector<Box> probes = {Box::interval(0.1, 0.4)};
    CHECK(std::isinf(cardinality_lower_bound(direct, empty, probes, default_candidate_grid(1.0))));
}

TEST_CASE("sandwich: lower bound never exceeds the certified upper bound") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {2}, 0.5);
    double upper = certified_upper_bound(t, c);
    auto space_ptr = std::make_shared<RdSpace>(t);
    CoverNerve nerve = nerve_of_cover(c);
    ComponentSetFunctor pk_side(std::make_shared<NerveUnionFunctor>(space_ptr, c, nerve));
    ComponentSetFunctor direct(std::make_shared<DirectFunctor>(space_ptr));
    auto probes = default_test_boxes(t, c);
    double lower = cardinality_lower_bound(direct, pk_side, probes, default_candidate_grid(upper));
    CHECK(lower <= upper);
}

TEST_CASE("pk set functor agrees with the union realization on sizes") {
    RdSpace t = tent();
    Cover c = uniform_cover(Box::interval(0, 1), {3}, 0.5);
    CategoricalMapper cm = categorical_mapper(t, c);
    PkSetFunctor pk(cm);
    auto space_ptr = std::make_shared<RdSpace>(t);
    ComponentSetFunctor uni(std::make_shared<NerveUnionFunctor>(space_ptr, c, nerve_of_cover(c)));
    for (const Box& probe : default_test_boxes(t, c)) {
        CHECK(pk.value_size(probe) == uni.value_size(probe));
    }
}
