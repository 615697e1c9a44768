#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reebmapper/cover.hpp"
#include "reebmapper/preimage.hpp"
#include "reebmapper/simplicial.hpp"

namespace reebmapper {

struct Fixture {
    std::string name;
    RdSpace space;
};

/// Deterministic canned inputs:
///   tent           path v0,v1,v2 with f = 0,1,0
///   circle4        4-cycle at heights 0,1,2,1
///   torus          8x8 grid torus, height of an upright torus with the
///                  four critical points placed on grid vertices
///   square_grid_2d triangulated 8x8 grid with f = (x, y)
Fixture canned(const std::string& name);

/// Triangulated n x n grid over the unit square.  Values default to
/// f = (x, y); scalar_field, when given, replaces them with one value
/// per vertex (vertex (i, j) has id i * n + j at (i, j)/(n-1)).
RdSpace square_grid(int n, const std::vector<double>* scalar_field = nullptr);
RdSpace grid_with_fields(int n, const std::vector<std::vector<double>>& per_vertex_values);

/// Triangulated n-cycle with the given vertex heights.
RdSpace cycle_space(const std::vector<double>& heights);
/// Path complex v0 - v1 - ... with the given heights.
RdSpace path_space(const std::vector<double>& heights);

struct RandomParams {
    int domain_dim = 1;     // 1: graph complexes, 2: triangle patches
    int range_dim = 1;
    int max_simplices = 200;
    int min_cover_count = 2;
    int max_cover_count = 5;
};

struct RandomInstance {
    RdSpace space;
    Cover cover;
    bool non_generic = false;  // duplicate d=1 values within tolerance
};

/// Seed-deterministic random mesh + uniform cover.  Domain complexes
/// are paths/cycles/trees with extra edges (1d) or connected random
/// walks over a grid triangulation (2d); values are uniform in [0,1]^d;
/// covers are uniform with random counts and gain over the image box.
RandomInstance random_instance(std::uint64_t seed, const RandomParams& params = {});

struct OracleResult {
    int component_count = 0;
    std::map<int, int> vertex_component;  // active vertex id -> oracle component id
    int depth_used = 0;
};

/// Brute-force flood fill over barycentric grid samples: keeps samples
/// with f(sample) strictly inside the region (same tolerance as the
/// engine), links samples one grid step apart within a simplex and
/// coincident samples across shared faces.
OracleResult sampling_oracle(const RdSpace& space, const ActiveRegion& region, int depth);

/// Runs the oracle at increasing depth until the component count is
/// stable against depth+2, flagging under-sampling.
OracleResult sampling_oracle_stable(const RdSpace& space, const ActiveRegion& region, int base_depth = 8,
                                    int max_depth = 24);

/// 256x256 rasterized flood-fill count of JCN vertices for a grid
/// space: per cover element, pixels with f(pixel) inside the box are
/// flood-filled by 4-adjacency; the total component count over all
/// elements equals the expected JCN vertex count.
int raster_jcn_vertex_count(const RdSpace& grid_space, int grid_n, const Cover& cover, int raster = 256);

}  // namespace reebmapper
