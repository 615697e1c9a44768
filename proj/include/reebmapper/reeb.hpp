#pragma once

#include <array>
#include <string>
#include <vector>

#include "reebmapper/mapper.hpp"

namespace reebmapper {

/// Finite graph with real node values, strictly monotone along edges.
/// Parallel edges are allowed (they carry cycles).
struct ReebGraph {
    struct Node {
        int id;
        double value;
    };
    std::vector<Node> nodes;
    std::vector<std::array<int, 2>> edges;

    int degree(int node_id) const;
    /// Degree-2 node whose neighbors lie on opposite sides of its value.
    bool is_regular(int node_id) const;
    int non_regular_count() const;
};

/// Sorted vertex values, deduplicated within tolerance (d = 1).
std::vector<double> critical_values(const RdSpace& space);

/// Level-and-slab sweep: nodes are level-set components at each
/// critical value, one edge per component of each open slab between
/// consecutive values, attached to the level components containing it.
/// Regular nodes are contracted by default.
ReebGraph reeb_graph(const RdSpace& space, bool contract_regular = true);

ReebGraph contract_regular_nodes(ReebGraph g);

struct BettiPair {
    long b0 = 0;
    long b1 = 0;
    bool operator==(const BettiPair&) const = default;
};

BettiPair betti(const ReebGraph& g);
/// First two Betti numbers of the nerve's 1-skeleton.
BettiPair betti_skeleton(const MapperNerve& mn);

/// Constructible-cosheaf presentation of pi_0 f^{-1} for d = 1: the
/// critical set S, component sets on the open strata between its
/// points, on enclosing intervals around each point, and on the unions
/// spanning a slab with both endpoints, with the inclusion-induced maps.
struct CosheafRep {
    std::vector<double> critical_set;

    struct Stratum {
        Box interval;
        ComponentSet comps;
    };
    std::vector<Stratum> point_strata;  // E_i around critical_set[i]
    std::vector<Stratum> open_strata;   // O_i = (t_i, t_{i+1}), plus outer rays at both ends
    std::vector<Stratum> union_strata;  // W_i spanning E_i, O_i, E_{i+1}

    // Inclusion-induced maps into W_i.
    std::vector<LabelMap> slab_to_union;    // O_{i+1} -> W_i (interior slab between the endpoints)
    std::vector<LabelMap> lower_to_union;   // E_i -> W_i
    std::vector<LabelMap> upper_to_union;   // E_{i+1} -> W_i
};

CosheafRep cosheaf_rep(const RdSpace& space);

/// Interval display algorithm: one monotone edge per component
/// over each interval core, one per connected component of the induced
/// overlap subgraph, glued where the underlying component sets share a
/// mesh simplex.  Requires intervals orderable with only consecutive
/// overlaps; phantom end intervals are realized degenerately so node
/// values come from the real cover endpoints.
ReebGraph geometric_mapper(const CategoricalMapper& cm, bool contract_regular = true);

enum class IsoMode { ExactValues, Monotone };

/// Backtracking graph isomorphism respecting edge multiplicities and
/// node values (exact within tolerance, or their order only).
bool rgraph_isomorphic(const ReebGraph& a, const ReebGraph& b, IsoMode mode);

/// Each interval's non-overlap core holds at most one critical value
/// and every overlap is critical-value-free.
bool is_adapted_cover(const Cover& cover, const std::vector<double>& crits);

/// Interval cover isolating each critical value in its own core; the
/// strongest adapted cover for d = 1.
Cover adapted_cover(const RdSpace& space);

}  // namespace reebmapper
