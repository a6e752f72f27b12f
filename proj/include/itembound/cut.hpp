#pragma once

// Restricted safe sets: when the minimal safe set exceeds a size budget, the
// cheapest min-cut (under mutual-information edge weights) between a late
// violator and its frontier is severed and the construction restarts.

#include <map>
#include <utility>
#include <vector>

#include "itembound/core.hpp"
#include "itembound/graph.hpp"

namespace itembound {

using Edge = std::pair<Item, Item>;  ///< always first < second

inline Edge make_edge(Item u, Item v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Nonnegative weight per edge, in nats.
using EdgeWeights = std::map<Edge, double>;

/// Mutual information (nats) of the pair distribution implied by θ_u, θ_v, θ_uv.
double mi_weight(Item u, Item v, const FrequencyAssignment& theta);

/// mi_weight for every edge of `g`.
EdgeWeights mi_weights(const DependencyGraph& g, const FrequencyAssignment& theta);

struct Subgraph {
    Itemset vertices;
    std::vector<Edge> edges;  ///< sorted
};

/// x, its frontier, and every vertex lying on a simple path from x to C whose
/// interior avoids C; edges induced. Requires frontier(x, C) ∉ F.
Subgraph violation_subgraph(Item x, const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g);

struct CutResult {
    std::vector<Edge> edges;  ///< sorted
    double cost = 0.0;
};

/// Minimum-weight edge set of `h` separating `source` from every vertex of
/// `sinks`. Max-flow by shortest augmenting paths with neighbours scanned in
/// ascending order; the cut returned is the one bounding the residual-reachable
/// side of `source`.
CutResult min_cut(const Subgraph& h, const EdgeWeights& weights, Item source, const Itemset& sinks);

struct RecordedCut {
    Item item;
    Itemset frontier;
    CutResult cut;
};

struct RestrictedSafeSet {
    Itemset set;
    ItemsetFamily family;  ///< pruned family to bound with
    FrequencyAssignment theta;
    std::vector<RecordedCut> removed;  ///< cuts applied, in order
    /// Every candidate cut, one list per pass; removed[i] is the cheapest of candidates[i].
    std::vector<std::vector<RecordedCut>> candidates;
    int restarts = 0;
    bool within_budget = true;
    /// Some removed edge had positive weight (independence did not hold exactly).
    bool dependent_edges_removed = false;
    /// Some removed edge was contained in a larger itemset of the family.
    bool nonmaximal_edges_removed = false;
};

RestrictedSafeSet restricted_safe_set(const Itemset& b, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                      int max_size, const EdgeWeights& weights, int vertex_count = -1);
RestrictedSafeSet restricted_safe_set(const Itemset& b, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                      int max_size, int vertex_count = -1);

/// Drops the 2-itemset {u, v} and all its supersets, from both F and θ.
void remove_edge_itemsets(const std::vector<Edge>& edges, ItemsetFamily& family, FrequencyAssignment& theta);

}  // namespace itembound
