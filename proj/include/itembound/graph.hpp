#pragma once

// Dependency graphs of itemset families and the safe-set machinery built on
// them: frontiers, restricted neighbourhoods, ranks, the safeness test and the
// construction of the unique minimal safe superset.

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "itembound/core.hpp"

namespace itembound {

/// Undirected graph with one vertex per item and an edge per 2-itemset.
class DependencyGraph {
public:
    explicit DependencyGraph(int vertex_count = 0);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    const Itemset& neighbors(Item v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    bool has_edge(Item u, Item v) const { return neighbors(u).contains(v); }
    void add_edge(Item u, Item v);
    void remove_edge(Item u, Item v);
    /// Edges (u, v) with u < v, ordered lexicographically.
    std::vector<std::pair<Item, Item>> edges() const;
    int edge_count() const;
    Itemset vertices() const { return Itemset::first(vertex_count()); }
    /// Vertices outside `c` adjacent to some member of `c`.
    Itemset boundary(const Itemset& c) const;

private:
    std::vector<Itemset> adjacency_;
};

/// Vertex count defaults to one past the largest item of the family.
DependencyGraph build_graph(const ItemsetFamily& family, int vertex_count = -1);

/// One past the largest item of the family or of `extra`.
int vertex_span(const ItemsetFamily& family, const Itemset& extra = {});

/// Members of `c` ending a path from `x` whose other vertices avoid `c`.
Itemset frontier(Item x, const Itemset& c, const DependencyGraph& g);

/// Vertices reachable from `x` by a path of length <= radius whose vertices,
/// except possibly the last, avoid `c`.
Itemset restricted_neighborhood(Item x, int radius, const Itemset& c, const DependencyGraph& g);

/// v_i = number of members of C at restricted distance i (i = 1, 2, ...),
/// trailing zeros dropped; ordered lexicographically.
struct RankVector {
    std::vector<int> counts;
    friend auto operator<=>(const RankVector&, const RankVector&) = default;
};

RankVector rank(Item x, const Itemset& c, const DependencyGraph& g);

struct SafetyCheck {
    bool safe = true;
    Item witness = -1;
    Itemset witness_frontier;
};

/// Safe iff every item outside `c` has its frontier in the family.
SafetyCheck is_safe(const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g);
SafetyCheck is_safe(const Itemset& c, const ItemsetFamily& family);

/// One round of the violation search used by the safe-set construction.
struct ViolationRound {
    struct Violator {
        Item item;
        Itemset reached;  ///< restricted neighbourhood ∩ C at the breaking radius
        RankVector rank;
    };
    std::vector<Violator> violators;  ///< ascending item order
    std::vector<Item> max_rank;       ///< violators sharing the largest rank
    int radius = 0;

    bool violated() const { return !violators.empty(); }
};

ViolationRound find_violations(const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g);

struct SafeSetTrace {
    struct Step {
        Itemset before;
        ViolationRound round;
    };
    std::vector<Step> steps;
};

/// Unique minimal safe superset of `b`.
Itemset minimal_safe_set(const Itemset& b, const ItemsetFamily& family, const DependencyGraph& g,
                         SafeSetTrace* trace = nullptr);
Itemset minimal_safe_set(const Itemset& b, const ItemsetFamily& family);

/// Connected components of the graph with `c` deleted (ascending by smallest member).
std::vector<Itemset> components_outside(const Itemset& c, const DependencyGraph& g);

}  // namespace itembound
