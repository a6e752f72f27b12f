#pragma once

// Chordal graphs, junction trees, inner separators and the factorized
// program that replaces one distribution on C by per-clique marginals.

#include <vector>

#include "itembound/bounds.hpp"
#include "itembound/graph.hpp"

namespace itembound {

struct Chordality {
    bool chordal = false;
    /// Perfect elimination ordering (eliminate front first); empty unless chordal.
    std::vector<Item> elimination_order;
};

/// Maximum cardinality search on the subgraph induced by `within`.
Chordality is_triangulated(const DependencyGraph& g, const Itemset& within);
Chordality is_triangulated(const DependencyGraph& g);

/// Chordal supergraph of the subgraph induced by `within`, eliminating the
/// vertex with the fewest fill edges first (ties: smallest item).
DependencyGraph triangulate_min_fill(const DependencyGraph& g, const Itemset& within);

/// Maximal cliques of a chordal graph, canonical order. Throws on non-chordal input.
std::vector<Itemset> maximal_cliques(const DependencyGraph& g, const Itemset& within);
std::vector<Itemset> maximal_cliques(const DependencyGraph& g);

/// Maximal cliques of any graph (Bron–Kerbosch with pivoting), canonical order.
std::vector<Itemset> all_maximal_cliques(const DependencyGraph& g, const Itemset& within);

struct Separator {
    int a = 0;  ///< clique indices, a < b
    int b = 0;
    Itemset items;
};

struct JunctionTree {
    std::vector<Itemset> cliques;
    std::vector<Separator> separators;
    /// False when the clique graph is disconnected and the result is a forest.
    bool connected = true;

    /// Clique indices along the tree path, or empty if in different components.
    std::vector<int> path(int from, int to) const;
    /// Separator indices along the tree path.
    std::vector<int> path_separators(int from, int to) const;
    bool has_running_intersection() const;
};

/// Maximum-weight spanning forest of the clique graph, weights |Q_i ∩ Q_j|.
/// Kruskal with ties broken by the smaller index pair.
JunctionTree build_junction_tree(const std::vector<Itemset>& cliques);

/// Every proper subset of each maximal clique of the dependency graph lies in F.
bool is_clique_safe(const ItemsetFamily& family);

struct InnerSeparators {
    std::vector<int> separators;  ///< ascending indices into tree.separators
    Itemset items;                ///< union of their items
    /// Chosen clique Q_b per item of B, in ascending item order.
    std::vector<std::pair<Item, int>> chosen;
};

/// Smallest separator set connecting one clique per item of B. A separator is
/// needed iff one side of it holds every clique of some b and the other side
/// every clique of another b'.
InnerSeparators inner_separators(const JunctionTree& tree, const Itemset& b);

/// B together with the items of its inner separators. Requires a triangulated,
/// clique-safe family whose graph has the tree's cliques.
Itemset safe_set_from_tree(const JunctionTree& tree, const Itemset& b, const ItemsetFamily& family);

struct FactorizedResult {
    FrequencyInterval interval;
    Itemset safe_set;
    JunctionTree tree;
    int root = 0;
    int variables = 0;        ///< Σ 2^|Q_i|
    int naive_variables = 0;  ///< 2^|C|
    int constraints = 0;
};

/// Program built over a min-fill triangulation of the safe set's graph, with
/// support(f) made a clique.
LinearProgram build_factorized_problem(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                       Sense sense, FactorizedResult* layout = nullptr);

FactorizedResult factorized_interval(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta);

}  // namespace itembound
