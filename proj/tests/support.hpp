#pragma once

// Fixtures, random instance generators and brute-force oracles shared by the
// unit, property and acceptance tests. Oracles here deliberately avoid the
// library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "itembound/core.hpp"
#include "itembound/cut.hpp"
#include "itembound/graph.hpp"
#include "itembound/lp.hpp"

namespace testing {

using namespace itembound;

inline AttributeUniverse letters(int k) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return AttributeUniverse(names);
}

inline Itemset set_of(const AttributeUniverse& u, const std::string& text) { return u.parse_set(text); }

/// Five transactions over a, b, c: {ac, c, bc, ab, a}.
inline TransactionDB five_rows() {
    TransactionDB db;
    db.universe = letters(3);
    for (const char* row : {"a c", "c", "b c", "a b", "a"}) db.rows.push_back(db.universe.parse_set(row));
    return db;
}

/// Frequencies of ∅, a, b, c, ab, ac in `five_rows`.
inline FrequentItemsets five_rows_family() {
    return parse_family(": 1\na : 3/5\nb : 2/5\nc : 3/5\na b : 1/5\na c : 1/5\n");
}

/// Six items, maximal itemsets ab, bc, cd, ad, de, ce, af.
inline FrequentItemsets six_item_cycle() {
    return parse_family(
        ": 1\na : 1/2\nb : 1/2\nc : 1/2\nd : 1/2\ne : 1/2\nf : 1/2\n"
        "a b : 1/4\nb c : 1/4\nc d : 1/4\na d : 1/4\nd e : 1/4\nc e : 1/4\na f : 1/4\n");
}

/// Four items with edges ab, ac, bd, cd; b and d always agree.
inline FrequentItemsets four_item_square() {
    return parse_family(": 1\na : 1/2\nb : 1/2\nc : 1/2\nd : 1/2\na b : 1/4\na c : 1/4\nb d : 1/2\nc d : 2/5\n");
}

/// Rows drawn from a few latent prototypes with bit noise, so that itemsets
/// are correlated rather than independent.
inline TransactionDB random_db(std::mt19937_64& rng, int k, int rows) {
    TransactionDB db;
    db.universe = letters(k);
    const int prototypes = 1 + static_cast<int>(rng() % 3);
    std::vector<Itemset> proto;
    for (int p = 0; p < prototypes; ++p) {
        Itemset z;
        for (int i = 0; i < k; ++i)
            if (rng() % 2) z.insert(i);
        proto.push_back(z);
    }
    for (int r = 0; r < rows; ++r) {
        Itemset z = proto[rng() % proto.size()];
        for (int i = 0; i < k; ++i) {
            if (rng() % 5 == 0) {
                if (z.contains(i)) z.erase(i);
                else z.insert(i);
            }
        }
        db.rows.push_back(z);
    }
    return db;
}

/// Downward closure of `seeds` random itemsets of size 1..max_size.
inline ItemsetFamily random_family(std::mt19937_64& rng, int k, int seeds, int max_size) {
    std::vector<Itemset> s;
    for (int i = 0; i < seeds; ++i) {
        Itemset u;
        const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size));
        while (u.size() < std::min(size, k)) u.insert(static_cast<Item>(rng() % static_cast<std::uint64_t>(k)));
        s.push_back(u);
    }
    return downward_close(s);
}

inline Itemset random_subset(std::mt19937_64& rng, int k, int size) {
    Itemset u;
    while (u.size() < size) u.insert(static_cast<Item>(rng() % static_cast<std::uint64_t>(k)));
    return u;
}

/// Count of rows containing u, divided by the row count.
inline Rational count_frequency(const Itemset& u, const TransactionDB& db) {
    std::int64_t hits = 0;
    for (const auto& row : db.rows) {
        bool all = true;
        for (const Item i : u.members()) all = all && row.contains(i);
        hits += all ? 1 : 0;
    }
    return Rational(hits, static_cast<std::int64_t>(db.rows.size()));
}

/// All subsets of `base` (members(), then every bit pattern).
inline std::vector<Itemset> all_subsets(const Itemset& base) {
    const std::vector<Item> m = base.members();
    std::vector<Itemset> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.size()); ++mask) {
        Itemset s;
        for (std::size_t j = 0; j < m.size(); ++j)
            if ((mask >> j) & 1U) s.insert(m[j]);
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear programs by vertex enumeration.

/// Solves the square system A_S x = b by Gauss–Jordan; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const Rational p = a[col][col];
        for (auto& v : a[col]) v /= p;
        b[col] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Rational factor = a[r][col];
            for (std::size_t c = 0; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    return b;
}

/// Keeps a maximal linearly independent subset of rows (with rhs); returns
/// nullopt if the dependent rows contradict the kept ones.
inline std::optional<std::pair<std::vector<std::vector<Rational>>, std::vector<Rational>>> independent_rows(
    const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
    std::vector<std::vector<Rational>> basis;  // echelon rows, last entry = rhs
    std::vector<std::size_t> pivots;
    std::vector<std::vector<Rational>> kept;
    std::vector<Rational> kept_rhs;
    for (std::size_t r = 0; r < a.size(); ++r) {
        std::vector<Rational> row = a[r];
        row.push_back(b[r]);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (row[pivots[k]].is_zero()) continue;
            const Rational factor = row[pivots[k]];
            for (std::size_t c = 0; c < row.size(); ++c) row[c] -= factor * basis[k][c];
        }
        std::size_t piv = 0;
        while (piv + 1 < row.size() && row[piv].is_zero()) ++piv;
        if (piv + 1 == row.size()) {
            if (!row.back().is_zero()) return std::nullopt;
            continue;
        }
        const Rational p = row[piv];
        for (auto& v : row) v /= p;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (basis[k][piv].is_zero()) continue;
            const Rational factor = basis[k][piv];
            for (std::size_t c = 0; c < row.size(); ++c) basis[k][c] -= factor * row[c];
        }
        basis.push_back(row);
        pivots.push_back(piv);
        kept.push_back(a[r]);
        kept_rhs.push_back(b[r]);
    }
    return std::make_pair(kept, kept_rhs);
}

struct VertexOptimum {
    bool feasible = false;
    Rational value;
};

/// Optimum of c^T x over {Ax = b, x ≥ 0} (assumed bounded) by trying every
/// basis. Exponential; for a handful of variables only.
inline VertexOptimum vertex_enumeration(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                        const std::vector<Rational>& c, bool maximize) {
    VertexOptimum out;
    const auto reduced = independent_rows(a, b);
    if (!reduced) return out;
    const auto& [rows, rhs] = *reduced;
    const std::size_t n = c.size();
    const std::size_t m = rows.size();
    if (m == 0) {
        // Only x = 0 is a vertex of the nonnegative orthant.
        out.feasible = true;
        return out;
    }
    std::vector<int> pick(m);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
        if (depth == m) {
            std::vector<std::vector<Rational>> sq(m, std::vector<Rational>(m));
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t k = 0; k < m; ++k) sq[r][k] = rows[r][static_cast<std::size_t>(pick[k])];
            const auto x = solve_square(sq, rhs);
            if (!x) return;
            if (std::any_of(x->begin(), x->end(), [](const Rational& v) { return v.sign() < 0; })) return;
            Rational value;
            for (std::size_t k = 0; k < m; ++k) value += c[static_cast<std::size_t>(pick[k])] * (*x)[k];
            if (!out.feasible || (maximize ? value > out.value : value < out.value)) out.value = value;
            out.feasible = true;
            return;
        }
        for (std::size_t j = start; j < n; ++j) {
            pick[depth] = static_cast<int>(j);
            choose(j + 1, depth + 1);
        }
    };
    choose(0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Graph oracles.

inline bool connected_avoiding(const std::vector<Edge>& edges, Item from, const Itemset& targets) {
    std::deque<Item> queue{from};
    Itemset seen{from};
    while (!queue.empty()) {
        const Item u = queue.front();
        queue.pop_front();
        if (targets.contains(u)) return true;
        for (const auto& [x, y] : edges) {
            const Item v = x == u ? y : y == u ? x : -1;
            if (v < 0 || seen.contains(v)) continue;
            seen.insert(v);
            queue.push_back(v);
        }
    }
    return false;
}

/// Cheapest edge subset whose removal disconnects `source` from all `sinks`.
inline double brute_force_cut(const std::vector<Edge>& edges, const EdgeWeights& w, Item source, const Itemset& sinks) {
    double best = -1.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
        std::vector<Edge> rest;
        double cost = 0.0;
        for (std::size_t j = 0; j < edges.size(); ++j) {
            if ((mask >> j) & 1U) cost += w.at(edges[j]);
            else rest.push_back(edges[j]);
        }
        if (best >= 0.0 && cost >= best) continue;
        if (!connected_avoiding(rest, source, sinks)) best = cost;
    }
    return best;
}

inline bool is_clique(const DependencyGraph& g, const Itemset& s) {
    const auto m = s.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!g.has_edge(m[i], m[j])) return false;
    return true;
}

/// Maximal cliques by scanning every vertex subset.
inline std::vector<Itemset> brute_force_cliques(const DependencyGraph& g, const Itemset& within) {
    std::vector<Itemset> cliques;
    for (const auto& s : all_subsets(within))
        if (!s.empty() && is_clique(g, s)) cliques.push_back(s);
    std::vector<Itemset> out;
    for (const auto& s : cliques) {
        bool maximal = true;
        for (const auto& t : cliques) maximal = maximal && (t == s || !s.subset_of(t));
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

/// Frontier by explicit path search (DFS over simple paths whose interior avoids C).
inline Itemset brute_force_frontier(Item x, const Itemset& c, const DependencyGraph& g) {
    Itemset out;
    std::function<void(Item, Itemset)> walk = [&](Item u, Itemset visited) {
        g.neighbors(u).for_each([&](Item v) {
            if (visited.contains(v)) return;
            if (c.contains(v)) {
                out.insert(v);
                return;
            }
            Itemset next = visited;
            next.insert(v);
            walk(v, next);
        });
    };
    walk(x, Itemset{x});
    return out;
}

/// Safeness straight from the definition, with the path-search frontier.
inline bool brute_force_safe(const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g) {
    for (Item x = 0; x < g.vertex_count(); ++x) {
        if (c.contains(x)) continue;
        if (!family.contains(brute_force_frontier(x, c, g))) return false;
    }
    return true;
}

}  // namespace testing
