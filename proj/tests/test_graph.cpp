#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace itembound;
using namespace testing;

TEST_CASE("dependency graph edges come from 2-itemsets") {
    const FrequentItemsets fi = five_rows_family();
    const DependencyGraph g = build_graph(fi.family);
    CHECK(g.edges() == std::vector<std::pair<Item, Item>>{{0, 1}, {0, 2}});
    const FrequentItemsets cyc = six_item_cycle();
    const DependencyGraph h = build_graph(cyc.family);
    CHECK(h.edge_count() == 7);
    for (const char* e : {"a,b", "b,c", "c,d", "a,d", "d,e", "c,e", "a,f"}) {
        const auto m = set_of(cyc.universe, e).members();
        CHECK(h.has_edge(m[0], m[1]));
    }
    const DependencyGraph singles = build_graph(downward_close({Itemset{0}, Itemset{1}}));
    CHECK(singles.edge_count() == 0);
    CHECK(singles.vertex_count() == 2);
    DependencyGraph loop(2);
    CHECK_THROWS(loop.add_edge(1, 1));
}

TEST_CASE("frontier, neighbourhood and rank on the six-item cycle") {
    const FrequentItemsets cyc = six_item_cycle();
    const auto& u = cyc.universe;
    const DependencyGraph g = build_graph(cyc.family);
    const Item d = u.index("d");
    const Item e = u.index("e");
    const Item f = u.index("f");
    const Itemset abc = set_of(u, "a,b,c");
    CHECK(frontier(d, abc, g) == set_of(u, "a,c"));
    CHECK(frontier(f, set_of(u, "a,b,c,d"), g) == set_of(u, "a"));
    CHECK_THROWS(frontier(u.index("a"), abc, g));
    CHECK(frontier(0, Itemset{1}, DependencyGraph(3)).empty());

    CHECK(restricted_neighborhood(e, 1, abc, g) == set_of(u, "c,d,e"));
    CHECK(restricted_neighborhood(e, 2, abc, g) == set_of(u, "a,c,d,e"));
    CHECK(restricted_neighborhood(e, 0, abc, g) == Itemset{e});

    CHECK(rank(d, abc, g).counts == std::vector<int>{2});
    CHECK(rank(e, abc, g).counts == std::vector<int>{1, 1});
    CHECK(rank(e, abc, g) < rank(d, abc, g));
    CHECK(rank(0, Itemset{1}, DependencyGraph(3)).counts.empty());
}

TEST_CASE("safeness on the six-item cycle") {
    const FrequentItemsets cyc = six_item_cycle();
    const auto& u = cyc.universe;
    CHECK(is_safe(set_of(u, "a,b,c,d"), cyc.family).safe);
    const SafetyCheck bad = is_safe(set_of(u, "a,b,c"), cyc.family);
    CHECK_FALSE(bad.safe);
    CHECK((bad.witness == u.index("d") || bad.witness == u.index("e")));
    CHECK(bad.witness_frontier == set_of(u, "a,c"));
    CHECK(is_safe(u.all(), cyc.family).safe);
}

TEST_CASE("minimal safe sets") {
    const FrequentItemsets cyc = six_item_cycle();
    const auto& u = cyc.universe;
    SafeSetTrace trace;
    const DependencyGraph g = build_graph(cyc.family);
    CHECK(minimal_safe_set(set_of(u, "a,b,c"), cyc.family, g, &trace) == set_of(u, "a,b,c,d"));
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].round.max_rank == std::vector<Item>{u.index("d")});

    const FrequentItemsets fi = five_rows_family();
    CHECK(minimal_safe_set(set_of(fi.universe, "b,c"), fi.family) == fi.universe.all());
    CHECK(minimal_safe_set(set_of(fi.universe, "a,b"), fi.family) == set_of(fi.universe, "a,b"));
}

TEST_CASE("violations behind a long restricted path are found") {
    // a - b - c - d - e: from b the item e only shows up at radius 3.
    const ItemsetFamily path = downward_close({Itemset{0, 1}, Itemset{1, 2}, Itemset{2, 3}, Itemset{3, 4}});
    const DependencyGraph g = build_graph(path);
    const ViolationRound round = find_violations(Itemset{0, 4}, path, g);
    CHECK(round.violated());
    CHECK(round.radius == 3);
    CHECK(minimal_safe_set(Itemset{0, 4}, path) == Itemset::first(5));
    CHECK(minimal_safe_set(Itemset{0, 2}, path) == Itemset{0, 1, 2});
}

TEST_CASE("property: minimal safe set is safe, minimum and contained in every safe superset") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const int k = 2 + static_cast<int>(rng() % 6);
        ItemsetFamily f;
        if (t % 2 == 0) {
            f = random_family(rng, k, 2 + static_cast<int>(rng() % 6), 3);
        } else {
            // Sparse: a random tree plus at most one extra edge, so long chordless paths are common.
            std::vector<Itemset> edges;
            for (Item v = 1; v < k; ++v) edges.push_back(Itemset{static_cast<Item>(rng() % static_cast<std::uint64_t>(v)), v});
            if (k > 2 && rng() % 2) edges.push_back(Itemset{0, k - 1});
            f = downward_close(edges);
        }
        const DependencyGraph g = build_graph(f, k);
        const Itemset b = random_subset(rng, k, 1 + static_cast<int>(rng() % std::min(k, 3)));
        const Itemset c = minimal_safe_set(b, f, g);
        CHECK(b.subset_of(c));
        CHECK(is_safe(c, f, g).safe);
        CHECK(brute_force_safe(c, f, g));
        for (const auto& extra : all_subsets(g.vertices() - b)) {
            const Itemset y = b | extra;
            const bool safe = brute_force_safe(y, f, g);
            CHECK(safe == is_safe(y, f, g).safe);
            if (safe) {
                CHECK(c.subset_of(y));
                CHECK(c.size() <= y.size());
            }
        }
    }
}

TEST_CASE("property: frontier matches path enumeration and is shared along C-avoiding paths") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 150; ++t) {
        const int k = 2 + static_cast<int>(rng() % 6);
        const ItemsetFamily f = random_family(rng, k, 3 + static_cast<int>(rng() % 5), 2);
        const DependencyGraph g = build_graph(f, k);
        const Itemset c = random_subset(rng, k, static_cast<int>(rng() % k));
        for (const auto& comp : components_outside(c, g)) {
            const Itemset first = frontier(comp.front(), c, g);
            comp.for_each([&](Item x) {
                CHECK(frontier(x, c, g) == first);
                CHECK(frontier(x, c, g) == brute_force_frontier(x, c, g));
                for (int r = 0; r <= k; ++r) CHECK((restricted_neighborhood(x, r, c, g) & c).subset_of(first));
                CHECK((restricted_neighborhood(x, k, c, g) & c) == first);
            });
        }
    }
}

TEST_CASE("property: every item added had a violating neighbourhood when added") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 150; ++t) {
        const int k = 3 + static_cast<int>(rng() % 6);
        const ItemsetFamily f = random_family(rng, k, 3 + static_cast<int>(rng() % 6), 3);
        const DependencyGraph g = build_graph(f, k);
        const Itemset b = random_subset(rng, k, 2);
        SafeSetTrace trace;
        minimal_safe_set(b, f, g, &trace);
        for (const auto& step : trace.steps) {
            for (const Item x : step.round.max_rank) {
                CHECK_FALSE(step.before.contains(x));
                CHECK_FALSE(f.contains(frontier(x, step.before, g)));
                CHECK_FALSE(f.contains(restricted_neighborhood(x, step.round.radius, step.before, g) & step.before));
            }
        }
    }
}
