#include "itembound/junction.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace itembound {

Chordality is_triangulated(const DependencyGraph& g, const Itemset& within) {
    const std::vector<Item> vertices = within.members();
    std::vector<int> weight(static_cast<std::size_t>(g.vertex_count()), 0);
    Itemset visited;
    std::vector<Item> visit;
    for (std::size_t step = 0; step < vertices.size(); ++step) {
        Item best = -1;
        for (const Item v : vertices) {
            if (visited.contains(v)) continue;
            if (best < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(best)]) best = v;
        }
        visited.insert(best);
        visit.push_back(best);
        (g.neighbors(best) & within).for_each([&](Item u) {
            if (!visited.contains(u)) ++weight[static_cast<std::size_t>(u)];
        });
    }

    Chordality out;
    std::vector<Item> order(visit.rbegin(), visit.rend());
    std::vector<int> position(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    for (const Item v : order) {
        Itemset later;
        (g.neighbors(v) & within).for_each([&](Item u) {
            if (position[static_cast<std::size_t>(u)] > position[static_cast<std::size_t>(v)]) later.insert(u);
        });
        if (later.empty()) continue;
        Item parent = -1;
        later.for_each([&](Item u) {
            if (parent < 0 || position[static_cast<std::size_t>(u)] < position[static_cast<std::size_t>(parent)]) parent = u;
        });
        later.erase(parent);
        if (!later.subset_of(g.neighbors(parent))) return out;
    }
    out.chordal = true;
    out.elimination_order = std::move(order);
    return out;
}

Chordality is_triangulated(const DependencyGraph& g) { return is_triangulated(g, g.vertices()); }

DependencyGraph triangulate_min_fill(const DependencyGraph& g, const Itemset& within) {
    DependencyGraph h(g.vertex_count());
    for (const auto& [u, v] : g.edges())
        if (within.contains(u) && within.contains(v)) h.add_edge(u, v);
    DependencyGraph work = h;
    Itemset remaining = within;

    auto fill_of = [&](Item v) {
        const std::vector<Item> nb = (work.neighbors(v) & remaining).members();
        int fill = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!work.has_edge(nb[i], nb[j])) ++fill;
        return fill;
    };

    while (!remaining.empty()) {
        Item best = -1;
        int best_fill = 0;
        remaining.for_each([&](Item v) {
            const int fill = fill_of(v);
            if (best < 0 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        });
        const std::vector<Item> nb = (work.neighbors(best) & remaining).members();
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (work.has_edge(nb[i], nb[j])) continue;
                work.add_edge(nb[i], nb[j]);
                h.add_edge(nb[i], nb[j]);
            }
        }
        remaining.erase(best);
    }
    return h;
}

namespace {

std::vector<Itemset> keep_maximal(std::vector<Itemset> sets) {
    std::sort(sets.begin(), sets.end(), CanonicalLess{});
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Itemset> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = i + 1; j < sets.size() && !dominated; ++j)
            dominated = sets[i].subset_of(sets[j]);
        if (!dominated) out.push_back(sets[i]);
    }
    return out;
}

void bron_kerbosch(const DependencyGraph& g, Itemset r, Itemset p, Itemset x, std::vector<Itemset>& out) {
    if (p.empty()) {
        if (x.empty()) out.push_back(r);
        return;
    }
    const Itemset px = p | x;
    Item pivot = -1;
    int best = -1;
    px.for_each([&](Item u) {
        const int n = (g.neighbors(u) & p).size();
        if (n > best) {
            best = n;
            pivot = u;
        }
    });
    for (const Item v : (p - g.neighbors(pivot)).members()) {
        Itemset rv = r;
        rv.insert(v);
        bron_kerbosch(g, rv, p & g.neighbors(v), x & g.neighbors(v), out);
        p.erase(v);
        x.insert(v);
    }
}

}  // namespace

std::vector<Itemset> maximal_cliques(const DependencyGraph& g, const Itemset& within) {
    const Chordality ch = is_triangulated(g, within);
    if (!ch.chordal) throw Error("maximal_cliques requires a triangulated graph");
    std::vector<Itemset> candidates;
    Itemset eliminated;
    for (const Item v : ch.elimination_order) {
        Itemset clique = (g.neighbors(v) & within) - eliminated;
        clique.insert(v);
        candidates.push_back(clique);
        eliminated.insert(v);
    }
    return keep_maximal(std::move(candidates));
}

std::vector<Itemset> maximal_cliques(const DependencyGraph& g) { return maximal_cliques(g, g.vertices()); }

std::vector<Itemset> all_maximal_cliques(const DependencyGraph& g, const Itemset& within) {
    std::vector<Itemset> out;
    if (!within.empty()) bron_kerbosch(g, {}, within, {}, out);
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<int> JunctionTree::path(int from, int to) const {
    const auto n = cliques.size();
    std::vector<int> parent(n, -1);
    parent[static_cast<std::size_t>(from)] = from;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& s : separators) {
            const int v = s.a == u ? s.b : s.b == u ? s.a : -1;
            if (v < 0 || parent[static_cast<std::size_t>(v)] >= 0) continue;
            parent[static_cast<std::size_t>(v)] = u;
            queue.push_back(v);
        }
    }
    if (parent[static_cast<std::size_t>(to)] < 0) return {};
    std::vector<int> out{to};
    for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)]) out.push_back(parent[static_cast<std::size_t>(v)]);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<int> JunctionTree::path_separators(int from, int to) const {
    const std::vector<int> nodes = path(from, to);
    std::vector<int> out;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        const int lo = std::min(nodes[k - 1], nodes[k]);
        const int hi = std::max(nodes[k - 1], nodes[k]);
        for (std::size_t s = 0; s < separators.size(); ++s)
            if (separators[s].a == lo && separators[s].b == hi) out.push_back(static_cast<int>(s));
    }
    return out;
}

bool JunctionTree::has_running_intersection() const {
    Itemset all;
    for (const auto& q : cliques) all |= q;
    for (const Item item : all.members()) {
        std::vector<int> holders;
        for (std::size_t i = 0; i < cliques.size(); ++i)
            if (cliques[i].contains(item)) holders.push_back(static_cast<int>(i));
        // Every clique on the path between two holders must hold the item too.
        for (std::size_t k = 1; k < holders.size(); ++k) {
            const std::vector<int> nodes = path(holders[0], holders[k]);
            if (nodes.empty()) return false;
            for (const int v : nodes)
                if (!cliques[static_cast<std::size_t>(v)].contains(item)) return false;
        }
    }
    return true;
}

JunctionTree build_junction_tree(const std::vector<Itemset>& cliques) {
    JunctionTree tree;
    tree.cliques = cliques;
    const int n = static_cast<int>(cliques.size());
    struct Candidate {
        int weight, a, b;
    };
    std::vector<Candidate> candidates;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const int w = (cliques[static_cast<std::size_t>(a)] & cliques[static_cast<std::size_t>(b)]).size();
            if (w > 0) candidates.push_back({w, a, b});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.weight > y.weight; });

    std::vector<int> root(static_cast<std::size_t>(n));
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int v) {
        while (root[static_cast<std::size_t>(v)] != v) v = root[static_cast<std::size_t>(v)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
        return v;
    };
    for (const auto& c : candidates) {
        const int ra = find(c.a);
        const int rb = find(c.b);
        if (ra == rb) continue;
        root[static_cast<std::size_t>(rb)] = ra;
        tree.separators.push_back(
            {c.a, c.b, cliques[static_cast<std::size_t>(c.a)] & cliques[static_cast<std::size_t>(c.b)]});
    }
    tree.connected = n <= 1 || static_cast<int>(tree.separators.size()) == n - 1;
    return tree;
}

bool is_clique_safe(const ItemsetFamily& family) {
    const DependencyGraph g = build_graph(family);
    for (const auto& clique : all_maximal_cliques(g, g.vertices())) {
        const std::vector<Item> m = clique.members();
        // Proper subsets are all in F iff every one-element removal is (F is downward closed).
        for (const Item v : m) {
            Itemset sub = clique;
            sub.erase(v);
            if (!family.contains(sub)) return false;
        }
    }
    return true;
}

InnerSeparators inner_separators(const JunctionTree& tree, const Itemset& b) {
    InnerSeparators out;
    const std::vector<Item> items = b.members();
    if (items.empty()) return out;
    const std::size_t n = tree.cliques.size();

    std::vector<std::vector<int>> groups;
    for (const Item item : items) {
        std::vector<int> holders;
        for (std::size_t i = 0; i < n; ++i)
            if (tree.cliques[i].contains(item)) holders.push_back(static_cast<int>(i));
        if (holders.empty()) throw Error("item " + std::to_string(item) + " lies in no clique");
        groups.push_back(std::move(holders));
    }
    // Items in different components of a forest are handled separately.
    std::vector<int> component(n, -1);
    for (std::size_t root = 0; root < n; ++root) {
        if (component[root] >= 0) continue;
        component[root] = static_cast<int>(root);
        std::deque<int> queue{static_cast<int>(root)};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (const auto& sep : tree.separators) {
                const int v = sep.a == u ? sep.b : sep.b == u ? sep.a : -1;
                if (v < 0 || component[static_cast<std::size_t>(v)] >= 0) continue;
                component[static_cast<std::size_t>(v)] = static_cast<int>(root);
                queue.push_back(v);
            }
        }
    }
    auto comp_of = [&](int clique) { return component[static_cast<std::size_t>(clique)]; };

    // Side of `a` once separator `skip` is removed.
    auto side_of = [&](std::size_t skip) {
        std::vector<char> seen(n, 0);
        const int start = tree.separators[skip].a;
        seen[static_cast<std::size_t>(start)] = 1;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < tree.separators.size(); ++s) {
                if (s == skip) continue;
                const auto& sep = tree.separators[s];
                const int v = sep.a == u ? sep.b : sep.b == u ? sep.a : -1;
                if (v < 0 || seen[static_cast<std::size_t>(v)]) continue;
                seen[static_cast<std::size_t>(v)] = 1;
                queue.push_back(v);
            }
        }
        return seen;
    };

    Itemset touched;
    for (std::size_t s = 0; s < tree.separators.size(); ++s) {
        const auto seen = side_of(s);
        bool near = false;
        bool far = false;
        for (const auto& group : groups) {
            // Groups outside this tree component are on neither side.
            if (comp_of(group[0]) != comp_of(tree.separators[s].a)) continue;
            const bool all_near = std::all_of(group.begin(), group.end(), [&](int v) { return seen[static_cast<std::size_t>(v)] != 0; });
            const bool all_far = std::none_of(group.begin(), group.end(), [&](int v) { return seen[static_cast<std::size_t>(v)] != 0; });
            near = near || all_near;
            far = far || all_far;
        }
        if (near && far) {
            out.separators.push_back(static_cast<int>(s));
            out.items |= tree.separators[s].items;
            touched.insert(tree.separators[s].a);
            touched.insert(tree.separators[s].b);
        }
    }

    for (std::size_t k = 0; k < items.size(); ++k) {
        const int comp = comp_of(groups[k][0]);
        bool local_touched = false;
        touched.for_each([&](Item v) { local_touched = local_touched || comp_of(v) == comp; });
        int chosen = -1;
        for (const int v : groups[k]) {
            const bool ok = local_touched ? touched.contains(v)
                                          : std::all_of(groups.begin(), groups.end(), [&](const std::vector<int>& g) {
                                                return comp_of(g[0]) != comp || std::find(g.begin(), g.end(), v) != g.end();
                                            });
            if (ok) {
                chosen = v;
                break;
            }
        }
        if (chosen < 0) throw Error("junction tree lacks the running intersection property");
        out.chosen.emplace_back(items[k], chosen);
    }
    return out;
}

Itemset safe_set_from_tree(const JunctionTree& tree, const Itemset& b, const ItemsetFamily& family) {
    const DependencyGraph g = build_graph(family, vertex_span(family, b));
    if (!is_triangulated(g).chordal) throw Error("family graph is not triangulated");
    if (!is_clique_safe(family)) throw Error("family is not clique-safe");
    std::vector<Itemset> cliques = tree.cliques;
    std::sort(cliques.begin(), cliques.end(), CanonicalLess{});
    if (cliques != maximal_cliques(g)) throw Error("tree cliques differ from the maximal cliques of the family graph");
    return b | inner_separators(tree, b).items;
}

LinearProgram build_factorized_problem(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                       Sense sense, FactorizedResult* layout) {
    const Itemset b = support(f);
    const int span = vertex_span(family, b);
    const Itemset c = minimal_safe_set(b, family, build_graph(family, span));
    const ItemsetFamily fc = project_family(family, c);

    DependencyGraph g = build_graph(fc, span);
    const std::vector<Item> bm = b.members();
    for (std::size_t i = 0; i < bm.size(); ++i)
        for (std::size_t j = i + 1; j < bm.size(); ++j) g.add_edge(bm[i], bm[j]);
    std::vector<Itemset> cliques = c.empty() ? std::vector<Itemset>{Itemset{}} : maximal_cliques(triangulate_min_fill(g, c), c);
    JunctionTree tree = build_junction_tree(cliques);

    for (const auto& q : tree.cliques)
        if (q.size() > kMaxDenseAttributes) throw Error("clique too large for a dense program");
    std::vector<int> offset;
    int variables = 0;
    for (const auto& q : tree.cliques) {
        offset.push_back(variables);
        variables += 1 << q.size();
    }
    int root = -1;
    for (std::size_t i = 0; i < tree.cliques.size() && root < 0; ++i)
        if (b.subset_of(tree.cliques[i])) root = static_cast<int>(i);
    if (root < 0) throw Error("no clique contains the query support");

    LinearProgram lp;
    lp.variables = variables;
    lp.sense = sense;
    for (std::size_t i = 0; i < tree.cliques.size(); ++i) {
        const Itemset& q = tree.cliques[i];
        const std::uint64_t states = std::uint64_t{1} << q.size();
        for (const auto& u : fc) {
            if (!u.subset_of(q)) continue;
            const std::uint64_t mask = local_mask(q, u);
            LinearConstraint row;
            for (std::uint64_t z = 0; z < states; ++z)
                if ((z & mask) == mask) row.terms.emplace_back(offset[i] + static_cast<int>(z), Rational(1));
            row.rhs = theta.at(u);
            lp.constraints.push_back(std::move(row));
        }
    }
    for (const auto& sep : tree.separators) {
        const Itemset& qa = tree.cliques[static_cast<std::size_t>(sep.a)];
        const Itemset& qb = tree.cliques[static_cast<std::size_t>(sep.b)];
        const std::uint64_t ma = local_mask(qa, sep.items);
        const std::uint64_t mb = local_mask(qb, sep.items);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << sep.items.size()); ++s) {
            const Itemset on = assignment_items(sep.items, s);
            const std::uint64_t wa = local_mask(qa, on);
            const std::uint64_t wb = local_mask(qb, on);
            LinearConstraint row;
            for (std::uint64_t z = 0; z < (std::uint64_t{1} << qa.size()); ++z)
                if ((z & ma) == wa) row.terms.emplace_back(offset[static_cast<std::size_t>(sep.a)] + static_cast<int>(z), Rational(1));
            for (std::uint64_t z = 0; z < (std::uint64_t{1} << qb.size()); ++z)
                if ((z & mb) == wb) row.terms.emplace_back(offset[static_cast<std::size_t>(sep.b)] + static_cast<int>(z), Rational(-1));
            lp.constraints.push_back(std::move(row));
        }
    }
    lp.objective.assign(static_cast<std::size_t>(variables), Rational(0));
    const auto obj = objective_vector(f, tree.cliques[static_cast<std::size_t>(root)]);
    for (std::size_t z = 0; z < obj.size(); ++z)
        lp.objective[static_cast<std::size_t>(offset[static_cast<std::size_t>(root)]) + z] = Rational(obj[z]);

    if (layout) {
        layout->safe_set = c;
        layout->tree = std::move(tree);
        layout->root = root;
        layout->variables = variables;
        layout->naive_variables = c.size() < 31 ? 1 << c.size() : -1;
        layout->constraints = static_cast<int>(lp.constraints.size());
    }
    return lp;
}

FactorizedResult factorized_interval(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta) {
    FactorizedResult out;
    for (const Sense sense : {Sense::Minimize, Sense::Maximize}) {
        const LPResult r = solve(build_factorized_problem(f, family, theta, sense, &out));
        if (r.status != LPStatus::Optimal)
            throw InconsistentFrequencies("no clique marginals satisfy the frequencies");
        (sense == Sense::Minimize ? out.interval.lo : out.interval.hi) = r.value;
    }
    return out;
}

}  // namespace itembound
