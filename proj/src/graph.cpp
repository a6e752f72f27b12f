#include "itembound/graph.hpp"

#include <algorithm>
#include <deque>

namespace itembound {

DependencyGraph::DependencyGraph(int vertex_count) : adjacency_(static_cast<std::size_t>(vertex_count)) {
    if (vertex_count < 0 || vertex_count > Itemset::kMaxItems) throw Error("vertex count out of range");
}

void DependencyGraph::add_edge(Item u, Item v) {
    if (u == v) throw Error("self loops are not allowed in a dependency graph");
    adjacency_.at(static_cast<std::size_t>(u)).insert(v);
    adjacency_.at(static_cast<std::size_t>(v)).insert(u);
}

void DependencyGraph::remove_edge(Item u, Item v) {
    adjacency_.at(static_cast<std::size_t>(u)).erase(v);
    adjacency_.at(static_cast<std::size_t>(v)).erase(u);
}

std::vector<std::pair<Item, Item>> DependencyGraph::edges() const {
    std::vector<std::pair<Item, Item>> out;
    for (Item u = 0; u < vertex_count(); ++u) {
        neighbors(u).for_each([&](Item v) {
            if (u < v) out.emplace_back(u, v);
        });
    }
    return out;
}

int DependencyGraph::edge_count() const {
    int twice = 0;
    for (const auto& n : adjacency_) twice += n.size();
    return twice / 2;
}

Itemset DependencyGraph::boundary(const Itemset& c) const {
    Itemset out;
    c.for_each([&](Item v) {
        if (v < vertex_count()) out |= neighbors(v);
    });
    return out - c;
}

DependencyGraph build_graph(const ItemsetFamily& family, int vertex_count) {
    if (vertex_count < 0) {
        vertex_count = 0;
        for (const auto& s : family)
            s.for_each([&](Item i) { vertex_count = std::max(vertex_count, i + 1); });
    }
    DependencyGraph g(vertex_count);
    for (const auto& s : family) {
        if (s.size() != 2) continue;
        const auto m = s.members();
        g.add_edge(m[0], m[1]);
    }
    return g;
}

int vertex_span(const ItemsetFamily& family, const Itemset& extra) {
    int k = extra.empty() ? 0 : extra.members().back() + 1;
    for (const auto& s : family)
        s.for_each([&](Item i) { k = std::max(k, i + 1); });
    return k;
}

namespace {

/// Breadth-first distances from x where only vertices outside c are expanded.
std::vector<int> restricted_distances(Item x, const Itemset& c, const DependencyGraph& g) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    dist[static_cast<std::size_t>(x)] = 0;
    if (c.contains(x)) return dist;
    std::deque<Item> queue{x};
    while (!queue.empty()) {
        const Item u = queue.front();
        queue.pop_front();
        g.neighbors(u).for_each([&](Item v) {
            auto& d = dist[static_cast<std::size_t>(v)];
            if (d >= 0) return;
            d = dist[static_cast<std::size_t>(u)] + 1;
            if (!c.contains(v)) queue.push_back(v);
        });
    }
    return dist;
}

}  // namespace

Itemset frontier(Item x, const Itemset& c, const DependencyGraph& g) {
    if (c.contains(x)) throw Error("frontier of an item inside the set");
    const auto dist = restricted_distances(x, c, g);
    Itemset out;
    c.for_each([&](Item v) {
        if (v < g.vertex_count() && dist[static_cast<std::size_t>(v)] > 0) out.insert(v);
    });
    return out;
}

Itemset restricted_neighborhood(Item x, int radius, const Itemset& c, const DependencyGraph& g) {
    if (radius < 0) throw Error("negative neighbourhood radius");
    const auto dist = restricted_distances(x, c, g);
    Itemset out;
    for (Item v = 0; v < g.vertex_count(); ++v) {
        const int d = dist[static_cast<std::size_t>(v)];
        if (d >= 0 && d <= radius) out.insert(v);
    }
    return out;
}

RankVector rank(Item x, const Itemset& c, const DependencyGraph& g) {
    if (c.contains(x)) throw Error("rank of an item inside the set");
    const auto dist = restricted_distances(x, c, g);
    RankVector r;
    c.for_each([&](Item v) {
        if (v >= g.vertex_count()) return;
        const int d = dist[static_cast<std::size_t>(v)];
        if (d <= 0) return;
        if (r.counts.size() < static_cast<std::size_t>(d)) r.counts.resize(static_cast<std::size_t>(d), 0);
        ++r.counts[static_cast<std::size_t>(d - 1)];
    });
    return r;
}

SafetyCheck is_safe(const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g) {
    // Items in one component of G - C share a frontier, so one probe per component suffices.
    for (const auto& component : components_outside(c, g)) {
        const Item x = component.front();
        Itemset front = frontier(x, c, g);
        if (!family.contains(front)) return SafetyCheck{false, x, std::move(front)};
    }
    return {};
}

SafetyCheck is_safe(const Itemset& c, const ItemsetFamily& family) {
    return is_safe(c, family, build_graph(family, vertex_span(family, c)));
}

std::vector<Itemset> components_outside(const Itemset& c, const DependencyGraph& g) {
    std::vector<Itemset> out;
    Itemset seen = c;
    for (Item s = 0; s < g.vertex_count(); ++s) {
        if (seen.contains(s)) continue;
        Itemset component{s};
        seen.insert(s);
        std::vector<Item> stack{s};
        while (!stack.empty()) {
            const Item u = stack.back();
            stack.pop_back();
            (g.neighbors(u) - seen).for_each([&](Item v) {
                seen.insert(v);
                component.insert(v);
                stack.push_back(v);
            });
        }
        out.push_back(component);
    }
    return out;
}

ViolationRound find_violations(const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g) {
    ViolationRound round;
    const std::vector<Item> candidates = g.boundary(c).members();
    if (candidates.empty()) return round;

    std::vector<std::vector<int>> dist;
    dist.reserve(candidates.size());
    int horizon = 1;  // past this radius no restricted neighbourhood grows
    for (const Item x : candidates) {
        dist.push_back(restricted_distances(x, c, g));
        for (const int d : dist.back()) horizon = std::max(horizon, d);
    }

    auto reached = [&](std::size_t k, int radius) {
        Itemset u;
        c.for_each([&](Item v) {
            if (v >= g.vertex_count()) return;
            const int d = dist[k][static_cast<std::size_t>(v)];
            if (d > 0 && d <= radius) u.insert(v);
        });
        return u;
    };

    for (int radius = 1; radius <= horizon; ++radius) {
        std::vector<Itemset> current;
        current.reserve(candidates.size());
        bool violation = false;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            current.push_back(reached(k, radius));
            if (!family.contains(current.back())) violation = true;
        }
        round.radius = radius;
        if (violation) {
            for (std::size_t k = 0; k < candidates.size(); ++k) {
                if (!family.contains(current[k])) {
                    round.violators.push_back({candidates[k], current[k], rank(candidates[k], c, g)});
                }
            }
            break;
        }
    }

    if (round.violated()) {
        const RankVector best =
            std::max_element(round.violators.begin(), round.violators.end(),
                             [](const auto& a, const auto& b) { return a.rank < b.rank; })
                ->rank;
        for (const auto& v : round.violators)
            if (v.rank == best) round.max_rank.push_back(v.item);
    }
    return round;
}

Itemset minimal_safe_set(const Itemset& b, const ItemsetFamily& family, const DependencyGraph& g,
                         SafeSetTrace* trace) {
    Itemset c = b;
    while (true) {
        ViolationRound round = find_violations(c, family, g);
        if (!round.violated()) return c;
        const Itemset before = c;
        for (const Item x : round.max_rank) c.insert(x);
        if (trace) trace->steps.push_back({before, std::move(round)});
    }
}

Itemset minimal_safe_set(const Itemset& b, const ItemsetFamily& family) {
    return minimal_safe_set(b, family, build_graph(family, vertex_span(family, b)));
}

}  // namespace itembound
