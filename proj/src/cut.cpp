#include "itembound/cut.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace itembound {

double mi_weight(Item u, Item v, const FrequencyAssignment& theta) {
    const Rational& tu = theta.at(Itemset{u});
    const Rational& tv = theta.at(Itemset{v});
    const Rational& tuv = theta.at(Itemset{u, v});
    const Rational cells[4] = {Rational(1) - tu - tv + tuv, tu - tuv, tv - tuv, tuv};  // 00, 10, 01, 11
    for (const auto& c : cells) {
        if (c.sign() < 0) throw InconsistentFrequencies("pair frequencies imply a negative cell probability");
    }
    if (tuv == tu * tv) return 0.0;
    const double pu[2] = {1.0 - tu.to_double(), tu.to_double()};
    const double pv[2] = {1.0 - tv.to_double(), tv.to_double()};
    double mi = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double p = cells[a + 2 * b].to_double();
            if (p > 0.0) mi += p * std::log(p / (pu[a] * pv[b]));
        }
    }
    return std::max(mi, 0.0);
}

EdgeWeights mi_weights(const DependencyGraph& g, const FrequencyAssignment& theta) {
    EdgeWeights w;
    for (const auto& [u, v] : g.edges()) w[{u, v}] = mi_weight(u, v, theta);
    return w;
}

namespace {

/// Dense residual network; sizes here are tens of nodes.
class FlowNetwork {
public:
    explicit FlowNetwork(int n) : n_(n), cap_(static_cast<std::size_t>(n * n), 0.0) {}

    void add_arc(int from, int to, double capacity) { at(from, to) += capacity; }

    double max_flow(int source, int sink) {
        double total = 0.0;
        std::vector<int> parent(static_cast<std::size_t>(n_));
        while (true) {
            std::fill(parent.begin(), parent.end(), -1);
            parent[static_cast<std::size_t>(source)] = source;
            std::deque<int> queue{source};
            while (!queue.empty() && parent[static_cast<std::size_t>(sink)] < 0) {
                const int u = queue.front();
                queue.pop_front();
                for (int v = 0; v < n_; ++v) {
                    if (parent[static_cast<std::size_t>(v)] < 0 && at(u, v) > kEps) {
                        parent[static_cast<std::size_t>(v)] = u;
                        queue.push_back(v);
                    }
                }
            }
            if (parent[static_cast<std::size_t>(sink)] < 0) return total;
            double push = std::numeric_limits<double>::infinity();
            for (int v = sink; v != source; v = parent[static_cast<std::size_t>(v)])
                push = std::min(push, at(parent[static_cast<std::size_t>(v)], v));
            for (int v = sink; v != source; v = parent[static_cast<std::size_t>(v)]) {
                at(parent[static_cast<std::size_t>(v)], v) -= push;
                at(v, parent[static_cast<std::size_t>(v)]) += push;
            }
            total += push;
        }
    }

    std::vector<char> reachable(int source) const {
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        seen[static_cast<std::size_t>(source)] = 1;
        std::deque<int> queue{source};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n_; ++v) {
                if (!seen[static_cast<std::size_t>(v)] && at(u, v) > kEps) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    queue.push_back(v);
                }
            }
        }
        return seen;
    }

private:
    static constexpr double kEps = 1e-12;
    double& at(int u, int v) { return cap_[static_cast<std::size_t>(u * n_ + v)]; }
    double at(int u, int v) const { return cap_[static_cast<std::size_t>(u * n_ + v)]; }

    int n_;
    std::vector<double> cap_;
};

/// Whether `y` lies on a simple path from `x` to the contracted frontier:
/// two vertex-disjoint paths must leave y, one ending at x and one at the frontier.
bool on_simple_path(Item y, Item x, const std::vector<Item>& local, const Itemset& front, const DependencyGraph& g) {
    const int k = static_cast<int>(local.size());
    const int frontier_node = k;
    const int sink = 2 * (k + 1);
    FlowNetwork net(sink + 1);
    auto in = [](int v) { return 2 * v; };
    auto out = [](int v) { return 2 * v + 1; };
    int y_local = -1;
    int x_local = -1;
    for (int a = 0; a < k; ++a) {
        if (local[static_cast<std::size_t>(a)] == y) y_local = a;
        if (local[static_cast<std::size_t>(a)] == x) x_local = a;
    }
    for (int a = 0; a < k; ++a) net.add_arc(in(a), out(a), a == y_local ? 2.0 : 1.0);
    net.add_arc(in(frontier_node), out(frontier_node), 1.0);
    for (int a = 0; a < k; ++a) {
        const Item u = local[static_cast<std::size_t>(a)];
        for (int b = a + 1; b < k; ++b) {
            if (g.has_edge(u, local[static_cast<std::size_t>(b)])) {
                net.add_arc(out(a), in(b), 1.0);
                net.add_arc(out(b), in(a), 1.0);
            }
        }
        if (g.neighbors(u).intersects(front)) net.add_arc(out(a), in(frontier_node), 1.0);
    }
    net.add_arc(out(x_local), sink, 1.0);
    net.add_arc(out(frontier_node), sink, 1.0);
    return net.max_flow(in(y_local), sink) > 1.5;
}

}  // namespace

Subgraph violation_subgraph(Item x, const Itemset& c, const ItemsetFamily& family, const DependencyGraph& g) {
    const Itemset front = frontier(x, c, g);
    if (family.contains(front)) throw Error("item does not violate safeness of the set");

    // Component of x in G - C.
    Itemset component{x};
    std::vector<Item> stack{x};
    while (!stack.empty()) {
        const Item u = stack.back();
        stack.pop_back();
        (g.neighbors(u) - c - component).for_each([&](Item v) {
            component.insert(v);
            stack.push_back(v);
        });
    }
    const std::vector<Item> local = component.members();

    Subgraph h;
    h.vertices = front;
    h.vertices.insert(x);
    for (const Item y : local) {
        if (y != x && on_simple_path(y, x, local, front, g)) h.vertices.insert(y);
    }
    for (const auto& [u, v] : g.edges()) {
        if (h.vertices.contains(u) && h.vertices.contains(v)) h.edges.emplace_back(u, v);
    }
    return h;
}

CutResult min_cut(const Subgraph& h, const EdgeWeights& weights, Item source, const Itemset& sinks) {
    if (sinks.contains(source)) throw Error("min cut source lies in the sink set");
    if (sinks.empty()) throw Error("min cut needs a nonempty sink set");
    if (!h.vertices.contains(source) || !sinks.subset_of(h.vertices)) throw Error("min cut terminals outside the graph");

    const std::vector<Item> local = h.vertices.members();
    std::vector<int> index(static_cast<std::size_t>(Itemset::kMaxItems), -1);
    for (std::size_t a = 0; a < local.size(); ++a) index[static_cast<std::size_t>(local[a])] = static_cast<int>(a);
    const int sink = static_cast<int>(local.size());
    auto node = [&](Item v) { return sinks.contains(v) ? sink : index[static_cast<std::size_t>(v)]; };

    FlowNetwork net(sink + 1);
    auto weight_of = [&](const Edge& e) {
        const auto it = weights.find(e);
        if (it == weights.end()) throw Error("missing weight for an edge");
        if (it->second < 0.0) throw Error("negative edge weight");
        return it->second;
    };
    for (const auto& e : h.edges) {
        const int a = node(e.first);
        const int b = node(e.second);
        if (a == b) continue;
        const double w = weight_of(e);
        net.add_arc(a, b, w);
        net.add_arc(b, a, w);
    }
    net.max_flow(node(source), sink);
    const auto side = net.reachable(node(source));

    CutResult cut;
    for (const auto& e : h.edges) {
        const bool lhs = side[static_cast<std::size_t>(node(e.first))] != 0;
        const bool rhs = side[static_cast<std::size_t>(node(e.second))] != 0;
        if (lhs != rhs) {
            cut.edges.push_back(e);
            cut.cost += weight_of(e);
        }
    }
    return cut;
}

void remove_edge_itemsets(const std::vector<Edge>& edges, ItemsetFamily& family, FrequencyAssignment& theta) {
    std::vector<Itemset> kept;
    FrequencyAssignment pruned;
    for (const auto& s : family) {
        const bool doomed = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
            return s.contains(e.first) && s.contains(e.second);
        });
        if (doomed) continue;
        kept.push_back(s);
        pruned.set(s, theta.at(s));
    }
    family = ItemsetFamily::from_sets(kept);
    theta = std::move(pruned);
}

RestrictedSafeSet restricted_safe_set(const Itemset& b, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                      int max_size, const EdgeWeights& weights, int vertex_count) {
    if (vertex_count < 0) vertex_count = vertex_span(family, b);
    RestrictedSafeSet out;
    out.family = family;
    out.theta = theta;
    DependencyGraph g = build_graph(family, vertex_count);
    const int restart_cap = g.edge_count();

    while (true) {
        Itemset c = b;
        std::vector<RecordedCut> candidates;
        while (true) {
            const ViolationRound round = find_violations(c, out.family, g);
            if (!round.violated()) break;
            if (c.size() + static_cast<int>(round.max_rank.size()) > max_size) {
                for (const Item x : round.max_rank) {
                    const Subgraph h = violation_subgraph(x, c, out.family, g);
                    const Itemset front = frontier(x, c, g);
                    candidates.push_back({x, front, min_cut(h, weights, x, front)});
                }
            }
            for (const Item x : round.max_rank) c.insert(x);
        }
        out.set = c;
        out.candidates.push_back(candidates);
        if (c.size() <= max_size) {
            out.within_budget = true;
            return out;
        }
        if (candidates.empty() || out.restarts >= restart_cap) {
            out.within_budget = false;
            return out;
        }
        const auto best = std::min_element(candidates.begin(), candidates.end(),
                                           [](const RecordedCut& a, const RecordedCut& z) {
                                               return a.cut.cost < z.cut.cost;
                                           });
        for (const auto& e : best->cut.edges) {
            if (weights.at(e) > 0.0) out.dependent_edges_removed = true;
            const Itemset pair{e.first, e.second};
            for (const auto& s : out.family) {
                if (s.size() > 2 && pair.subset_of(s)) out.nonmaximal_edges_removed = true;
            }
            g.remove_edge(e.first, e.second);
        }
        remove_edge_itemsets(best->cut.edges, out.family, out.theta);
        out.removed.push_back(*best);
        ++out.restarts;
    }
}

RestrictedSafeSet restricted_safe_set(const Itemset& b, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                      int max_size, int vertex_count) {
    if (vertex_count < 0) vertex_count = vertex_span(family, b);
    return restricted_safe_set(b, family, theta, max_size, mi_weights(build_graph(family, vertex_count), theta),
                               vertex_count);
}

}  // namespace itembound
