#include "itembound/maxent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "itembound/bounds.hpp"
#include "itembound/graph.hpp"

namespace itembound {

namespace {

/// Local index over `sub` of a local assignment over `attrs`, given the
/// position in `attrs` of each member of `sub`.
std::uint64_t restrict_index(std::uint64_t z, const std::vector<int>& positions) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        if ((z >> positions[j]) & 1U) out |= std::uint64_t{1} << j;
    return out;
}

std::vector<int> positions_in(const Itemset& attrs, const Itemset& sub) {
    std::vector<int> out;
    const std::vector<Item> all = attrs.members();
    sub.for_each([&](Item i) {
        out.push_back(static_cast<int>(std::find(all.begin(), all.end(), i) - all.begin()));
    });
    return out;
}

/// Cells forced empty: for U ⊆ V in F, the pattern "U on, V∖U off" has mass
/// Σ_{U⊆W⊆V} (−1)^|W∖U| θ_W; when that is zero every cell matching it is empty.
std::vector<char> forced_zeros(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c) {
    std::vector<char> zero(std::size_t{1} << c.size(), 0);
    for (const auto& v : family) {
        if (!v.subset_of(c)) continue;
        const std::vector<Item> vm = v.members();
        const std::uint64_t subsets = std::uint64_t{1} << vm.size();
        for (std::uint64_t us = 0; us < subsets; ++us) {
            Rational mass;
            for (std::uint64_t ws = us;; ws = (ws + 1) | us) {
                Itemset w;
                for (std::size_t j = 0; j < vm.size(); ++j)
                    if ((ws >> j) & 1U) w.insert(vm[j]);
                if (std::popcount(ws ^ us) % 2 == 0) mass += theta.at(w);
                else mass -= theta.at(w);
                if (ws == subsets - 1) break;
            }
            if (!mass.is_zero()) continue;
            Itemset u;
            for (std::size_t j = 0; j < vm.size(); ++j)
                if ((us >> j) & 1U) u.insert(vm[j]);
            const std::uint64_t vmask = local_mask(c, v);
            const std::uint64_t umask = local_mask(c, u);
            for (std::uint64_t z = 0; z < zero.size(); ++z)
                if ((z & vmask) == umask) zero[z] = 1;
        }
    }
    return zero;
}

/// Cells that are empty in every distribution satisfying θ, found by
/// repeatedly maximizing the mass on cells not yet seen positive. Throws on
/// inconsistent θ.
void exact_zeros(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                 std::vector<char>& zero) {
    LinearProgram lp = build_problem(family, theta, c, Formula::constant(false), Sense::Maximize);
    std::vector<char> positive(zero.size(), 0);
    while (true) {
        bool open = false;
        for (std::size_t z = 0; z < zero.size(); ++z) {
            const bool unknown = !zero[z] && !positive[z];
            lp.objective[z] = Rational(unknown ? 1 : 0);
            open = open || unknown;
        }
        const LPResult r = solve(lp);
        if (r.status != LPStatus::Optimal) throw InconsistentFrequencies("no distribution satisfies the frequencies");
        if (!open) return;
        if (r.value.is_zero()) break;
        for (std::size_t z = 0; z < zero.size(); ++z)
            if (r.witness[z].sign() > 0) positive[z] = 1;
    }
    for (std::size_t z = 0; z < zero.size(); ++z)
        if (!positive[z]) zero[z] = 1;
}

}  // namespace

double max_residual(const RealDistribution& p, const ItemsetFamily& family, const FrequencyAssignment& theta) {
    double worst = 0.0;
    for (const auto& u : family) {
        if (!u.subset_of(p.attrs)) continue;
        worst = std::max(worst, std::abs(expectation(p, u) - theta.at(u).to_double()));
    }
    return worst;
}

MaxentResult ipf_maxent(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                        const MaxentOptions& options) {
    if (c.size() > 20) throw Error("maximum entropy fitting is limited to 20 attributes");

    MaxentResult out;
    RealDistribution& p = out.distribution;
    p.attrs = c;
    const std::size_t states = std::size_t{1} << c.size();
    std::vector<char> zero = forced_zeros(family, theta, c);
    if (options.check_feasibility) exact_zeros(family, theta, c, zero);
    p.probs.assign(states, 0.0);
    const auto open = static_cast<double>(std::count(zero.begin(), zero.end(), 0));
    if (open == 0) throw InconsistentFrequencies("every cell is forced empty");
    for (std::size_t z = 0; z < states; ++z)
        if (!zero[z]) p.probs[z] = 1.0 / open;

    struct Target {
        std::uint64_t mask;
        double value;
    };
    std::vector<Target> targets;
    for (const auto& u : family) {
        if (!u.subset_of(c) || u.empty()) continue;
        const Rational& t = theta.at(u);
        if (t.is_zero() || t == Rational(1)) continue;  // already exact after zeroing
        targets.push_back({local_mask(c, u), t.to_double()});
    }

    out.residual = max_residual(p, family, theta);
    while (out.residual > options.tolerance && out.iterations < options.max_cycles) {
        for (const auto& t : targets) {
            double mass = 0.0;
            for (std::size_t z = 0; z < states; ++z)
                if ((z & t.mask) == t.mask) mass += p.probs[z];
            if (mass <= 0.0 || mass >= 1.0) continue;
            const double in = t.value / mass;
            const double rest = (1.0 - t.value) / (1.0 - mass);
            for (std::size_t z = 0; z < states; ++z) p.probs[z] *= (z & t.mask) == t.mask ? in : rest;
        }
        double sum = 0.0;
        for (const double v : p.probs) sum += v;
        for (double& v : p.probs) v /= sum;
        ++out.iterations;
        out.residual = max_residual(p, family, theta);
        out.residual_history.push_back(out.residual);
    }
    out.converged = out.residual <= options.tolerance;
    return out;
}

RealDistribution extend_via_maxent(const RealDistribution& q, const ItemsetFamily& family,
                                   const FrequencyAssignment& theta, const Itemset& universe,
                                   const MaxentOptions& options) {
    const Itemset& c = q.attrs;
    if (!c.subset_of(universe)) throw DomainMismatch("distribution lies outside the universe");
    if (!family.items().subset_of(universe)) throw DomainMismatch("family uses items outside the universe");
    if (universe.size() > kMaxDenseAttributes) throw Error("universe too large for a dense distribution");
    const DependencyGraph g = build_graph(family, vertex_span(family, universe));
    if (!is_safe(c, family, g).safe) throw Error("extension requires a safe set");
    if (max_residual(q, family, theta) > 1e-8) throw InconsistentFrequencies("distribution violates the projected frequencies");
    if (c == universe) return q;

    struct Block {
        Itemset scope;  // W ∪ V
        RealDistribution joint;
        RealDistribution boundary;
        std::vector<int> scope_positions;
        std::vector<int> boundary_positions;
        std::uint64_t block_mask = 0;  // W within scope
    };
    std::vector<Block> blocks;
    for (const auto& w : components_outside(c, g)) {
        if (!w.subset_of(universe)) continue;
        const Itemset v = frontier(w.front(), c, g);
        Block blk;
        blk.scope = w | v;
        blk.joint = ipf_maxent(project_family(family, blk.scope), project_frequencies(theta, blk.scope), blk.scope, options)
                        .distribution;
        blk.boundary = marginalize(blk.joint, v);
        blk.scope_positions = positions_in(universe, blk.scope);
        blk.boundary_positions = positions_in(universe, v);
        blk.block_mask = local_mask(blk.scope, w);
        blocks.push_back(std::move(blk));
    }

    RealDistribution p;
    p.attrs = universe;
    p.probs.assign(std::size_t{1} << universe.size(), 0.0);
    const std::vector<int> c_positions = positions_in(universe, c);
    for (std::uint64_t z = 0; z < p.probs.size(); ++z) {
        double value = q.probs[restrict_index(z, c_positions)];
        for (const auto& blk : blocks) {
            if (value == 0.0) break;
            const std::uint64_t s = restrict_index(z, blk.scope_positions);
            const double denom = blk.boundary.probs[restrict_index(z, blk.boundary_positions)];
            // An empty boundary cell gets a point conditional: the block all zero.
            value *= denom > 0.0 ? blk.joint.probs[s] / denom : ((s & blk.block_mask) == 0 ? 1.0 : 0.0);
        }
        p.probs[z] = value;
    }
    return p;
}

double verify_marginal_theorem(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                               const Itemset& universe, const MaxentOptions& options) {
    if (!c.subset_of(universe)) throw DomainMismatch("set lies outside the universe");
    const MaxentResult full = ipf_maxent(family, theta, universe, options);
    const MaxentResult local = ipf_maxent(project_family(family, c), project_frequencies(theta, c), c, options);
    const RealDistribution marginal = marginalize(full.distribution, c);
    double worst = 0.0;
    for (std::size_t z = 0; z < marginal.probs.size(); ++z)
        worst = std::max(worst, std::abs(marginal.probs[z] - local.distribution.probs[z]));
    return worst;
}

}  // namespace itembound
