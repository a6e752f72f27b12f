#include "itembound/bounds.hpp"

#include <charconv>

#include "itembound/graph.hpp"
#include "itembound/junction.hpp"

namespace itembound {

namespace {

std::string item_list(const Itemset& c) {
    std::string out = "{";
    bool first = true;
    c.for_each([&](Item i) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    });
    return out + "}";
}

LinearProgram constraint_rows(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c) {
    if (c.size() > kMaxDenseAttributes) throw Error("projection set too large for a dense program");
    LinearProgram lp;
    const std::uint64_t states = std::uint64_t{1} << c.size();
    lp.variables = static_cast<int>(states);
    for (const auto& u : family) {
        if (!u.subset_of(c)) continue;
        const std::uint64_t mask = local_mask(c, u);
        LinearConstraint row;
        for (std::uint64_t z = 0; z < states; ++z)
            if ((z & mask) == mask) row.terms.emplace_back(static_cast<int>(z), Rational(1));
        row.rhs = theta.at(u);
        lp.constraints.push_back(std::move(row));
    }
    lp.objective.assign(states, Rational(0));
    return lp;
}

}  // namespace

LinearProgram build_problem(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                            const Formula& f, Sense sense) {
    LinearProgram lp = constraint_rows(family, theta, c);
    const auto obj = objective_vector(f, c);
    for (std::size_t z = 0; z < obj.size(); ++z) lp.objective[z] = Rational(obj[z]);
    lp.sense = sense;
    return lp;
}

bool consistent_on(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c) {
    return solve(constraint_rows(family, theta, c)).status == LPStatus::Optimal;
}

FrequencyInterval frequency_interval(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                     const Itemset& c) {
    FrequencyInterval out;
    for (const Sense sense : {Sense::Minimize, Sense::Maximize}) {
        const LPResult r = solve(build_problem(family, theta, c, f, sense));
        if (r.status != LPStatus::Optimal)
            throw InconsistentFrequencies("no distribution on " + item_list(c) + " satisfies the frequencies");
        (sense == Sense::Minimize ? out.lo : out.hi) = r.value;
    }
    return out;
}

Policy Policy::parse(std::string_view text) {
    if (text == "trivial") return {PolicyKind::Trivial};
    if (text == "safe") return {PolicyKind::Safe};
    if (text == "factorized") return {PolicyKind::Factorized};
    if (text == "restricted") return {PolicyKind::Restricted, 8};
    if (text.starts_with("restricted:")) {
        const std::string_view digits = text.substr(11);
        int m = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
        if (ec == std::errc{} && end == digits.data() + digits.size() && m >= 0) return {PolicyKind::Restricted, m};
    }
    throw Error("unknown policy '" + std::string(text) + "'");
}

std::string Policy::str() const {
    switch (kind) {
        case PolicyKind::Trivial: return "trivial";
        case PolicyKind::Safe: return "safe";
        case PolicyKind::Restricted: return "restricted:" + std::to_string(max_size);
        case PolicyKind::Factorized: return "factorized";
    }
    return "unknown";
}

BoundResult bound_with_policy(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta,
                              const Policy& policy) {
    BoundResult out;
    out.policy = policy;
    const Itemset b = support(f);

    auto dense = [&](const ItemsetFamily& fam, const FrequencyAssignment& th, const Itemset& c) {
        out.projection = c;
        out.interval = frequency_interval(f, fam, th, c);
        out.variables = 1 << c.size();
        out.constraints = project_family(fam, c).size();
    };

    switch (policy.kind) {
        case PolicyKind::Trivial: dense(family, theta, b); break;
        case PolicyKind::Safe: dense(family, theta, minimal_safe_set(b, family)); break;
        case PolicyKind::Restricted: {
            if (b.size() > policy.max_size) throw Error("query support exceeds the size budget");
            const RestrictedSafeSet r = restricted_safe_set(b, family, theta, policy.max_size);
            for (const auto& cut : r.removed)
                out.removed_edges.insert(out.removed_edges.end(), cut.cut.edges.begin(), cut.cut.edges.end());
            out.within_budget = r.within_budget;
            out.dependent_edges_removed = r.dependent_edges_removed;
            out.nonmaximal_edges_removed = r.nonmaximal_edges_removed;
            dense(r.family, r.theta, r.set);
            break;
        }
        case PolicyKind::Factorized: {
            const FactorizedResult r = factorized_interval(f, family, theta);
            out.interval = r.interval;
            out.projection = r.safe_set;
            out.variables = r.variables;
            out.constraints = r.constraints;
            out.cliques = r.tree.cliques;
            break;
        }
    }
    return out;
}

}  // namespace itembound
