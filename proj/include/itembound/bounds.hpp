#pragma once

// Frequency intervals of boolean queries: the range of E_p[f] over all
// distributions p on a projection set C that satisfy the projected frequencies.

#include <string>
#include <string_view>
#include <vector>

#include "itembound/core.hpp"
#include "itembound/cut.hpp"
#include "itembound/lp.hpp"
#include "itembound/query.hpp"

namespace itembound {

struct FrequencyInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    /// this ⊆ outer
    bool within(const FrequencyInterval& outer) const { return outer.lo <= lo && hi <= outer.hi; }
    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

    friend bool operator==(const FrequencyInterval&, const FrequencyInterval&) = default;
};

/// Variables are the 2^|C| entries of a distribution on C; one row per member
/// of the family projected to C (the ∅ row is Σp = 1).
LinearProgram build_problem(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                            const Formula& f, Sense sense);

/// Throws InconsistentFrequencies when no distribution on C satisfies θ.
FrequencyInterval frequency_interval(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta,
                                     const Itemset& c);

/// Whether some distribution on C satisfies the projected frequencies.
bool consistent_on(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c);

enum class PolicyKind { Trivial, Safe, Restricted, Factorized };

struct Policy {
    PolicyKind kind = PolicyKind::Safe;
    int max_size = 8;  ///< Restricted only

    /// "trivial", "safe", "factorized", "restricted" or "restricted:M".
    static Policy parse(std::string_view text);
    std::string str() const;
};

struct BoundResult {
    FrequencyInterval interval;
    Policy policy;
    Itemset projection;
    int variables = 0;
    int constraints = 0;
    /// Restricted only.
    std::vector<Edge> removed_edges;
    bool within_budget = true;
    bool dependent_edges_removed = false;
    bool nonmaximal_edges_removed = false;
    /// Factorized only.
    std::vector<Itemset> cliques;
};

BoundResult bound_with_policy(const Formula& f, const ItemsetFamily& family, const FrequencyAssignment& theta,
                              const Policy& policy);

}  // namespace itembound
