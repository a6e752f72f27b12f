#pragma once

// Maximum-entropy distributions under itemset frequency constraints, by
// iterative proportional fitting, and the product-form extension of a
// distribution on a safe set to the whole attribute set.

#include <vector>

#include "itembound/core.hpp"

namespace itembound {

struct MaxentOptions {
    double tolerance = 1e-9;
    int max_cycles = 10'000;
    /// Exact programs first: reject inconsistent θ and empty every cell that
    /// no satisfying distribution uses. Without it only the cheap
    /// inclusion–exclusion zeros are applied and boundary fits converge slowly.
    bool check_feasibility = true;
};

struct MaxentResult {
    RealDistribution distribution;
    int iterations = 0;  ///< full cycles run
    double residual = 0.0;
    bool converged = false;
    /// Max residual after each cycle.
    std::vector<double> residual_history;
};

/// Cyclic IPF from the uniform distribution on C. Cells that every
/// distribution satisfying θ must leave empty are zeroed before iterating.
MaxentResult ipf_maxent(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                        const MaxentOptions& options = {});

/// max_U |E_p[S_U] − θ_U| over members of F inside p.attrs.
double max_residual(const RealDistribution& p, const ItemsetFamily& family, const FrequencyAssignment& theta);

/// Extends `q` on a safe set C to `universe` ⊇ C: each block W of the items
/// outside C that is connected avoiding C is attached through its frontier V
/// as p^ME(W ∪ V) / p^ME(V), with p^ME fitted on W ∪ V.
RealDistribution extend_via_maxent(const RealDistribution& q, const ItemsetFamily& family,
                                   const FrequencyAssignment& theta, const Itemset& universe,
                                   const MaxentOptions& options = {});

/// ‖Π_C p^ME − q^ME‖_∞ where p^ME is fitted on `universe` and q^ME on C.
double verify_marginal_theorem(const ItemsetFamily& family, const FrequencyAssignment& theta, const Itemset& c,
                               const Itemset& universe, const MaxentOptions& options = {});

}  // namespace itembound
