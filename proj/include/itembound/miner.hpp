#pragma once

// Transaction input and a levelwise miner whose threshold is relative to the
// item frequencies: U is kept iff θ_U / η_U ≥ σ with η_U = Π_{a∈U} s(a) and
// s(a) = m(a) / min_b m(b).

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "itembound/core.hpp"

namespace itembound {

/// One transaction per line, whitespace-separated tokens. The universe is the
/// sorted set of distinct tokens (numerically when every token is an integer).
TransactionDB parse_transactions(std::string_view text);
TransactionDB read_transactions(const std::string& path);

struct ScalingFactors {
    std::map<Item, Rational> s;
    /// Items never present, left out of mining.
    std::vector<Item> dropped;
};

ScalingFactors scaling_factors(const TransactionDB& data);

struct MinerConfig {
    Rational sigma;
    int max_size = -1;  ///< -1: no cap
    /// false: every s(a) = 1, i.e. a plain support threshold.
    bool use_scaling = true;
};

FrequentItemsets modified_apriori(const TransactionDB& data, const MinerConfig& config);

}  // namespace itembound
