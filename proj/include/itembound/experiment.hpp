#pragma once

// Query-ratio experiment: random queries bounded once over their own support
// (i1) and once over a restricted safe set (i2); r = |i2| / |i1|.

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "itembound/bounds.hpp"
#include "itembound/miner.hpp"

namespace itembound {

/// mt19937_64 with its own bounded draw, since the standard distributions
/// differ between library implementations.
class QueryRng {
public:
    explicit QueryRng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n);
    bool coin() { return below(2) == 1; }

private:
    std::mt19937_64 engine_;
};

struct ExperimentConfig {
    Rational sigma{1, 10};
    int mine_max_size = -1;
    int queries = 100;
    int min_query = 2;
    int max_query = 4;
    int max_size = 8;
    std::uint64_t seed = 1;
    /// Random general formulas instead of conjunctions.
    bool general = false;
    /// 0: ITEMBOUND_THREADS or the hardware concurrency.
    int threads = 0;
};

enum class QueryClass { Trivial, Complex };

struct QueryRecord {
    int id = 0;
    std::string query;
    Itemset support;
    Itemset restricted;  ///< C^r
    int safe_size = 0;   ///< |minimal safe set|, unrestricted
    FrequencyInterval i1;
    FrequencyInterval i2;
    Rational ratio;
    QueryClass query_class = QueryClass::Trivial;
    bool within_budget = true;
    int removed_edges = 0;
};

struct ExperimentReport {
    AttributeUniverse universe;
    ExperimentConfig config;
    int family_size = 0;
    std::vector<QueryRecord> records;  ///< by id
    /// Bins [0,.2) [.2,.4) [.4,.6) [.6,.8) [.8,1) {1}, per class.
    std::array<int, 6> trivial_bins{};
    std::array<int, 6> complex_bins{};
    std::map<int, int> safe_size_histogram;
    std::map<int, int> restricted_size_histogram;

    std::string to_json() const;
    std::string to_text() const;
};

inline constexpr const char* kReportSchema = "itembound.experiment/1";

int ratio_bin(const Rational& r);

/// Random query over 2–4 (configurable) distinct items of `pool`.
Formula sample_query(QueryRng& rng, const std::vector<Item>& pool, const AttributeUniverse& universe,
                     const ExperimentConfig& config);

ExperimentReport run_experiment(const FrequentItemsets& mined, const ExperimentConfig& config);
ExperimentReport run_experiment(const TransactionDB& data, const ExperimentConfig& config);

/// ITEMBOUND_THREADS if set and positive, else the hardware concurrency.
int default_threads();

}  // namespace itembound
