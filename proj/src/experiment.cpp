#include "itembound/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "itembound/cut.hpp"
#include "itembound/graph.hpp"

namespace itembound {

std::uint64_t QueryRng::below(std::uint64_t n) {
    if (n == 0) throw Error("empty range");
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = 0;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

int default_threads() {
    if (const char* env = std::getenv("ITEMBOUND_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

int ratio_bin(const Rational& r) {
    if (r == Rational(1)) return 5;
    for (int k = 1; k <= 4; ++k)
        if (r < Rational(k, 5)) return k - 1;
    return 4;
}

Formula sample_query(QueryRng& rng, const std::vector<Item>& pool, const AttributeUniverse& universe,
                     const ExperimentConfig& config) {
    const int hi = std::min<int>(config.max_query, static_cast<int>(pool.size()));
    if (hi < config.min_query || config.min_query < 1) throw Error("not enough items for the query size");
    const int size = config.min_query + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - config.min_query + 1)));

    std::vector<Item> items = pool;
    for (int k = 0; k < size; ++k) {
        const std::size_t j = static_cast<std::size_t>(k) + rng.below(items.size() - static_cast<std::size_t>(k));
        std::swap(items[static_cast<std::size_t>(k)], items[j]);
    }
    items.resize(static_cast<std::size_t>(size));

    if (!config.general) return conjunction(Itemset::of(items), universe);
    auto literal = [&](Item i) {
        Formula v = Formula::var(i, universe.name(i));
        return rng.coin() ? Formula::negate(std::move(v)) : v;
    };
    Formula f = literal(items[0]);
    for (std::size_t k = 1; k < items.size(); ++k)
        f = rng.coin() ? Formula::conj(std::move(f), literal(items[k])) : Formula::disj(std::move(f), literal(items[k]));
    return f;
}

namespace {

QueryRecord evaluate(int id, const Formula& f, const FrequentItemsets& mined, const ExperimentConfig& config) {
    QueryRecord rec;
    rec.id = id;
    rec.query = f.str();
    rec.support = support(f);
    rec.i1 = frequency_interval(f, mined.family, mined.theta, rec.support);
    const int span = vertex_span(mined.family, rec.support);
    rec.safe_size = minimal_safe_set(rec.support, mined.family, build_graph(mined.family, span)).size();
    const RestrictedSafeSet rs = restricted_safe_set(rec.support, mined.family, mined.theta, config.max_size, span);
    rec.restricted = rs.set;
    rec.within_budget = rs.within_budget;
    for (const auto& cut : rs.removed) rec.removed_edges += static_cast<int>(cut.cut.edges.size());
    rec.i2 = frequency_interval(f, rs.family, rs.theta, rs.set);
    const Rational w1 = rec.i1.width();
    rec.ratio = w1.is_zero() ? Rational(1) : rec.i2.width() / w1;
    rec.query_class = rs.set == rec.support ? QueryClass::Trivial : QueryClass::Complex;
    return rec;
}

std::string fmt_ratio(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r.to_double());
    return buf;
}

std::vector<std::string> names_of(const AttributeUniverse& u, const Itemset& s) {
    std::vector<std::string> out;
    s.for_each([&](Item i) { out.push_back(u.name(i)); });
    return out;
}

}  // namespace

ExperimentReport run_experiment(const FrequentItemsets& mined, const ExperimentConfig& config) {
    ExperimentReport report;
    report.universe = mined.universe;
    report.config = config;
    report.family_size = mined.family.size();

    std::vector<Item> pool;
    mined.universe.all().for_each([&](Item i) {
        if (mined.family.contains(Itemset{i})) pool.push_back(i);
    });
    std::vector<Formula> queries;
    if (static_cast<int>(pool.size()) >= config.min_query) {
        QueryRng rng(config.seed);
        for (int q = 0; q < config.queries; ++q) queries.push_back(sample_query(rng, pool, mined.universe, config));
    }

    report.records.resize(queries.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(queries.size());
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < queries.size();) {
            try {
                report.records[k] = evaluate(static_cast<int>(k), queries[k], mined, config);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min(config.threads > 0 ? config.threads : default_threads(),
                                             static_cast<int>(queries.size())));
    std::vector<std::thread> pool_threads;
    for (int t = 1; t < threads; ++t) pool_threads.emplace_back(worker);
    worker();
    for (auto& t : pool_threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (const auto& rec : report.records) {
        auto& bins = rec.query_class == QueryClass::Trivial ? report.trivial_bins : report.complex_bins;
        ++bins[static_cast<std::size_t>(ratio_bin(rec.ratio))];
        ++report.safe_size_histogram[rec.safe_size];
        ++report.restricted_size_histogram[rec.restricted.size()];
    }
    return report;
}

ExperimentReport run_experiment(const TransactionDB& data, const ExperimentConfig& config) {
    MinerConfig mc;
    mc.sigma = config.sigma;
    mc.max_size = config.mine_max_size;
    return run_experiment(modified_apriori(data, mc), config);
}

std::string ExperimentReport::to_json() const {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema"] = kReportSchema;
    j["config"] = {{"sigma", config.sigma.str()},        {"mine_max_size", config.mine_max_size},
                   {"queries", config.queries},           {"min_query", config.min_query},
                   {"max_query", config.max_query},       {"max_size", config.max_size},
                   {"seed", config.seed},                 {"general", config.general}};
    j["attributes"] = universe.size();
    j["family_size"] = family_size;
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        recs.push_back({{"id", r.id},
                        {"query", r.query},
                        {"support", names_of(universe, r.support)},
                        {"restricted", names_of(universe, r.restricted)},
                        {"safe_size", r.safe_size},
                        {"i1", ordered_json::array({r.i1.lo.str(), r.i1.hi.str()})},
                        {"i2", ordered_json::array({r.i2.lo.str(), r.i2.hi.str()})},
                        {"ratio", r.ratio.str()},
                        {"class", r.query_class == QueryClass::Trivial ? "trivial" : "complex"},
                        {"within_budget", r.within_budget},
                        {"removed_edges", r.removed_edges}});
    }
    j["records"] = std::move(recs);
    j["bins"] = {{"edges", ordered_json::array({"[0,0.2)", "[0.2,0.4)", "[0.4,0.6)", "[0.6,0.8)", "[0.8,1)", "1"})},
                 {"trivial", trivial_bins},
                 {"complex", complex_bins}};
    ordered_json sizes = ordered_json::object();
    for (const auto& [k, v] : safe_size_histogram) sizes[std::to_string(k)] = v;
    ordered_json rsizes = ordered_json::object();
    for (const auto& [k, v] : restricted_size_histogram) rsizes[std::to_string(k)] = v;
    j["safe_set_sizes"] = std::move(sizes);
    j["restricted_set_sizes"] = std::move(rsizes);
    return j.dump(2) + "\n";
}

std::string ExperimentReport::to_text() const {
    std::ostringstream out;
    out << "queries " << records.size() << ", attributes " << universe.size() << ", itemsets " << family_size
        << ", sigma " << config.sigma.str() << ", size budget " << config.max_size << ", seed " << config.seed << "\n\n";

    const char* edges[6] = {"[0,.2)", "[.2,.4)", "[.4,.6)", "[.6,.8)", "[.8,1)", "1"};
    char line[160];
    std::snprintf(line, sizeof line, "%-8s", "class");
    out << line;
    for (const char* e : edges) {
        std::snprintf(line, sizeof line, "%9s", e);
        out << line;
    }
    out << "    total\n";
    for (int cls = 0; cls < 2; ++cls) {
        const auto& bins = cls == 0 ? trivial_bins : complex_bins;
        int total = 0;
        for (const int b : bins) total += b;
        std::snprintf(line, sizeof line, "%-8s", cls == 0 ? "trivial" : "complex");
        out << line;
        for (const int b : bins) {
            std::snprintf(line, sizeof line, "%9d", b);
            out << line;
        }
        std::snprintf(line, sizeof line, "%9d\n", total);
        out << line;
    }

    out << "\nsafe set size   queries\n";
    for (const auto& [k, v] : safe_size_histogram) {
        std::snprintf(line, sizeof line, "%13d %9d\n", k, v);
        out << line;
    }
    out << "\nrestricted size queries\n";
    for (const auto& [k, v] : restricted_size_histogram) {
        std::snprintf(line, sizeof line, "%13d %9d\n", k, v);
        out << line;
    }

    out << "\n  id  class    r       i1                  i2                  query\n";
    for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%4d  %-7s  %s  %-18s  %-18s  ", r.id,
                      r.query_class == QueryClass::Trivial ? "trivial" : "complex", fmt_ratio(r.ratio).c_str(),
                      r.i1.str().c_str(), r.i2.str().c_str());
        out << line << r.query << "\n";
    }
    return out.str();
}

}  // namespace itembound
