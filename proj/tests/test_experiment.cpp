#include <doctest.h>

#include <json.hpp>
#include <random>
#include <set>

#include "itembound/experiment.hpp"
#include "support.hpp"

using namespace itembound;
using namespace testing;

namespace {

// b lies inside d, c mostly outside it, and b with c is too rare to be mined.
TransactionDB correlated() {
    std::string text = "b c d\n";
    for (int k = 0; k < 7; ++k) text += "b d\n";
    text += "c d\n";
    for (int k = 0; k < 6; ++k) text += "c\n";
    text += "d\n\n\n\n\n";
    return parse_transactions(text);
}

void check_record_invariants(const ExperimentReport& rep) {
    for (const auto& rec : rep.records) {
        CHECK(rec.i2.within(rec.i1));
        CHECK(rec.ratio >= Rational(0));
        CHECK(rec.ratio <= Rational(1));
        CHECK(rec.support.subset_of(rec.restricted));
        if (rec.query_class == QueryClass::Trivial) {
            CHECK(rec.restricted == rec.support);
            CHECK(rec.ratio == Rational(1));
        } else {
            CHECK(rec.restricted != rec.support);
        }
        if (rec.i1.width().sign() == 0)
            CHECK(rec.ratio == Rational(1));
        else
            CHECK(rec.ratio == rec.i2.width() / rec.i1.width());
    }
}

}  // namespace

TEST_CASE("ratio bins") {
    CHECK(ratio_bin(Rational(0)) == 0);
    CHECK(ratio_bin(Rational(199, 1000)) == 0);
    CHECK(ratio_bin(Rational(1, 5)) == 1);
    CHECK(ratio_bin(Rational(2, 5)) == 2);
    CHECK(ratio_bin(Rational(3, 5)) == 3);
    CHECK(ratio_bin(Rational(4, 5)) == 4);
    CHECK(ratio_bin(Rational(999, 1000)) == 4);
    CHECK(ratio_bin(Rational(1)) == 5);
}

TEST_CASE("query generator draws in range and roughly uniformly") {
    QueryRng rng(7);
    std::array<int, 5> counts{};
    for (int t = 0; t < 5000; ++t) {
        const auto v = rng.below(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (const int c : counts) CHECK((c > 850 && c < 1150));
    QueryRng a(3), b(3);
    for (int t = 0; t < 100; ++t) CHECK(a.below(1000) == b.below(1000));
}

TEST_CASE("sampled queries have distinct items of the configured sizes") {
    const AttributeUniverse u = letters(6);
    const std::vector<Item> pool{0, 1, 2, 3, 4, 5};
    for (const bool general : {false, true}) {
        ExperimentConfig cfg;
        cfg.general = general;
        QueryRng rng(11);
        std::set<int> sizes;
        for (int t = 0; t < 300; ++t) {
            const Formula f = sample_query(rng, pool, u, cfg);
            const int n = support(f).size();
            CHECK(n >= cfg.min_query);
            CHECK(n <= cfg.max_query);
            sizes.insert(n);
            if (!general) CHECK(f == conjunction(support(f), u));
        }
        CHECK(sizes == std::set<int>{2, 3, 4});
    }
    ExperimentConfig cfg;
    QueryRng rng(1);
    CHECK_THROWS_AS(sample_query(rng, {0}, u, cfg), Error);
    const std::vector<Item> small{1, 4};
    CHECK(support(sample_query(rng, small, u, cfg)) == Itemset{1, 4});
}

TEST_CASE("the correlated fixture has complex queries that tighten") {
    ExperimentConfig cfg;
    cfg.sigma = Rational(7, 100);
    cfg.queries = 60;
    const ExperimentReport rep = run_experiment(correlated(), cfg);
    CHECK(rep.family_size == 6);
    check_record_invariants(rep);
    int tightened = 0;
    for (const auto& rec : rep.records) {
        if (rec.query_class != QueryClass::Complex) continue;
        CHECK(rec.support == set_of(rep.universe, "b,c"));
        CHECK(rec.i1 == FrequencyInterval{Rational(0), Rational(2, 5)});
        CHECK(rec.i2 == FrequencyInterval{Rational(0), Rational(1, 10)});
        CHECK(rec.ratio == Rational(1, 4));
        ++tightened;
    }
    CHECK(tightened > 0);
    int total = 0;
    for (const int c : rep.trivial_bins) total += c;
    for (const int c : rep.complex_bins) total += c;
    CHECK(total == cfg.queries);
    CHECK(rep.complex_bins[1] == tightened);
}

TEST_CASE("property: reports are invariant and deterministic on random data") {
    std::mt19937_64 rng(101);
    int populated = 0;
    for (int t = 0; t < 12; ++t) {
        const int k = 3 + static_cast<int>(rng() % 5);
        const TransactionDB db = random_db(rng, k, 20 + static_cast<int>(rng() % 30));
        ExperimentConfig cfg;
        cfg.sigma = Rational(1 + static_cast<std::int64_t>(rng() % 20), 100);
        cfg.queries = 15;
        cfg.seed = rng();
        cfg.general = t % 2 == 1;
        cfg.max_size = 3 + static_cast<int>(rng() % 4);
        cfg.threads = 1;
        const ExperimentReport one = run_experiment(db, cfg);
        check_record_invariants(one);
        // No queries at all when fewer than two items are frequent.
        const FrequentItemsets mined = modified_apriori(db, {cfg.sigma});
        int singles = 0;
        for (Item i = 0; i < k; ++i) singles += mined.family.contains(Itemset{i}) ? 1 : 0;
        const bool enough = singles >= 2;
        if (enough) ++populated;
        CHECK(one.records.size() == (enough ? static_cast<std::size_t>(cfg.queries) : 0U));
        for (std::size_t i = 0; i < one.records.size(); ++i) CHECK(one.records[i].id == static_cast<int>(i));
        cfg.threads = 3;
        const ExperimentReport three = run_experiment(db, cfg);
        CHECK(one.to_json() == three.to_json());
        CHECK(one.to_text() == three.to_text());
        CHECK(run_experiment(db, cfg).to_json() == three.to_json());
    }
    CHECK(populated >= 6);
}

TEST_CASE("json report layout") {
    ExperimentConfig cfg;
    cfg.sigma = Rational(7, 100);
    cfg.queries = 10;
    const auto j = nlohmann::json::parse(run_experiment(correlated(), cfg).to_json());
    CHECK(j.at("schema") == kReportSchema);
    CHECK(j.at("config").at("sigma") == "7/100");
    CHECK(j.at("attributes") == 3);
    CHECK(j.at("records").size() == 10);
    CHECK(j.at("bins").at("trivial").size() == 6);
}
