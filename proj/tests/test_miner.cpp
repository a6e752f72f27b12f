#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "itembound/miner.hpp"
#include "support.hpp"

using namespace itembound;
using namespace testing;

namespace {

// Every itemset passing the criterion, by scanning all subsets of the items.
std::set<Itemset, CanonicalLess> brute_force_mine(const TransactionDB& db, const Rational& sigma, bool scaling, int max_size) {
    const int k = db.universe.size();
    std::vector<Rational> m(static_cast<std::size_t>(k));
    Rational least;
    bool first = true;
    for (Item i = 0; i < k; ++i) {
        m[static_cast<std::size_t>(i)] = count_frequency(Itemset{i}, db);
        if (m[static_cast<std::size_t>(i)].sign() > 0 && (first || m[static_cast<std::size_t>(i)] < least)) {
            least = m[static_cast<std::size_t>(i)];
            first = false;
        }
    }
    std::set<Itemset, CanonicalLess> out;
    for (const auto& u : all_subsets(Itemset::first(k))) {
        if (max_size >= 0 && u.size() > max_size) continue;
        bool present = true;
        Rational eta(1);
        u.for_each([&](Item i) {
            present = present && m[static_cast<std::size_t>(i)].sign() > 0;
            if (scaling && present) eta *= m[static_cast<std::size_t>(i)] / least;
        });
        if (!present) continue;
        if (count_frequency(u, db) >= sigma * eta) out.insert(u);
    }
    return out;
}

std::set<Itemset, CanonicalLess> as_set(const ItemsetFamily& f) { return {f.begin(), f.end()}; }

}  // namespace

TEST_CASE("parsing transactions") {
    const TransactionDB db = parse_transactions("a c\nc\nb c\na b\na\n");
    CHECK(db.universe.size() == 3);
    CHECK(db.universe.name(0) == "a");
    CHECK(db.rows.size() == 5);
    CHECK(db.rows[0] == Itemset{0, 2});
    CHECK(db.rows[4] == Itemset{0});

    const TransactionDB one = parse_transactions("a");
    CHECK(one.universe.size() == 1);
    CHECK(one.rows == std::vector<Itemset>{Itemset{0}});

    const TransactionDB blank = parse_transactions("a\n\nb\n");
    CHECK(blank.rows.size() == 3);
    CHECK(blank.rows[1].empty());

    const TransactionDB numeric = parse_transactions("10 9\n2 10 10\n");
    CHECK(numeric.universe.name(0) == "2");
    CHECK(numeric.universe.name(1) == "9");
    CHECK(numeric.universe.name(2) == "10");
    CHECK(numeric.rows[1] == Itemset{0, 2});

    const TransactionDB mixed = parse_transactions("b 10\na 9\n");
    CHECK(mixed.universe.name(0) == "10");
    CHECK(mixed.universe.name(3) == "b");

    CHECK_THROWS_AS(parse_transactions(""), EmptyData);
    CHECK_THROWS_AS(read_transactions("/nonexistent/itembound.dat"), std::ios_base::failure);
}

TEST_CASE("reading transactions from a file") {
    const std::string path = "itembound_miner_test.dat";
    {
        std::ofstream out(path);
        out << "a c\r\nc\r\n";
    }
    const TransactionDB db = read_transactions(path);
    std::remove(path.c_str());
    CHECK(db.rows.size() == 2);
    CHECK(db.universe.size() == 2);
}

TEST_CASE("scaling factors on the five-row fixture") {
    const ScalingFactors s = scaling_factors(five_rows());
    CHECK(s.s.at(0) == Rational(3, 2));
    CHECK(s.s.at(1) == Rational(1));
    CHECK(s.s.at(2) == Rational(3, 2));
    CHECK(s.dropped.empty());

    const ScalingFactors uniform = scaling_factors(parse_transactions("a b\n\n"));
    CHECK(uniform.s.at(0) == Rational(1));
    CHECK(uniform.s.at(1) == Rational(1));
    CHECK(scaling_factors(parse_transactions("x\n")).s.at(0) == Rational(1));

    TransactionDB absent = five_rows();
    absent.universe = letters(4);
    const ScalingFactors d = scaling_factors(absent);
    CHECK(d.dropped == std::vector<Item>{3});
    CHECK(d.s.count(3) == 0);
}

TEST_CASE("relative thresholds on the five-row fixture") {
    const TransactionDB db = five_rows();
    const auto& u = db.universe;
    const FrequentItemsets tight = modified_apriori(db, {Rational(41, 100)});
    // a: (3/5)/(3/2) = 2/5 and b: 2/5 both fall below 41/100.
    CHECK_FALSE(tight.family.contains(set_of(u, "a")));
    CHECK_FALSE(tight.family.contains(set_of(u, "b")));
    CHECK_FALSE(tight.family.contains(set_of(u, "c")));
    CHECK(tight.family.contains(Itemset{}));

    const FrequentItemsets loose = modified_apriori(db, {Rational(1, 5)});
    CHECK(loose.family.contains(set_of(u, "a")));
    CHECK_FALSE(loose.family.contains(set_of(u, "a,b")));
    CHECK(loose.theta.at(set_of(u, "a")) == Rational(3, 5));

    const FrequentItemsets tenth = modified_apriori(db, {Rational(1, 10)});
    CHECK(as_set(tenth.family) ==
          std::set<Itemset, CanonicalLess>{Itemset{}, set_of(u, "a"), set_of(u, "b"), set_of(u, "c"), set_of(u, "a,b"),
                                           set_of(u, "b,c")});

    CHECK(modified_apriori(db, {Rational(10)}).family.size() == 1);
    CHECK_THROWS_AS(modified_apriori(db, {Rational(0)}), Error);
    MinerConfig capped{Rational(1, 100)};
    capped.max_size = 1;
    CHECK(modified_apriori(db, capped).family.size() == 4);
}

TEST_CASE("property: mined families match brute force, are downward closed and frequencies are exact") {
    std::mt19937_64 rng(91);
    for (int t = 0; t < 100; ++t) {
        const int k = 1 + static_cast<int>(rng() % 7);
        const TransactionDB db = random_db(rng, k, 1 + static_cast<int>(rng() % 30));
        const Rational sigma(1 + static_cast<std::int64_t>(rng() % 40), 100);
        const int cap = rng() % 3 == 0 ? static_cast<int>(rng() % 4) : -1;
        for (const bool scaling : {true, false}) {
            MinerConfig cfg{sigma, cap, scaling};
            const FrequentItemsets fi = modified_apriori(db, cfg);
            CHECK(as_set(fi.family) == brute_force_mine(db, sigma, scaling, cap));
            CHECK(downward_close(std::vector<Itemset>(fi.family.begin(), fi.family.end())).size() == fi.family.size());
            CHECK(fi.family.contains(Itemset{}));
            for (const auto& s : fi.family) CHECK(fi.theta.at(s) == count_frequency(s, db));
            CHECK(fi.theta.size() == fi.family.size());
        }
    }
}

TEST_CASE("property: unit scaling factors reduce to plain support thresholds") {
    std::mt19937_64 rng(92);
    for (int t = 0; t < 60; ++t) {
        const int k = 2 + static_cast<int>(rng() % 5);
        // Every item in exactly the same number of rows, so every s(a) = 1.
        const int rows = 2 + static_cast<int>(rng() % 8);
        const int hits = 1 + static_cast<int>(rng() % rows);
        TransactionDB db;
        db.universe = letters(k);
        db.rows.assign(static_cast<std::size_t>(rows), Itemset{});
        for (Item i = 0; i < k; ++i) {
            std::vector<int> order(static_cast<std::size_t>(rows));
            for (int r = 0; r < rows; ++r) order[static_cast<std::size_t>(r)] = r;
            std::shuffle(order.begin(), order.end(), rng);
            for (int h = 0; h < hits; ++h) db.rows[static_cast<std::size_t>(order[static_cast<std::size_t>(h)])].insert(i);
        }
        for (const auto& [item, s] : scaling_factors(db).s) CHECK(s == Rational(1));
        const Rational sigma(1 + static_cast<std::int64_t>(rng() % 10), 10);
        const FrequentItemsets scaled = modified_apriori(db, {sigma, -1, true});
        const FrequentItemsets plain = modified_apriori(db, {sigma, -1, false});
        CHECK(as_set(scaled.family) == as_set(plain.family));
    }
}

TEST_CASE("property: a vanishing threshold keeps every occurring itemset up to the cap") {
    std::mt19937_64 rng(93);
    for (int t = 0; t < 30; ++t) {
        const int k = 1 + static_cast<int>(rng() % 5);
        const TransactionDB db = random_db(rng, k, 10);
        const int cap = static_cast<int>(rng() % 4);
        MinerConfig cfg{Rational(1, 1000000), cap};
        const FrequentItemsets fi = modified_apriori(db, cfg);
        std::set<Itemset, CanonicalLess> expected;
        for (const auto& s : all_subsets(Itemset::first(k)))
            if (s.size() <= cap && (s.empty() || count_frequency(s, db).sign() > 0)) expected.insert(s);
        CHECK(as_set(fi.family) == expected);
    }
}
