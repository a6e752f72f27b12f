#include "itembound/miner.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace itembound {

namespace {

bool as_integer(const std::string& token, long long& value) {
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc{} && end == token.data() + token.size();
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

}  // namespace

TransactionDB parse_transactions(std::string_view text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw EmptyData("no transactions");

    std::vector<std::vector<std::string>> tokens;
    std::set<std::string> distinct;
    for (const auto& line : lines) {
        std::istringstream in(line);
        std::vector<std::string> row;
        for (std::string t; in >> t;) {
            row.push_back(t);
            distinct.insert(t);
        }
        tokens.push_back(std::move(row));
    }

    std::vector<std::string> names(distinct.begin(), distinct.end());
    long long dummy = 0;
    if (std::all_of(names.begin(), names.end(), [&](const std::string& t) { return as_integer(t, dummy); })) {
        std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
            long long x = 0;
            long long y = 0;
            as_integer(a, x);
            as_integer(b, y);
            return x != y ? x < y : a < b;  // "1" vs "01"
        });
    }
    if (static_cast<int>(names.size()) > Itemset::kMaxItems)
        throw Error("more than " + std::to_string(Itemset::kMaxItems) + " distinct items");

    TransactionDB db;
    db.universe = AttributeUniverse(names);
    for (const auto& row : tokens) {
        Itemset z;
        for (const auto& t : row) z.insert(db.universe.index(t));
        db.rows.push_back(z);
    }
    return db;
}

TransactionDB read_transactions(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_transactions(buffer.str());
}

ScalingFactors scaling_factors(const TransactionDB& data) {
    if (data.rows.empty()) throw EmptyData("no transactions");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(data.universe.size()), 0);
    for (const auto& row : data.rows) row.for_each([&](Item i) { ++counts[static_cast<std::size_t>(i)]; });

    ScalingFactors out;
    std::int64_t rarest = 0;
    for (Item i = 0; i < data.universe.size(); ++i) {
        const std::int64_t m = counts[static_cast<std::size_t>(i)];
        if (m == 0) {
            out.dropped.push_back(i);
            continue;
        }
        if (rarest == 0 || m < rarest) rarest = m;
    }
    for (Item i = 0; i < data.universe.size(); ++i) {
        const std::int64_t m = counts[static_cast<std::size_t>(i)];
        if (m > 0) out.s.emplace(i, Rational(m, rarest));
    }
    return out;
}

FrequentItemsets modified_apriori(const TransactionDB& data, const MinerConfig& config) {
    if (config.sigma.sign() <= 0) throw Error("sigma must be positive");
    const ScalingFactors scale = scaling_factors(data);
    const auto n = static_cast<std::int64_t>(data.rows.size());

    FrequentItemsets out;
    out.universe = data.universe;
    std::vector<Itemset> kept{Itemset{}};
    out.theta.set(Itemset{}, Rational(1));

    auto count = [&](const Itemset& u) {
        std::int64_t c = 0;
        for (const auto& row : data.rows)
            if (u.subset_of(row)) ++c;
        return c;
    };
    auto passes = [&](const Itemset& u, const Rational& freq) {
        Rational eta(1);
        if (config.use_scaling) u.for_each([&](Item i) { eta *= scale.s.at(i); });
        return freq >= config.sigma * eta;
    };

    std::vector<std::vector<Item>> level;
    for (const auto& [item, s] : scale.s) level.push_back({item});
    for (int size = 1; !level.empty() && (config.max_size < 0 || size <= config.max_size); ++size) {
        std::vector<std::vector<Item>> frequent;
        for (const auto& members : level) {
            const Itemset u = Itemset::of(members);
            Rational freq(count(u), n);
            if (!passes(u, freq)) continue;
            kept.push_back(u);
            out.theta.set(u, std::move(freq));
            frequent.push_back(members);
        }

        // Join sets sharing all but the last member; prune by the subsets.
        std::unordered_set<Itemset, ItemsetHash> known;
        for (const auto& m : frequent) known.insert(Itemset::of(m));
        std::vector<std::vector<Item>> next;
        for (std::size_t i = 0; i < frequent.size(); ++i) {
            for (std::size_t j = i + 1; j < frequent.size(); ++j) {
                const auto& a = frequent[i];
                const auto& b = frequent[j];
                if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
                std::vector<Item> cand = a;
                cand.push_back(b.back());
                const Itemset cu = Itemset::of(cand);
                bool ok = true;
                for (const Item drop : cand) {
                    Itemset sub = cu;
                    sub.erase(drop);
                    if (!known.contains(sub)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) next.push_back(std::move(cand));
            }
        }
        level = std::move(next);
    }
    out.family = ItemsetFamily::from_sets(kept);
    return out;
}

}  // namespace itembound
