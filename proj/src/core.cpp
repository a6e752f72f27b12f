#include "itembound/core.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace itembound {

// ---------------------------------------------------------------------------
// AttributeUniverse

AttributeUniverse::AttributeUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > static_cast<std::size_t>(Itemset::kMaxItems)) {
        throw Error("too many attributes: " + std::to_string(names_.size()) + " (limit " +
                    std::to_string(Itemset::kMaxItems) + ")");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw Error("empty attribute name");
        if (!index_.emplace(names_[i], static_cast<Item>(i)).second) {
            throw Error("duplicate attribute name '" + names_[i] + "'");
        }
    }
}

Item AttributeUniverse::index(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) throw Error("unknown attribute '" + std::string(name) + "'");
    return it->second;
}

bool AttributeUniverse::has(std::string_view name) const { return index_.contains(std::string(name)); }

Itemset AttributeUniverse::parse_set(std::string_view text) const {
    Itemset s;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) s.insert(index(token));
        token.clear();
    };
    for (const char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}') flush();
        else token.push_back(c);
    }
    flush();
    return s;
}

std::string AttributeUniverse::format(const Itemset& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](Item i) {
        if (!first) out += ",";
        out += name(i);
        first = false;
    });
    return out + "}";
}

std::string AttributeUniverse::format_plain(const Itemset& s) const {
    std::string out;
    s.for_each([&](Item i) {
        if (!out.empty()) out += " ";
        out += name(i);
    });
    return out;
}

// ---------------------------------------------------------------------------
// ItemsetFamily

ItemsetFamily::ItemsetFamily() : ItemsetFamily(std::vector<Itemset>{Itemset{}}) {}

ItemsetFamily::ItemsetFamily(std::vector<Itemset> sorted_unique) : sets_(std::move(sorted_unique)) {
    index_.reserve(sets_.size());
    for (const auto& s : sets_) index_.insert(s);
}

bool is_downward_closed(const std::vector<Itemset>& sets) {
    const std::unordered_set<Itemset, ItemsetHash> index(sets.begin(), sets.end());
    for (const auto& s : sets) {
        bool ok = true;
        s.for_each([&](Item i) {
            Itemset sub = s;
            sub.erase(i);
            if (!index.contains(sub)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

ItemsetFamily ItemsetFamily::from_sets(const std::vector<Itemset>& sets) {
    std::vector<Itemset> sorted = sets;
    sorted.push_back(Itemset{});
    std::sort(sorted.begin(), sorted.end(), canonical_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!is_downward_closed(sorted)) throw Error("itemset family is not downward closed");
    return ItemsetFamily(std::move(sorted));
}

Itemset ItemsetFamily::items() const {
    Itemset all;
    for (const auto& s : sets_) all |= s;
    return all;
}

std::vector<Itemset> ItemsetFamily::maximal_sets() const {
    std::vector<Itemset> out;
    for (const auto& s : sets_) {
        bool maximal = true;
        for (const auto& t : sets_) {
            if (t.size() > s.size() && s.subset_of(t)) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

ItemsetFamily downward_close(const std::vector<Itemset>& seeds) {
    std::unordered_set<Itemset, ItemsetHash> seen;
    std::vector<Itemset> stack(seeds.begin(), seeds.end());
    stack.push_back(Itemset{});
    while (!stack.empty()) {
        const Itemset s = stack.back();
        stack.pop_back();
        if (!seen.insert(s).second) continue;
        s.for_each([&](Item i) {
            Itemset sub = s;
            sub.erase(i);
            if (!seen.contains(sub)) stack.push_back(sub);
        });
    }
    return ItemsetFamily::from_sets(std::vector<Itemset>(seen.begin(), seen.end()));
}

ItemsetFamily project_family(const ItemsetFamily& family, const Itemset& c) {
    std::vector<Itemset> kept;
    for (const auto& s : family)
        if (s.subset_of(c)) kept.push_back(s);
    return ItemsetFamily::from_sets(kept);
}

// ---------------------------------------------------------------------------
// FrequencyAssignment

const Rational& FrequencyAssignment::at(const Itemset& s) const {
    const auto it = values_.find(s);
    if (it == values_.end()) throw DomainMismatch("itemset has no frequency");
    return it->second;
}

void FrequencyAssignment::validate(const ItemsetFamily& family) const {
    if (values_.size() != static_cast<std::size_t>(family.size())) {
        throw DomainMismatch("frequency domain differs from the family");
    }
    for (const auto& s : family) {
        const Rational& v = at(s);
        if (v < Rational(0) || v > Rational(1)) {
            throw InconsistentFrequencies("frequency outside [0,1]: " + v.str());
        }
        s.for_each([&](Item i) {
            Itemset sub = s;
            sub.erase(i);
            if (at(sub) < v) throw InconsistentFrequencies("frequencies are not antimonotone");
        });
    }
    if (at(Itemset{}) != Rational(1)) throw InconsistentFrequencies("frequency of the empty set must be 1");
}

FrequencyAssignment project_frequencies(const FrequencyAssignment& theta, const Itemset& c) {
    FrequencyAssignment out;
    for (const auto& [s, v] : theta.values())
        if (s.subset_of(c)) out.set(s, v);
    return out;
}

// ---------------------------------------------------------------------------
// Data and distributions

std::uint64_t local_mask(const Itemset& attrs, const Itemset& sub) {
    std::uint64_t mask = 0;
    int position = 0;
    attrs.for_each([&](Item i) {
        if (sub.contains(i)) mask |= std::uint64_t{1} << position;
        ++position;
    });
    return mask;
}

Itemset assignment_items(const Itemset& attrs, std::uint64_t index) {
    Itemset out;
    int position = 0;
    attrs.for_each([&](Item i) {
        if ((index >> position) & 1U) out.insert(i);
        ++position;
    });
    return out;
}

std::uint64_t assignment_index(const Itemset& attrs, const Itemset& z) { return local_mask(attrs, z & attrs); }

bool indicator(const Itemset& u, const Itemset& z) { return u.subset_of(z); }

Rational frequency(const Itemset& u, const TransactionDB& data) {
    if (data.rows.empty()) throw EmptyData("frequency of an empty database");
    std::int64_t hits = 0;
    for (const auto& row : data.rows)
        if (indicator(u, row)) ++hits;
    return Rational(hits, static_cast<std::int64_t>(data.rows.size()));
}

FrequencyAssignment frequencies(const ItemsetFamily& family, const TransactionDB& data) {
    FrequencyAssignment theta;
    for (const auto& s : family) theta.set(s, frequency(s, data));
    return theta;
}

TransactionDB project_data(const TransactionDB& data, const Itemset& c) {
    std::vector<std::string> names;
    c.for_each([&](Item i) { names.push_back(data.universe.name(i)); });
    TransactionDB out{AttributeUniverse(std::move(names)), {}};
    out.rows.reserve(data.rows.size());
    for (const auto& row : data.rows) {
        Itemset projected;
        int position = 0;
        c.for_each([&](Item i) {
            if (row.contains(i)) projected.insert(position);
            ++position;
        });
        out.rows.push_back(projected);
    }
    return out;
}

Distribution empirical(const TransactionDB& data) {
    if (data.rows.empty()) throw EmptyData("empirical distribution of an empty database");
    const int k = data.universe.size();
    if (k > kMaxDenseAttributes) throw Error("too many attributes for a dense distribution");
    Distribution p;
    p.attrs = data.universe.all();
    std::vector<std::int64_t> counts(std::size_t{1} << k, 0);
    for (const auto& row : data.rows) ++counts[assignment_index(p.attrs, row)];
    const auto n = static_cast<std::int64_t>(data.rows.size());
    p.probs.reserve(counts.size());
    for (const auto c : counts) p.probs.emplace_back(c, n);
    return p;
}

bool satisfies(const Distribution& p, const ItemsetFamily& family, const FrequencyAssignment& theta) {
    for (const auto& u : family)
        if (!u.subset_of(p.attrs)) throw DomainMismatch("family member outside the distribution's attributes");
    for (const auto& u : family)
        if (expectation(p, u) != theta.at(u)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Family text format

FrequentItemsets parse_family(std::string_view text) {
    std::vector<std::string> names;
    std::unordered_map<std::string, Item> index;
    std::vector<std::pair<Itemset, Rational>> entries;

    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw Error("line " + std::to_string(line_no) + ": expected 'items : frequency'");
        }
        Itemset s;
        std::istringstream items(line.substr(0, colon));
        std::string token;
        while (items >> token) {
            auto [it, inserted] = index.emplace(token, static_cast<Item>(names.size()));
            if (inserted) {
                if (names.size() >= static_cast<std::size_t>(Itemset::kMaxItems)) {
                    throw Error("line " + std::to_string(line_no) + ": too many attributes");
                }
                names.push_back(token);
            }
            s.insert(it->second);
        }
        Rational value;
        try {
            value = Rational::parse(line.substr(colon + 1));
        } catch (const std::exception& e) {
            throw Error("line " + std::to_string(line_no) + ": " + e.what());
        }
        entries.emplace_back(s, std::move(value));
    }

    FrequentItemsets fi;
    fi.universe = AttributeUniverse(std::move(names));
    std::vector<Itemset> sets;
    for (auto& [s, v] : entries) {
        if (fi.theta.contains(s)) {
            if (fi.theta.at(s) != v) throw Error("conflicting frequencies for " + fi.universe.format(s));
            continue;
        }
        sets.push_back(s);
        fi.theta.set(s, v);
    }
    if (!fi.theta.contains(Itemset{})) fi.theta.set(Itemset{}, Rational(1));
    fi.family = ItemsetFamily::from_sets(sets);
    fi.theta.validate(fi.family);
    return fi;
}

FrequentItemsets read_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open family file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_family(buffer.str());
}

std::string format_family(const FrequentItemsets& fi) {
    std::string out;
    for (const auto& s : fi.family) {
        out += fi.universe.format_plain(s);
        out += s.empty() ? ": " : " : ";
        out += fi.theta.at(s).str();
        out += "\n";
    }
    return out;
}

void write_family(const std::string& path, const FrequentItemsets& fi) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write family file '" + path + "'");
    out << format_family(fi);
}

}  // namespace itembound
