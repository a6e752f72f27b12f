#pragma once

// Attribute universes, itemset families, frequencies, transaction data and
// dense distributions, together with the projection operators between them.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "itembound/itemset.hpp"
#include "itembound/rational.hpp"

namespace itembound {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyData : public Error {
public:
    using Error::Error;
};

/// Frequencies admit no distribution, or violate basic frequency laws.
class InconsistentFrequencies : public Error {
public:
    using Error::Error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

class AttributeUniverse {
public:
    AttributeUniverse() = default;
    explicit AttributeUniverse(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Item i) const { return names_.at(static_cast<std::size_t>(i)); }
    Item index(std::string_view name) const;
    bool has(std::string_view name) const;
    Itemset all() const { return Itemset::first(size()); }

    /// Resolves a comma or whitespace separated list of names.
    Itemset parse_set(std::string_view text) const;
    /// "{a,b,c}"
    std::string format(const Itemset& s) const;
    /// "a b c" (empty string for the empty set)
    std::string format_plain(const Itemset& s) const;

    friend bool operator==(const AttributeUniverse& a, const AttributeUniverse& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Item> index_;
};

/// Downward-closed collection of itemsets, always containing the empty set.
class ItemsetFamily {
public:
    /// The family {∅}.
    ItemsetFamily();
    /// Throws Error if `sets` is not downward closed.
    static ItemsetFamily from_sets(const std::vector<Itemset>& sets);

    bool contains(const Itemset& s) const { return index_.contains(s); }
    /// Members in canonical order.
    const std::vector<Itemset>& sets() const { return sets_; }
    auto begin() const { return sets_.begin(); }
    auto end() const { return sets_.end(); }
    int size() const { return static_cast<int>(sets_.size()); }
    /// Union of all members.
    Itemset items() const;
    /// Members not contained in any other member.
    std::vector<Itemset> maximal_sets() const;

    friend bool operator==(const ItemsetFamily& a, const ItemsetFamily& b) { return a.sets_ == b.sets_; }

private:
    explicit ItemsetFamily(std::vector<Itemset> sorted_unique);

    std::vector<Itemset> sets_;
    std::unordered_set<Itemset, ItemsetHash> index_;
};

/// True iff `sets` contains every one-element removal of each member.
bool is_downward_closed(const std::vector<Itemset>& sets);

class FrequencyAssignment {
public:
    void set(const Itemset& s, Rational value) { values_[s] = std::move(value); }
    const Rational& at(const Itemset& s) const;
    bool contains(const Itemset& s) const { return values_.contains(s); }
    int size() const { return static_cast<int>(values_.size()); }
    const std::unordered_map<Itemset, Rational, ItemsetHash>& values() const { return values_; }

    /// Checks domain == F, θ_∅ = 1, values in [0,1] and antimonotonicity.
    void validate(const ItemsetFamily& family) const;

    friend bool operator==(const FrequencyAssignment& a, const FrequencyAssignment& b) {
        return a.values_ == b.values_;
    }

private:
    std::unordered_map<Itemset, Rational, ItemsetHash> values_;
};

struct TransactionDB {
    AttributeUniverse universe;
    /// Each row is the set of attributes equal to 1.
    std::vector<Itemset> rows;
};

/// Probabilities over {0,1}^attrs. Entry z has bit j set iff the j-th smallest
/// attribute of `attrs` is 1.
template <typename T>
struct BasicDistribution {
    Itemset attrs;
    std::vector<T> probs;

    int dimension() const { return attrs.size(); }
    std::size_t states() const { return probs.size(); }
};

using Distribution = BasicDistribution<Rational>;
using RealDistribution = BasicDistribution<double>;

constexpr int kMaxDenseAttributes = 24;

/// Bit mask, in the local assignment index of `attrs`, of the members of `sub`.
/// Requires sub ⊆ attrs.
std::uint64_t local_mask(const Itemset& attrs, const Itemset& sub);

/// Global itemset corresponding to a local assignment index over `attrs`.
Itemset assignment_items(const Itemset& attrs, std::uint64_t index);

/// Local assignment index over `attrs` of the row `z` (a global binary vector).
std::uint64_t assignment_index(const Itemset& attrs, const Itemset& z);

bool indicator(const Itemset& u, const Itemset& z);

Rational frequency(const Itemset& u, const TransactionDB& data);

/// Frequencies of every member of `family` in `data`.
FrequencyAssignment frequencies(const ItemsetFamily& family, const TransactionDB& data);

ItemsetFamily downward_close(const std::vector<Itemset>& seeds);

ItemsetFamily project_family(const ItemsetFamily& family, const Itemset& c);
FrequencyAssignment project_frequencies(const FrequencyAssignment& theta, const Itemset& c);

/// Deletes the columns outside `c`; the result lives in the sub-universe of
/// `c`, with attributes re-indexed in ascending order.
TransactionDB project_data(const TransactionDB& data, const Itemset& c);

/// Empirical distribution of `data` over all of its attributes.
Distribution empirical(const TransactionDB& data);

template <typename T>
BasicDistribution<T> marginalize(const BasicDistribution<T>& p, const Itemset& c) {
    if (!c.subset_of(p.attrs)) throw DomainMismatch("marginalization set is not contained in the distribution");
    const std::vector<std::uint64_t> positions = [&] {
        std::vector<std::uint64_t> out;
        c.for_each([&](Item i) { out.push_back(local_mask(p.attrs, Itemset{i})); });
        return out;
    }();
    BasicDistribution<T> q;
    q.attrs = c;
    q.probs.assign(std::size_t{1} << positions.size(), T{});
    for (std::uint64_t z = 0; z < p.probs.size(); ++z) {
        std::uint64_t y = 0;
        for (std::size_t j = 0; j < positions.size(); ++j)
            if ((z & positions[j]) != 0) y |= std::uint64_t{1} << j;
        q.probs[y] += p.probs[z];
    }
    return q;
}

/// Σ_{z ⊇ U} p(z) for an itemset U ⊆ p.attrs.
template <typename T>
T expectation(const BasicDistribution<T>& p, const Itemset& u) {
    if (!u.subset_of(p.attrs)) throw DomainMismatch("itemset is not contained in the distribution");
    const std::uint64_t mask = local_mask(p.attrs, u);
    T sum{};
    for (std::uint64_t z = 0; z < p.probs.size(); ++z)
        if ((z & mask) == mask) sum += p.probs[z];
    return sum;
}

bool satisfies(const Distribution& p, const ItemsetFamily& family, const FrequencyAssignment& theta);

/// Family + frequency text format: one "item item ... : value" line per
/// itemset; a blank item field is the empty set, '#' starts a comment.
struct FrequentItemsets {
    AttributeUniverse universe;
    ItemsetFamily family;
    FrequencyAssignment theta;
};

FrequentItemsets parse_family(std::string_view text);
FrequentItemsets read_family(const std::string& path);
std::string format_family(const FrequentItemsets& fi);
void write_family(const std::string& path, const FrequentItemsets& fi);

}  // namespace itembound
