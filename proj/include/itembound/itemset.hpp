#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace itembound {

using Item = int;

/// Set of item indices stored as a fixed-width bitset.
class Itemset {
public:
    static constexpr int kMaxItems = 256;

    Itemset() = default;
    Itemset(std::initializer_list<Item> items) {
        for (const Item i : items) insert(i);
    }
    template <typename Range>
    static Itemset of(const Range& items) {
        Itemset s;
        for (const auto i : items) s.insert(static_cast<Item>(i));
        return s;
    }
    /// {0, 1, ..., count-1}
    static Itemset first(int count);

    void insert(Item i) { words_[word(i)] |= bit(i); }
    void erase(Item i) { words_[word(i)] &= ~bit(i); }
    bool contains(Item i) const { return i >= 0 && i < kMaxItems && (words_[word(i)] & bit(i)) != 0; }

    int size() const {
        int n = 0;
        for (const auto w : words_) n += std::popcount(w);
        return n;
    }
    bool empty() const {
        for (const auto w : words_)
            if (w != 0) return false;
        return true;
    }
    bool subset_of(const Itemset& other) const {
        for (std::size_t k = 0; k < kWords; ++k)
            if ((words_[k] & ~other.words_[k]) != 0) return false;
        return true;
    }
    bool intersects(const Itemset& other) const {
        for (std::size_t k = 0; k < kWords; ++k)
            if ((words_[k] & other.words_[k]) != 0) return true;
        return false;
    }

    /// Smallest member, or -1 when empty.
    Item front() const;
    /// Members in ascending order.
    std::vector<Item> members() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < kWords; ++k) {
            std::uint64_t w = words_[k];
            while (w != 0) {
                f(static_cast<Item>(k * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    Itemset& operator|=(const Itemset& o) {
        for (std::size_t k = 0; k < kWords; ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Itemset& operator&=(const Itemset& o) {
        for (std::size_t k = 0; k < kWords; ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Itemset& operator-=(const Itemset& o) {
        for (std::size_t k = 0; k < kWords; ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    friend Itemset operator|(Itemset a, const Itemset& b) { return a |= b; }
    friend Itemset operator&(Itemset a, const Itemset& b) { return a &= b; }
    friend Itemset operator-(Itemset a, const Itemset& b) { return a -= b; }

    friend bool operator==(const Itemset&, const Itemset&) = default;

    std::size_t hash() const;

private:
    static constexpr std::size_t kWords = kMaxItems / 64;
    static std::size_t word(Item i) { return static_cast<std::size_t>(i) >> 6; }
    static std::uint64_t bit(Item i) { return std::uint64_t{1} << (static_cast<unsigned>(i) & 63U); }

    std::array<std::uint64_t, kWords> words_{};
};

/// Canonical order: by cardinality, then lexicographically on ascending members.
bool canonical_less(const Itemset& a, const Itemset& b);

struct CanonicalLess {
    bool operator()(const Itemset& a, const Itemset& b) const { return canonical_less(a, b); }
};

struct ItemsetHash {
    std::size_t operator()(const Itemset& s) const { return s.hash(); }
};

}  // namespace itembound

template <>
struct std::hash<itembound::Itemset> {
    std::size_t operator()(const itembound::Itemset& s) const { return s.hash(); }
};
