#include "itembound/itemset.hpp"

#include <stdexcept>

namespace itembound {

Itemset Itemset::first(int count) {
    if (count < 0 || count > kMaxItems) throw std::out_of_range("itemset width out of range");
    Itemset s;
    for (Item i = 0; i < count; ++i) s.insert(i);
    return s;
}

Item Itemset::front() const {
    for (std::size_t k = 0; k < kWords; ++k)
        if (words_[k] != 0) return static_cast<Item>(k * 64 + std::countr_zero(words_[k]));
    return -1;
}

std::vector<Item> Itemset::members() const {
    std::vector<Item> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](Item i) { out.push_back(i); });
    return out;
}

std::size_t Itemset::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

bool canonical_less(const Itemset& a, const Itemset& b) {
    const int sa = a.size();
    const int sb = b.size();
    if (sa != sb) return sa < sb;
    // Equal cardinality: the set owning the smallest element of the symmetric
    // difference comes first.
    const Itemset diff = (a - b) | (b - a);
    if (diff.empty()) return false;
    return a.contains(diff.front());
}

}  // namespace itembound
