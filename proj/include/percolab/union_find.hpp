#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace percolab {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns the surviving root, or the common root if already joined.
    std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return a;
    }

    bool connected(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
    std::uint64_t size_of_root(std::uint32_t root) const { return size_[root]; }
    std::uint64_t component_size(std::uint32_t x) { return size_[find(x)]; }
    std::size_t element_count() const { return parent_.size(); }

    // Appends a singleton; used by growth processes.
    std::uint32_t add() {
        parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
        size_.push_back(1);
        return parent_.back();
    }

    void reserve(std::size_t n) {
        parent_.reserve(n);
        size_.reserve(n);
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint64_t> size_;
};

}  // namespace percolab
