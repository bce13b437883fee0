#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace klsf {

// Disjoint sets over [0, n) with path compression and union by size.
class UnionFind {
public:
    UnionFind() = default;
    explicit UnionFind(std::size_t n) { reset(n); }

    void reset(std::size_t n) {
        parent_.resize(n);
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
        size_.assign(n, 1);
        components_ = n;
    }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    // Returns true when a and b were in different sets.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return true;
    }

    std::size_t components() const noexcept { return components_; }
    std::size_t element_count() const noexcept { return parent_.size(); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t components_ = 0;
};

// Union by size without compression so that merges can be undone in LIFO order.
// Used by the backtracking solver, which adds and removes whole labels.
class RollbackUnionFind {
public:
    explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        history_.push_back(b);
        return true;
    }

    std::size_t checkpoint() const noexcept { return history_.size(); }

    void rollback(std::size_t mark) {
        while (history_.size() > mark) {
            const std::uint32_t child = history_.back();
            history_.pop_back();
            const std::uint32_t root = parent_[child];
            size_[root] -= size_[child];
            parent_[child] = child;
            ++components_;
        }
    }

    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> history_;
    std::size_t components_;
};

}  // namespace klsf
