#pragma once

#include <numeric>
#include <vector>

namespace steklov {

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(int n = 0) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int add() {
        parent_.push_back(static_cast<int>(parent_.size()));
        size_.push_back(1);
        return parent_.back();
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    int size() const { return static_cast<int>(parent_.size()); }

    /// Dense component labels 0..k-1, numbered by first occurrence.
    std::vector<int> labels(int* count = nullptr) {
        std::vector<int> root_label(parent_.size(), -1);
        std::vector<int> out(parent_.size());
        int next = 0;
        for (int i = 0; i < size(); ++i) {
            const int r = find(i);
            if (root_label[r] < 0)
                root_label[r] = next++;
            out[i] = root_label[r];
        }
        if (count)
            *count = next;
        return out;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

} // namespace steklov
