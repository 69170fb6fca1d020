#pragma once

#include <numeric>
#include <vector>

namespace qmatch {

/// Union-find over vertex labels; used for blossom classes.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), classes_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Merges b's class into a's class (a's root stays the representative).
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[b] = a;
    --classes_;
  }

  bool same(int a, int b) const { return find(a) == find(b); }
  int class_count() const { return classes_; }

 private:
  mutable std::vector<int> parent_;
  int classes_;
};

}  // namespace qmatch
