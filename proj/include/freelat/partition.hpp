#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace freelat {

// Partition of {0..n-1}. Block ids are normalized so that blocks are numbered
// in order of their smallest element; equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  // Elements with equal labels share a block.
  template <class Label>
  static Partition from_labels(const std::vector<Label>& labels) {
    std::vector<int> ids(labels.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (ids[i] >= 0) continue;
      for (std::size_t j = i; j < labels.size(); ++j) {
        if (ids[j] < 0 && labels[j] == labels[i]) ids[j] = next;
      }
      ++next;
    }
    return Partition(std::move(ids), next);
  }

  static Partition identity(int n);
  static Partition all(int n);

  int size() const { return static_cast<int>(block_.size()); }
  int block_count() const { return blocks_; }
  int block_of(int i) const { return block_[i]; }
  bool same(int i, int j) const { return block_[i] == block_[j]; }
  std::vector<std::vector<int>> blocks() const;

  bool is_identity() const { return blocks_ == size(); }
  // Every block of *this lies inside a block of `other`.
  bool refines(const Partition& other) const;

  friend Partition meet(const Partition& a, const Partition& b);
  friend bool operator==(const Partition&, const Partition&) = default;

  // Bracket notation, e.g. `[x|y|z|m|st]`. Element names are concatenated
  // inside a block when all names are single characters, comma separated
  // otherwise.
  std::string to_bracket(const std::vector<std::string>& names) const;
  static Partition parse_bracket(std::string_view text, const std::vector<std::string>& names);

  // Restriction to the listed elements, renumbered 0..k-1 in the given order.
  Partition restrict_to(const std::vector<int>& elements) const;

 private:
  Partition(std::vector<int> block, int blocks) : block_(std::move(block)), blocks_(blocks) {}

  std::vector<int> block_;
  int blocks_ = 0;
};

}  // namespace freelat
