#include "freelat/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace freelat {

Partition Partition::identity(int n) {
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  return Partition(std::move(ids), n);
}

Partition Partition::all(int n) { return Partition(std::vector<int>(n, 0), n > 0 ? 1 : 0); }

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(blocks_);
  for (int i = 0; i < size(); ++i) out[block_[i]].push_back(i);
  return out;
}

bool Partition::refines(const Partition& other) const {
  if (other.size() != size()) return false;
  std::vector<int> image(blocks_, -1);
  for (int i = 0; i < size(); ++i) {
    int& slot = image[block_[i]];
    if (slot < 0) slot = other.block_[i];
    else if (slot != other.block_[i]) return false;
  }
  return true;
}

Partition meet(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("meet: partitions of different sets");
  std::vector<std::pair<int, int>> labels(a.size());
  for (int i = 0; i < a.size(); ++i) labels[i] = {a.block_[i], b.block_[i]};
  return Partition::from_labels(labels);
}

std::string Partition::to_bracket(const std::vector<std::string>& names) const {
  const bool compact = std::all_of(names.begin(), names.end(),
                                   [](const std::string& n) { return n.size() == 1; });
  std::string out = "[";
  bool first_block = true;
  for (const auto& block : blocks()) {
    if (!first_block) out += '|';
    first_block = false;
    bool first = true;
    for (int e : block) {
      if (!compact && !first) out += ',';
      first = false;
      out += names.at(e);
    }
  }
  return out + "]";
}

Partition Partition::parse_bracket(std::string_view text, const std::vector<std::string>& names) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("partition must be written as [..|..]");
  }
  const bool compact = std::all_of(names.begin(), names.end(),
                                   [](const std::string& n) { return n.size() == 1; });
  text = text.substr(1, text.size() - 2);
  std::vector<int> label(names.size(), -1);
  auto lookup = [&](std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("unknown element '" + std::string(name) + "'");
    return static_cast<int>(it - names.begin());
  };
  // Split at top-level '|' only; names of unnamed elements carry parentheses.
  std::vector<std::string_view> blocks;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '|' && depth == 0) {
      blocks.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  blocks.push_back(text.substr(start));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::vector<std::string_view> members;
    if (compact) {
      for (std::size_t i = 0; i < blocks[b].size(); ++i) members.push_back(blocks[b].substr(i, 1));
    } else {
      std::size_t s = 0;
      int d = 0;
      const auto blk = blocks[b];
      for (std::size_t i = 0; i <= blk.size(); ++i) {
        if (i < blk.size() && blk[i] == '(') ++d;
        if (i < blk.size() && blk[i] == ')') --d;
        if (i == blk.size() || (blk[i] == ',' && d == 0)) {
          members.push_back(blk.substr(s, i - s));
          s = i + 1;
        }
      }
    }
    for (auto m : members) {
      int e = lookup(m);
      if (label[e] >= 0) throw std::invalid_argument("element '" + std::string(m) + "' listed twice");
      label[e] = static_cast<int>(b);
    }
  }
  if (std::find(label.begin(), label.end(), -1) != label.end()) {
    throw std::invalid_argument("partition does not cover every element");
  }
  return from_labels(label);
}

Partition Partition::restrict_to(const std::vector<int>& elements) const {
  std::vector<int> labels;
  labels.reserve(elements.size());
  for (int e : elements) labels.push_back(block_.at(e));
  return from_labels(labels);
}

}  // namespace freelat
