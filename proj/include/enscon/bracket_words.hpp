#pragma once

#include <memory>
#include <string>

#include "enscon/control_family.hpp"

namespace enscon {

// Formal bracket word over generator indices: a finite binary tree whose
// leaves are generators. Length = number of leaves.
class FieldHandle {
 public:
  static FieldHandle generator(int index) {
    FieldHandle h;
    h.node_ = std::make_shared<Node>(Node{index, nullptr, nullptr});
    return h;
  }
  static FieldHandle bracketed(const FieldHandle& a, const FieldHandle& b) {
    FieldHandle h;
    h.node_ = std::make_shared<Node>(Node{-1, a.node_, b.node_});
    return h;
  }

  int length() const { return length(node_); }

  // materialize the word as an exact symbolic field of the family
  FieldAny resolve(const ControlFamily& family) const { return resolve(node_, family); }

  std::string str() const { return str(node_); }

 private:
  struct Node {
    int leaf;  // >= 0 for generators, -1 for bracket
    std::shared_ptr<const Node> left, right;
  };

  static int length(const std::shared_ptr<const Node>& n) {
    return n->leaf >= 0 ? 1 : length(n->left) + length(n->right);
  }
  static FieldAny resolve(const std::shared_ptr<const Node>& n, const ControlFamily& fam) {
    if (n->leaf >= 0) return fam.generator(n->leaf);
    return lie_bracket(resolve(n->left, fam), resolve(n->right, fam));
  }
  static std::string str(const std::shared_ptr<const Node>& n) {
    if (n->leaf >= 0) return "f" + std::to_string(n->leaf);
    return "[" + str(n->left) + "," + str(n->right) + "]";
  }

  std::shared_ptr<const Node> node_;
};

// All bracket words of length 1..depth, enumerated as binary trees without
// symmetry reduction. Redundant and anti-symmetric duplicates are kept; the
// rank test tolerates them.
inline std::vector<FieldHandle> enumerate_bracket_words(int r, int depth) {
  if (depth < 1) throw std::invalid_argument("enumerate_bracket_words: depth must be >= 1");
  std::vector<std::vector<FieldHandle>> by_len(depth + 1);
  for (int i = 0; i < r; ++i) by_len[1].push_back(FieldHandle::generator(i));
  for (int len = 2; len <= depth; ++len)
    for (int la = 1; la < len; ++la)
      for (const auto& a : by_len[la])
        for (const auto& b : by_len[len - la])
          by_len[len].push_back(FieldHandle::bracketed(a, b));
  std::vector<FieldHandle> all;
  for (int len = 1; len <= depth; ++len)
    all.insert(all.end(), by_len[len].begin(), by_len[len].end());
  return all;
}

}  // namespace enscon
