#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace quset {

/// Hereditarily finite pure set, kept canonical (children sorted and
/// deduplicated), so structural equality is set equality.
class HFSet {
 public:
  HFSet() = default;

  explicit HFSet(std::vector<HFSet> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  const std::vector<HFSet>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }

  bool contains(const HFSet& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& e : elems_) r = std::max(r, e.rank() + 1);
    return r;
  }

  /// n-th von Neumann ordinal: n = {0, 1, ..., n-1}.
  static HFSet ordinal(std::size_t n) {
    std::vector<HFSet> elems;
    for (std::size_t k = 0; k < n; ++k) elems.push_back(ordinal(k));
    return HFSet(std::move(elems));
  }

  friend bool operator==(const HFSet& a, const HFSet& b) { return a.elems_ == b.elems_; }
  friend bool operator<(const HFSet& a, const HFSet& b) {
    return std::lexicographical_compare(a.elems_.begin(), a.elems_.end(),
                                        b.elems_.begin(), b.elems_.end());
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ",";
      s += elems_[i].to_string();
    }
    return s + "}";
  }

 private:
  std::vector<HFSet> elems_;
};

}  // namespace quset
