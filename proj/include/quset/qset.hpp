#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quset/commutator.hpp"
#include "quset/hf.hpp"
#include "quset/projection.hpp"

namespace quset {

class Universe;
class QSet;

struct UniverseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
struct QNode;
}

/// Element of the Q-valued universe: a finite map from strictly
/// lower-rank quantum sets to projections, interned as a DAG node.
/// Handles are cheap to copy; node identity is structural identity.
class QSet {
 public:
  QSet() = default;

  std::size_t id() const;
  std::size_t rank() const;
  const std::vector<std::pair<QSet, Projection>>& entries() const;
  /// Hereditary support L(u): every projection occurring in the DAG
  /// below this node, plus 0. Sorted by projection id.
  const std::vector<Projection>& support() const;
  Universe& universe() const;
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const QSet& a, const QSet& b) { return a.node_ == b.node_; }
  friend bool operator<(const QSet& a, const QSet& b);

 private:
  friend class Universe;
  explicit QSet(const detail::QNode* node) : node_(node) {}
  const detail::QNode* node_ = nullptr;
};

namespace detail {

struct QNode {
  Universe* uni;
  std::size_t id;
  std::size_t rank;
  std::vector<std::pair<QSet, Projection>> entries;  // sorted by key id
  std::vector<Projection> support;                   // sorted by projection id
};

}  // namespace detail

inline std::size_t QSet::id() const { return node_->id; }
inline std::size_t QSet::rank() const { return node_->rank; }
inline const std::vector<std::pair<QSet, Projection>>& QSet::entries() const {
  return node_->entries;
}
inline const std::vector<Projection>& QSet::support() const { return node_->support; }
inline Universe& QSet::universe() const { return *node_->uni; }
inline bool operator<(const QSet& a, const QSet& b) { return a.id() < b.id(); }

/// Ambient universe V^(Q) at one dimension: owns the logic and the
/// interning table of quantum sets. Only finite ranks are constructible.
class Universe {
 public:
  explicit Universe(std::size_t dim) : ctx_(dim) {}
  Universe(const Universe&) = delete;
  Universe& operator=(const Universe&) = delete;

  LogicContext& logic() { return ctx_; }
  std::size_t dim() const { return ctx_.dim(); }

  /// Interns the quantum set with the given entry map. Entries may carry
  /// the zero projection; duplicate keys are rejected.
  QSet make_qset(std::vector<std::pair<QSet, Projection>> entries) {
    for (auto& [key, value] : entries) {
      if (!key.valid() || &key.universe() != this)
        throw UniverseError("entry key from another universe");
      if (!value.valid() || &value.context() != &ctx_)
        throw DimensionError("entry value from another logic");
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i].first == entries[i - 1].first)
        throw UniverseError("duplicate key in quantum set entries");
    return intern(std::move(entries), kNoTag);
  }

  QSet empty_qset() { return make_qset({}); }

  /// Check embedding of a classical HF set: every entry value is 1.
  QSet check_embed(const HFSet& v) {
    auto it = check_memo_.find(v);
    if (it != check_memo_.end()) return it->second;
    std::vector<std::pair<QSet, Projection>> entries;
    for (const auto& e : v.elements()) entries.push_back({check_embed(e), ctx_.one()});
    QSet result = make_qset(std::move(entries));
    check_memo_.emplace(v, result);
    return result;
  }

  /// Restriction u|_p: meets every value hereditarily with p and appends
  /// the inert tag entry <u, 0> that keeps distinct sets distinct.
  QSet restrict(const QSet& u, const Projection& p) {
    if (&u.universe() != this) throw UniverseError("set from another universe");
    auto key = std::make_pair(u.id(), p.id());
    auto it = restrict_memo_.find(key);
    if (it != restrict_memo_.end()) return it->second;
    std::vector<std::pair<QSet, Projection>> entries;
    for (const auto& [x, value] : u.entries())
      entries.push_back({restrict(x, p), meet(value, p)});
    entries.push_back({u, ctx_.zero()});
    // The tag can coincide with a restricted entry only as the identical
    // pair <u, 0>; drop the duplicate instead of rejecting it.
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& a, const auto& b) {
                                return a.first == b.first && a.second == b.second;
                              }),
                  entries.end());
    QSet result = intern(std::move(entries), u.id());
    restrict_memo_.emplace(key, result);
    return result;
  }

  std::size_t interned_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return table_.size();
  }

 private:
  static constexpr std::size_t kNoTag = static_cast<std::size_t>(-1);

  // tag_key identifies the inert <u, 0> entry of a restriction; its value
  // (0, present anyway) is collected but its subtree is not, so the
  // support of u|_p stays the meet of the support of u. A structurally
  // identical node built by hand through make_qset keeps the plain
  // recursive support instead.
  QSet intern(std::vector<std::pair<QSet, Projection>> entries, std::size_t tag_key) {
    std::string key;
    for (const auto& [child, value] : entries) {
      key += std::to_string(child.id());
      key += ':';
      key += std::to_string(value.id());
      key += ';';
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return QSet(it->second.get());

    auto node = std::make_unique<detail::QNode>();
    node->uni = this;
    node->id = next_id_++;
    node->rank = 0;
    for (const auto& [child, value] : entries)
      node->rank = std::max(node->rank, child.rank() + 1);
    node->support.push_back(ctx_.zero());
    for (const auto& [child, value] : entries) {
      node->support.push_back(value);
      if (child.id() == tag_key) continue;
      for (const auto& q : child.support()) node->support.push_back(q);
    }
    std::sort(node->support.begin(), node->support.end());
    node->support.erase(std::unique(node->support.begin(), node->support.end()),
                        node->support.end());
    node->entries = std::move(entries);
    auto* raw = node.get();
    table_.emplace(std::move(key), std::move(node));
    return QSet(raw);
  }

  LogicContext ctx_;
  mutable std::mutex mutex_;
  std::size_t next_id_ = 0;
  std::unordered_map<std::string, std::unique_ptr<detail::QNode>> table_;
  std::map<std::pair<std::size_t, std::size_t>, QSet> restrict_memo_;
  std::map<HFSet, QSet> check_memo_;
};

inline const std::vector<Projection>& support(const QSet& u) { return u.support(); }

inline std::vector<Projection> support_many(const std::vector<QSet>& us) {
  std::vector<Projection> all;
  for (const auto& u : us)
    for (const auto& p : u.support()) all.push_back(p);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

/// Commutator of quantum sets: com of the joint support.
inline Projection qset_commutator(const std::vector<QSet>& us) {
  if (us.empty()) throw UniverseError("commutator of no quantum sets");
  LogicContext& ctx = us.front().universe().logic();
  return commutator_finite(ctx, support_many(us));
}

inline QSet restrict(const QSet& u, const Projection& p) {
  return u.universe().restrict(u, p);
}

/// Structural dump, one node per line in rank order; for reports.
inline std::string qset_to_text(const QSet& root) {
  std::vector<QSet> todo{root};
  std::map<std::size_t, QSet> seen;
  while (!todo.empty()) {
    QSet u = todo.back();
    todo.pop_back();
    if (seen.count(u.id())) continue;
    seen.emplace(u.id(), u);
    for (const auto& [child, value] : u.entries()) todo.push_back(child);
  }
  std::vector<QSet> nodes;
  for (auto& [id, u] : seen) nodes.push_back(u);
  std::sort(nodes.begin(), nodes.end(), [](const QSet& a, const QSet& b) {
    return a.rank() != b.rank() ? a.rank() < b.rank() : a.id() < b.id();
  });
  std::string out;
  for (const auto& u : nodes) {
    out += "q" + std::to_string(u.id()) + " = {";
    for (std::size_t i = 0; i < u.entries().size(); ++i) {
      const auto& [child, value] = u.entries()[i];
      if (i) out += ", ";
      out += "<q" + std::to_string(child.id()) + ", span";
      for (const auto& row : value.basis()) out += to_string(row);
      if (value.is_zero()) out += "()";
      out += ">";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace quset
