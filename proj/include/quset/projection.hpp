#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "quset/linalg.hpp"

namespace quset {

class LogicContext;
class Projection;

namespace detail {

struct ProjNode {
  LogicContext* ctx;
  std::size_t id;
  std::size_t dim;
  std::vector<Vector> basis;  // canonical rref rows, no zero rows
  Matrix matrix;              // orthogonal projector onto the span
};

inline std::string span_key(const std::vector<Vector>& basis) {
  std::string key;
  for (const auto& row : basis) {
    for (const auto& x : row) {
      key += x.str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

}  // namespace detail

/// Element of the quantum logic Q: a closed subspace of the ambient
/// rational inner-product space, held in canonical rref-basis form and
/// interned so that equal subspaces are one node. Copying is cheap; all
/// lattice structure lives in free functions below.
class Projection {
 public:
  Projection() = default;

  std::size_t dim() const { return node_->dim; }
  std::size_t rank() const { return node_->basis.size(); }
  std::size_t id() const { return node_->id; }
  const std::vector<Vector>& basis() const { return node_->basis; }
  const Matrix& matrix() const { return node_->matrix; }
  LogicContext& context() const { return *node_->ctx; }

  bool valid() const { return node_ != nullptr; }
  bool is_zero() const { return rank() == 0; }
  bool is_one() const { return rank() == dim(); }

  friend bool operator==(const Projection& a, const Projection& b) {
    return a.node_ == b.node_;
  }
  friend bool operator<(const Projection& a, const Projection& b) {
    return a.node_->id < b.node_->id;
  }

 private:
  friend class LogicContext;
  explicit Projection(const detail::ProjNode* node) : node_(node) {}
  const detail::ProjNode* node_ = nullptr;
};

/// Ambient logic Q(H) for one dimension: owns the interning table of
/// canonical projections. Reads are concurrent; inserts are serialized.
class LogicContext {
 public:
  static constexpr std::size_t kMaxDim = 8;

  explicit LogicContext(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > kMaxDim)
      throw DimensionError("ambient dimension must be between 1 and 8");
  }
  LogicContext(const LogicContext&) = delete;
  LogicContext& operator=(const LogicContext&) = delete;

  std::size_t dim() const { return dim_; }

  /// Interns the subspace spanned by the given vectors.
  Projection from_span(const std::vector<Vector>& span) {
    for (const auto& v : span)
      if (v.size() != dim_) throw DimensionError("span vector length mismatch");
    return intern(canonical_span(span, dim_));
  }

  Projection zero() { return from_span({}); }

  Projection one() {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < dim_; ++i) {
      Vector v(dim_, Rational(0));
      v[i] = 1;
      rows.push_back(std::move(v));
    }
    return from_span(rows);
  }

  std::size_t interned_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return table_.size();
  }

 private:
  Projection intern(std::vector<Vector> canonical) {
    std::string key = detail::span_key(canonical);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return Projection(it->second.get());
    auto node = std::make_unique<detail::ProjNode>();
    node->ctx = this;
    node->id = table_.size();
    node->dim = dim_;
    node->basis = std::move(canonical);
    node->matrix = projector_matrix(node->basis);
    auto* raw = node.get();
    table_.emplace(std::move(key), std::move(node));
    return Projection(raw);
  }

  // P = B^T (B B^T)^{-1} B for basis rows B; exact, no normalization.
  Matrix projector_matrix(const std::vector<Vector>& basis) const {
    if (basis.empty()) return Matrix(dim_, dim_);
    Matrix b(basis, dim_);
    Matrix bt = b.transposed();
    return bt * inverse(b * bt) * b;
  }

  std::size_t dim_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::unique_ptr<detail::ProjNode>> table_;
};

namespace detail {
inline void check_same_context(const Projection& p, const Projection& q) {
  if (&p.context() != &q.context() || p.dim() != q.dim())
    throw DimensionError("projections from different logics");
}
}  // namespace detail

/// P /\ Q: intersection of ranges.
inline Projection meet(const Projection& p, const Projection& q) {
  detail::check_same_context(p, q);
  return p.context().from_span(intersect_spans(p.basis(), q.basis(), p.dim()));
}

/// P^perp: orthogonal complement of the range.
inline Projection ortho(const Projection& p) {
  return p.context().from_span(orthogonal_complement(p.basis(), p.dim()));
}

/// P \/ Q = (P^perp /\ Q^perp)^perp, so meet and complement stay the only
/// audited primitives.
inline Projection join(const Projection& p, const Projection& q) {
  return ortho(meet(ortho(p), ortho(q)));
}

/// P <= Q iff range(P) is contained in range(Q).
inline bool leq(const Projection& p, const Projection& q) {
  detail::check_same_context(p, q);
  for (const auto& v : p.basis())
    if (!in_span(v, q.basis())) return false;
  return true;
}

/// P and Q commute iff the projector matrices commute; agrees with the
/// lattice characterization P = (P/\Q) \/ (P/\Q^perp).
inline bool commutes(const Projection& p, const Projection& q) {
  detail::check_same_context(p, q);
  return commutator(p.matrix(), q.matrix()).is_zero();
}

/// Sasaki arrow P -> Q = P^perp \/ (P /\ Q).
inline Projection sasaki_arrow(const Projection& p, const Projection& q) {
  return join(ortho(p), meet(p, q));
}

/// Sasaki star P * Q = (P -> Q^perp)^perp, the dual making bounded
/// existential quantification the De Morgan mirror of the universal one.
inline Projection sasaki_star(const Projection& p, const Projection& q) {
  return ortho(sasaki_arrow(p, ortho(q)));
}

/// Contrapositive Sasaki conditional (P \/ Q)^perp \/ Q.
inline Projection contrapositive_conditional(const Projection& p, const Projection& q) {
  return join(ortho(join(p, q)), q);
}

/// Relevance conditional (P/\Q) \/ (P^perp/\Q) \/ (P^perp/\Q^perp).
inline Projection relevance_conditional(const Projection& p, const Projection& q) {
  return join(join(meet(p, q), meet(ortho(p), q)), meet(ortho(p), ortho(q)));
}

/// P <=> Q = (P -> Q) /\ (Q -> P), with the Sasaki arrow.
inline Projection equivalence(const Projection& p, const Projection& q) {
  return meet(sasaki_arrow(p, q), sasaki_arrow(q, p));
}

}  // namespace quset
