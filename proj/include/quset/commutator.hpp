#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "quset/projection.hpp"
#include "quset/rng.hpp"

namespace quset {

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Marsden commutator of a pair:
/// (P/\Q) \/ (P/\Q^perp) \/ (P^perp/\Q) \/ (P^perp/\Q^perp).
inline Projection commutator_pair(const Projection& p, const Projection& q) {
  Projection np = ortho(p), nq = ortho(q);
  return join(join(meet(p, q), meet(p, nq)), join(meet(np, q), meet(np, nq)));
}

namespace detail {

inline std::vector<Projection> dedup_by_id(std::vector<Projection> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

}  // namespace detail

/// Bruns-Kalmbach commutator of a finite set: the join over all sign
/// patterns theta : F -> {id, perp} of the meets of P^theta(P). 0 and 1
/// are stripped first (they only contribute absorbed terms); the
/// remaining set is capped at 12 elements (2^12 patterns).
inline Projection commutator_finite(LogicContext& ctx, const std::vector<Projection>& f) {
  std::vector<Projection> elems;
  for (const auto& p : detail::dedup_by_id(f)) {
    if (&p.context() != &ctx) throw DimensionError("projection from another logic");
    if (!p.is_zero() && !p.is_one()) elems.push_back(p);
  }
  if (elems.size() > 12) throw CapError("commutator_finite: more than 12 nontrivial projections");

  std::vector<Projection> orthos;
  orthos.reserve(elems.size());
  for (const auto& p : elems) orthos.push_back(ortho(p));

  Projection one = ctx.one();
  Projection acc = ctx.zero();
  const std::uint64_t patterns = 1ull << elems.size();
  for (std::uint64_t bits = 0; bits < patterns; ++bits) {
    Projection term = one;
    for (std::size_t i = 0; i < elems.size() && !term.is_zero(); ++i)
      term = meet(term, (bits >> i) & 1 ? orthos[i] : elems[i]);
    if (!term.is_zero()) acc = join(acc, term);
    if (acc.is_one()) break;
  }
  return acc;
}

/// Joint-kernel commutator: the projection onto
/// {psi | [P1,P2] P3 psi = 0 for all P1,P2,P3 in A}.
inline Projection commutator_kernel(LogicContext& ctx, const std::vector<Projection>& a) {
  auto elems = detail::dedup_by_id(a);
  Matrix stacked(0, ctx.dim());
  for (const auto& p1 : elems)
    for (const auto& p2 : elems) {
      if (p1 == p2) continue;
      Matrix c = commutator(p1.matrix(), p2.matrix());
      for (const auto& p3 : elems) {
        Matrix m = c * p3.matrix();
        for (const auto& row : m.rows()) stacked.append_row(row);
      }
    }
  return ctx.from_span(kernel_basis(stacked));
}

namespace detail {

/// Tracks the linear span of n x n matrices via their vectorizations,
/// kept as a canonical rref basis.
class MatrixSpan {
 public:
  explicit MatrixSpan(std::size_t n) : n_(n) {}

  bool contains(const Matrix& m) const { return in_span(vectorize(m), basis_); }

  /// Adds m to the span; returns true if the dimension grew.
  bool add(const Matrix& m) {
    if (contains(m)) return false;
    basis_.push_back(vectorize(m));
    basis_ = canonical_span(basis_, n_ * n_);
    return true;
  }

  std::size_t dimension() const { return basis_.size(); }

  std::vector<Matrix> matrices() const {
    std::vector<Matrix> out;
    out.reserve(basis_.size());
    for (const auto& row : basis_) out.push_back(unvectorize(row));
    return out;
  }

 private:
  Vector vectorize(const Matrix& m) const {
    Vector v;
    v.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) v.push_back(m.at(i, j));
    return v;
  }

  Matrix unvectorize(const Vector& v) const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m.at(i, j) = v[i * n_ + j];
    return m;
  }

  std::size_t n_;
  std::vector<Vector> basis_;
};

}  // namespace detail

/// Basis of the unital algebra generated by the projectors of A, closed
/// under products and transposition. In finite dimension this is the
/// double commutant A'', realized by iterating span closure under
/// multiplication until the dimension stabilizes.
inline std::vector<Matrix> generated_algebra(LogicContext& ctx,
                                             const std::vector<Projection>& a) {
  const std::size_t n = ctx.dim();
  detail::MatrixSpan span(n);
  span.add(Matrix::identity(n));
  for (const auto& p : detail::dedup_by_id(a)) {
    if (&p.context() != &ctx) throw DimensionError("projection from another logic");
    span.add(p.matrix());
  }
  bool grew = true;
  while (grew) {
    grew = false;
    auto mats = span.matrices();
    for (const auto& m : mats)
      if (span.add(m.transposed())) grew = true;
    for (const auto& x : mats)
      for (const auto& y : mats)
        if (span.add(x * y)) grew = true;
  }
  return span.matrices();
}

/// Algebra commutator: the projection onto
/// {psi | [A,B] psi = 0 for all A,B in A''}, computed over a basis of A''.
inline Projection commutator_algebra(LogicContext& ctx, const std::vector<Projection>& a) {
  auto basis = generated_algebra(ctx, a);
  Matrix stacked(0, ctx.dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Matrix c = commutator(basis[i], basis[j]);
      for (const auto& row : c.rows()) stacked.append_row(row);
    }
  return ctx.from_span(kernel_basis(stacked));
}

/// True iff the projector of x lies in the linear span of the algebra
/// generated by a; the computable reading of membership in Q(A) = L(A)''.
inline bool in_generated_logic(const Projection& x, const std::vector<Projection>& a) {
  LogicContext& ctx = x.context();
  detail::MatrixSpan span(ctx.dim());
  for (const auto& m : generated_algebra(ctx, a)) span.add(m);
  return span.contains(x.matrix());
}

inline bool commutes_with_all(const Projection& p, const std::vector<Projection>& a) {
  for (const auto& q : a)
    if (!commutes(p, q)) return false;
  return true;
}

/// Samples elements of the commutant A^! without enumerating it: draws
/// commutators of random subsets of A and closes under meet/join/perp,
/// keeping only candidates that verifiably commute with every element of
/// A. Always contains 0, 1 and the commutator of A itself.
inline std::vector<Projection> commutant_sample(LogicContext& ctx,
                                                const std::vector<Projection>& a,
                                                std::uint64_t seed,
                                                std::size_t max_size = 12) {
  auto elems = detail::dedup_by_id(a);
  Rng rng(mix_seed(seed));
  std::vector<Projection> pool{ctx.zero(), ctx.one()};
  auto offer = [&](const Projection& cand) {
    if (pool.size() >= max_size) return;
    if (std::find(pool.begin(), pool.end(), cand) != pool.end()) return;
    if (commutes_with_all(cand, elems)) pool.push_back(cand);
  };
  offer(commutator_finite(ctx, elems));
  for (int round = 0; round < 24 && pool.size() < max_size; ++round) {
    if (!elems.empty() && rng.coin()) {
      std::vector<Projection> subset;
      for (const auto& p : elems)
        if (rng.coin()) subset.push_back(p);
      offer(commutator_finite(ctx, subset));
    } else {
      const Projection& x = rng.pick(pool);
      switch (rng.below(3)) {
        case 0: offer(ortho(x)); break;
        case 1: offer(meet(x, rng.pick(pool))); break;
        default: offer(join(x, rng.pick(pool))); break;
      }
    }
  }
  return pool;
}

}  // namespace quset
