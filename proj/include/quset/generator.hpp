#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "quset/qset.hpp"
#include "quset/rng.hpp"

namespace quset {

/// Random subspace with small integer coordinates; hits 0 and 1 often
/// enough to exercise the lattice bounds.
inline Projection random_projection(LogicContext& ctx, Rng& rng) {
  std::size_t rows = rng.below(ctx.dim() + 1);
  std::vector<Vector> span;
  for (std::size_t i = 0; i < rows; ++i) {
    Vector v(ctx.dim());
    for (auto& x : v) x = Rational(rng.int_in(-2, 2));
    span.push_back(std::move(v));
  }
  return ctx.from_span(span);
}

/// Random projection drawn from one fixed orthogonal (coordinate) basis;
/// any family of these is pairwise commuting, hence Boolean.
inline Projection random_boolean_projection(LogicContext& ctx, Rng& rng) {
  std::vector<Vector> span;
  for (std::size_t i = 0; i < ctx.dim(); ++i) {
    if (!rng.coin()) continue;
    Vector v(ctx.dim(), Rational(0));
    v[i] = 1;
    span.push_back(std::move(v));
  }
  return ctx.from_span(span);
}

/// Random quantum set of rank <= max_rank with at most max_branch
/// entries per node. Children recurse one rank down; duplicate children
/// are merged by keeping the first value drawn.
template <typename ProjGen>
QSet random_qset_with(Universe& uni, Rng& rng, std::size_t max_rank,
                      std::size_t max_branch, ProjGen&& gen) {
  if (max_rank == 0) return uni.empty_qset();
  std::size_t branch = rng.below(max_branch + 1);
  std::vector<std::pair<QSet, Projection>> entries;
  std::set<std::size_t> used;
  for (std::size_t k = 0; k < branch; ++k) {
    QSet child = random_qset_with(uni, rng, max_rank - 1, max_branch, gen);
    if (!used.insert(child.id()).second) continue;
    entries.push_back({child, gen(uni.logic(), rng)});
  }
  return uni.make_qset(std::move(entries));
}

inline QSet random_qset(Universe& uni, Rng& rng, std::size_t max_rank,
                        std::size_t max_branch) {
  return random_qset_with(uni, rng, max_rank, max_branch,
                          [](LogicContext& ctx, Rng& r) { return random_projection(ctx, r); });
}

struct GeneratedUniverse {
  std::shared_ptr<Universe> universe;
  std::vector<QSet> sets;
};

/// Deterministic pseudo-random test universe: `count` quantum sets of
/// rank <= max_rank over a fresh ambient space. Same seed, same output.
inline GeneratedUniverse universe_generate(std::uint64_t seed, std::size_t dim,
                                           std::size_t max_rank, std::size_t max_branch,
                                           std::size_t count = 3) {
  if (max_rank > 3) throw CapError("universe_generate: max_rank above 3");
  if (max_branch > 3) throw CapError("universe_generate: max_branch above 3");
  GeneratedUniverse out;
  out.universe = std::make_shared<Universe>(dim);
  Rng rng(mix_seed(seed));
  for (std::size_t i = 0; i < count; ++i)
    out.sets.push_back(random_qset(*out.universe, rng, max_rank, max_branch));
  return out;
}

}  // namespace quset
