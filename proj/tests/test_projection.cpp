#include <catch2/catch_amalgamated.hpp>

#include "quset/commutator.hpp"
#include "quset/projection.hpp"
#include "test_util.hpp"

using namespace quset;
using testutil::random_projection;
using testutil::vec;

TEST_CASE("interning gives one node per subspace") {
  LogicContext ctx(2);
  Projection a = ctx.from_span({vec({1, 0}), vec({2, 0})});
  Projection b = ctx.from_span({vec({3, 0})});
  CHECK(a == b);
  CHECK(a.id() == b.id());
  CHECK(ctx.zero() == ctx.from_span({vec({0, 0})}));
  CHECK(ctx.one() == ctx.from_span({vec({1, 1}), vec({1, -1})}));
}

TEST_CASE("context rejects out-of-range dimensions") {
  CHECK_THROWS_AS(LogicContext(0), DimensionError);
  CHECK_THROWS_AS(LogicContext(9), DimensionError);
}

TEST_CASE("mixed-context operations are rejected") {
  LogicContext c1(2), c2(2);
  CHECK_THROWS_AS(meet(c1.one(), c2.one()), DimensionError);
}

TEST_CASE("bounds of the lattice") {
  LogicContext ctx(3);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    Projection p = random_projection(ctx, rng);
    CHECK(meet(p, p) == p);
    CHECK(join(p, ortho(p)) == ctx.one());   // C3
    CHECK(meet(p, ortho(p)) == ctx.zero());  // C3
    CHECK(leq(ctx.zero(), p));
    CHECK(leq(p, ctx.one()));
    CHECK(ortho(ortho(p)) == p);  // C2
  }
}

TEST_CASE("distinct lines in dim 2 meet at zero") {
  LogicContext ctx(2);
  Projection p = ctx.from_span({vec({1, 0})});
  Projection q = ctx.from_span({vec({1, 1})});
  CHECK(meet(p, q) == ctx.zero());
  CHECK(join(p, q) == ctx.one());
}

TEST_CASE("ortholattice and orthomodular laws on random pairs") {
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    LogicContext ctx(dim);
    Rng rng(500 + dim);
    for (int i = 0; i < 500; ++i) {
      Projection p = random_projection(ctx, rng);
      Projection q = random_projection(ctx, rng);
      // C1: antitone complement
      if (leq(p, q)) CHECK(leq(ortho(q), ortho(p)));
      // OM on the comparable pair (p /\ q, q)
      Projection a = meet(p, q);
      CHECK(join(a, meet(ortho(a), q)) == q);
    }
  }
}

TEST_CASE("matrix commutation agrees with the lattice definition") {
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    LogicContext ctx(dim);
    Rng rng(900 + dim);
    for (int i = 0; i < 200; ++i) {
      Projection p = random_projection(ctx, rng);
      Projection q = random_projection(ctx, rng);
      bool lattice = p == join(meet(p, q), meet(p, ortho(q)));
      CHECK(commutes(p, q) == lattice);
    }
  }
}

TEST_CASE("commutation examples") {
  LogicContext ctx(2);
  Projection p = ctx.from_span({vec({1, 0})});
  Projection q = ctx.from_span({vec({1, 1})});
  CHECK(commutes(p, ortho(p)));
  CHECK(commutes(p, ctx.one()));
  CHECK_FALSE(commutes(p, q));
}

TEST_CASE("sasaki arrow basics") {
  LogicContext ctx(2);
  Projection p = ctx.from_span({vec({1, 0})});
  Projection q = ctx.from_span({vec({1, 1})});
  CHECK(sasaki_arrow(p, p) == ctx.one());
  CHECK(sasaki_arrow(ctx.zero(), q) == ctx.one());
  CHECK(sasaki_arrow(p, q) == ctx.from_span({vec({0, 1})}));
}

TEST_CASE("sasaki star basics") {
  LogicContext ctx(2);
  Projection p = ctx.from_span({vec({1, 0})});
  Projection q = ctx.from_span({vec({1, 1})});
  CHECK(sasaki_star(p, ctx.one()) == p);
  CHECK(sasaki_star(p, q) == p);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    Projection a = random_projection(ctx, rng);
    Projection b = testutil::random_commuting_projection(ctx, rng, a);
    CHECK(sasaki_star(a, b) == meet(a, b));
  }
}

TEST_CASE("the three conditionals differ pairwise on a noncommuting pair") {
  LogicContext ctx(2);
  Projection p = ctx.from_span({vec({1, 0})});
  Projection q = ctx.from_span({vec({1, 1})});
  Projection s = sasaki_arrow(p, q);
  Projection c = contrapositive_conditional(p, q);
  Projection r = relevance_conditional(p, q);
  CHECK(s == ctx.from_span({vec({0, 1})}));
  CHECK(c == q);
  CHECK(r == ctx.zero());
}

TEST_CASE("hardegree conditions for all three conditionals") {
  using Cond = Projection (*)(const Projection&, const Projection&);
  const Cond conds[] = {&sasaki_arrow, &contrapositive_conditional, &relevance_conditional};
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    LogicContext ctx(dim);
    Rng rng(40 + dim);
    for (int i = 0; i < 300; ++i) {
      Projection p = random_projection(ctx, rng);
      Projection q = random_projection(ctx, rng);
      for (auto cond : conds) {
        Projection impl = cond(p, q);
        CHECK((impl == ctx.one()) == leq(p, q));           // E
        CHECK(leq(meet(p, impl), q));                      // MP
        CHECK(leq(meet(ortho(q), impl), ortho(p)));        // MT
      }
      // commuting pairs collapse every conditional to the classical one
      Projection qc = testutil::random_commuting_projection(ctx, rng, p);
      Projection classical = join(ortho(p), qc);
      for (auto cond : conds) CHECK(cond(p, qc) == classical);
    }
  }
}

TEST_CASE("expansions of arrow and star through the pair commutator") {
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    LogicContext ctx(dim);
    Rng rng(70 + dim);
    for (int i = 0; i < 200; ++i) {
      Projection p = random_projection(ctx, rng);
      Projection q = random_projection(ctx, rng);
      Projection com = commutator_pair(p, q);
      Projection np = ortho(p);
      Projection arrow_expanded = join(join(meet(p, q), meet(np, q)),
                                       join(meet(np, ortho(q)), meet(np, ortho(com))));
      CHECK(sasaki_arrow(p, q) == arrow_expanded);
      Projection star_expanded = join(meet(p, q), meet(p, ortho(com)));
      CHECK(sasaki_star(p, q) == star_expanded);
      // duality and the absorbed form
      CHECK(sasaki_star(p, q) == ortho(sasaki_arrow(p, ortho(q))));
      CHECK(sasaki_star(p, q) == meet(p, join(np, q)));
    }
  }
}

TEST_CASE("equivalence behaves as identity of projections") {
  LogicContext ctx(3);
  Rng rng(11);
  CHECK(equivalence(ctx.zero(), ctx.one()) == ctx.zero());
  for (int i = 0; i < 100; ++i) {
    Projection p = random_projection(ctx, rng);
    Projection q = random_projection(ctx, rng);
    CHECK(equivalence(p, p) == ctx.one());
    CHECK((equivalence(p, q) == ctx.one()) == (p == q));
  }
}

TEST_CASE("commuting families distribute over join") {
  // Proposition: if every P_a commutes with Q then Q /\ \/P_a = \/(Q /\ P_a).
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    LogicContext c(dim);
    Rng rng(200 + dim);
    for (int i = 0; i < 200; ++i) {
      Projection q = random_projection(c, rng);
      Projection a = testutil::random_commuting_projection(c, rng, q);
      Projection b = testutil::random_commuting_projection(c, rng, q);
      CHECK(meet(q, join(a, b)) == join(meet(q, a), meet(q, b)));
    }
  }
}

TEST_CASE("arrow and star restrict along a commuting projection") {
  // Proposition: for P1, P2 commuting with Q,
  // (P1 -> P2) /\ Q = [(P1/\Q) -> (P2/\Q)] /\ Q, and likewise for *.
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    LogicContext ctx(dim);
    Rng rng(300 + dim);
    for (int i = 0; i < 200; ++i) {
      Projection q = random_projection(ctx, rng);
      Projection p1 = testutil::random_commuting_projection(ctx, rng, q);
      Projection p2 = testutil::random_commuting_projection(ctx, rng, q);
      CHECK(meet(sasaki_arrow(p1, p2), q) ==
            meet(sasaki_arrow(meet(p1, q), meet(p2, q)), q));
      CHECK(meet(sasaki_star(p1, p2), q) ==
            meet(sasaki_star(meet(p1, q), meet(p2, q)), q));
    }
  }
}
