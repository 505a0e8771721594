#include <catch2/catch_amalgamated.hpp>

#include "quset/linalg.hpp"
#include "quset/rng.hpp"

using namespace quset;

namespace {

Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = Rational(static_cast<int>(rng.below(7)) - 3);
  return m;
}

}  // namespace

TEST_CASE("rational parse and print round-trip") {
  CHECK(to_string(parse_rational("3/4")) == "3/4");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("5")) == "5");
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("rref of identity is identity") {
  auto [red, pivots] = rref(Matrix::identity(2));
  CHECK(red == Matrix::identity(2));
  CHECK(pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref of a rank-one matrix") {
  Matrix m{vec({1, 1}), vec({2, 2})};
  auto [red, pivots] = rref(m);
  CHECK(red == Matrix{vec({1, 1}), vec({0, 0})});
  CHECK(pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref of the zero matrix") {
  Matrix z(2, 3);
  auto [red, pivots] = rref(z);
  CHECK(red == z);
  CHECK(pivots.empty());
}

TEST_CASE("kernel of identity is trivial") {
  CHECK(kernel_basis(Matrix::identity(3)).empty());
}

TEST_CASE("kernel of [[1,1]] spans (1,-1)") {
  auto basis = kernel_basis(Matrix{vec({1, 1})});
  REQUIRE(basis.size() == 1);
  CHECK(canonical_span(basis, 2) == canonical_span({vec({1, -1})}, 2));
}

TEST_CASE("kernel of zero matrix is everything") {
  Matrix z(3, 3);
  auto basis = kernel_basis(z);
  CHECK(basis.size() == 3);
  CHECK(canonical_span(basis, 3) == canonical_span({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, 3));
}

TEST_CASE("orthogonal complement examples") {
  CHECK(canonical_span(orthogonal_complement({vec({1, 0})}, 2), 2) ==
        canonical_span({vec({0, 1})}, 2));
  CHECK(canonical_span(orthogonal_complement({vec({1, 1})}, 2), 2) ==
        canonical_span({vec({1, -1})}, 2));
  CHECK(orthogonal_complement({vec({1, 0}), vec({0, 1})}, 2).empty());
}

TEST_CASE("span intersection examples") {
  auto e1 = vec({1, 0});
  CHECK(canonical_span(intersect_spans({e1}, {e1}, 2), 2) == canonical_span({e1}, 2));
  CHECK(intersect_spans({e1}, {vec({1, 1})}, 2).empty());
  auto full = std::vector<Vector>{vec({1, 0}), vec({0, 1})};
  CHECK(canonical_span(intersect_spans(full, {vec({1, 1})}, 2), 2) ==
        canonical_span({vec({1, 1})}, 2));
}

TEST_CASE("rank-nullity holds exactly on random matrices") {
  Rng rng(101);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t rows = rng.below(5);
    std::size_t cols = 1 + rng.below(5);
    Matrix m = random_matrix(rng, rows, cols);
    auto [red, pivots] = rref(m);
    auto ker = kernel_basis(m);
    CHECK(pivots.size() + ker.size() == cols);
    // every kernel basis vector really solves M k = 0
    for (const auto& k : ker) CHECK(is_zero_vector(m * k));
  }
}

TEST_CASE("double complement returns the same subspace") {
  Rng rng(202);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t dim = 1 + rng.below(5);
    Matrix m = random_matrix(rng, rng.below(4), dim);
    auto span = m.rows();
    auto once = orthogonal_complement(span, dim);
    auto twice = orthogonal_complement(once, dim);
    CHECK(canonical_span(twice, dim) == canonical_span(span, dim));
  }
}

TEST_CASE("intersection is commutative and idempotent up to subspace equality") {
  Rng rng(303);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t dim = 1 + rng.below(4);
    auto a = random_matrix(rng, rng.below(4), dim).rows();
    auto b = random_matrix(rng, rng.below(4), dim).rows();
    auto ab = canonical_span(intersect_spans(a, b, dim), dim);
    auto ba = canonical_span(intersect_spans(b, a, dim), dim);
    auto aa = canonical_span(intersect_spans(a, a, dim), dim);
    CHECK(ab == ba);
    CHECK(aa == canonical_span(a, dim));
    // intersection is contained in both operands
    for (const auto& v : ab) {
      CHECK(in_span(v, canonical_span(a, dim)));
      CHECK(in_span(v, canonical_span(b, dim)));
    }
  }
}

TEST_CASE("matrix inverse is exact") {
  Rng rng(404);
  int done = 0;
  while (done < 50) {
    std::size_t n = 1 + rng.below(4);
    Matrix m = random_matrix(rng, n, n);
    auto [red, pivots] = rref(m);
    if (pivots.size() != n) continue;
    CHECK(m * inverse(m) == Matrix::identity(n));
    ++done;
  }
  CHECK_THROWS(inverse(Matrix{vec({1, 1}), vec({2, 2})}));
}
