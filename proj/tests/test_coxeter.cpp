#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "greenfn/coxeter.hpp"

using namespace greenfn;

namespace {

const std::vector<std::vector<int>> kD4 = {{1, 2, 3, 2}, {2, 1, 3, 2}, {3, 3, 1, 3}, {2, 2, 3, 1}};
const std::vector<std::vector<int>> kB2 = {{1, 4}, {4, 1}};
const std::vector<std::vector<int>> kA1cubed = {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}};
const std::vector<std::vector<int>> kA2 = {{1, 3}, {3, 1}};

// Both orthogonality relations, computed directly from the table.
void check_orthogonality(const FiniteGroup& G) {
  const auto& X = G.char_table();
  const long n = static_cast<long>(G.order());
  REQUIRE(X.size() == G.num_classes());
  for (size_t i = 0; i < X.size(); ++i)
    for (size_t j = 0; j < X.size(); ++j) {
      long s = 0;
      for (size_t c = 0; c < G.num_classes(); ++c) s += G.class_size(static_cast<int>(c)) * X[i][c] * X[j][c];
      CHECK(s == (i == j ? n : 0));
    }
  for (size_t a = 0; a < G.num_classes(); ++a)
    for (size_t b = 0; b < G.num_classes(); ++b) {
      long s = 0;
      for (auto& row : X) s += row[a] * row[b];
      CHECK(s == (a == b ? G.centralizer_order(static_cast<int>(a)) : 0));
    }
  long sq = 0;
  for (auto& row : X) sq += row[0] * row[0];
  CHECK(sq == n);
}

// Product of (q^d - 1)/(q - 1) over the degrees; the length generating function.
RationalPoly poincare_from_degrees(const std::vector<unsigned>& degrees) {
  RationalPoly p(1);
  for (unsigned d : degrees) {
    RationalPoly f;
    for (unsigned k = 0; k < d; ++k) f += RationalPoly::q(k);
    p *= f;
  }
  return p;
}

long det(std::vector<std::vector<long>> m) {
  // Bareiss elimination, exact over the integers.
  const size_t n = m.size();
  long sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[r], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

TEST_CASE("group orders and class counts") {
  struct Case {
    std::vector<std::vector<int>> m;
    size_t order, classes, reflections;
  };
  for (auto& c : std::vector<Case>{{kA1cubed, 8, 8, 3}, {kB2, 8, 5, 4}, {kA2, 6, 3, 3}, {kD4, 192, 13, 12}}) {
    auto W = CoxeterGroup::build(c.m);
    CHECK(W->group().order() == c.order);
    CHECK(W->group().num_classes() == c.classes);
    CHECK(static_cast<size_t>(W->num_positive_roots()) == c.reflections);
    size_t total = 0;
    for (size_t k = 0; k < W->group().num_classes(); ++k) total += W->group().class_size(static_cast<int>(k));
    CHECK(total == c.order);
  }
}

TEST_CASE("character tables are orthogonal") {
  SUBCASE("A1^3") { check_orthogonality(CoxeterGroup::build(kA1cubed)->group()); }
  SUBCASE("B2") { check_orthogonality(CoxeterGroup::build(kB2)->group()); }
  SUBCASE("A2") { check_orthogonality(CoxeterGroup::build(kA2)->group()); }
  SUBCASE("D4") { check_orthogonality(CoxeterGroup::build(kD4, {1, 2, 3, 4})->group()); }
}

TEST_CASE("D4 character degrees") {
  auto W = CoxeterGroup::build(kD4, {1, 2, 3, 4});
  std::vector<int> degrees;
  for (auto& row : W->group().char_table()) degrees.push_back(row[0]);
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<int>{1, 1, 2, 3, 3, 3, 3, 3, 3, 4, 4, 6, 8});
}

TEST_CASE("length generating function matches the degrees") {
  auto W = CoxeterGroup::build(kD4, {1, 2, 3, 4});
  CHECK(poincare_quotient(*W, {}) == poincare_from_degrees({2, 4, 4, 6}));
  auto B = CoxeterGroup::build(kB2);
  CHECK(poincare_quotient(*B, {}) == poincare_from_degrees({2, 4}));
  // parabolic A1^3 in D4: quotient by (1+q)^3
  auto quo = RationalPoly::divmod(poincare_from_degrees({2, 4, 4, 6}), poincare_from_degrees({2, 2, 2}));
  CHECK(quo.second.is_zero());
  CHECK(poincare_quotient(*W, {1, 2, 4}) == quo.first);
}

TEST_CASE("characteristic polynomials agree with integer determinants") {
  auto W = CoxeterGroup::build(kD4, {1, 2, 3, 4});
  const auto& G = W->group();
  for (int e = 0; e < static_cast<int>(G.order()); ++e) {
    auto M = W->matrix(e);
    for (long q0 : {3L, 5L}) {
      std::vector<std::vector<long>> A(4, std::vector<long>(4));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) A[i][j] = (i == j ? q0 : 0) - M[i][j];
      CHECK(W->charpoly(e)(Rational(q0)) == det(A));
    }
  }
  CHECK(W->charpoly(G.identity()) == RationalPoly::cyclotomic(1) * RationalPoly::cyclotomic(1) *
                                         RationalPoly::cyclotomic(1) * RationalPoly::cyclotomic(1));
  // the longest element of D4 is -1
  CHECK(W->charpoly(W->longest({1, 2, 3, 4})) == RationalPoly::cyclotomic(2) * RationalPoly::cyclotomic(2) *
                                                   RationalPoly::cyclotomic(2) * RationalPoly::cyclotomic(2));
}

TEST_CASE("relative Weyl groups in D4") {
  auto W = CoxeterGroup::build(kD4, {1, 2, 3, 4});
  auto R = relative_weyl(W, {1, 2});
  CHECK(R->quotient().order() == 8);
  CHECK(R->quotient().num_classes() == 5);  // type B2
  auto generators = R->generator_nodes();
  std::sort(generators.begin(), generators.end());
  CHECK(generators == std::vector<int>{3, 4});
  auto T = relative_weyl(W, {});
  CHECK(T->quotient().order() == 192);
  auto M = relative_weyl(W, {1, 2, 4});
  CHECK(M->quotient().order() == 2);
}

TEST_CASE("fusion from a Levi's relative group") {
  auto W = CoxeterGroup::build(kD4, {1, 2, 3, 4});
  auto sub = relative_weyl(W, {1, 4}, std::vector<int>{1, 2, 4});
  auto over = relative_weyl(W, {1, 4});
  REQUIRE(sub->quotient().order() == 2);
  auto f = fuse(*sub, *over);
  REQUIRE(f.map.size() == 2);
  CHECK(f.map[0] == over->quotient().class_of(over->quotient().identity()));
  // the nontrivial element is s2, a reflection of the relative B2
  int s2 = over->reduce(W->generator(2));
  CHECK(f.map[1] == over->quotient().class_of(s2));
  CHECK(over->quotient().order_of(s2) == 2);
}

TEST_CASE("torus orders satisfy the Steinberg and trivial character identities") {
  auto W = CoxeterGroup::build(kD4, {1, 2, 3, 4});
  const auto& G = W->group();
  RationalPoly pprime(1);
  for (unsigned d : {2u, 4u, 4u, 6u}) pprime *= RationalPoly::q(d) - RationalPoly(1);
  RatFunc st(0L), triv(0L);
  for (int e = 0; e < static_cast<int>(G.order()); ++e) {
    RatFunc inv(RationalPoly(1), W->charpoly(e));
    st += inv;
    triv += W->length(e) % 2 ? -inv : inv;
  }
  CHECK(st == RatFunc(RationalPoly::q(12) * Rational(192), pprime));
  CHECK(triv == RatFunc(RationalPoly(192), pprime));
  auto L = relative_weyl(W, {1, 2});
  CHECK(L->z0_order(L->quotient().identity()) == RationalPoly::cyclotomic(1) * RationalPoly::cyclotomic(1));
}

TEST_CASE("invalid Coxeter data") {
  CHECK_THROWS(CoxeterGroup::build({{1, 5}, {5, 1}}));
  CHECK_THROWS(CoxeterGroup::build({{1, 3}, {2, 1}}));
}
