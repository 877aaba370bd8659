#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greenfn/symring.hpp"
#include "support.hpp"

using namespace greenfn;
using testing::random_poly;
using testing::random_sign_expr;
using testing::random_sym_expr;

namespace {

RationalPoly P(unsigned n) { return RationalPoly::cyclotomic(n); }
RationalPoly q(unsigned k = 1) { return RationalPoly::q(k); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(P(1) == q() - RationalPoly(1));
  CHECK(P(2) == q() + RationalPoly(1));
  CHECK(P(3) == q(2) + q() + RationalPoly(1));
  CHECK(P(4) == q(2) + RationalPoly(1));
  CHECK(P(6) == q(2) - q() + RationalPoly(1));
  // q^n - 1 is the product of P_d over d | n
  for (unsigned n : {1u, 2u, 3u, 4u, 6u, 8u, 12u}) {
    RationalPoly prod(1);
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod *= P(d);
    CHECK(prod == q(n) - RationalPoly(1));
  }
}

TEST_CASE("polynomial ring laws") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    Rational x(static_cast<long>(rng() % 17) - 8, 3);
    CHECK((a * b)(x) == a(x) * b(x));
    if (!b.is_zero()) {
      auto [quo, rem] = RationalPoly::divmod(a, b);
      CHECK(quo * b + rem == a);
      CHECK(rem.degree() < b.degree());
    }
  }
}

TEST_CASE("gcd divides both arguments") {
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 2);
    if (c.is_zero() || (a.is_zero() && b.is_zero())) continue;
    auto g = RationalPoly::gcd(a * c, b * c);
    CHECK(RationalPoly::divmod(a * c, g).second.is_zero());
    CHECK(RationalPoly::divmod(b * c, g).second.is_zero());
    CHECK(RationalPoly::divmod(g, c.monic()).second.is_zero());
  }
}

TEST_CASE("rational functions are normalized") {
  RatFunc f(P(1) * P(2), P(1) * q(2));
  CHECK(f.num() == P(2));
  CHECK(f.den() == q(2));
  CHECK(RatFunc(RationalPoly(3), RationalPoly(6)) == RatFunc(Rational(1, 2)));
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
    if (b.is_zero() || c.is_zero()) continue;
    RatFunc x(a, b), y(c, b * c + RationalPoly(1));
    if ((b * c + RationalPoly(1)).is_zero()) continue;
    CHECK(x + y == y + x);
    CHECK((x * y) / y == x);
    CHECK(x - x == RatFunc(0L));
    CHECK(RationalPoly::gcd(x.num(), x.den()).degree() <= 0);
  }
  CHECK_THROWS(RatFunc(RationalPoly(1), P(1)).as_polynomial());
}

TEST_CASE("sign indeterminates square to one") {
  auto a = SignExpr::indeterminate("a22");
  CHECK(a * a == SignExpr(1));
  auto b = SignExpr::indeterminate("a10");
  CHECK((a * b) * (a * b) == SignExpr(1));
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto x = random_sign_expr(rng), y = random_sign_expr(rng), z = random_sign_expr(rng);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
  }
}

TEST_CASE("residue-split expressions") {
  SymExpr s(SignExpr(1), SignExpr(-1));
  CHECK(s.is_split());
  CHECK(s * s == SymExpr(1L));
  CHECK(!(s * s).is_split());
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    auto x = random_sym_expr(rng), y = random_sym_expr(rng), z = random_sym_expr(rng);
    CHECK(x + y == y + x);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x - x).is_zero());
  }
}

TEST_CASE("display strings of known values") {
  CHECK(cyclotomic_display(P(2) * P(3) * P(4) * P(4) * P(6)) == "P2P3P4^2P6");
  CHECK(cyclotomic_display(-(P(1) * P(3) * P(4) * P(4) * P(6))) == "-P1P3P4^2P6");
  CHECK(cyclotomic_display(q(4) * P(2)) == "q^4P2");
  CHECK(cyclotomic_display(-q(4) * P(1)) == "-q^4P1");
  CHECK(cyclotomic_display(P(1) * P(2) * Rational(1, 2)) == "1/2*P1P2");
  CHECK(cyclotomic_display(q() * P(1) * P(1) * Rational(1, 4)) == "1/4*qP1^2");
  CHECK(cyclotomic_display(q() * Rational(2)) == "2*q");
  CHECK(cyclotomic_display(q(4) + q(3) * Rational(3) + q(2) * Rational(3) + q() + RationalPoly(1)) ==
        "q^4+3*q^3+3*q^2+q+1");
  auto a22 = SignExpr::indeterminate("a22");
  SignExpr x = (SignExpr(q()) - a22 - SignExpr(4)).scaled(Rational(1, 4));
  CHECK(cyclotomic_display(x) == "1/4*(q-a22-4)");
  SignExpr y = (SignExpr(1) - a22).scaled(Rational(1, 2));
  CHECK(cyclotomic_display(y) == "1/2*(-a22+1)");
  CHECK(cyclotomic_display(SymExpr(SignExpr(1), SignExpr(-1))) == "{1:1;3:-1}");
}

TEST_CASE("display round-trips through the parser") {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto x = random_sym_expr(rng);
    auto s = cyclotomic_display(x);
    CHECK_MESSAGE(parse_display(s) == x, s);
  }
  for (const char* s : {"P2P3P4^2P6", "q^4+3*q^3+3*q^2+q+1", "1/4*(q-a22-4)", "-1/4*qP2^2", "1/2*(a22+1)", "q^2P2P4",
                        "-q^2P1P4", "."})
    CHECK(cyclotomic_display(parse_display(s)) == s);
  CHECK_THROWS(parse_display("P2P"));
  CHECK_THROWS(parse_display("1/0"));
}

TEST_CASE("substitution of signs") {
  auto a22 = SymExpr(SignExpr::indeterminate("a22"));
  SignAssignment s;
  s.set("a22", 1, 1);
  s.set("a22", 3, -1);
  auto v = substitute(a22 * SymExpr(q()), s);
  CHECK(v.is_split());
  CHECK(eval_at(v, 5) == 5);
  CHECK(eval_at(v, 7) == -7);
  SignAssignment none;
  CHECK_THROWS(substitute(a22, none));
  CHECK(specialize(a22, none) == a22);
}

TEST_CASE("nonnegativity agrees with sampling") {
  std::mt19937 rng(23);
  int agree = 0;
  for (int i = 0; i < 300; ++i) {
    auto p = random_poly(rng, 4, 6);
    bool fast = check_nonneg(p, Rational(3));
    // The symbolic check covers all real q >= 3, so it implies the sampled one.
    if (fast) CHECK(testing::sampled_nonneg(p, 3, 200));
    if (fast == testing::sampled_nonneg(p, 3, 200)) ++agree;
  }
  CHECK(agree > 250);
  CHECK(check_nonneg((q() - RationalPoly(5)) * (q() - RationalPoly(5)), Rational(3)));
  CHECK(!check_nonneg(q() - RationalPoly(5), Rational(3)));
  CHECK(check_nonneg(q() - RationalPoly(5), Rational(5)));
}

TEST_CASE("integrality agrees with evaluation") {
  std::mt19937 rng(29);
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, 4, 6);
    for (int r : {1, 3}) {
      bool sym = check_integral(p, r);
      bool num = true;
      for (long t = 0; t < 30; ++t)
        if (p(Rational(4 * t + r)).get_den() != 1) num = false;
      CHECK(sym == num);
    }
  }
  // (q-1)/4 is integral exactly on q = 1 mod 4
  RationalPoly f = (q() - RationalPoly(1)) * Rational(1, 4);
  CHECK(check_integral(f, 1));
  CHECK(!check_integral(f, 3));
}

TEST_CASE("json round trip") {
  std::mt19937 rng(31);
  for (int i = 0; i < 100; ++i) {
    auto x = random_sym_expr(rng);
    CHECK(symexpr_from_json(to_json(x)) == x);
    auto p = random_poly(rng);
    CHECK(poly_from_json(to_json(p)) == p);
  }
  auto flat = nlohmann::json::parse(R"([[["a22"], [[0, "1/2/1"]]]])", nullptr, false);
  CHECK_THROWS(symexpr_from_json(flat));
}
