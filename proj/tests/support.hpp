#pragma once

#include <random>
#include <string>

#include "greenfn/symring.hpp"

#ifndef GREENFN_TEST_DATA_DIR
#define GREENFN_TEST_DATA_DIR "data"
#endif
#ifndef GREENFN_TEST_GOLDEN_DIR
#define GREENFN_TEST_GOLDEN_DIR "tests/golden"
#endif

namespace testing {

inline std::string data_dir() { return GREENFN_TEST_DATA_DIR; }
inline std::string golden_dir() { return GREENFN_TEST_GOLDEN_DIR; }

inline greenfn::RationalPoly random_poly(std::mt19937& rng, int max_deg = 6, int max_coeff = 9) {
  std::uniform_int_distribution<int> deg(0, max_deg), coeff(-max_coeff, max_coeff), den(1, 4);
  greenfn::RationalPoly p;
  int d = deg(rng);
  for (int k = 0; k <= d; ++k)
    p += greenfn::RationalPoly::monomial(greenfn::Rational(coeff(rng), den(rng)), static_cast<unsigned>(k));
  return p;
}

inline greenfn::SignExpr random_sign_expr(std::mt19937& rng) {
  static const char* names[] = {"a10", "a22", "a27"};
  std::uniform_int_distribution<int> pick(0, 7);
  greenfn::SignExpr x;
  for (int t = 0; t < 3; ++t) {
    int mask = pick(rng);
    greenfn::SignMonomial m;
    for (int i = 0; i < 3; ++i)
      if (mask >> i & 1) m.push_back(names[i]);
    x.add_term(m, random_poly(rng, 4, 5));
  }
  return x;
}

inline greenfn::SymExpr random_sym_expr(std::mt19937& rng) {
  if (rng() % 3 == 0) return greenfn::SymExpr(random_sign_expr(rng), random_sign_expr(rng));
  return greenfn::SymExpr(random_sign_expr(rng));
}

// Slow oracle: evaluate p(q) on a grid.
inline bool sampled_nonneg(const greenfn::RationalPoly& p, long from, long to) {
  for (long q = from; q <= to; ++q)
    if (p(greenfn::Rational(q)) < 0) return false;
  return true;
}

}  // namespace testing
