#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "greenfn/pipeline.hpp"
#include "support.hpp"

using namespace greenfn;

namespace {

const Run& run() {
  static Run r = run_pipeline(testing::data_dir());
  return r;
}

RationalPoly P(unsigned n) { return RationalPoly::cyclotomic(n); }
RationalPoly q(unsigned k = 1) { return RationalPoly::q(k); }

const SymExpr& cell(const TwoParamTable& t, const std::string& row, const std::string& col) {
  auto r = std::find(t.rows.begin(), t.rows.end(), row) - t.rows.begin();
  auto c = std::find(t.cols.begin(), t.cols.end(), col) - t.cols.begin();
  REQUIRE(r < static_cast<long>(t.rows.size()));
  REQUIRE(c < static_cast<long>(t.cols.size()));
  return t.values[r][c];
}

}  // namespace

TEST_CASE("inverse tables") {
  for (auto* t : {&run().split.table, &run().twisted.table, &run().sl2_table, &run().spin8_table}) {
    auto inv = invert(*t);
    CHECK(is_left_inverse(inv, *t));
  }
  GreenTable broken = run().sl2_table;
  broken.values[1][0] += SymExpr(1L);
  CHECK(!is_left_inverse(invert(broken), broken));
}

TEST_CASE("identification of induced Green functions") {
  const auto& G = *run().spin8;
  const auto& W = G.weyl->group();
  for (auto* lr : {&run().split, &run().twisted}) {
    const auto& ident = lr->ident;
    REQUIRE(ident.target.size() == 14);
    // classes of the Levi may fuse in the group, but never across blocks
    for (size_t j = 0; j < ident.target.size(); ++j)
      CHECK(run().spin8_table.cols[ident.target[j]].block_name == lr->table.cols[j].block_name);
    // v = 1 in the torus block goes to the class of the twist
    int t0 = ident.target[0];
    REQUIRE(lr->table.cols[0].block_name == "T");
    const auto& Tq = G.blocks[0].rel->quotient();
    int expect = Tq.class_of(G.blocks[0].rel->reduce(lr->data.levi.twist));
    CHECK(run().spin8_table.cols[t0].w_class == expect);
    if (lr == &run().split) CHECK(W.order_of(run().spin8_table.cols[t0].element) == 1);
  }
  // nontrivial v in block {1,4} goes to a reflection class of the relative B2
  const auto& m = run().split.table;
  for (size_t j = 0; j < m.cols.size(); ++j) {
    if (m.cols[j].block_name != "L14" || m.cols[j].w.empty()) continue;
    const auto& gcol = run().spin8_table.cols[run().split.ident.target[j]];
    CHECK(gcol.block_name == "L14");
    const auto& B = G.blocks[G.block_index({1, 4})].rel->quotient();
    CHECK(B.order_of(B.class_rep(gcol.w_class)) == 2);
    CHECK(B.class_size(gcol.w_class) == 2);
  }
}

TEST_CASE("values quoted in the text") {
  const auto& s = run().split.twoparam;
  const auto& t = run().twisted.twoparam;
  CHECK(cell(s, "11.11.11,1", "11111111,1") == SymExpr(P(2) * P(3) * P(4) * P(4) * P(6)));
  CHECK(cell(t, "11.11.11,1", "11111111,1") == SymExpr(-(P(1) * P(3) * P(4) * P(4) * P(6))));
  auto a10 = SignExpr::indeterminate("a10");
  SignExpr expect = (a10 - SignExpr(1)) * SignExpr((q(4) + q(3)) * Rational(1, 4));
  CHECK(cell(s, "2.2.2,4", "3221,4") == SymExpr(expect));
}

TEST_CASE("trivial-class entry is the index of a parabolic") {
  const auto& s = run().split.twoparam;
  // |G| / (|U| |M|) with dim U = 12 - 3
  auto [quo, rem] = RationalPoly::divmod(run().spin8_table.order, run().split.table.order * q(9));
  CHECK(rem.is_zero());
  CHECK(cell(s, "11.11.11,1", "11111111,1") == SymExpr(quo));
}

TEST_CASE("trivial class column vanishes off the trivial Levi class") {
  for (auto* t : {&run().split.twoparam, &run().twisted.twoparam})
    for (size_t r = 1; r < t->rows.size(); ++r) CHECK(t->values[r][0].is_zero());
}

TEST_CASE("defining system has no residual") {
  const auto& lr = run().split;
  const auto& g = lr.twoparam;
  for (size_t c = 0; c < g.cols.size(); ++c)
    for (size_t j = 0; j < lr.table.cols.size(); ++j) {
      SymExpr r = run().spin8_table.values[c][lr.ident.target[j]];
      for (size_t cp = 0; cp < g.rows.size(); ++cp) r -= g.values[cp][c] * lr.table.values[cp][j];
      CHECK(r.is_zero());
    }
}

TEST_CASE("sign resolution") {
  const auto& s = run().signs;
  CHECK(s.value("a10", 1) == 1);
  CHECK(s.value("a10", 3) == 1);
  CHECK(s.value("a27", 1) == 1);
  CHECK(s.value("a27", 3) == 1);
  CHECK(s.value("a22", 1) == 1);
  CHECK(s.value("a22", 3) == -1);
  CHECK(s.residue_dependent("a22"));
  CHECK(!s.residue_dependent("a10"));
  // order of the candidate tables does not matter
  CHECK(resolve_signs({run().twisted.twoparam, run().split.twoparam}) == s);
  // a table without signs is rejected
  CHECK_THROWS(resolve_signs({with_signs(run().split.twoparam, s)}));
}

TEST_CASE("resolved tables are integral and nonnegative on the split Levi") {
  for (auto* lr : {&run().split, &run().twisted}) {
    auto t = with_signs(lr->twoparam, run().signs);
    for (auto& row : t.values)
      for (auto& v : row) {
        CHECK(check_integral(v));
        for (long q0 : {3L, 5L, 7L, 9L, 11L, 13L}) {
          Rational x = eval_at(v, q0);
          CHECK(x.get_den() == 1);
          if (lr == &run().split) CHECK(x >= 0);
        }
      }
  }
}

TEST_CASE("display form keeps only a22") {
  auto t = run().display_table("split");
  std::set<std::string> names;
  for (auto& row : t.values)
    for (auto& v : row)
      for (auto& n : v.indeterminates()) names.insert(n);
  CHECK(names == std::set<std::string>{"a22"});
  auto r1 = with_signs(run().split.twoparam, run().signs, 1);
  CHECK(cyclotomic_display(cell(r1, "2.2.2,1", "53,1")) == "1/4*(q-5)");
}

TEST_CASE("self-induction gives identity matrices") {
  CHECK(self_induction_check(run().spin8_table));
  CHECK(self_induction_check(run().sl2_table));
  CHECK(self_induction_check(run().split.table));
  CHECK(self_induction_check(run().twisted.table));
  GreenTable broken = run().sl2_table;
  broken.values[1][1] = SymExpr(2L);
  CHECK(!self_induction_check(broken));
}

TEST_CASE("two-parameter tables round-trip through JSON") {
  auto t = with_signs(run().split.twoparam, run().signs);
  auto j = to_json(t);
  CHECK(j["metadata"]["caveat"].get<std::string>().find("large") != std::string::npos);
  CHECK(j["metadata"]["twist"] == "split");
  auto back = twoparam_from_json(j);
  CHECK(back.values == t.values);
  CHECK(back.signs == t.signs);
  CHECK(back.resolved);
  CHECK(to_json(back) == j);
}

TEST_CASE("imported Spin8 table gives the same result") {
  auto imported = green_table_from_json(to_json(run().spin8_table));
  Run again = run_pipeline(testing::data_dir(), imported);
  CHECK(again.split.twoparam.values == run().split.twoparam.values);
  CHECK(again.signs == run().signs);
}
