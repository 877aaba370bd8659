#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "greenfn/greenfn.hpp"
#include "support.hpp"

using namespace greenfn;

namespace {

struct Fixture {
  std::shared_ptr<const GroupDatum> G = load_group(testing::data_dir(), "spin8");
  std::shared_ptr<const GroupDatum> S = load_group(testing::data_dir(), "sl2");
  GreenTable spin8 = green_table(*G);
  GreenTable sl2 = green_table(*S);
};

const Fixture& fx() {
  static Fixture f;
  return f;
}

RationalPoly P(unsigned n) { return RationalPoly::cyclotomic(n); }
RationalPoly q(unsigned k = 1) { return RationalPoly::q(k); }

int row_of(const GreenTable& t, const std::string& label) {
  for (size_t r = 0; r < t.rows.size(); ++r)
    if (t.rows[r].label == label) return static_cast<int>(r);
  FAIL("no row " << label);
  return -1;
}

// Levi table computed by running the decomposition on the Levi's own Springer data.
GreenTable levi_by_decomposition(const LeviData& M) {
  const int dim = M.levi.parent->rank() + 2 * M.levi.num_positive_roots();
  std::vector<BlockDecomposition> decomps;
  for (size_t b = 0; b < M.blocks.size(); ++b)
    decomps.push_back(lusztig_shoji(M.catalog, M.blocks[b], static_cast<int>(b), dim));
  GreenTable t;
  t.order = M.levi.order();
  auto sizes = finite_class_sizes(M.catalog, M.blocks, decomps, t.order);
  auto refs = M.catalog.finite_classes();
  for (size_t r = 0; r < refs.size(); ++r) t.rows.push_back({M.catalog.finite_label(refs[r]), refs[r].cls, refs[r].counter, sizes[r]});
  t.values.assign(refs.size(), {});
  for (size_t b = 0; b < M.blocks.size(); ++b) {
    const auto& blk = M.blocks[b];
    const FiniteGroup& Q = blk.rel->quotient();
    for (size_t c = 0; c < Q.num_classes(); ++c) {
      GreenColumn col;
      col.block = static_cast<int>(b);
      col.w_class = static_cast<int>(c);
      t.cols.push_back(col);
      for (size_t r = 0; r < refs.size(); ++r) {
        const auto& ac = M.catalog.classes[refs[r].cls];
        RationalPoly v;
        for (size_t iota = 0; iota < blk.map.size(); ++iota) {
          if (blk.map[iota].cls != refs[r].cls) continue;
          for (size_t chi = 0; chi < blk.map.size(); ++chi)
            v += decomps[b].P[iota][chi] *
                 Rational(blk.map[chi].character[c] * pairing(blk.map[iota].local_system, ac.finite[refs[r].counter - 1]));
        }
        t.values[r].push_back(SymExpr(v));
      }
    }
  }
  return t;
}

}  // namespace

TEST_CASE("SL2 Green functions") {
  const auto& t = fx().sl2;
  REQUIRE(t.rows.size() == 3);
  REQUIRE(t.cols.size() == 3);
  int one = row_of(t, "11,1"), reg1 = row_of(t, "2,1"), reg2 = row_of(t, "2,2");
  // classical values: Q_T(1) = q+1 on the split torus, 1-q on the nonsplit one, 1 on regular elements
  CHECK(t.values[one][0] == SymExpr(P(2)));
  CHECK(t.values[one][1] == SymExpr(-P(1)));
  CHECK(t.values[reg1][0] == SymExpr(1L));
  CHECK(t.values[reg2][1] == SymExpr(1L));
  CHECK(t.values[one][2].is_zero());
  CHECK(t.values[reg1][2] == -t.values[reg2][2]);
  CHECK(t.rows[one].size == RationalPoly(1));
  CHECK(t.rows[reg1].size == P(1) * P(2) * Rational(1, 2));
}

TEST_CASE("Spin8 table shape") {
  const auto& t = fx().spin8;
  CHECK(t.rows.size() == 28);
  CHECK(t.cols.size() == 28);
  std::map<std::string, int> per_block;
  for (auto& c : t.cols) ++per_block[c.block_name];
  CHECK(per_block == std::map<std::string, int>{{"T", 13}, {"L12", 5}, {"L14", 5}, {"L24", 5}});
}

TEST_CASE("Green functions at the identity are degrees of Deligne-Lusztig characters") {
  const auto& t = fx().spin8;
  const auto& W = *fx().G->weyl;
  RationalPoly pprime(1);
  for (unsigned d : {2u, 4u, 4u, 6u}) pprime *= q(d) - RationalPoly(1);
  int one = row_of(t, "11111111,1");
  for (size_t c = 0; c < t.cols.size(); ++c) {
    if (t.cols[c].block_name != "T") continue;
    int w = t.cols[c].element;
    RatFunc expect(pprime * Rational(W.length(w) % 2 ? -1 : 1), W.charpoly(w));
    CHECK(RatFunc(t.values[one][c].single().sign_free_part()) == expect);
  }
}

TEST_CASE("torus columns are 1 on the split regular class") {
  const auto& t = fx().spin8;
  int reg = row_of(t, "71,1");
  for (size_t c = 0; c < t.cols.size(); ++c)
    if (t.cols[c].block_name == "T") CHECK(t.values[reg][c] == SymExpr(1L));
}

TEST_CASE("omega pairing of the trivial character") {
  const auto& blk = fx().G->blocks[0];
  REQUIRE(blk.levi.empty());
  std::vector<int> triv(blk.rel->quotient().num_classes(), 1);
  RationalPoly pprime(1);
  for (unsigned d : {2u, 4u, 4u, 6u}) pprime *= q(d) - RationalPoly(1);
  CHECK(omega_pairing(blk, triv, triv) == RatFunc(q(12), pprime));
}

TEST_CASE("orthogonality") {
  CHECK(verify_orthogonality(fx().spin8).empty());
  CHECK(verify_orthogonality(fx().sl2).empty());
  for (std::string tw : {"split", "twisted"}) {
    auto M = load_levi124(testing::data_dir(), fx().G, fx().S, tw);
    auto m = transfer_via_covering(fx().sl2, M);
    CHECK(m.rows.size() == 14);
    CHECK(m.cols.size() == 14);
    CHECK(verify_orthogonality(m).empty());
  }
}

TEST_CASE("orthogonality detects a corrupted value") {
  GreenTable t = fx().sl2;
  t.values[0][0] += SymExpr(1L);
  CHECK(!verify_orthogonality(t).empty());
}

TEST_CASE("class sizes add up to the number of unipotent elements") {
  RationalPoly total;
  for (auto& r : fx().spin8.rows) total += r.size;
  CHECK(total == q(24));
  for (std::string tw : {"split", "twisted"}) {
    auto m = transfer_via_covering(fx().sl2, load_levi124(testing::data_dir(), fx().G, fx().S, tw));
    RationalPoly mt;
    for (auto& r : m.rows) mt += r.size;
    CHECK(mt == q(6));
  }
  // Steinberg: the regular class has |G| / (|A| q^r |Z|) elements per finite class
  int reg = row_of(fx().spin8, "71,1");
  CHECK(fx().spin8.rows[reg].size * Rational(4) * q(4) == fx().spin8.order);
}

TEST_CASE("covering transfer agrees with decomposing the split Levi directly") {
  auto M = load_levi124(testing::data_dir(), fx().G, fx().S, "split");
  auto via_cover = transfer_via_covering(fx().sl2, M);
  auto direct = levi_by_decomposition(M);
  REQUIRE(direct.rows.size() == via_cover.rows.size());
  for (size_t r = 0; r < direct.rows.size(); ++r) {
    CHECK(direct.rows[r].label == via_cover.rows[r].label);
    CHECK(direct.rows[r].size == via_cover.rows[r].size);
  }
  for (size_t c = 0; c < via_cover.cols.size(); ++c) {
    int match = -1;
    for (size_t d = 0; d < direct.cols.size(); ++d)
      if (direct.cols[d].block == via_cover.cols[c].block && direct.cols[d].w_class == via_cover.cols[c].w_class)
        match = static_cast<int>(d);
    REQUIRE(match >= 0);
    for (size_t r = 0; r < direct.rows.size(); ++r) CHECK(direct.values[r][match] == via_cover.values[r][c]);
  }
}

TEST_CASE("Green tables round-trip through JSON") {
  auto j = to_json(fx().spin8);
  auto back = green_table_from_json(j);
  CHECK(back.rows.size() == 28);
  CHECK(back.order == fx().spin8.order);
  CHECK(verify_orthogonality(back).empty());
  for (size_t r = 0; r < 28; ++r)
    for (size_t c = 0; c < 28; ++c) CHECK(back.values[r][c] == fx().spin8.values[r][c]);
  CHECK(to_json(back) == j);
  j["values"][0].erase(0);
  CHECK_THROWS_AS(green_table_from_json(j), std::invalid_argument);
}

TEST_CASE("sign indeterminates sit on the cuspidal block of B2 type") {
  const auto& t = fx().spin8;
  std::map<std::string, std::string> where;
  for (size_t r = 0; r < t.rows.size(); ++r)
    for (size_t c = 0; c < t.cols.size(); ++c)
      for (auto& n : t.values[r][c].indeterminates()) where[n] = t.cols[c].block_name;
  CHECK(where == std::map<std::string, std::string>{{"a10", "L12"}, {"a22", "L12"}, {"a27", "L12"}});
}
