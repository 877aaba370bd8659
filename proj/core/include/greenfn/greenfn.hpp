#pragma once

#include <string>
#include <vector>

#include "greenfn/groupdata.hpp"
#include "greenfn/symring.hpp"

namespace greenfn {

struct YFunction {
  int cls;
  Bits chi;
  SignExpr c;  // 1 or a sign indeterminate

  SymExpr value(const AlgebraicClass& ac, int finite_index) const;
};

std::vector<YFunction> y_functions(const UnipotentClassCatalog& cat, const std::vector<SignIndeterminate>& signs,
                                   const SpringerBlock& block);

struct BlockDecomposition {
  int block = 0;
  std::vector<int> order;   // entries by increasing class dimension, ties by catalog order
  std::vector<int> dshift;  // d_iota per entry
  std::vector<std::vector<RatFunc>> omega;        // [chi][chi']
  std::vector<std::vector<RatFunc>> unitriangular;  // L[chi][iota'], diagonal class blocks identity
  std::vector<std::vector<RationalPoly>> P;         // P[iota'][chi] = L[chi][iota'] q^d_chi
  std::vector<std::vector<RatFunc>> lambda;         // Gram matrix of the Y-functions
};

// The pairing of two characters of W_L that the decomposition factors:
//   (q^d / |W_L|) sum_w chi_i(w) chi_j(w) / |Z0(L_w)^F|.
// All convention constants of the algorithm live here.
RatFunc omega_pairing(const SpringerBlock& blk, const std::vector<int>& chi_i, const std::vector<int>& chi_j);

BlockDecomposition lusztig_shoji(const UnipotentClassCatalog& cat, const SpringerBlock& blk, int block_index,
                                 int dim_group);

// Sizes of the finite classes, in catalog order.
std::vector<RationalPoly> finite_class_sizes(const UnipotentClassCatalog& cat, const std::vector<SpringerBlock>& blocks,
                                             const std::vector<BlockDecomposition>& decomps,
                                             const RationalPoly& group_order);

struct GreenRow {
  std::string label;
  int cls = 0;
  int counter = 1;
  RationalPoly size;
};

struct GreenColumn {
  std::string label;
  std::string block_name;
  int block = 0;
  std::vector<int> levi;
  std::vector<int> w;  // class representative as a word in the relative generators
  int w_class = 0;
  int element = 0;     // representative in the ambient Weyl group (before any Levi twist)
  RatFunc norm;
};

struct GreenTable {
  std::string group;
  RationalPoly order;
  std::vector<GreenRow> rows;
  std::vector<GreenColumn> cols;
  std::vector<std::vector<SymExpr>> values;  // [row][col]
};

GreenTable assemble(const GroupDatum& G, const std::vector<BlockDecomposition>& decomps);
GreenTable green_table(const GroupDatum& G);

// Levi table from one SL2 table per factor of the simply connected cover.
GreenTable transfer_via_covering(const GreenTable& sl2_table, const LeviData& M);

struct OrthogonalityViolation {
  int i = 0, j = 0;
  SymExpr residual;  // (Q_i, Q_j) |G| - delta n_i |G|, times the norm denominator
};

std::vector<OrthogonalityViolation> verify_orthogonality(const GreenTable& t);

nlohmann::json to_json(const GreenTable& t);
GreenTable green_table_from_json(const nlohmann::json& j);

}  // namespace greenfn
