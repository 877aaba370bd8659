#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greenfn/greenfn.hpp"

namespace greenfn {

// Left inverse of a Green table: entry (j, c') is num[j][c'] / den[j].
struct InverseTable {
  std::vector<std::vector<SymExpr>> num;
  std::vector<RationalPoly> den;
};

InverseTable invert(const GreenTable& t);
bool is_left_inverse(const InverseTable& inv, const GreenTable& t);

// Levi column j -> Spin8 column of the induced Green function.
struct InducedIdentification {
  std::vector<int> target;
};

InducedIdentification identify(const GroupDatum& G, const GreenTable& g_table, const LeviData& M,
                               const GreenTable& m_table);

// g(c, c') for c a row of g_table and c' a row of m_table; throws if the defining system has a residual.
std::vector<std::vector<SymExpr>> induction_matrix(const GreenTable& g_table, const GreenTable& m_table,
                                                   const InducedIdentification& ident);

struct TwoParamTable {
  std::string group;
  std::vector<int> levi;
  std::string twist;
  std::vector<std::string> rows;  // Levi finite classes
  std::vector<std::string> cols;  // finite classes of the group
  std::vector<std::vector<SymExpr>> values;  // [row][col]
  bool resolved = false;
  std::optional<int> residue;  // set when a single residue class of q was substituted
  SignAssignment signs;
};

TwoParamTable solve(const GreenTable& g_table, const GreenTable& m_table, const InducedIdentification& ident,
                    const LeviData& M, const std::string& twist);

// Smallest admissible q in a residue class mod 4, the start of the positivity range.
long positivity_start(int residue);

// Exactly one sign choice per residue must survive positivity (split Levis) and integrality.
SignAssignment resolve_signs(const std::vector<TwoParamTable>& tables);

// Substitute the residue-independent signs only.
TwoParamTable with_common_signs(const TwoParamTable& t, const SignAssignment& s);
// Substitute all signs; with a residue the table is specialized to that class of q.
TwoParamTable with_signs(const TwoParamTable& t, const SignAssignment& s, std::optional<int> residue = std::nullopt);

std::vector<std::vector<SymExpr>> self_induction(const GreenTable& t);
bool self_induction_check(const GreenTable& t);

nlohmann::json to_json(const TwoParamTable& t);
TwoParamTable twoparam_from_json(const nlohmann::json& j);

}  // namespace greenfn
