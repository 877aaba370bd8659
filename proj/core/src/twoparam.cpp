#include "greenfn/twoparam.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace greenfn {

using nlohmann::json;

namespace {

SignExpr div_exact(const SignExpr& x, const RationalPoly& d) {
  SignExpr r;
  for (auto& [m, c] : x.terms()) {
    auto [quo, rem] = RationalPoly::divmod(c, d);
    if (!rem.is_zero()) throw std::logic_error("inexact division in the induction system");
    r.add_term(m, quo);
  }
  return r;
}

SymExpr div_exact(const SymExpr& x, const RationalPoly& d) {
  if (x.is_split()) return SymExpr(div_exact(x.branch(1), d), div_exact(x.branch(3), d));
  return SymExpr(div_exact(x.single(), d));
}

RationalPoly lcm(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly g = RationalPoly::gcd(a, b);
  return RationalPoly::divmod(a * b, g).first.monic();
}

std::string join_nodes(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

int column_class(const SpringerBlock& blk, const GreenColumn& col) {
  if (col.w_class >= 0) return col.w_class;
  const FiniteGroup& Q = blk.rel->quotient();
  return Q.class_of(Q.from_word(col.w));
}

const SpringerBlock& block_named(const std::vector<SpringerBlock>& blocks, const std::string& name) {
  for (auto& b : blocks)
    if (b.name == name) return b;
  throw std::invalid_argument("no Springer block named " + name);
}

}  // namespace

// ---------------------------------------------------------------- inverse

InverseTable invert(const GreenTable& t) {
  InverseTable inv;
  for (size_t j = 0; j < t.cols.size(); ++j) {
    const RatFunc& n = t.cols[j].norm;
    if (n.is_zero()) throw std::invalid_argument("zero norm in column " + t.cols[j].label);
    std::vector<SymExpr> row;
    for (size_t r = 0; r < t.rows.size(); ++r)
      row.push_back(SymExpr(t.rows[r].size * n.den()) * t.values[r][j]);
    inv.num.push_back(row);
    inv.den.push_back(t.order * n.num());
  }
  return inv;
}

bool is_left_inverse(const InverseTable& inv, const GreenTable& t) {
  for (size_t j = 0; j < inv.num.size(); ++j)
    for (size_t k = 0; k < t.cols.size(); ++k) {
      SymExpr s(0L);
      for (size_t r = 0; r < t.rows.size(); ++r) s += inv.num[j][r] * t.values[r][k];
      if (s != (j == k ? SymExpr(inv.den[j]) : SymExpr(0L))) return false;
    }
  return true;
}

// ---------------------------------------------------------------- identification

InducedIdentification identify(const GroupDatum& G, const GreenTable& g_table, const LeviData& M,
                               const GreenTable& m_table) {
  const CoxeterGroup& W = *G.weyl;
  const FiniteGroup& WG = W.group();
  std::map<std::pair<std::string, int>, int> g_cols;
  for (size_t c = 0; c < g_table.cols.size(); ++c) {
    const auto& col = g_table.cols[c];
    int cls = column_class(block_named(G.blocks, col.block_name), col);
    g_cols[{col.block_name, cls}] = static_cast<int>(c);
  }
  InducedIdentification out;
  for (auto& col : m_table.cols) {
    const SpringerBlock& mb = block_named(M.blocks, col.block_name);
    const SpringerBlock& gb = block_named(G.blocks, col.block_name);
    if (mb.levi != gb.levi || mb.cusp_class != gb.cusp_class)
      throw std::logic_error("block " + col.block_name + " has different cuspidal data in the Levi and the group");
    const FiniteGroup& Q = mb.rel->quotient();
    int elem = col.element >= 0 ? col.element : mb.rel->representative(Q.from_word(col.w));
    int twisted = WG.mul(elem, M.levi.twist);
    auto x = gb.rel->try_reduce(twisted);
    if (!x) throw std::logic_error("Levi column " + col.label + " does not normalize the cuspidal Levi");
    int cls = gb.rel->quotient().class_of(*x);
    auto it = g_cols.find({col.block_name, cls});
    if (it == g_cols.end()) throw std::logic_error("no group column for Levi column " + col.label);
    out.target.push_back(it->second);
  }
  return out;
}

// ---------------------------------------------------------------- solving

std::vector<std::vector<SymExpr>> induction_matrix(const GreenTable& g_table, const GreenTable& m_table,
                                                   const InducedIdentification& ident) {
  if (ident.target.size() != m_table.cols.size()) throw std::invalid_argument("identification is not total");
  if (m_table.cols.size() != m_table.rows.size()) throw std::invalid_argument("Levi table is not square");
  InverseTable inv = invert(m_table);
  RationalPoly D(1);
  for (auto& d : inv.den) D = lcm(D, d);
  std::vector<RationalPoly> scale;
  for (auto& d : inv.den) scale.push_back(RationalPoly::divmod(D, d).first);

  auto row_job = [&](size_t c) {
    std::vector<SymExpr> g;
    for (size_t cp = 0; cp < m_table.rows.size(); ++cp) {
      SymExpr s(0L);
      for (size_t j = 0; j < m_table.cols.size(); ++j) {
        const SymExpr& qg = g_table.values[c][ident.target[j]];
        if (qg.is_zero() || inv.num[j][cp].is_zero()) continue;
        s += qg * inv.num[j][cp] * SymExpr(scale[j]);
      }
      g.push_back(div_exact(s, D));
    }
    for (size_t j = 0; j < m_table.cols.size(); ++j) {
      SymExpr r = g_table.values[c][ident.target[j]];
      for (size_t cp = 0; cp < m_table.rows.size(); ++cp) r -= g[cp] * m_table.values[cp][j];
      if (!r.is_zero())
        throw std::logic_error("induction system has a residual at " + g_table.rows[c].label + ", column " +
                               m_table.cols[j].label);
    }
    return g;
  };
  std::vector<std::future<std::vector<SymExpr>>> jobs;
  for (size_t c = 0; c < g_table.rows.size(); ++c) jobs.push_back(std::async(std::launch::async, row_job, c));
  std::vector<std::vector<SymExpr>> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

TwoParamTable solve(const GreenTable& g_table, const GreenTable& m_table, const InducedIdentification& ident,
                    const LeviData& M, const std::string& twist) {
  auto g = induction_matrix(g_table, m_table, ident);
  TwoParamTable t;
  t.group = g_table.group;
  t.levi = M.levi.nodes;
  t.twist = twist;
  for (auto& r : m_table.rows) t.rows.push_back(r.label);
  for (auto& c : g_table.rows) t.cols.push_back(c.label);
  t.values.assign(t.rows.size(), std::vector<SymExpr>(t.cols.size()));
  for (size_t c = 0; c < t.cols.size(); ++c)
    for (size_t cp = 0; cp < t.rows.size(); ++cp) t.values[cp][c] = g[c][cp];
  return t;
}

// ---------------------------------------------------------------- signs

long positivity_start(int residue) {
  residue_slot(residue);
  long q = 3;
  while (q % kModulus != residue) q += 2;
  return q;
}

SignAssignment resolve_signs(const std::vector<TwoParamTable>& tables) {
  std::set<std::string> name_set;
  for (auto& t : tables)
    for (auto& row : t.values)
      for (auto& v : row)
        for (auto& n : v.indeterminates()) name_set.insert(n);
  std::vector<std::string> names(name_set.begin(), name_set.end());
  if (names.empty()) throw std::invalid_argument("tables carry no sign indeterminates");
  const size_t n = names.size();

  std::map<int, std::map<std::string, int>> chosen;
  for (int r : kResidues) {
    std::vector<std::map<std::string, int>> survivors;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::map<std::string, int> vals;
      for (size_t i = 0; i < n; ++i) vals[names[i]] = (mask >> (n - 1 - i)) & 1 ? -1 : 1;
      bool ok = true;
      for (auto& t : tables) {
        bool split = t.twist == "split";
        for (auto& row : t.values) {
          for (auto& v : row) {
            SignExpr s = specialize(v.branch(r), vals);
            if (!s.is_sign_free()) throw std::logic_error("indeterminate left after substitution");
            RationalPoly p = s.sign_free_part();
            if (!check_integral(p, r) || (split && !check_nonneg(p, Rational(positivity_start(r))))) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (ok) survivors.push_back(vals);
    }
    if (survivors.size() != 1)
      throw std::runtime_error(std::to_string(survivors.size()) + " sign assignments survive for q = " +
                               std::to_string(r) + " mod 4");
    chosen[r] = survivors.front();
  }
  SignAssignment s;
  for (auto& name : names) {
    int v1 = chosen[1][name], v3 = chosen[3][name];
    if (v1 == v3) {
      s.set(name, v1);
    } else {
      s.set(name, 1, v1);
      s.set(name, 3, v3);
    }
  }
  return s;
}

TwoParamTable with_common_signs(const TwoParamTable& t, const SignAssignment& s) {
  SignAssignment common;
  for (auto& n : s.names())
    if (!s.residue_dependent(n) && s.has(n, 1)) common.set(n, s.value(n, 1));
  TwoParamTable out = t;
  for (auto& row : out.values)
    for (auto& v : row) v = specialize(v, common);
  out.signs = common;
  return out;
}

TwoParamTable with_signs(const TwoParamTable& t, const SignAssignment& s, std::optional<int> residue) {
  TwoParamTable out = t;
  for (auto& row : out.values)
    for (auto& v : row) {
      v = substitute(v, s);
      if (residue) v = SymExpr(v.branch(*residue));
    }
  out.resolved = true;
  out.residue = residue;
  out.signs = s;
  return out;
}

// ---------------------------------------------------------------- self-induction

std::vector<std::vector<SymExpr>> self_induction(const GreenTable& t) {
  InducedIdentification id;
  for (size_t j = 0; j < t.cols.size(); ++j) id.target.push_back(static_cast<int>(j));
  return induction_matrix(t, t, id);
}

bool self_induction_check(const GreenTable& t) {
  try {
    auto g = self_induction(t);
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = 0; j < g[i].size(); ++j)
        if (g[i][j] != (i == j ? SymExpr(1L) : SymExpr(0L))) return false;
    return true;
  } catch (const std::logic_error&) {
    return false;
  }
}

// ---------------------------------------------------------------- JSON

json to_json(const TwoParamTable& t) {
  json values = json::array();
  for (auto& row : t.values) {
    json jr = json::array();
    for (auto& v : row) jr.push_back(to_json(v));
    values.push_back(jr);
  }
  json signs = json::object();
  for (auto& n : t.signs.names()) {
    if (t.signs.residue_dependent(n))
      signs[n] = {{"1", t.signs.value(n, 1)}, {"3", t.signs.value(n, 3)}};
    else
      signs[n] = t.signs.value(n, t.signs.has(n, 1) ? 1 : 3);
  }
  json meta = {{"levi", t.levi},
               {"twist", t.twist},
               {"resolved", t.resolved},
               {"signs", signs},
               {"caveat",
                "the identification of induced Green functions for the blocks with cuspidal support A1+A1 is "
                "established only for sufficiently large q"}};
  if (t.residue) meta["residue"] = *t.residue;
  json rows = json::array(), cols = json::array();
  for (auto& r : t.rows) rows.push_back({{"label", r}});
  for (auto& c : t.cols) cols.push_back({{"label", c}});
  return {{"group", t.group + "/levi" + join_nodes(t.levi)},
          {"rows", rows},
          {"cols", cols},
          {"values", values},
          {"metadata", meta}};
}

TwoParamTable twoparam_from_json(const json& j) {
  try {
    TwoParamTable t;
    std::string g = j.at("group").get<std::string>();
    t.group = g.substr(0, g.find('/'));
    const json& meta = j.at("metadata");
    t.levi = meta.at("levi").get<std::vector<int>>();
    t.twist = meta.at("twist").get<std::string>();
    t.resolved = meta.value("resolved", false);
    if (meta.contains("residue")) t.residue = meta["residue"].get<int>();
    if (meta.contains("signs"))
      for (auto& [n, v] : meta["signs"].items()) {
        if (v.is_object()) {
          t.signs.set(n, 1, v.at("1").get<int>());
          t.signs.set(n, 3, v.at("3").get<int>());
        } else {
          t.signs.set(n, v.get<int>());
        }
      }
    for (auto& r : j.at("rows")) t.rows.push_back(r.at("label").get<std::string>());
    for (auto& c : j.at("cols")) t.cols.push_back(c.at("label").get<std::string>());
    for (auto& row : j.at("values")) {
      std::vector<SymExpr> vr;
      for (auto& v : row) vr.push_back(symexpr_from_json(v));
      if (vr.size() != t.cols.size()) throw std::invalid_argument("value row length does not match the columns");
      t.values.push_back(vr);
    }
    if (t.values.size() != t.rows.size()) throw std::invalid_argument("value row count does not match the rows");
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed two-parameter table: ") + e.what());
  }
}

}  // namespace greenfn
