#include "greenfn/greenfn.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>

namespace greenfn {

using nlohmann::json;

namespace {

RatFunc q_power(int k) {
  if (k >= 0) return RatFunc(RationalPoly::q(static_cast<unsigned>(k)));
  return RatFunc(RationalPoly(1), RationalPoly::q(static_cast<unsigned>(-k)));
}

Bits add_bits(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % 2;
  return r;
}

using Matrix = std::vector<std::vector<RatFunc>>;

Matrix zeros(size_t r, size_t c) { return Matrix(r, std::vector<RatFunc>(c, RatFunc(0L))); }

Matrix mul(const Matrix& a, const Matrix& b) {
  Matrix r = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < b[k].size(); ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r = zeros(a.empty() ? 0 : a[0].size(), a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

// Gauss-Jordan; nullopt if singular.
std::optional<Matrix> invert(Matrix a) {
  size_t n = a.size();
  Matrix inv = zeros(n, n);
  for (size_t i = 0; i < n; ++i) inv[i][i] = RatFunc(1L);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    RatFunc p = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / p;
      inv[col][j] = inv[col][j] / p;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      RatFunc f = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

// ---------------------------------------------------------------- Y-functions

SymExpr YFunction::value(const AlgebraicClass& ac, int finite_index) const {
  return SymExpr(c.scaled(RationalPoly(pairing(chi, ac.finite[finite_index]))));
}

std::vector<YFunction> y_functions(const UnipotentClassCatalog& cat, const std::vector<SignIndeterminate>& signs,
                                   const SpringerBlock& block) {
  std::vector<YFunction> out;
  for (auto& e : block.map) {
    if (e.cls < 0 || e.cls >= static_cast<int>(cat.classes.size())) throw std::invalid_argument("bad class index");
    YFunction y{e.cls, e.local_system, SignExpr(1)};
    for (auto& s : signs)
      if (s.cls == e.cls && s.local_system == e.local_system) y.c = SignExpr::indeterminate(s.name);
    out.push_back(y);
  }
  return out;
}

// ---------------------------------------------------------------- Lusztig-Shoji

RatFunc omega_pairing(const SpringerBlock& blk, const std::vector<int>& chi_i, const std::vector<int>& chi_j) {
  const FiniteGroup& Q = blk.rel->quotient();
  RatFunc sum(0L);
  for (size_t c = 0; c < Q.num_classes(); ++c) {
    long v = static_cast<long>(Q.class_size(static_cast<int>(c))) * chi_i[c] * chi_j[c];
    if (v == 0) continue;
    sum += RatFunc(RationalPoly(v), blk.rel->z0_order(Q.class_rep(static_cast<int>(c))));
  }
  return sum * q_power(blk.d()) * RatFunc(Rational(1, static_cast<long>(Q.order())));
}

BlockDecomposition lusztig_shoji(const UnipotentClassCatalog& cat, const SpringerBlock& blk, int block_index,
                                 int dim_group) {
  const size_t n = blk.map.size();
  BlockDecomposition D;
  D.block = block_index;
  for (auto& e : blk.map) {
    int twice = dim_group - cat.classes[e.cls].dim - blk.levi_codim();
    if (twice < 0 || twice % 2 != 0)
      throw std::logic_error("block " + blk.name + ": odd or negative exponent at " + cat.classes[e.cls].label);
    D.dshift.push_back(twice / 2);
  }
  D.order.resize(n);
  for (size_t i = 0; i < n; ++i) D.order[i] = static_cast<int>(i);
  std::sort(D.order.begin(), D.order.end(), [&](int a, int b) {
    const auto& ea = blk.map[a];
    const auto& eb = blk.map[b];
    int da = cat.classes[ea.cls].dim, db = cat.classes[eb.cls].dim;
    if (da != db) return da < db;
    if (ea.cls != eb.cls) return ea.cls < eb.cls;
    return ea.local_system < eb.local_system;
  });

  D.omega = zeros(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      D.omega[i][j] = omega_pairing(blk, blk.map[i].character, blk.map[j].character);
      D.omega[j][i] = D.omega[i][j];
    }

  // groups of entries on the same class, in pivot order
  std::vector<std::vector<int>> groups;
  for (int e : D.order) {
    if (!groups.empty() && blk.map[groups.back().front()].cls == blk.map[e].cls)
      groups.back().push_back(e);
    else
      groups.push_back({e});
  }

  Matrix scaled = zeros(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) scaled[i][j] = D.omega[i][j] * q_power(-(D.dshift[i] + D.dshift[j]));

  auto sub = [](const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix r = zeros(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) r[i][j] = m[rows[i]][cols[j]];
    return r;
  };

  D.unitriangular = zeros(n, n);
  D.lambda = zeros(n, n);
  for (size_t i = 0; i < n; ++i) D.unitriangular[i][i] = RatFunc(1L);

  // Blocked LDL^T: scaled = L Lambda L^T with L unitriangular by class groups.
  for (size_t k = 0; k < groups.size(); ++k) {
    const auto& gk = groups[k];
    auto accumulated = [&](const std::vector<int>& gi) {
      Matrix acc = zeros(gi.size(), gk.size());
      for (size_t l = 0; l < k; ++l) {
        Matrix Lil = sub(D.unitriangular, gi, groups[l]);
        Matrix Lkl = sub(D.unitriangular, gk, groups[l]);
        Matrix term = mul(mul(Lil, sub(D.lambda, groups[l], groups[l])), transpose(Lkl));
        for (size_t a = 0; a < gi.size(); ++a)
          for (size_t b = 0; b < gk.size(); ++b) acc[a][b] += term[a][b];
      }
      return acc;
    };
    Matrix lam = sub(scaled, gk, gk);
    Matrix acc = accumulated(gk);
    for (size_t a = 0; a < gk.size(); ++a)
      for (size_t b = 0; b < gk.size(); ++b) {
        lam[a][b] -= acc[a][b];
        D.lambda[gk[a]][gk[b]] = lam[a][b];
      }
    auto lam_inv = invert(lam);
    if (!lam_inv)
      throw std::runtime_error("block " + blk.name + ": decomposition infeasible at pivot " +
                               cat.classes[blk.map[gk.front()].cls].label);
    for (size_t i = k + 1; i < groups.size(); ++i) {
      const auto& gi = groups[i];
      Matrix rhs = sub(scaled, gi, gk);
      Matrix acci = accumulated(gi);
      for (size_t a = 0; a < gi.size(); ++a)
        for (size_t b = 0; b < gk.size(); ++b) rhs[a][b] -= acci[a][b];
      Matrix Lik = mul(rhs, *lam_inv);
      for (size_t a = 0; a < gi.size(); ++a)
        for (size_t b = 0; b < gk.size(); ++b) D.unitriangular[gi[a]][gk[b]] = Lik[a][b];
    }
  }

  D.P.assign(n, std::vector<RationalPoly>(n));
  for (size_t chi = 0; chi < n; ++chi)
    for (size_t iota = 0; iota < n; ++iota) {
      RatFunc v = D.unitriangular[chi][iota] * q_power(D.dshift[chi]);
      if (!v.is_polynomial())
        throw std::runtime_error("block " + blk.name + ": non-polynomial coefficient at " +
                                 cat.classes[blk.map[iota].cls].label);
      D.P[iota][chi] = v.as_polynomial();
    }

  // The norms must be recovered from P and Lambda.
  for (size_t chi = 0; chi < n; ++chi) {
    RatFunc s(0L);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (!D.lambda[a][b].is_zero())
          s += RatFunc(D.P[a][chi]) * D.lambda[a][b] * RatFunc(D.P[b][chi]);
    if (s != D.omega[chi][chi]) throw std::logic_error("block " + blk.name + ": decomposition does not reproduce norms");
  }
  return D;
}

// ---------------------------------------------------------------- class sizes

std::vector<RationalPoly> finite_class_sizes(const UnipotentClassCatalog& cat, const std::vector<SpringerBlock>& blocks,
                                             const std::vector<BlockDecomposition>& decomps,
                                             const RationalPoly& group_order) {
  std::vector<RationalPoly> out;
  for (size_t c = 0; c < cat.classes.size(); ++c) {
    const auto& ac = cat.classes[c];
    Bits triv(ac.coord_rank, 0);
    // pairs on this class: block, entry
    std::vector<std::pair<int, int>> pairs;
    for (size_t b = 0; b < blocks.size(); ++b)
      for (size_t e = 0; e < blocks[b].map.size(); ++e)
        if (blocks[b].map[e].cls == static_cast<int>(c)) pairs.push_back({static_cast<int>(b), static_cast<int>(e)});
    auto triv_it = std::find_if(pairs.begin(), pairs.end(), [&](auto& p) {
      return blocks[p.first].map[p.second].local_system == triv;
    });
    if (triv_it == pairs.end()) throw std::logic_error("class " + ac.label + " has no trivial local system");
    auto [tb, te] = *triv_it;
    std::map<Bits, RatFunc> fhat;
    for (auto& [b, e] : pairs) {
      const Bits& psi = blocks[b].map[e].local_system;
      fhat[psi] = b == tb ? decomps[b].lambda[te][e] : RatFunc(0L);
    }
    auto fhat_of = [&](const Bits& psi) {
      auto it = fhat.find(psi);
      return it == fhat.end() ? RatFunc(0L) : it->second;
    };
    for (auto& [b1, e1] : pairs)
      for (auto& [b2, e2] : pairs) {
        if (b1 != b2) continue;
        Bits psi = add_bits(blocks[b1].map[e1].local_system, blocks[b2].map[e2].local_system);
        if (decomps[b1].lambda[e1][e2] != fhat_of(psi))
          throw std::runtime_error("class " + ac.label + ": Gram matrix is not a class function on A(u)");
      }
    for (auto& a : ac.finite) {
      RatFunc f(0L);
      for (auto& [psi, v] : fhat) f += v * RatFunc(RationalPoly(pairing(psi, a)));
      f = f * RatFunc(group_order) * RatFunc(Rational(1, ac.agroup_order));
      if (!f.is_polynomial()) throw std::runtime_error("class " + ac.label + ": size is not a polynomial");
      out.push_back(f.as_polynomial());
    }
  }
  return out;
}

// ---------------------------------------------------------------- assembly

GreenTable assemble(const GroupDatum& G, const std::vector<BlockDecomposition>& decomps) {
  GreenTable t;
  t.group = G.name;
  t.order = G.order();
  auto sizes = finite_class_sizes(G.catalog, G.blocks, decomps, t.order);
  auto refs = G.catalog.finite_classes();
  for (size_t r = 0; r < refs.size(); ++r)
    t.rows.push_back({G.catalog.finite_label(refs[r]), refs[r].cls, refs[r].counter, sizes[r]});

  for (size_t b = 0; b < G.blocks.size(); ++b) {
    const auto& blk = G.blocks[b];
    const auto& D = decomps[b];
    const FiniteGroup& Q = blk.rel->quotient();
    auto Y = y_functions(G.catalog, G.signs, blk);
    const size_t n = blk.map.size();
    for (size_t c = 0; c < Q.num_classes(); ++c) {
      int rep = Q.class_rep(static_cast<int>(c));
      GreenColumn col;
      col.block = static_cast<int>(b);
      col.block_name = blk.name;
      col.levi = blk.levi;
      col.w = Q.word(rep);
      col.w_class = static_cast<int>(c);
      col.element = blk.rel->representative(rep);
      col.norm = RatFunc(Rational(Q.centralizer_order(static_cast<int>(c)))) * q_power(blk.d()) /
                 RatFunc(blk.rel->z0_order(rep));
      col.label = blk.name + ":" + (col.w.empty() ? std::string("e") : [&] {
        std::string s;
        for (int x : col.w) s += std::to_string(x);
        return s;
      }());
      t.cols.push_back(col);
    }
    // coefficient of Y_iota in Q_w: sum_chi chi(w) P[iota][chi]
    std::vector<std::vector<RationalPoly>> coef(Q.num_classes(), std::vector<RationalPoly>(n));
    for (size_t c = 0; c < Q.num_classes(); ++c)
      for (size_t iota = 0; iota < n; ++iota)
        for (size_t chi = 0; chi < n; ++chi)
          coef[c][iota] += D.P[iota][chi] * Rational(blk.map[chi].character[c]);
    if (t.values.empty()) t.values.assign(t.rows.size(), {});
    for (size_t r = 0; r < t.rows.size(); ++r) {
      const auto& ac = G.catalog.classes[t.rows[r].cls];
      for (size_t c = 0; c < Q.num_classes(); ++c) {
        SymExpr v(0L);
        for (size_t iota = 0; iota < n; ++iota)
          if (Y[iota].cls == t.rows[r].cls && !coef[c][iota].is_zero())
            v += SymExpr(coef[c][iota]) * Y[iota].value(ac, t.rows[r].counter - 1);
        t.values[r].push_back(v);
      }
    }
  }
  return t;
}

GreenTable green_table(const GroupDatum& G) {
  std::vector<std::future<BlockDecomposition>> jobs;
  for (size_t b = 0; b < G.blocks.size(); ++b)
    jobs.push_back(std::async(std::launch::async, [&G, b] {
      return lusztig_shoji(G.catalog, G.blocks[b], static_cast<int>(b), G.dim);
    }));
  std::vector<BlockDecomposition> decomps;
  for (auto& j : jobs) decomps.push_back(j.get());
  return assemble(G, decomps);
}

// ---------------------------------------------------------------- covering transfer

GreenTable transfer_via_covering(const GreenTable& sl2_table, const LeviData& M) {
  const auto& cov = M.covering;
  const GroupDatum& S = *cov.factor;
  const CoxeterGroup& W = *M.levi.parent->weyl;
  const FiniteGroup& WG = W.group();
  const size_t nf = cov.factor_nodes.size();
  const int zr = S.center_rank;
  if (sl2_table.group != S.name) throw std::invalid_argument("factor table is for " + sl2_table.group);

  for (int node : M.levi.nodes)
    if (WG.mul(M.levi.twist, W.generator(node)) != WG.mul(W.generator(node), M.levi.twist))
      throw std::invalid_argument("twist must centralize the Levi's Weyl group");

  GreenTable t;
  t.group = M.levi.parent->name + "/levi" + [&] {
    std::string s;
    for (int x : M.levi.nodes) s += std::to_string(x);
    return s;
  }();
  t.order = M.levi.order();
  {
    RationalPoly expect = M.levi.z0_order();
    for (size_t f = 0; f < nf; ++f) expect *= S.order();
    if (expect != t.order) throw std::logic_error("Levi order does not match its covering");
  }

  // rows: finite classes of M, each a coset of factor finite classes
  std::vector<std::vector<std::vector<int>>> row_members;  // row -> coset member -> factor sl2 row index
  auto factor_row = [&](const std::string& label, const Bits& part) {
    const auto& fac = S.catalog.at(label);
    auto it = std::find(fac.finite.begin(), fac.finite.end(), part);
    if (it == fac.finite.end()) throw std::logic_error("component group element not in factor catalog");
    std::string flabel = label + "," + std::to_string(it - fac.finite.begin() + 1);
    for (size_t r = 0; r < sl2_table.rows.size(); ++r)
      if (sl2_table.rows[r].label == flabel) return static_cast<int>(r);
    throw std::invalid_argument("factor table lacks row " + flabel);
  };
  for (size_t c = 0; c < M.catalog.classes.size(); ++c) {
    auto quo = quotient_component_group(cov, M.factor_labels[c]);
    for (size_t k = 0; k < quo.cosets.size(); ++k) {
      std::vector<std::vector<int>> members;
      RationalPoly size;
      for (auto& a : quo.cosets[k]) {
        std::vector<int> fr;
        size_t off = 0;
        RationalPoly s(1);
        for (size_t f = 0; f < nf; ++f) {
          const auto& label = M.factor_labels[c][f];
          int rk = S.catalog.at(label).coord_rank;
          Bits part(a.begin() + off, a.begin() + off + rk);
          off += rk;
          int r = factor_row(label, part);
          fr.push_back(r);
          s *= sl2_table.rows[r].size;
        }
        size += s;
        members.push_back(fr);
      }
      t.rows.push_back({M.catalog.finite_label({static_cast<int>(c), static_cast<int>(k) + 1}), static_cast<int>(c),
                        static_cast<int>(k) + 1, size});
      row_members.push_back(members);
    }
  }

  // columns: tuples of factor columns whose central characters are trivial on the kernel
  const size_t nc = sl2_table.cols.size();
  std::vector<std::vector<int>> tuples;
  std::vector<int> idx(nf, 0);
  while (true) {
    bool ok = true;
    for (auto& k : cov.kernel) {
      int s = 0;
      for (size_t f = 0; f < nf; ++f) {
        const auto& cc = S.blocks[sl2_table.cols[idx[f]].block].central_character;
        for (int g = 0; g < zr; ++g) s += k[f * zr + g] * cc[g];
      }
      if (s % 2) ok = false;
    }
    if (ok) tuples.push_back(idx);
    int f = static_cast<int>(nf) - 1;
    while (f >= 0 && ++idx[f] == static_cast<int>(nc)) idx[f--] = 0;
    if (f < 0) break;
  }

  struct Pending {
    GreenColumn col;
    std::vector<int> tuple;
  };
  std::vector<Pending> pending;
  std::set<std::pair<int, int>> seen;
  for (auto& tup : tuples) {
    std::vector<int> I;
    int elem = WG.identity();
    for (size_t f = 0; f < nf; ++f) {
      const auto& sc = sl2_table.cols[tup[f]];
      if (!sc.levi.empty()) {
        I.push_back(cov.factor_nodes[f]);
        continue;
      }
      for (int letter : S.weyl->group().word(sc.element)) {
        if (letter != S.weyl->nodes().front()) throw std::logic_error("unexpected factor generator");
        elem = WG.mul(elem, W.generator(cov.factor_nodes[f]));
      }
    }
    std::sort(I.begin(), I.end());
    int b = -1;
    for (size_t k = 0; k < M.blocks.size(); ++k)
      if (M.blocks[k].levi == I) b = static_cast<int>(k);
    if (b < 0) throw DataError("Levi data has no block for cuspidal support " + std::to_string(I.size()));
    const auto& blk = M.blocks[b];
    const FiniteGroup& Q = blk.rel->quotient();
    int x = blk.rel->reduce(elem);
    int c = Q.class_of(x);
    if (!seen.insert({b, c}).second) throw std::logic_error("two factor tuples give the same Levi column");
    GreenColumn col;
    col.block = b;
    col.block_name = blk.name;
    col.levi = blk.levi;
    col.w_class = c;
    col.w = Q.word(Q.class_rep(c));
    col.element = blk.rel->representative(Q.class_rep(c));
    col.norm = RatFunc(Rational(Q.centralizer_order(c))) * q_power(blk.d()) /
               RatFunc(blk.rel->z0_order(Q.class_rep(c), M.levi.twist));
    col.label = blk.name + ":" + (col.w.empty() ? std::string("e") : [&] {
      std::string s;
      for (int v : col.w) s += std::to_string(v);
      return s;
    }());
    pending.push_back({col, tup});
  }
  size_t expected = 0;
  for (auto& blk : M.blocks) expected += blk.rel->quotient().num_classes();
  if (pending.size() != expected) throw std::logic_error("covering transfer does not produce every Levi column");
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return std::pair(a.col.block, a.col.w_class) < std::pair(b.col.block, b.col.w_class);
  });

  // Springer correspondence implied by the factors must agree with the Levi data
  for (size_t b = 0; b < M.blocks.size(); ++b) {
    const auto& blk = M.blocks[b];
    const FiniteGroup& Q = blk.rel->quotient();
    for (auto& e : blk.map) {
      std::string label;
      Bits ls;
      for (size_t f = 0; f < nf; ++f) {
        int node = cov.factor_nodes[f];
        bool cusp = std::find(blk.levi.begin(), blk.levi.end(), node) != blk.levi.end();
        const SpringerBlock& fb = S.blocks[cusp ? S.block_index(S.weyl->nodes()) : S.block_index({})];
        std::vector<int> fchar(fb.rel->quotient().num_classes(), 1);
        if (!cusp) {
          int xs = blk.rel->reduce(W.generator(node));
          int sv = e.character[Q.class_of(xs)];
          const FiniteGroup& FQ = fb.rel->quotient();
          for (size_t cc = 0; cc < FQ.num_classes(); ++cc)
            fchar[cc] = FQ.word(FQ.class_rep(static_cast<int>(cc))).empty() ? 1 : sv;
        }
        const SpringerEntry* hit = nullptr;
        for (auto& fe : fb.map)
          if (fe.character == fchar) hit = &fe;
        if (!hit) throw DataError("factor character not found for Levi block " + blk.name);
        label += (f ? "." : "") + S.catalog.classes[hit->cls].label;
        ls.insert(ls.end(), hit->local_system.begin(), hit->local_system.end());
      }
      const auto& ac = M.catalog.classes[e.cls];
      if (ac.label != label) throw DataError("Levi block " + blk.name + ": class " + ac.label + " should be " + label);
      if (e.local_system != ls)
        throw DataError("Levi block " + blk.name + ": local system mismatch at " + ac.label);
    }
  }

  for (auto& p : pending) t.cols.push_back(p.col);
  t.values.assign(t.rows.size(), {});
  for (size_t r = 0; r < t.rows.size(); ++r) {
    for (auto& p : pending) {
      std::optional<SymExpr> val;
      for (auto& members : row_members[r]) {
        SymExpr v(1L);
        for (size_t f = 0; f < nf; ++f) v *= sl2_table.values[members[f]][p.tuple[f]];
        if (val && *val != v) throw std::logic_error("factor product is not constant on a component coset");
        val = v;
      }
      t.values[r].push_back(*val);
    }
  }
  return t;
}

// ---------------------------------------------------------------- orthogonality

std::vector<OrthogonalityViolation> verify_orthogonality(const GreenTable& t) {
  std::vector<OrthogonalityViolation> out;
  const size_t nc = t.cols.size();
  for (size_t i = 0; i < nc; ++i)
    for (size_t j = i; j < nc; ++j) {
      SymExpr s(0L);
      for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto& a = t.values[r][i];
        const auto& b = t.values[r][j];
        if (a.is_zero() || b.is_zero()) continue;
        s += SymExpr(t.rows[r].size) * a * b;
      }
      RatFunc target = i == j ? t.cols[i].norm * RatFunc(t.order) : RatFunc(0L);
      SymExpr residual = s * SymExpr(target.den()) - SymExpr(target.num());
      if (!residual.is_zero()) out.push_back({static_cast<int>(i), static_cast<int>(j), residual});
    }
  return out;
}

// ---------------------------------------------------------------- JSON

json to_json(const GreenTable& t) {
  json rows = json::array(), cols = json::array(), values = json::array();
  for (auto& r : t.rows) rows.push_back({{"label", r.label}, {"size", to_json(r.size)}});
  for (auto& c : t.cols)
    cols.push_back({{"block", c.block_name},
                    {"levi", c.levi},
                    {"w", c.w},
                    {"norm_num", to_json(c.norm.num())},
                    {"norm_den", to_json(c.norm.den())}});
  for (auto& row : t.values) {
    json jr = json::array();
    for (auto& v : row) jr.push_back(to_json(v));
    values.push_back(jr);
  }
  return {{"group", t.group}, {"order", to_json(t.order)}, {"rows", rows}, {"cols", cols}, {"values", values}};
}

GreenTable green_table_from_json(const json& j) {
  try {
    GreenTable t;
    t.group = j.at("group").get<std::string>();
    if (j.contains("order")) t.order = poly_from_json(j["order"]);
    for (auto& r : j.at("rows")) {
      GreenRow row;
      row.label = r.at("label").get<std::string>();
      auto comma = row.label.rfind(',');
      if (comma != std::string::npos) row.counter = std::stoi(row.label.substr(comma + 1));
      row.cls = -1;
      row.size = poly_from_json(r.at("size"));
      t.rows.push_back(row);
    }
    // class indices in order of first appearance
    std::map<std::string, int> cls;
    for (auto& r : t.rows) {
      std::string base = r.label.substr(0, r.label.rfind(','));
      r.cls = cls.emplace(base, static_cast<int>(cls.size())).first->second;
    }
    std::map<std::string, int> block_ids;
    for (auto& c : j.at("cols")) {
      GreenColumn col;
      col.block_name = c.at("block").get<std::string>();
      col.block = block_ids.emplace(col.block_name, static_cast<int>(block_ids.size())).first->second;
      if (c.contains("levi")) col.levi = c["levi"].get<std::vector<int>>();
      col.w = c.at("w").get<std::vector<int>>();
      col.norm = RatFunc(poly_from_json(c.at("norm_num")), poly_from_json(c.at("norm_den")));
      std::string s;
      for (int v : col.w) s += std::to_string(v);
      col.label = col.block_name + ":" + (s.empty() ? "e" : s);
      col.element = -1;
      col.w_class = -1;
      t.cols.push_back(col);
    }
    for (auto& row : j.at("values")) {
      std::vector<SymExpr> vr;
      for (auto& v : row) vr.push_back(symexpr_from_json(v));
      if (vr.size() != t.cols.size()) throw std::invalid_argument("value row length does not match the columns");
      t.values.push_back(vr);
    }
    if (t.values.size() != t.rows.size()) throw std::invalid_argument("value row count does not match the rows");
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed Green table: ") + e.what());
  }
}

}  // namespace greenfn
