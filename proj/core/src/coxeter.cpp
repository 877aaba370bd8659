#include "greenfn/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace greenfn {

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

// Basis of the right nullspace of a (rows x cols) matrix.
std::vector<std::vector<Rational>> nullspace(QMatrix a, size_t cols) {
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][f];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<Perm> gens, std::vector<int> labels, size_t degree) : labels_(std::move(labels)) {
  if (gens.size() != labels_.size()) throw std::invalid_argument("generator/label count mismatch");
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  elems_.push_back(id);
  index_[id] = 0;
  words_.push_back({});
  enumerate(gens);
  build_classes();
  build_characters();
}

void FiniteGroup::enumerate(const std::vector<Perm>& gens) {
  constexpr size_t kMaxOrder = 100000;
  for (size_t head = 0; head < elems_.size(); ++head)
    for (size_t g = 0; g < gens.size(); ++g) {
      Perm y = compose(elems_[head], gens[g]);
      if (index_.count(y)) continue;
      if (elems_.size() >= kMaxOrder) throw std::runtime_error("group too large (not of finite small type)");
      index_[y] = static_cast<int>(elems_.size());
      std::vector<int> w = words_[head];
      w.push_back(labels_[g]);
      words_.push_back(w);
      elems_.push_back(std::move(y));
    }
  for (auto& g : gens) gens_.push_back(index_.at(g));
  const size_t n = elems_.size();
  mul_.assign(n * n, 0);
  inv_.assign(n, 0);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) mul_[a * n + b] = index_.at(compose(elems_[a], elems_[b]));
    inv_[a] = index_.at(inverse(elems_[a]));
  }
}

int FiniteGroup::find(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::index_of(const Perm& p) const {
  int i = find(p);
  if (i < 0) throw std::invalid_argument("element not in group");
  return i;
}

int FiniteGroup::from_word(const std::vector<int>& w) const {
  int e = identity();
  for (int l : w) {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw std::invalid_argument("unknown generator label " + std::to_string(l));
    e = mul(e, gens_[it - labels_.begin()]);
  }
  return e;
}

int FiniteGroup::order_of(int e) const {
  int k = 1;
  for (int x = e; x != identity(); x = mul(x, e)) ++k;
  return k;
}

void FiniteGroup::build_classes() {
  const int n = static_cast<int>(order());
  std::vector<int> seen(n, -1);
  std::vector<std::vector<int>> classes;
  for (int e = 0; e < n; ++e) {
    if (seen[e] >= 0) continue;
    std::vector<int> orbit{e};
    seen[e] = static_cast<int>(classes.size());
    for (size_t h = 0; h < orbit.size(); ++h)
      for (int g : gens_) {
        int y = mul(mul(g, orbit[h]), inv(g));
        if (seen[y] < 0) {
          seen[y] = static_cast<int>(classes.size());
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(orbit);
  }
  // elements are in shortlex order, so the smallest index is the shortlex-minimal word
  std::sort(classes.begin(), classes.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    size_t la = words_[a[0]].size(), lb = words_[b[0]].size();
    if (la != lb) return la < lb;
    if (a.size() != b.size()) return a.size() < b.size();
    return a[0] < b[0];
  });
  classes_ = classes;
  class_of_.assign(n, 0);
  reps_.clear();
  for (size_t c = 0; c < classes_.size(); ++c) {
    for (int e : classes_[c]) class_of_[e] = static_cast<int>(c);
    reps_.push_back(classes_[c][0]);
  }
}

void FiniteGroup::build_characters() {
  const size_t k = classes_.size();
  // a[j][kk][l] = #{x in C_j : x^-1 g_l in C_kk}
  std::vector<std::vector<std::vector<long>>> a(k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
  for (size_t l = 0; l < k; ++l)
    for (size_t j = 0; j < k; ++j)
      for (int x : classes_[j]) ++a[j][class_of_[mul(inv(x), reps_[l])]][l];

  std::vector<std::vector<std::vector<Rational>>> spaces;
  {
    std::vector<std::vector<Rational>> basis(k, std::vector<Rational>(k, 0));
    for (size_t i = 0; i < k; ++i) basis[i][i] = 1;
    spaces.push_back(basis);
  }
  for (size_t j = 1; j < k; ++j) {
    std::vector<std::vector<std::vector<Rational>>> next;
    for (auto& B : spaces) {
      if (B.size() == 1) {
        next.push_back(B);
        continue;
      }
      const long bound = static_cast<long>(classes_[j].size());
      size_t found = 0;
      for (long lambda = -bound; lambda <= bound && found < B.size(); ++lambda) {
        // rows of (M_j - lambda) * B^T
        QMatrix y(k, std::vector<Rational>(B.size(), 0));
        for (size_t r = 0; r < k; ++r)
          for (size_t c = 0; c < B.size(); ++c) {
            Rational s = 0;
            for (size_t l = 0; l < k; ++l) {
              long m = a[j][r][l] - (r == l ? lambda : 0);
              if (m != 0) s += m * B[c][l];
            }
            y[r][c] = s;
          }
        auto ns = nullspace(y, B.size());
        if (ns.empty()) continue;
        std::vector<std::vector<Rational>> sub;
        for (auto& coef : ns) {
          std::vector<Rational> v(k, 0);
          for (size_t c = 0; c < B.size(); ++c)
            if (coef[c] != 0)
              for (size_t l = 0; l < k; ++l) v[l] += coef[c] * B[c][l];
          sub.push_back(v);
        }
        found += sub.size();
        next.push_back(sub);
      }
      if (found != B.size()) throw std::runtime_error("character table is not rational");
    }
    spaces = next;
  }
  const Rational order_q(static_cast<long>(order()));
  chars_.clear();
  for (auto& B : spaces) {
    if (B.size() != 1) throw std::runtime_error("class algebra did not split");
    std::vector<Rational> w = B[0];
    if (w[0] == 0) throw std::runtime_error("degenerate eigenvector");
    Rational s0 = w[0];
    for (auto& x : w) x /= s0;
    Rational denom = 0;
    for (size_t l = 0; l < k; ++l) denom += w[l] * w[l] / static_cast<long>(classes_[l].size());
    Rational deg2 = order_q / denom;
    mpz_class d = sqrt(deg2.get_num());
    if (deg2.get_den() != 1 || d * d != deg2.get_num()) throw std::runtime_error("non-integral character degree");
    std::vector<int> chi(k);
    for (size_t l = 0; l < k; ++l) {
      Rational v = Rational(d) * w[l] / static_cast<long>(classes_[l].size());
      if (v.get_den() != 1) throw std::runtime_error("non-integral character value");
      chi[l] = static_cast<int>(v.get_num().get_si());
    }
    chars_.push_back(chi);
  }
  std::sort(chars_.begin(), chars_.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
    if (x[0] != y[0]) return x[0] < y[0];
    return x > y;
  });
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      if (inner_product(chars_[i], chars_[j]) != (i == j ? 1 : 0))
        throw std::runtime_error("character table orthogonality failed");
}

int FiniteGroup::find_character(const std::vector<int>& values) const {
  for (size_t i = 0; i < chars_.size(); ++i)
    if (chars_[i] == values) return static_cast<int>(i);
  return -1;
}

Rational FiniteGroup::inner_product(const std::vector<int>& a, const std::vector<int>& b) const {
  Rational s = 0;
  for (size_t l = 0; l < classes_.size(); ++l) s += static_cast<long>(classes_[l].size()) * a[l] * b[l];
  return s / static_cast<long>(order());
}

// ---------------------------------------------------------------- CoxeterGroup

std::shared_ptr<const CoxeterGroup> CoxeterGroup::build(const std::vector<std::vector<int>>& m,
                                                        std::vector<int> nodes) {
  const size_t n = m.size();
  if (nodes.empty()) {
    nodes.resize(n);
    std::iota(nodes.begin(), nodes.end(), 1);
  }
  if (nodes.size() != n) throw std::invalid_argument("node labels do not match Coxeter matrix");
  std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n || m[i][i] != 1) throw std::invalid_argument("malformed Coxeter matrix");
    A[i][i] = 2;
    for (size_t j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i]) throw std::invalid_argument("Coxeter matrix not symmetric");
      switch (m[i][j]) {
        case 2: break;
        case 3: A[i][j] = A[j][i] = -1; break;
        case 4: A[i][j] = -1; A[j][i] = -2; break;
        case 6: A[i][j] = -1; A[j][i] = -3; break;
        default: throw std::invalid_argument("not a finite crystallographic Coxeter matrix");
      }
    }
  }
  auto reflect = [&](size_t i, const std::vector<int>& v) {
    std::vector<int> r = v;
    int s = 0;
    for (size_t j = 0; j < n; ++j) s += A[i][j] * v[j];
    r[i] -= s;
    return r;
  };
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> all;
  for (size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    if (seen.insert(e).second) all.push_back(e);
  }
  for (size_t h = 0; h < all.size(); ++h) {
    if (all.size() > 2000) throw std::invalid_argument("root system is infinite");
    for (size_t i = 0; i < n; ++i) {
      auto r = reflect(i, all[h]);
      if (seen.insert(r).second) all.push_back(r);
    }
  }
  auto height = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
  std::vector<std::vector<int>> pos;
  for (auto& r : all)
    if (height(r) > 0) pos.push_back(r);
  std::sort(pos.begin(), pos.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    if (height(a) != height(b)) return height(a) < height(b);
    return a > b;
  });
  auto g = std::shared_ptr<CoxeterGroup>(new CoxeterGroup());
  g->nodes_ = nodes;
  g->m_ = m;
  g->roots_ = pos;
  for (auto& r : pos) {
    std::vector<int> neg(r);
    for (auto& x : neg) x = -x;
    g->roots_.push_back(neg);
  }
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < g->roots_.size(); ++i) idx[g->roots_[i]] = static_cast<int>(i);
  std::vector<Perm> gens;
  for (size_t i = 0; i < n; ++i) {
    Perm p(g->roots_.size());
    for (size_t r = 0; r < g->roots_.size(); ++r) p[r] = idx.at(reflect(i, g->roots_[r]));
    gens.push_back(p);
  }
  g->group_ = std::make_unique<FiniteGroup>(gens, nodes, g->roots_.size());
  return g;
}

int CoxeterGroup::node_position(int node) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end()) throw std::invalid_argument("invalid node " + std::to_string(node));
  return static_cast<int>(it - nodes_.begin());
}

int CoxeterGroup::simple_root(int node) const {
  std::vector<int> e(nodes_.size(), 0);
  e[node_position(node)] = 1;
  for (size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == e) return static_cast<int>(i);
  throw std::logic_error("simple root missing");
}

int CoxeterGroup::generator(int node) const { return group_->generators()[node_position(node)]; }

int CoxeterGroup::length(int e) const {
  const Perm& p = group_->element(e);
  const int N = num_positive_roots();
  int l = 0;
  for (int i = 0; i < N; ++i)
    if (p[i] >= N) ++l;
  return l;
}

std::vector<std::vector<int>> CoxeterGroup::matrix(int e) const {
  const size_t n = nodes_.size();
  std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
  const Perm& p = group_->element(e);
  for (size_t j = 0; j < n; ++j) {
    const auto& img = roots_[p[simple_root(nodes_[j])]];
    for (size_t i = 0; i < n; ++i) M[i][j] = img[i];
  }
  return M;
}

RationalPoly CoxeterGroup::charpoly(int e) const {
  auto M = matrix(e);
  const size_t n = M.size();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RationalPoly det;
  do {
    int sgn = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    RationalPoly term(sgn);
    for (size_t i = 0; i < n; ++i) {
      RationalPoly entry(-M[i][perm[i]]);
      if (i == perm[i]) entry += RationalPoly::q();
      term *= entry;
    }
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<int> CoxeterGroup::parabolic(const std::vector<int>& I) const {
  std::vector<int> gens;
  for (int i : I) gens.push_back(generator(i));
  std::vector<int> out{group_->identity()};
  std::set<int> seen{group_->identity()};
  for (size_t h = 0; h < out.size(); ++h)
    for (int g : gens) {
      int y = group_->mul(out[h], g);
      if (seen.insert(y).second) out.push_back(y);
    }
  std::sort(out.begin(), out.end());
  return out;
}

int CoxeterGroup::longest(const std::vector<int>& I) const {
  int best = group_->identity(), bl = 0;
  for (int e : parabolic(I))
    if (length(e) > bl) {
      bl = length(e);
      best = e;
    }
  return best;
}

bool CoxeterGroup::permutes_simple(int e, const std::vector<int>& I) const {
  std::set<int> simple;
  for (int i : I) simple.insert(simple_root(i));
  const Perm& p = group_->element(e);
  for (int s : simple)
    if (!simple.count(p[s])) return false;
  return true;
}

int CoxeterGroup::element_from_word(const std::vector<int>& w) const { return group_->from_word(w); }

std::vector<int> CoxeterGroup::cycles_on(int e, const std::vector<int>& I) const {
  if (!permutes_simple(e, I)) throw std::invalid_argument("element does not permute the simple roots of I");
  const Perm& p = group_->element(e);
  std::set<int> todo;
  for (int i : I) todo.insert(simple_root(i));
  std::vector<int> out;
  while (!todo.empty()) {
    int start = *todo.begin(), len = 0;
    for (int r = start;; ) {
      todo.erase(r);
      ++len;
      r = p[r];
      if (r == start) break;
    }
    out.push_back(len);
  }
  return out;
}

// ---------------------------------------------------------------- RelativeWeylGroup

std::shared_ptr<const RelativeWeylGroup> relative_weyl(std::shared_ptr<const CoxeterGroup> W,
                                                       const std::vector<int>& I,
                                                       std::optional<std::vector<int>> within) {
  std::vector<int> outer = within ? *within : W->nodes();
  for (int i : outer) W->node_position(i);
  for (int i : I)
    if (std::find(outer.begin(), outer.end(), i) == outer.end())
      throw std::invalid_argument("node " + std::to_string(i) + " outside the ambient node set");
  auto R = std::shared_ptr<RelativeWeylGroup>(new RelativeWeylGroup());
  R->ambient_ = W;
  R->I_ = I;
  std::sort(R->I_.begin(), R->I_.end());
  R->within_ = outer;
  R->parabolic_I_ = W->parabolic(R->I_);
  const FiniteGroup& G = W->group();
  const int w0I = W->longest(R->I_);
  std::vector<Perm> gens;
  std::vector<int> labels;
  for (int j : outer) {
    if (std::find(R->I_.begin(), R->I_.end(), j) != R->I_.end()) continue;
    std::vector<int> J = R->I_;
    J.push_back(j);
    int n = G.mul(W->longest(J), w0I);
    if (!W->permutes_simple(n, R->I_)) continue;
    gens.push_back(G.element(n));
    labels.push_back(j);
  }
  size_t complement = 0;
  for (int e : W->parabolic(outer))
    if (W->permutes_simple(e, R->I_)) ++complement;
  R->quotient_ = std::make_unique<FiniteGroup>(gens, labels, W->roots().size());
  if (R->quotient_->order() != complement)
    throw std::runtime_error("relative Weyl group is not generated by its longest-element generators");
  const auto& qg = R->quotient_->generators();
  R->m_.assign(qg.size(), std::vector<int>(qg.size(), 1));
  for (size_t a = 0; a < qg.size(); ++a)
    for (size_t b = 0; b < qg.size(); ++b)
      if (a != b) R->m_[a][b] = R->quotient_->order_of(R->quotient_->mul(qg[a], qg[b]));
  return R;
}

int RelativeWeylGroup::representative(int x) const { return ambient_->group().index_of(quotient_->element(x)); }

std::optional<int> RelativeWeylGroup::try_reduce(int e) const {
  const FiniteGroup& G = ambient_->group();
  for (int x : parabolic_I_) {
    int y = G.mul(e, x);
    if (ambient_->permutes_simple(y, I_)) {
      int q = quotient_->find(G.element(y));
      if (q < 0) return std::nullopt;
      return q;
    }
  }
  return std::nullopt;
}

int RelativeWeylGroup::reduce(int e) const {
  auto r = try_reduce(e);
  if (!r) throw std::invalid_argument("element does not normalize the parabolic subgroup");
  return *r;
}

RationalPoly RelativeWeylGroup::z0_order(int x, int twist) const {
  const FiniteGroup& G = ambient_->group();
  int w = representative(x);
  if (twist >= 0) w = G.mul(w, twist);
  RationalPoly p = ambient_->charpoly(w);
  for (int len : ambient_->cycles_on(w, I_)) {
    auto [quo, rem] = RationalPoly::divmod(p, RationalPoly::q(len) - RationalPoly(1));
    if (!rem.is_zero()) throw std::logic_error("torus order not divisible by Levi factor");
    p = quo;
  }
  return p;
}

FClassFusion fuse(const RelativeWeylGroup& sub, const RelativeWeylGroup& over) {
  if (&sub.ambient() != &over.ambient() || sub.levi() != over.levi())
    throw std::invalid_argument("fusion requires the same ambient group and the same Levi");
  FClassFusion f;
  const FiniteGroup& Q = sub.quotient();
  for (size_t c = 0; c < Q.num_classes(); ++c) {
    int target = -1;
    for (int x : Q.class_elements(static_cast<int>(c))) {
      auto y = over.try_reduce(sub.representative(x));
      if (!y) throw std::invalid_argument("representative does not normalize W_I in the overgroup");
      int t = over.quotient().class_of(*y);
      if (target >= 0 && t != target) throw std::logic_error("fusion not constant on a class");
      target = t;
    }
    f.map.push_back(target);
  }
  return f;
}

long centralizer_order(const FiniteGroup& W, int cls) { return W.centralizer_order(cls); }

RationalPoly poincare_quotient(const CoxeterGroup& W, const std::vector<int>& I) {
  const FiniteGroup& G = W.group();
  RationalPoly p;
  for (int e = 0; e < static_cast<int>(G.order()); ++e) {
    int l = W.length(e);
    bool minimal = true;
    for (int i : I)
      if (W.length(G.mul(e, W.generator(i))) < l) minimal = false;
    if (minimal) p += RationalPoly::q(static_cast<unsigned>(l));
  }
  return p;
}

nlohmann::json export_group(const CoxeterGroup& W) {
  const FiniteGroup& G = W.group();
  nlohmann::json classes = nlohmann::json::array();
  for (size_t c = 0; c < G.num_classes(); ++c)
    classes.push_back({{"word", G.word(G.class_rep(static_cast<int>(c)))}, {"size", G.class_size(static_cast<int>(c))}});
  return {{"coxeter_matrix", W.coxeter_matrix()},
          {"nodes", W.nodes()},
          {"order", G.order()},
          {"classes", classes},
          {"characters", G.char_table()}};
}

}  // namespace greenfn
