#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "greenfn/symring.hpp"

namespace greenfn {

// Permutation of a root set: image index of each root.
using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm inverse(const Perm& a);

// Finite group of root permutations given by labelled generators.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<Perm> gens, std::vector<int> labels, size_t degree);

  size_t order() const { return elems_.size(); }
  const Perm& element(int e) const { return elems_[e]; }
  int find(const Perm& p) const;  // -1 if absent
  int index_of(const Perm& p) const;
  int identity() const { return 0; }
  int mul(int a, int b) const { return mul_[a * elems_.size() + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& word(int e) const { return words_[e]; }  // shortlex-minimal, in labels
  int from_word(const std::vector<int>& w) const;
  const std::vector<int>& generators() const { return gens_; }
  const std::vector<int>& labels() const { return labels_; }
  int order_of(int e) const;

  size_t num_classes() const { return classes_.size(); }
  int class_of(int e) const { return class_of_[e]; }
  const std::vector<int>& class_elements(int c) const { return classes_[c]; }
  int class_size(int c) const { return static_cast<int>(classes_[c].size()); }
  int class_rep(int c) const { return reps_[c]; }
  long centralizer_order(int c) const { return static_cast<long>(order() / classes_[c].size()); }

  // Rows are irreducible characters, columns are classes; canonical row order.
  const std::vector<std::vector<int>>& char_table() const { return chars_; }
  int find_character(const std::vector<int>& values) const;  // -1 if not irreducible
  Rational inner_product(const std::vector<int>& a, const std::vector<int>& b) const;

 private:
  void enumerate(const std::vector<Perm>& gens);
  void build_classes();
  void build_characters();

  std::vector<Perm> elems_;
  std::map<Perm, int> index_;
  std::vector<int> mul_, inv_;
  std::vector<std::vector<int>> words_;
  std::vector<int> gens_, labels_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_, reps_;
  std::vector<std::vector<int>> chars_;
};

class CoxeterGroup {
 public:
  // Crystallographic finite types only (m in {2,3,4,6}).
  static std::shared_ptr<const CoxeterGroup> build(const std::vector<std::vector<int>>& coxeter_matrix,
                                                   std::vector<int> nodes = {});

  const FiniteGroup& group() const { return *group_; }
  const std::vector<int>& nodes() const { return nodes_; }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return m_; }
  int rank() const { return static_cast<int>(nodes_.size()); }
  int num_positive_roots() const { return static_cast<int>(roots_.size() / 2); }
  const std::vector<std::vector<int>>& roots() const { return roots_; }  // simple-root coordinates
  int simple_root(int node) const;
  int generator(int node) const;  // element index of s_node
  int node_position(int node) const;

  int length(int e) const;
  std::vector<std::vector<int>> matrix(int e) const;  // action on the root lattice, columns = images
  RationalPoly charpoly(int e) const;                 // det(q - w)
  std::vector<int> parabolic(const std::vector<int>& I) const;
  int longest(const std::vector<int>& I) const;
  bool permutes_simple(int e, const std::vector<int>& I) const;
  int element_from_word(const std::vector<int>& nodes) const;
  // Cycle lengths of e on the simple roots of I.
  std::vector<int> cycles_on(int e, const std::vector<int>& I) const;

 private:
  std::vector<int> nodes_;
  std::vector<std::vector<int>> m_;
  std::vector<std::vector<int>> roots_;
  std::unique_ptr<FiniteGroup> group_;
};

class RelativeWeylGroup;

// within: restrict to the parabolic subgroup of these nodes (defaults to all nodes).
std::shared_ptr<const RelativeWeylGroup> relative_weyl(std::shared_ptr<const CoxeterGroup> W,
                                                       const std::vector<int>& I,
                                                       std::optional<std::vector<int>> within = std::nullopt);

// N_W(W_I)/W_I realized as the complement of W_I: elements permuting the simple roots of I.
class RelativeWeylGroup {
 public:
  const CoxeterGroup& ambient() const { return *ambient_; }
  const std::vector<int>& levi() const { return I_; }
  const std::vector<int>& within() const { return within_; }
  const FiniteGroup& quotient() const { return *quotient_; }
  const std::vector<int>& generator_nodes() const { return quotient_->labels(); }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return m_; }
  int representative(int x) const;           // quotient element -> ambient element
  int reduce(int ambient_elem) const;        // element of N_W(W_I) -> quotient element
  std::optional<int> try_reduce(int ambient_elem) const;
  int class_of_ambient(int ambient_elem) const { return quotient_->class_of(reduce(ambient_elem)); }
  RationalPoly z0_order(int x, int twist_ambient = -1) const;  // |Z0(L_w)^F| for w = rep(x)*twist

 private:
  friend std::shared_ptr<const RelativeWeylGroup> relative_weyl(std::shared_ptr<const CoxeterGroup>,
                                                                 const std::vector<int>&,
                                                                 std::optional<std::vector<int>>);
  std::shared_ptr<const CoxeterGroup> ambient_;
  std::vector<int> I_, within_;
  std::unique_ptr<FiniteGroup> quotient_;
  std::vector<std::vector<int>> m_;
  std::vector<int> parabolic_I_;
};

struct FClassFusion {
  std::vector<int> map;  // source class -> target class
};

FClassFusion fuse(const RelativeWeylGroup& sub, const RelativeWeylGroup& over);

long centralizer_order(const FiniteGroup& W, int cls);
RationalPoly poincare_quotient(const CoxeterGroup& W, const std::vector<int>& I);

nlohmann::json export_group(const CoxeterGroup& W);

}  // namespace greenfn
