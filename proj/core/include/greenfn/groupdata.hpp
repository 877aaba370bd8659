#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "greenfn/coxeter.hpp"
#include "greenfn/symring.hpp"

namespace greenfn {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Elements and characters of elementary abelian 2-groups, as bit vectors.
using Bits = std::vector<int>;
int pairing(const Bits& chi, const Bits& a);  // (-1)^(chi . a)

struct AlgebraicClass {
  std::string label;
  int dim = 0;
  int coord_rank = 0;              // A(u) is a quotient of Z2^coord_rank
  int agroup_order = 1;
  std::vector<Bits> finite;        // one representative per finite class, split class first
  std::vector<Bits> center_image;  // image of each center generator in Z2^coord_rank
};

struct FiniteClassRef {
  int cls;
  int counter;  // 1-based
};

class UnipotentClassCatalog {
 public:
  std::vector<AlgebraicClass> classes;

  int index(const std::string& label) const;
  const AlgebraicClass& at(const std::string& label) const { return classes[index(label)]; }
  std::vector<FiniteClassRef> finite_classes() const;
  size_t num_finite() const { return finite_classes().size(); }
  std::string finite_label(const FiniteClassRef& r) const;
};

int class_dimension(const UnipotentClassCatalog& cat, const std::string& label);

struct SpringerEntry {
  int cls;
  Bits local_system;
  std::vector<int> character;  // values on the relative Weyl group's classes (computed order)
};

struct SpringerBlock {
  std::string name;
  std::vector<int> levi;
  std::string cusp_class;
  Bits cusp_local_system;
  int cusp_dim = 0;
  int dim_levi = 0;
  int dim_z0 = 0;
  Bits central_character;
  std::shared_ptr<const RelativeWeylGroup> rel;
  std::vector<SpringerEntry> map;

  int d() const { return cusp_dim - dim_levi + dim_z0; }
  // dim L - dim C for the cuspidal class, the shift in the exponents d_iota
  int levi_codim() const { return dim_levi - cusp_dim; }
};

struct SignIndeterminate {
  std::string name;
  int cls;
  Bits local_system;
};

struct GroupDatum {
  std::string name;
  int dim = 0;
  int center_rank = 0;
  std::shared_ptr<const CoxeterGroup> weyl;
  UnipotentClassCatalog catalog;
  std::vector<SpringerBlock> blocks;
  std::vector<SignIndeterminate> signs;

  int rank() const { return weyl->rank(); }
  int num_positive_roots() const { return weyl->num_positive_roots(); }
  RationalPoly order() const;  // q^N (q-1)^r sum_w q^l(w)
  int block_index(const std::vector<int>& levi) const;
};

struct Levi {
  std::shared_ptr<const GroupDatum> parent;
  std::vector<int> nodes;
  std::shared_ptr<const RelativeWeylGroup> rel;  // N_W(W_I)/W_I
  int twist_class = 0;                          // class in rel's quotient
  int twist = 0;                                // ambient representative

  int num_positive_roots() const;
  RationalPoly z0_order() const;
  RationalPoly order() const;
};

// twist: "split" or "twisted" (the unique nontrivial F-class when there are exactly two)
Levi make_levi(std::shared_ptr<const GroupDatum> G, const std::vector<int>& I, const std::string& twist);

struct CoveringData {
  std::vector<int> factor_nodes;
  std::shared_ptr<const GroupDatum> factor;  // every factor is a copy of this group
  std::vector<Bits> kernel;                  // generators in the product of centers
};

struct ComponentQuotient {
  int order = 1;
  std::vector<Bits> reps;                 // lexicographically least coset member, increasing
  std::vector<std::vector<Bits>> cosets;  // members of each coset
  std::vector<Bits> kbar;                 // image of the kernel
};

// factor_labels: the class of each factor.
ComponentQuotient quotient_component_group(const CoveringData& cov, const std::vector<std::string>& factor_labels);

struct LeviData {
  Levi levi;
  CoveringData covering;
  UnipotentClassCatalog catalog;
  std::vector<std::vector<std::string>> factor_labels;  // per algebraic class
  std::vector<SpringerBlock> blocks;
};

std::string default_data_dir();
std::shared_ptr<const GroupDatum> load_group(const std::string& data_dir, const std::string& name);
LeviData load_levi124(const std::string& data_dir, std::shared_ptr<const GroupDatum> spin8,
                      std::shared_ptr<const GroupDatum> sl2, const std::string& twist);

// Joint bijectivity of the blocks onto the pairs (class, character of A(u)); returns uncovered pairs.
std::vector<std::string> springer_coverage_gaps(const UnipotentClassCatalog& cat,
                                                const std::vector<SpringerBlock>& blocks);
// kbars[c]: image of the covering kernel in A(u) for class c; only characters trivial on it count.
std::vector<std::string> springer_coverage_gaps(const UnipotentClassCatalog& cat,
                                                const std::vector<SpringerBlock>& blocks,
                                                const std::vector<std::vector<Bits>>& kbars);

}  // namespace greenfn
