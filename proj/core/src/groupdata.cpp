#include "greenfn/groupdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#ifndef GREENFN_DEFAULT_DATA_DIR
#define GREENFN_DEFAULT_DATA_DIR "data"
#endif

namespace greenfn {

using nlohmann::json;

int pairing(const Bits& chi, const Bits& a) {
  if (chi.size() != a.size()) throw std::invalid_argument("character/element rank mismatch");
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += chi[i] * a[i];
  return s % 2 == 0 ? 1 : -1;
}

namespace {

std::string bits_string(const Bits& b) {
  std::string s = "(";
  for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

std::vector<Bits> all_bits(int n) {
  std::vector<Bits> out;
  for (int m = 0; m < (1 << n); ++m) {
    Bits b(n);
    for (int i = 0; i < n; ++i) b[i] = (m >> (n - 1 - i)) & 1;
    out.push_back(b);
  }
  return out;
}

Bits add_bits(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % 2;
  return r;
}

std::vector<Bits> span(const std::vector<Bits>& gens, int n) {
  std::set<Bits> s{Bits(n, 0)};
  for (auto& g : gens) {
    std::set<Bits> next = s;
    for (auto& x : s) next.insert(add_bits(x, g));
    s = next;
  }
  return {s.begin(), s.end()};
}

// Characters of Z2^n trivial on the subgroup K.
std::vector<Bits> characters_trivial_on(const std::vector<Bits>& K, int n) {
  std::vector<Bits> out;
  for (auto& chi : all_bits(n)) {
    bool ok = true;
    for (auto& k : K)
      if (pairing(chi, k) != 1) ok = false;
    if (ok) out.push_back(chi);
  }
  return out;
}

json read_json(const std::string& dir, const std::string& file, const std::string& schema) {
  std::string path = dir + "/" + file;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed JSON in " + path + ": " + e.what());
  }
  if (!j.contains("schema") || j["schema"] != schema)
    throw DataError(path + ": expected schema " + schema);
  return j;
}

AlgebraicClass parse_class(const json& c) {
  AlgebraicClass a;
  a.label = c.at("label").get<std::string>();
  a.dim = c.at("dim").get<int>();
  a.coord_rank = c.at("agroup_rank").get<int>();
  a.agroup_order = 1 << a.coord_rank;
  for (auto& f : c.at("finite")) a.finite.push_back(f.get<Bits>());
  for (auto& z : c.at("center_image")) a.center_image.push_back(z.get<Bits>());
  std::set<Bits> distinct(a.finite.begin(), a.finite.end());
  if (static_cast<int>(a.finite.size()) != a.agroup_order || distinct.size() != a.finite.size())
    throw DataError("class " + a.label + ": finite classes do not enumerate A(u)");
  for (auto& f : a.finite)
    if (static_cast<int>(f.size()) != a.coord_rank) throw DataError("class " + a.label + ": bad element rank");
  if (a.finite.front() != Bits(a.coord_rank, 0)) throw DataError("class " + a.label + ": split class must come first");
  return a;
}

std::string block_name(const std::vector<int>& I) {
  if (I.empty()) return "T";
  std::string s = "L";
  for (int i : I) s += std::to_string(i);
  return s;
}

SpringerBlock parse_block(const json& b, std::shared_ptr<const CoxeterGroup> W, const std::vector<int>& within,
                          const UnipotentClassCatalog& cat, int center_rank) {
  SpringerBlock blk;
  blk.levi = b.at("levi").get<std::vector<int>>();
  std::sort(blk.levi.begin(), blk.levi.end());
  blk.name = block_name(blk.levi);
  auto& cusp = b.at("cuspidal");
  blk.cusp_class = cusp.at("class").get<std::string>();
  blk.cusp_local_system = cusp.at("local_system").get<Bits>();
  blk.cusp_dim = cusp.at("class_dim").get<int>();
  if (b.contains("central_character")) blk.central_character = b["central_character"].get<Bits>();
  try {
    blk.rel = relative_weyl(W, blk.levi, within);
  } catch (const std::invalid_argument& e) {
    throw DataError("block " + blk.name + ": " + e.what());
  }
  blk.dim_levi = W->rank() + 2 * W->length(W->longest(blk.levi));
  blk.dim_z0 = W->rank() - static_cast<int>(blk.levi.size());

  const FiniteGroup& Q = blk.rel->quotient();
  auto words = b.at("class_words").get<std::vector<std::vector<int>>>();
  if (words.size() != Q.num_classes()) throw DataError("block " + blk.name + ": class word count mismatch");
  std::vector<int> cls_of_word;
  std::set<int> hit;
  for (auto& w : words) {
    int c;
    try {
      c = Q.class_of(Q.from_word(w));
    } catch (const std::invalid_argument& e) {
      throw DataError("block " + blk.name + ": " + e.what());
    }
    cls_of_word.push_back(c);
    hit.insert(c);
  }
  if (hit.size() != Q.num_classes()) throw DataError("block " + blk.name + ": class words do not cover all classes");

  std::set<std::vector<int>> seen_chars;
  int max_dim = -1, triv_dim = -1;
  for (auto& e : b.at("map")) {
    SpringerEntry ent;
    std::string label = e.at("class").get<std::string>();
    try {
      ent.cls = cat.index(label);
    } catch (const std::invalid_argument&) {
      throw DataError("block " + blk.name + ": unknown class " + label);
    }
    ent.local_system = e.at("local_system").get<Bits>();
    if (static_cast<int>(ent.local_system.size()) != cat.classes[ent.cls].coord_rank)
      throw DataError("block " + blk.name + ": local system rank mismatch for " + label);
    auto vals = e.at("character").get<std::vector<int>>();
    if (vals.size() != words.size()) throw DataError("block " + blk.name + ": character length mismatch");
    ent.character.assign(Q.num_classes(), 0);
    for (size_t i = 0; i < vals.size(); ++i) ent.character[cls_of_word[i]] = vals[i];
    if (Q.find_character(ent.character) < 0)
      throw DataError("block " + blk.name + ": not an irreducible character (" + label + ")");
    if (!seen_chars.insert(ent.character).second) throw DataError("block " + blk.name + ": repeated character");
    const AlgebraicClass& ac = cat.classes[ent.cls];
    if (!blk.central_character.empty() && static_cast<int>(ac.center_image.size()) == center_rank) {
      for (int g = 0; g < center_rank; ++g) {
        int v = pairing(ent.local_system, ac.center_image[g]);
        if ((v == -1 ? 1 : 0) != blk.central_character[g])
          throw DataError("block " + blk.name + ": central character mismatch at " + label);
      }
    }
    max_dim = std::max(max_dim, ac.dim);
    if (std::all_of(ent.character.begin(), ent.character.end(), [](int x) { return x == 1; })) triv_dim = ac.dim;
    blk.map.push_back(ent);
  }
  if (blk.map.size() != Q.num_classes()) throw DataError("block " + blk.name + ": map is not a bijection on Irr(W_L)");
  if (triv_dim != max_dim)
    throw DataError("block " + blk.name + ": trivial character must map to the top class of the block");
  return blk;
}

}  // namespace

// ---------------------------------------------------------------- catalog

int UnipotentClassCatalog::index(const std::string& label) const {
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].label == label) return static_cast<int>(i);
  throw std::invalid_argument("unknown unipotent class " + label);
}

std::vector<FiniteClassRef> UnipotentClassCatalog::finite_classes() const {
  std::vector<FiniteClassRef> out;
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t k = 0; k < classes[i].finite.size(); ++k) out.push_back({static_cast<int>(i), static_cast<int>(k) + 1});
  return out;
}

std::string UnipotentClassCatalog::finite_label(const FiniteClassRef& r) const {
  return classes[r.cls].label + "," + std::to_string(r.counter);
}

int class_dimension(const UnipotentClassCatalog& cat, const std::string& label) { return cat.at(label).dim; }

// ---------------------------------------------------------------- group datum

RationalPoly GroupDatum::order() const {
  RationalPoly p = poincare_quotient(*weyl, {});
  for (int i = 0; i < rank(); ++i) p *= RationalPoly::q() - RationalPoly(1);
  return p * RationalPoly::q(static_cast<unsigned>(num_positive_roots()));
}

int GroupDatum::block_index(const std::vector<int>& levi) const {
  std::vector<int> I = levi;
  std::sort(I.begin(), I.end());
  for (size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].levi == I) return static_cast<int>(b);
  throw std::invalid_argument("no Springer block with Levi " + block_name(I));
}

int Levi::num_positive_roots() const {
  const auto& W = *parent->weyl;
  return W.length(W.longest(nodes));
}

RationalPoly Levi::z0_order() const { return rel->z0_order(rel->quotient().class_rep(twist_class)); }

RationalPoly Levi::order() const {
  const auto& W = *parent->weyl;
  for (int len : W.cycles_on(twist, nodes))
    if (len != 1) throw std::invalid_argument("twist permuting the Levi's simple roots is not supported");
  RationalPoly p = W.charpoly(twist) * poincare_quotient(W, {});
  // divide by the Poincare polynomial of W/W_I to keep only W_I's
  auto [quo, rem] = RationalPoly::divmod(p, poincare_quotient(W, nodes));
  if (!rem.is_zero()) throw std::logic_error("Poincare quotient does not divide");
  return quo * RationalPoly::q(static_cast<unsigned>(num_positive_roots()));
}

Levi make_levi(std::shared_ptr<const GroupDatum> G, const std::vector<int>& I, const std::string& twist) {
  Levi L;
  L.parent = G;
  L.nodes = I;
  std::sort(L.nodes.begin(), L.nodes.end());
  L.rel = relative_weyl(G->weyl, L.nodes);
  const FiniteGroup& Q = L.rel->quotient();
  if (twist == "split") {
    L.twist_class = 0;
  } else if (twist == "twisted" || twist == "nonsplit") {
    if (Q.num_classes() != 2) throw std::invalid_argument("twist '" + twist + "' is ambiguous for this Levi");
    L.twist_class = 1;
  } else {
    throw std::invalid_argument("unknown twist " + twist);
  }
  L.twist = L.rel->representative(Q.class_rep(L.twist_class));
  return L;
}

// ---------------------------------------------------------------- covering

ComponentQuotient quotient_component_group(const CoveringData& cov, const std::vector<std::string>& factor_labels) {
  if (factor_labels.size() != cov.factor_nodes.size()) throw std::invalid_argument("factor count mismatch");
  const auto& fcat = cov.factor->catalog;
  int n = 0;
  std::vector<const AlgebraicClass*> cls;
  for (auto& l : factor_labels) {
    cls.push_back(&fcat.at(l));
    n += cls.back()->coord_rank;
  }
  const int zr = cov.factor->center_rank;
  ComponentQuotient out;
  for (auto& k : cov.kernel) {
    if (static_cast<int>(k.size()) != zr * static_cast<int>(cls.size()))
      throw std::invalid_argument("kernel generator has wrong rank");
    Bits img;
    for (size_t f = 0; f < cls.size(); ++f) {
      Bits part(cls[f]->coord_rank, 0);
      for (int g = 0; g < zr; ++g)
        if (k[f * zr + g]) part = add_bits(part, cls[f]->center_image[g]);
      img.insert(img.end(), part.begin(), part.end());
    }
    out.kbar.push_back(img);
  }
  auto K = span(out.kbar, n);
  std::set<Bits> done;
  for (auto& a : all_bits(n)) {
    if (done.count(a)) continue;
    std::vector<Bits> coset;
    for (auto& k : K) coset.push_back(add_bits(a, k));
    std::sort(coset.begin(), coset.end());
    for (auto& x : coset) done.insert(x);
    out.reps.push_back(coset.front());
    out.cosets.push_back(coset);
  }
  out.order = static_cast<int>(out.reps.size());
  return out;
}

std::vector<std::string> springer_coverage_gaps(const UnipotentClassCatalog& cat,
                                                const std::vector<SpringerBlock>& blocks,
                                                const std::vector<std::vector<Bits>>& kbars) {
  std::vector<std::string> gaps;
  std::map<std::pair<int, Bits>, int> hits;
  for (auto& b : blocks)
    for (auto& e : b.map) ++hits[{e.cls, e.local_system}];
  for (size_t c = 0; c < cat.classes.size(); ++c) {
    const auto& ac = cat.classes[c];
    std::vector<Bits> K = kbars.empty() ? std::vector<Bits>{} : kbars[c];
    for (auto& chi : characters_trivial_on(K, ac.coord_rank)) {
      int h = hits[{static_cast<int>(c), chi}];
      if (h != 1) gaps.push_back(ac.label + bits_string(chi) + (h == 0 ? " uncovered" : " covered twice"));
      hits.erase({static_cast<int>(c), chi});
    }
  }
  for (auto& [k, v] : hits)
    if (v > 0) gaps.push_back(cat.classes[k.first].label + bits_string(k.second) + " is not a character of A(u)");
  return gaps;
}

std::vector<std::string> springer_coverage_gaps(const UnipotentClassCatalog& cat,
                                                const std::vector<SpringerBlock>& blocks) {
  return springer_coverage_gaps(cat, blocks, {});
}

// ---------------------------------------------------------------- loading

std::string default_data_dir() {
  if (const char* env = std::getenv("GREENFN_DATA"); env && *env) return env;
#ifdef GREENFN_SOURCE_DATA_DIR
  // uninstalled build tree
  if (!std::filesystem::exists(GREENFN_DEFAULT_DATA_DIR) && std::filesystem::exists(GREENFN_SOURCE_DATA_DIR))
    return GREENFN_SOURCE_DATA_DIR;
#endif
  return GREENFN_DEFAULT_DATA_DIR;
}

namespace {

std::shared_ptr<GroupDatum> parse_datum(const json& root, const json& classes_src) {
  auto G = std::make_shared<GroupDatum>();
  G->name = root.at("group").get<std::string>();
  G->dim = root.at("dim").get<int>();
  G->center_rank = root.at("center").at("rank").get<int>();
  try {
    G->weyl = CoxeterGroup::build(root.at("coxeter_matrix").get<std::vector<std::vector<int>>>(),
                                  root.at("nodes").get<std::vector<int>>());
  } catch (const std::invalid_argument& e) {
    throw DataError(G->name + ": " + e.what());
  }
  for (auto& c : classes_src.at("classes")) {
    auto ac = parse_class(c);
    if (static_cast<int>(ac.center_image.size()) != G->center_rank)
      throw DataError("class " + ac.label + ": center image rank mismatch");
    G->catalog.classes.push_back(ac);
  }
  if (G->dim != G->rank() + 2 * G->num_positive_roots()) throw DataError(G->name + ": dimension mismatch");
  return G;
}

void parse_blocks_and_signs(GroupDatum& G, const json& src) {
  for (auto& b : src.at("blocks")) G.blocks.push_back(parse_block(b, G.weyl, G.weyl->nodes(), G.catalog, G.center_rank));
  auto gaps = springer_coverage_gaps(G.catalog, G.blocks);
  if (!gaps.empty()) {
    std::string msg = G.name + ": Springer data not bijective:";
    for (auto& g : gaps) msg += " " + g;
    throw DataError(msg);
  }
  for (auto& s : src.at("signs")) {
    SignIndeterminate si;
    si.name = s.at("name").get<std::string>();
    try {
      si.cls = G.catalog.index(s.at("class").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
    si.local_system = s.at("local_system").get<Bits>();
    bool found = false;
    for (auto& b : G.blocks)
      for (auto& e : b.map)
        if (e.cls == si.cls && e.local_system == si.local_system) found = true;
    if (!found || std::all_of(si.local_system.begin(), si.local_system.end(), [](int x) { return x == 0; }))
      throw DataError("sign " + si.name + " must sit on a nontrivial local system of the catalog");
    G.signs.push_back(si);
  }
}

}  // namespace

std::shared_ptr<const GroupDatum> load_group(const std::string& dir, const std::string& name) {
  try {
    if (name == "spin8") {
      json classes = read_json(dir, "spin8_classes.json", "greenfn.classes/1");
      json springer = read_json(dir, "spin8_springer.json", "greenfn.springer/1");
      auto G = parse_datum(classes, classes);
      parse_blocks_and_signs(*G, springer);
      return G;
    }
    if (name == "sl2") {
      json s = read_json(dir, "sl2_springer.json", "greenfn.springer/1");
      auto G = parse_datum(s, s);
      parse_blocks_and_signs(*G, s);
      return G;
    }
  } catch (const json::exception& e) {
    throw DataError("data file for " + name + ": " + e.what());
  }
  throw std::invalid_argument("unsupported group " + name);
}

LeviData load_levi124(const std::string& dir, std::shared_ptr<const GroupDatum> spin8,
                      std::shared_ptr<const GroupDatum> sl2, const std::string& twist) {
  json j = read_json(dir, "levi124_springer.json", "greenfn.levi/1");
  try {
    LeviData out;
    auto nodes = j.at("levi").get<std::vector<int>>();
    out.levi = make_levi(spin8, nodes, twist);
    for (auto& f : j.at("factors")) {
      if (f.at("group") != "sl2") throw DataError("only SL2 factors are supported");
      out.covering.factor_nodes.push_back(f.at("node").get<int>());
    }
    if (out.covering.factor_nodes != out.levi.nodes) throw DataError("factor nodes do not match the Levi");
    out.covering.factor = sl2;
    for (auto& k : j.at("kernel")) out.covering.kernel.push_back(k.get<Bits>());

    std::vector<std::vector<Bits>> kbars;
    for (auto& c : j.at("classes")) {
      AlgebraicClass ac;
      ac.label = c.at("label").get<std::string>();
      ac.dim = c.at("dim").get<int>();
      std::vector<std::string> parts;
      std::stringstream ss(ac.label);
      for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
      if (parts.size() != out.covering.factor_nodes.size()) throw DataError("bad Levi class label " + ac.label);
      int dsum = 0;
      for (auto& p : parts) dsum += sl2->catalog.at(p).dim;
      if (dsum != ac.dim) throw DataError("class " + ac.label + ": dimension does not match its factors");
      auto quo = quotient_component_group(out.covering, parts);
      for (auto& p : parts) ac.coord_rank += sl2->catalog.at(p).coord_rank;
      ac.agroup_order = quo.order;
      ac.finite = quo.reps;
      out.catalog.classes.push_back(ac);
      out.factor_labels.push_back(parts);
      kbars.push_back(quo.kbar);
    }
    std::vector<int> within = out.levi.nodes;
    for (auto& b : j.at("blocks")) out.blocks.push_back(parse_block(b, spin8->weyl, within, out.catalog, 0));
    auto gaps = springer_coverage_gaps(out.catalog, out.blocks, kbars);
    if (!gaps.empty()) {
      std::string msg = "Levi Springer data not bijective:";
      for (auto& g : gaps) msg += " " + g;
      throw DataError(msg);
    }
    return out;
  } catch (const json::exception& e) {
    throw DataError(std::string("levi124_springer.json: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw DataError(std::string("levi124_springer.json: ") + e.what());
  }
}

}  // namespace greenfn
