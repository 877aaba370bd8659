#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "greenfn/pipeline.hpp"
#include "greenfn/render.hpp"

using namespace greenfn;

namespace {

enum Exit { kPass = 0, kValidation = 1, kUsage = 2, kData = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string data_dir;
  std::string group = "spin8";
  std::string levi = "124";
  std::string twist = "split";
  std::string format = "ascii";
  std::string import_table;
  bool resolve = false;
  int residue = 0;
  std::string what;
};

std::string data_dir(const Options& o) { return o.data_dir.empty() ? default_data_dir() : o.data_dir; }

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed JSON in " + path + ": " + e.what());
  }
}

std::optional<GreenTable> imported(const Options& o) {
  if (o.import_table.empty()) return std::nullopt;
  try {
    return green_table_from_json(read_json_file(o.import_table));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

void emit(const TextTable& t, const nlohmann::json& j, const std::string& format) {
  if (format == "ascii")
    std::cout << render_ascii(t);
  else if (format == "csv")
    std::cout << render_csv(t);
  else
    std::cout << j.dump(1) << "\n";
}

std::string twist_name(const std::string& t) {
  if (t == "split") return "split";
  if (t == "twisted" || t == "nonsplit") return "twisted";
  throw UsageError("unknown twist " + t + " (expected split or twisted)");
}

int report_orthogonality(const std::string& name, const GreenTable& t, std::ostream& os) {
  auto v = verify_orthogonality(t);
  os << "orthogonality " << name << ": " << t.cols.size() << " functions, "
     << (v.empty() ? "PASS" : "FAIL (" + std::to_string(v.size()) + " pairs)") << "\n";
  for (auto& x : v)
    os << "  " << t.cols[x.i].label << " x " << t.cols[x.j].label << ": " << cyclotomic_display(x.residual) << "\n";
  return v.empty() ? kPass : kValidation;
}

int cmd_green(const Options& o) {
  GreenTable t;
  std::string tw = twist_name(o.twist);
  auto imp = imported(o);
  if (imp) {
    t = *imp;
  } else if (o.group == "spin8" || o.group == "sl2") {
    // SL2 has a single rational form; both twists give the same table.
    t = green_table(*load_group(data_dir(o), o.group));
  } else if (o.group == "levi124") {
    auto dir = data_dir(o);
    auto G = load_group(dir, "spin8");
    auto S = load_group(dir, "sl2");
    t = transfer_via_covering(green_table(*S), load_levi124(dir, G, S, tw));
  } else {
    throw UsageError("unknown group " + o.group + " (expected spin8, sl2 or levi124)");
  }
  emit(text_table(t), to_json(t), o.format);
  return report_orthogonality(t.group, t, o.format == "ascii" ? std::cout : std::cerr);
}

int cmd_twoparam(const Options& o) {
  if (o.levi != "124") throw UsageError("unknown Levi " + o.levi + " (only 124 is available)");
  if (o.group != "spin8") throw UsageError("two-parameter tables are available for spin8 only");
  if (o.residue && !o.resolve) throw UsageError("--residue requires --resolve");
  std::string tw = twist_name(o.twist);
  Run run = run_pipeline(data_dir(o), imported(o));
  TwoParamTable t = o.resolve ? with_signs(run.levi(tw).twoparam, run.signs,
                                           o.residue ? std::optional<int>(o.residue) : std::nullopt)
                              : run.display_table(tw);
  emit(text_table(t), to_json(t), o.format);
  return kPass;
}

int verify_orthogonality_all(const Options& o) {
  auto dir = data_dir(o);
  auto G = load_group(dir, "spin8");
  auto S = load_group(dir, "sl2");
  auto imp = imported(o);
  int rc = report_orthogonality("spin8", imp ? *imp : green_table(*G), std::cout);
  GreenTable s = green_table(*S);
  rc |= report_orthogonality("sl2 split", s, std::cout);
  rc |= report_orthogonality("sl2 nonsplit", s, std::cout);
  for (std::string tw : {"split", "twisted"})
    rc |= report_orthogonality("levi124 " + tw, transfer_via_covering(s, load_levi124(dir, G, S, tw)), std::cout);
  return rc ? kValidation : kPass;
}

int verify_self_induction(const Options& o) {
  auto dir = data_dir(o);
  auto G = load_group(dir, "spin8");
  auto S = load_group(dir, "sl2");
  auto imp = imported(o);
  GreenTable s = green_table(*S);
  std::vector<std::pair<std::string, GreenTable>> cases = {{"spin8", imp ? *imp : green_table(*G)}, {"sl2", s}};
  for (std::string tw : {"split", "twisted"})
    cases.push_back({"levi124 " + tw, transfer_via_covering(s, load_levi124(dir, G, S, tw))});
  int rc = kPass;
  for (auto& [name, t] : cases) {
    bool ok = self_induction_check(t);
    std::cout << "self-induction " << name << ": " << t.rows.size() << "x" << t.rows.size() << " identity "
              << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) rc = kValidation;
  }
  return rc;
}

int verify_counts(const Options& o) {
  auto dir = data_dir(o);
  auto G = load_group(dir, "spin8");
  auto S = load_group(dir, "sl2");
  int rc = kPass;
  auto check = [&](const std::string& what, const std::string& got, const std::string& want) {
    bool ok = got == want;
    std::cout << what << ": " << got << (ok ? "  PASS" : "  FAIL (expected " + want + ")") << "\n";
    if (!ok) rc = kValidation;
  };
  check("spin8 algebraic classes", std::to_string(G->catalog.classes.size()), "12");
  check("spin8 finite classes", std::to_string(G->catalog.num_finite()), "28");
  std::string sizes;
  size_t total = 0;
  for (auto& b : G->blocks) {
    sizes += (sizes.empty() ? "" : "+") + std::to_string(b.map.size());
    total += b.map.size();
  }
  check("spin8 Springer blocks", std::to_string(G->blocks.size()) + " (" + sizes + " = " + std::to_string(total) + ")",
        "4 (13+5+5+5 = 28)");
  for (std::string tw : {"split", "twisted"}) {
    auto M = load_levi124(dir, G, S, tw);
    check("levi124 " + tw + " finite classes", std::to_string(M.catalog.num_finite()), "14");
    std::string ms;
    for (auto& b : M.blocks) ms += (ms.empty() ? "" : "+") + std::to_string(b.rel->quotient().num_classes());
    check("levi124 " + tw + " block sizes", ms, "8+2+2+2");
  }
  return rc;
}

int verify_signs(const Options& o) {
  Run run = run_pipeline(data_dir(o), imported(o));
  for (auto& n : run.signs.names()) {
    if (run.signs.residue_dependent(n))
      std::cout << n << " = " << run.signs.value(n, 1) << " for q = 1 mod 4, " << run.signs.value(n, 3)
                << " for q = 3 mod 4\n";
    else
      std::cout << n << " = " << run.signs.value(n, 1) << "\n";
  }
  std::cout << "unique surviving assignment per residue: yes\n";
  return kPass;
}

int cmd_verify(const Options& o) {
  if (o.what == "orthogonality") return verify_orthogonality_all(o);
  if (o.what == "self-induction") return verify_self_induction(o);
  if (o.what == "counts") return verify_counts(o);
  if (o.what == "signs") return verify_signs(o);
  throw UsageError("unknown verification " + o.what);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized and two-parameter Green functions of Spin8(q)"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--data-dir", o.data_dir, "Directory with the Springer data (default: $GREENFN_DATA)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"ascii", "csv", "json"}));
  app.add_option("--import-table", o.import_table, "Use a Spin8 Green table from this JSON file");

  auto* green = app.add_subcommand("green", "Generalized Green functions of a group");
  green->add_option("--group", o.group, "spin8, sl2 or levi124");
  green->add_option("--twist", o.twist, "split, twisted or nonsplit");

  auto* two = app.add_subcommand("twoparam", "Two-parameter Green functions for a Levi subgroup");
  two->add_option("--group", o.group, "Ambient group (spin8)");
  two->add_option("--levi", o.levi, "Levi nodes (124)");
  two->add_option("--twist", o.twist, "split or twisted");
  two->add_flag("--resolve", o.resolve, "Substitute the resolved signs");
  two->add_option("--residue", o.residue, "Specialize to q = residue mod 4")->check(CLI::IsMember({1, 3}));

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("what", o.what, "orthogonality, self-induction, counts or signs")
      ->required()
      ->check(CLI::IsMember({"orthogonality", "self-induction", "counts", "signs"}));

  // options are accepted before or after the subcommand
  for (auto* sub : {green, two, verify}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*green) return cmd_green(o);
    if (*two) return cmd_twoparam(o);
    return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kValidation;
  }
}
