#include "greenfn/pipeline.hpp"

namespace greenfn {

const LeviRun& Run::levi(const std::string& twist) const {
  if (twist == "split") return split;
  if (twist == "twisted" || twist == "nonsplit") return twisted;
  throw std::invalid_argument("unknown twist " + twist);
}

TwoParamTable Run::display_table(const std::string& twist) const {
  return with_common_signs(levi(twist).twoparam, signs);
}

Run run_pipeline(const std::string& data_dir, const std::optional<GreenTable>& spin8_table) {
  Run run;
  run.spin8 = load_group(data_dir, "spin8");
  run.sl2 = load_group(data_dir, "sl2");
  run.spin8_table = spin8_table ? *spin8_table : green_table(*run.spin8);
  run.sl2_table = green_table(*run.sl2);
  for (auto* lr : {&run.split, &run.twisted}) {
    lr->twist = lr == &run.split ? "split" : "twisted";
    lr->data = load_levi124(data_dir, run.spin8, run.sl2, lr->twist);
    lr->table = transfer_via_covering(run.sl2_table, lr->data);
    lr->ident = identify(*run.spin8, run.spin8_table, lr->data, lr->table);
    lr->twoparam = solve(run.spin8_table, lr->table, lr->ident, lr->data, lr->twist);
  }
  run.signs = resolve_signs({run.split.twoparam, run.twisted.twoparam});
  return run;
}

}  // namespace greenfn
