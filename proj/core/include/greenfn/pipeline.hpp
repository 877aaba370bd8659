#pragma once

#include <memory>
#include <optional>
#include <string>

#include "greenfn/greenfn.hpp"
#include "greenfn/twoparam.hpp"

namespace greenfn {

struct LeviRun {
  std::string twist;
  LeviData data;
  GreenTable table;
  InducedIdentification ident;
  TwoParamTable twoparam;  // signs unsubstituted
};

struct Run {
  std::shared_ptr<const GroupDatum> spin8, sl2;
  GreenTable spin8_table, sl2_table;
  LeviRun split, twisted;
  SignAssignment signs;

  const LeviRun& levi(const std::string& twist) const;
  // Printed form: residue-independent signs substituted, the rest left symbolic.
  TwoParamTable display_table(const std::string& twist) const;
};

// spin8_table: use this table instead of computing one.
Run run_pipeline(const std::string& data_dir, const std::optional<GreenTable>& spin8_table = std::nullopt);

}  // namespace greenfn
