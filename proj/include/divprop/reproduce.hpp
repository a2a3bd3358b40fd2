#pragma once

#include <string>
#include <vector>

#include "divprop/types.hpp"

#include <json.hpp>

namespace divprop {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  // the measured quantity
  double bound = 0.0;  // the bound it was held to
  std::string detail;
};

struct BatteryReport {
  std::string id;
  std::vector<CheckResult> checks;
  bool passed() const;
};

std::vector<std::string> battery_ids();
BatteryReport run_battery(const std::string& id, unsigned long long seed = kDefaultSeed);

nlohmann::json battery_to_json(const BatteryReport& rep);
std::string battery_summary(const BatteryReport& rep);

}  // namespace divprop
