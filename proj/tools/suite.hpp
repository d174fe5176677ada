#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cartan::tools {

struct SuiteOptions {
  std::string grid_path;
  std::string fixture_dir;
  std::vector<std::string> only;  // group names; empty runs all
  std::ostream* progress = nullptr;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

const std::vector<std::string>& suite_groups();
// throws std::invalid_argument for an unknown group name
std::vector<CheckResult> run_acceptance(const SuiteOptions& opt);
std::string result_line(const CheckResult& r);

}  // namespace cartan::tools
