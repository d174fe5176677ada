// One line per acceptance criterion; exit status 1 when any criterion fails.
#include <iostream>

#include "suite.hpp"

int main(int argc, char** argv) {
  cartan::tools::SuiteOptions opt;
  opt.grid_path = std::string(CARTAN_DATA_DIR) + "/default_grid.txt";
  opt.fixture_dir = std::string(CARTAN_DATA_DIR) + "/fixtures";
  for (int i = 1; i < argc; ++i) opt.only.push_back(argv[i]);
  auto results = cartan::tools::run_acceptance(opt);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << cartan::tools::result_line(r) << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
