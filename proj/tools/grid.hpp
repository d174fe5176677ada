#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartan/families.hpp"

namespace cartan::tools {

// one grid line: `family=SHO m=3 p=5 t=1,1,1 variant=derived2`, plus free extra keys
struct GridRow {
  AlgebraSpec spec;
  std::map<std::string, std::string> extra;
  int line = 0;
};

std::vector<int> parse_int_list(const std::string& s);
// fills defaults: n from the family, p = 5, t = 1 per even variable
AlgebraSpec make_spec(const std::string& family, int m, std::optional<int> n, std::uint32_t p, std::vector<int> t,
                      Res lambda, const std::string& variant);
GridRow parse_grid_line(const std::string& line, int lineno = 0);
// skips blank lines and # comments; throws SpecError with the line number
std::vector<GridRow> parse_grid(std::istream& in);
std::vector<GridRow> read_grid(const std::string& path);

std::string t_text(const std::vector<int>& t);

}  // namespace cartan::tools
