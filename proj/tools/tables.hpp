#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"

namespace cartan::tools {

enum class Table { heights, outer_dims, normalizers };
std::optional<Table> table_from_name(const std::string& s);

struct TableRow {
  AlgebraSpec spec;
  std::string computed;
  std::string expected;
  std::string match;  // yes, no, n/a, reported
};

// rows whose values are reported but not compared (the builder's m=3 SKO warning)
bool reported_only(const AlgebraSpec& s);

// runs f(i) for i in [0, n) on up to `jobs` threads
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f);

std::vector<TableRow> compute_table(Table which, const std::vector<GridRow>& grid, unsigned jobs);
std::string table_csv(const std::vector<TableRow>& rows);
bool any_mismatch(const std::vector<TableRow>& rows);

}  // namespace cartan::tools
