#include "tables.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cartan/dersolve.hpp"
#include "cartan/structure.hpp"

namespace cartan::tools {

std::optional<Table> table_from_name(const std::string& s) {
  if (s == "heights") return Table::heights;
  if (s == "outer-dims") return Table::outer_dims;
  if (s == "normalizers") return Table::normalizers;
  return std::nullopt;
}

bool reported_only(const AlgebraSpec& s) { return !validate(s).empty(); }

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs && w < n; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next++;
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

namespace {

std::string compare(const AlgebraSpec& s, long computed, std::optional<long> expected) {
  if (!expected) return "n/a";
  if (reported_only(s)) return "reported";
  return computed == *expected ? "yes" : "no";
}

std::string key_of(const AlgebraSpec& s) { return s.label(); }

}  // namespace

std::vector<TableRow> compute_table(Table which, const std::vector<GridRow>& grid, unsigned jobs) {
  std::vector<AlgebraSpec> specs;
  if (which == Table::heights) {
    std::set<std::string> seen;
    for (const auto& r : grid) {
      AlgebraSpec s = r.spec;
      s.variant = Variant::derived2;
      if (seen.insert(key_of(s)).second) specs.push_back(s);
    }
  } else {
    for (const auto& r : grid) specs.push_back(r.spec);
  }
  for (const auto& s : specs) validate(s);
  std::vector<TableRow> rows(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) {
    const AlgebraSpec& s = specs[i];
    TableRow& row = rows[i];
    row.spec = s;
    auto h = build(s);
    long computed = 0;
    std::optional<long> expected;
    switch (which) {
      case Table::heights:
        computed = height_depth(*h).height;
        expected = expected_height(s);
        break;
      case Table::outer_dims: {
        DerOptions opt;
        opt.outer_bracket = false;
        opt.verify = false;
        computed = static_cast<long>(der_full(*h, DerMode::weight_reduced, opt).outer);
        expected = expected_outer_dim(s);
        break;
      }
      case Table::normalizers: {
        computed = static_cast<long>(normalizer(*h).size());
        if (auto e = expected_normalizer_dim(s)) expected = static_cast<long>(*e);
        break;
      }
    }
    row.computed = std::to_string(computed);
    row.expected = expected ? std::to_string(*expected) : "";
    row.match = compare(s, computed, expected);
  });
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "family,variant,m,n,p,t,lambda,computed,expected,match\n";
  for (const auto& r : rows) {
    const auto& s = r.spec;
    out << family_name(s.family) << ',' << variant_name(s.variant) << ',' << s.m << ',' << s.n << ',' << s.p << ",\""
        << t_text(s.t) << "\"," << s.lambda << ',' << r.computed << ',' << r.expected << ',' << r.match << '\n';
  }
  return out.str();
}

bool any_mismatch(const std::vector<TableRow>& rows) {
  for (const auto& r : rows)
    if (r.match == "no") return true;
  return false;
}

}  // namespace cartan::tools
