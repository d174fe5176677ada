#include "grid.hpp"

#include <fstream>
#include <sstream>

namespace cartan::tools {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw SpecError("empty entry in list '" + s + "'");
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw SpecError("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

AlgebraSpec make_spec(const std::string& family, int m, std::optional<int> n, std::uint32_t p, std::vector<int> t,
                      Res lambda, const std::string& variant) {
  AlgebraSpec s;
  try {
    s.family = family_from_name(family);
  } catch (const std::exception&) {
    throw SpecError("unknown family '" + family + "'");
  }
  try {
    s.variant = variant_from_name(variant);
  } catch (const std::exception&) {
    throw SpecError("unknown variant '" + variant + "'");
  }
  s.m = m;
  if (n) {
    s.n = *n;
  } else if (s.family == Family::HO || s.family == Family::SHO) {
    s.n = m;
  } else if (s.family == Family::KO || s.family == Family::SKO) {
    s.n = m + 1;
  } else {
    s.n = 2;
  }
  s.p = p;
  s.t = t.empty() ? std::vector<int>(m > 0 ? m : 0, 1) : std::move(t);
  s.lambda = lambda;
  return s;
}

GridRow parse_grid_line(const std::string& line, int lineno) {
  std::stringstream ss(line);
  std::string tok;
  std::map<std::string, std::string> kv;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw SpecError("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto take = [&](const std::string& k) -> std::optional<std::string> {
    auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  GridRow r;
  r.line = lineno;
  try {
    auto fam = take("family");
    if (!fam) throw SpecError("missing family");
    auto m = take("m");
    if (!m) throw SpecError("missing m");
    auto n = take("n");
    auto p = take("p");
    auto t = take("t");
    auto lam = take("lambda");
    auto var = take("variant");
    r.spec = make_spec(*fam, std::stoi(*m), n ? std::optional<int>(std::stoi(*n)) : std::nullopt,
                       p ? static_cast<std::uint32_t>(std::stoul(*p)) : 5u, t ? parse_int_list(*t) : std::vector<int>{},
                       lam ? static_cast<Res>(std::stoul(*lam)) : 0u, var ? *var : "plain");
  } catch (const SpecError& e) {
    throw SpecError("line " + std::to_string(lineno) + ": " + e.what());
  } catch (const std::logic_error&) {
    throw SpecError("line " + std::to_string(lineno) + ": bad number in '" + line + "'");
  }
  r.extra = std::move(kv);
  return r;
}

std::vector<GridRow> parse_grid(std::istream& in) {
  std::vector<GridRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_grid_line(line, lineno));
  }
  return rows;
}

std::vector<GridRow> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open grid file " + path);
  return parse_grid(in);
}

std::string t_text(const std::vector<int>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s;
}

}  // namespace cartan::tools
