#include "cartan/report.hpp"

#include <map>

namespace cartan {

json spec_json(const AlgebraSpec& s) {
  return json{{"family", family_name(s.family)}, {"variant", variant_name(s.variant)},
              {"m", s.m},
              {"n", s.n},
              {"p", s.p},
              {"t", s.t},
              {"lambda", s.lambda},
              {"label", s.label()}};
}

json handle_json(const Algebra& h, bool with_structure) {
  json j;
  j["spec"] = spec_json(h.spec());
  j["dim"] = h.dim();
  auto [lo, hi] = h.zrange();
  j["zdeg_range"] = {lo, hi};
  std::map<int, std::size_t> bydeg;
  std::size_t even = 0;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    ++bydeg[h.zdeg(i)];
    if (h.parity(i) == 0) ++even;
  }
  json dd = json::array();
  for (auto [z, c] : bydeg) dd.push_back({{"z", z}, {"dim", c}});
  j["dims_by_degree"] = dd;
  j["parity_counts"] = {{"even", even}, {"odd", h.dim() - even}};
  j["torus_dim"] = h.torus().size();
  json basis = json::array();
  for (const auto& b : h.basis()) basis.push_back(field_text(h.W(), b));
  j["basis"] = basis;
  if (!h.warning().empty()) j["warning"] = h.warning();
  if (with_structure) {
    json sc = json::array();
    for (std::uint32_t a = 0; a < h.dim(); ++a)
      for (std::uint32_t b = a; b < h.dim(); ++b)
        for (const auto& e : h.bracket(a, b)) sc.push_back({a, b, e.i, e.v});
    j["structure_constants"] = sc;
  }
  return j;
}

json structure_json(const Algebra& h, std::size_t normalizer_dim) {
  auto hd = height_depth(h);
  auto sr = simplicity(h);
  json j{{"dim", h.dim()},
         {"depth", hd.depth},
         {"height", hd.height},
         {"center_dim", center(h).size()},
         {"simple", sr.simple},
         {"normalizer_dim", normalizer_dim}};
  return j;
}

json derivation_json(const AlgebraSpec& s, const DerivationReport& r, bool with_metadata) {
  json blocks = json::array();
  for (const auto& b : r.dims_by_block)
    blocks.push_back({{"zshift", b.k}, {"parity", b.rho}, {"total", b.total}, {"inner", b.inner}, {"outer", b.outer}});
  json j{{"spec", spec_json(s)},
         {"mode", mode_name(r.mode)},
         {"dims_by_block", blocks},
         {"total", r.total},
         {"inner", r.inner},
         {"outer", r.outer},
         {"center_dim", r.center_dim},
         {"expected_outer", r.expected_outer ? json(*r.expected_outer) : json(nullptr)},
         {"matched_expected", r.matched_expected},
         {"abelian", r.bracket.abelian},
         {"outer_derived_dim", r.bracket.derived_dim},
         {"leibniz_verified", r.leibniz_verified}};
  if (with_metadata) j["metadata"] = {{"runtime_ms", r.runtime_ms}};
  return j;
}

}  // namespace cartan
