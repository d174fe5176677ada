#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cartan/dersolve.hpp"
#include "cartan/structure.hpp"
#include "grid.hpp"
#include "tables.hpp"

namespace cartan::tools {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool congruent(long a, long b, long p) { return (((a - b) % p) + p) % p == 0; }

AlgebraSpec with_variant(AlgebraSpec s, Variant v) {
  s.variant = v;
  return s;
}

class Suite {
 public:
  explicit Suite(const SuiteOptions& o) : opt_(o) {
    grid_ = read_grid(o.grid_path);
    for (const auto& r : grid_) validate(r.spec);
  }

  AlgebraPtr alg(const AlgebraSpec& s) {
    auto key = s.label();
    auto it = algs_.find(key);
    if (it != algs_.end()) return it->second;
    auto h = build(s);
    algs_[key] = h;
    return h;
  }

  const DerivationReport& der(const AlgebraSpec& s) {
    auto key = s.label();
    auto it = ders_.find(key);
    if (it != ders_.end()) return it->second;
    auto h = alg(s);
    log("  der " + key);
    return ders_.emplace(key, der_full(*h, DerMode::weight_reduced)).first->second;
  }

  const std::vector<VectorField>& nor(const AlgebraSpec& s) {
    auto key = s.label();
    auto it = nors_.find(key);
    if (it != nors_.end()) return it->second;
    return nors_.emplace(key, normalizer(*alg(s))).first->second;
  }

  std::vector<GridRow> fixture(const std::string& name) { return read_grid(opt_.fixture_dir + "/" + name); }

  void log(const std::string& s) {
    if (opt_.progress) *opt_.progress << s << std::endl;
  }

  // grid specs without repetition, in grid order
  std::vector<AlgebraSpec> distinct(const std::function<bool(const AlgebraSpec&)>& keep) {
    std::vector<AlgebraSpec> out;
    std::set<std::string> seen;
    for (const auto& r : grid_)
      if (keep(r.spec) && seen.insert(r.spec.label()).second) out.push_back(r.spec);
    return out;
  }

  static bool asserted(const AlgebraSpec& s) { return !reported_only(s) && expected_outer_dim(s).has_value(); }

  // ---- groups; each appends failures to `bad` and notes to `info` ----

  void jacobi(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::size_t n = 0;
    for (const auto& s : distinct([](const AlgebraSpec&) { return true; })) {
      auto t0 = Clock::now();
      auto h = alg(s);
      auto rep = check_jacobi(*h, 200, 1000, 1);
      double sec = since(t0);
      ++n;
      if (!rep.pass) bad.push_back(s.label() + ": " + std::to_string(rep.violations) + " violations");
      if (sec > 60) bad.push_back(s.label() + ": took " + std::to_string(sec) + " s");
    }
    // negative control: perturb one structure constant consistently with antisymmetry
    AlgebraSpec w;
    w.family = Family::W;
    w.m = 1;
    w.n = 2;
    w.t = {1};
    auto h = alg(w);
    const auto& F = h->F();
    std::uint32_t a = 0, b = 1, c = 2;
    std::vector<int> par(h->dim());
    for (std::size_t i = 0; i < h->dim(); ++i) par[i] = h->parity(i);
    while (b < h->dim() && (par[a] | par[b] | par[c])) ++b, ++c;
    BracketFn br = [&](std::uint32_t i, std::uint32_t j) {
      SVec v = h->bracket_direct(i, j);
      if (i == a && j == b) v = sv_add(F, v, SVec{{c, 1}});
      if (i == b && j == a) v = sv_add(F, v, SVec{{c, F.neg(1)}});
      return v;
    };
    auto rep = check_jacobi(F, par, br, 200, 1000, 1);
    if (rep.pass)
      bad.push_back("corrupted tensor fixture was not detected");
    else
      info.push_back("negative control located " + rep.kind + " violation at (" + std::to_string((*rep.first)[0]) +
                     "," + std::to_string((*rep.first)[1]) + "," + std::to_string((*rep.first)[2]) + ")");
    info.push_back(std::to_string(n) + " handles");
  }

  void heights(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::size_t n = 0;
    for (auto s : distinct([](const AlgebraSpec&) { return true; })) {
      s.variant = Variant::derived2;
      if (!seen_heights_.insert(s.label()).second) continue;
      const long got = height_depth(*alg(s)).height;
      const long want = expected_height(s);
      if (reported_only(s)) {
        info.push_back("reported " + s.label() + " height " + std::to_string(got) + " (table " + std::to_string(want) + ")");
        continue;
      }
      ++n;
      if (got != want)
        bad.push_back(s.label() + ": height " + std::to_string(got) + ", table " + std::to_string(want));
    }
    for (const auto& r : fixture("heights.txt")) {
      const long lit = std::stol(r.extra.at("expected"));
      const long got = height_depth(*alg(r.spec)).height;
      if (expected_height(r.spec) != lit)
        bad.push_back("fixture " + r.spec.label() + ": formula gives " + std::to_string(expected_height(r.spec)) +
                      ", fixture " + std::to_string(lit));
      if (got != lit && !reported_only(r.spec))
        bad.push_back("fixture " + r.spec.label() + ": height " + std::to_string(got) + ", fixture " + std::to_string(lit));
    }
    info.push_back(std::to_string(n) + " rows");
  }

  void outer_dims(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::size_t n = 0;
    for (const auto& s : distinct([](const AlgebraSpec& s) { return expected_outer_dim(s).has_value(); })) {
      const auto& d = der(s);
      if (!asserted(s)) {
        info.push_back("reported " + s.label() + " outer " + std::to_string(d.outer) + " (table " +
                       std::to_string(*d.expected_outer) + ")");
        continue;
      }
      ++n;
      if (!d.matched_expected)
        bad.push_back(s.label() + ": outer " + std::to_string(d.outer) + ", table " + std::to_string(*d.expected_outer));
    }
    for (const auto& r : fixture("outer_dims.txt")) {
      const long lit = std::stol(r.extra.at("expected"));
      auto f = expected_outer_dim(r.spec);
      if (!f || *f != lit) bad.push_back("fixture " + r.spec.label() + ": formula disagrees with " + std::to_string(lit));
      const auto& d = der(r.spec);
      if (static_cast<long>(d.outer) != lit)
        bad.push_back("fixture " + r.spec.label() + ": outer " + std::to_string(d.outer) + ", fixture " + std::to_string(lit));
    }
    info.push_back(std::to_string(n) + " rows");
  }

  void exceptional(std::vector<std::string>& bad, std::vector<std::string>& info) {
    AlgebraSpec s;
    s.family = Family::HO;
    s.m = 3;
    s.n = 3;
    s.t = {1, 1, 1};
    auto ho = alg(s);
    auto phi = candidate_phi(*ho);
    auto c = check_candidate(*ho, phi);
    if (!c.is_derivation) bad.push_back("Phi is not a derivation of HO");
    if (c.is_inner) bad.push_back("Phi is inner on HO");
    info.push_back("Phi parity " + std::to_string(phi.parity) + " zshift " + std::to_string(phi.zshift));
    s.family = Family::SHO;
    s.variant = Variant::derived2;
    auto sho = alg(s);
    auto th = candidate_theta(*sho);
    auto ct = check_candidate(*sho, th);
    if (!ct.is_derivation) bad.push_back("Theta is not a derivation of SHO^(2)");
    if (ct.is_inner) bad.push_back("Theta is inner on SHO^(2)");
    info.push_back("Theta parity " + std::to_string(th.parity) + " zshift " + std::to_string(th.zshift));
    if (ct.is_derivation) {
      const auto& d = der(s);
      auto reps = d.outer_reps;
      reps.push_back(th);
      const std::size_t with = rank_mod_inner(*sho, reps);
      const std::size_t alone = rank_mod_inner(*sho, {th});
      const long drop = static_cast<long>(d.outer) - static_cast<long>(with - alone);
      if (with != d.outer || drop != 1)
        bad.push_back("removing Theta drops the outer dimension by " + std::to_string(drop));
    }
  }

  void normalizers(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::size_t n = 0;
    for (const auto& s : distinct([](const AlgebraSpec& s) { return s.variant != Variant::bar && s.family != Family::W; })) {
      const std::size_t got = nor(s).size();
      auto want = expected_normalizer_dim(s);
      if (reported_only(s)) {
        info.push_back("reported " + s.label() + " normalizer " + std::to_string(got));
        continue;
      }
      ++n;
      if (!want || got != *want)
        bad.push_back(s.label() + ": normalizer " + std::to_string(got) + ", table " + (want ? std::to_string(*want) : "-"));
      // subspace equalities with the derived algebras
      const Family f = s.family;
      if (s.variant == Variant::plain) {
        const Variant v = (f == Family::SHO || f == Family::SKO) ? Variant::derived2 : Variant::derived1;
        if (f == Family::S || f == Family::H || f == Family::K || f == Family::SHO || f == Family::SKO)
          if (!same_subspace(alg(s)->W(), nor(s), nor(with_variant(s, v))))
            bad.push_back(s.label() + ": normalizer differs from that of the derived algebra");
        if (f == Family::S || f == Family::H || f == Family::HO || f == Family::SHO) {
          const auto& W = alg(s)->W();
          auto bar = alg(with_variant(s, Variant::bar))->basis();
          if (f != Family::S) bar.push_back(degree_full(W));
          if (!same_subspace(W, nor(s), bar)) bad.push_back(s.label() + ": normalizer is not the table subspace");
        }
      }
    }
    for (const auto& r : fixture("normalizers.txt")) {
      const std::size_t lit = std::stoul(r.extra.at("expected"));
      if (nor(r.spec).size() != lit)
        bad.push_back("fixture " + r.spec.label() + ": normalizer " + std::to_string(nor(r.spec).size()) + ", fixture " +
                      std::to_string(lit));
    }
    info.push_back(std::to_string(n) + " rows");
  }

  void decomposition(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::size_t n = 0;
    for (auto s : distinct([](const AlgebraSpec& s) { return s.variant == Variant::plain; })) {
      const long m = s.m;
      auto dim = [&](Variant v) { return static_cast<long>(alg(with_variant(s, v))->dim()); };
      if (s.family == Family::S) {
        ++n;
        if (dim(Variant::bar) - dim(Variant::derived1) != m + 1)
          bad.push_back(s.label() + ": dim S-bar - dim S^(1) = " + std::to_string(dim(Variant::bar) - dim(Variant::derived1)));
      } else if (s.family == Family::K) {
        ++n;
        const long want = congruent(s.n - s.m, 3, s.p) ? 1 : 0;
        if (dim(Variant::plain) - dim(Variant::derived1) != want)
          bad.push_back(s.label() + ": dim K - dim K^(1) = " + std::to_string(dim(Variant::plain) - dim(Variant::derived1)));
      } else if (s.family == Family::H && std::all_of(s.t.begin(), s.t.end(), [](int x) { return x == 1; })) {
        ++n;
        if (dim(Variant::bar) - dim(Variant::derived1) != m + 1)
          bad.push_back(s.label() + ": dim H-bar - dim H^(1) = " + std::to_string(dim(Variant::bar) - dim(Variant::derived1)));
      }
    }
    info.push_back(std::to_string(n) + " identities");
  }

  void simplicity_group(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::size_t n = 0;
    for (const auto& s : distinct([](const AlgebraSpec&) { return true; })) {
      auto h = alg(s);
      const bool want = s.variant != Variant::bar && h->dim() == alg(with_variant(s, Variant::derived2))->dim();
      auto r = simplicity(*h);
      ++n;
      if (r.simple != want) bad.push_back(s.label() + ": simple=" + (r.simple ? "true" : "false") + " (" + r.reason + ")");
      if (!r.complete) info.push_back(s.label() + ": seed enumeration truncated");
    }
    info.push_back(std::to_string(n) + " handles");
  }

  void solver_consistency(std::vector<std::string>& bad, std::vector<std::string>& info) {
    std::vector<AlgebraSpec> small(3);
    small[0].family = Family::W, small[0].m = 1, small[0].n = 2, small[0].t = {1};
    small[1].family = Family::H, small[1].m = 2, small[1].n = 2, small[1].t = {1, 1};
    small[2].family = Family::K, small[2].m = 1, small[2].n = 2, small[2].t = {1};
    for (const auto& s : small) {
      auto h = alg(s);
      auto full = der_full(*h, DerMode::full);
      const auto& red = der(s);
      if (full.dims_by_block != red.dims_by_block) bad.push_back(s.label() + ": full and weight-reduced modes disagree");
      if (!full.leibniz_verified) bad.push_back(s.label() + ": full-mode representative fails Leibniz");
      auto [lo, hi] = h->zrange();
      std::size_t checked = 0;
      for (int k = lo - hi; k <= hi - lo; ++k)
        for (int rho = 0; rho < 2; ++rho)
          for (const auto& phi : der_component(*h, k, rho)) {
            ++checked;
            if (!verify_leibniz(*h, phi)) bad.push_back(s.label() + ": component basis element fails Leibniz");
          }
      info.push_back(s.label() + ": " + std::to_string(checked) + " component vectors re-verified");
    }
    std::size_t rows = 0;
    for (const auto& s : distinct(asserted)) {
      const auto& d = der(s);
      if (!d.leibniz_verified) bad.push_back(s.label() + ": outer representative fails Leibniz");
      const long eta = s.eta();
      const bool ho = s.family == Family::HO;
      const bool theta = s.family == Family::SHO && s.variant == Variant::derived2 && s.m == 3;
      const long want = static_cast<long>(nor(s).size()) + ho + theta + (eta - s.m);
      ++rows;
      if (static_cast<long>(d.total) != want)
        bad.push_back(s.label() + ": dim Der " + std::to_string(d.total) + ", reconstruction " + std::to_string(want));
      auto h = alg(s);
      if (d.inner != h->dim() - d.center_dim) bad.push_back(s.label() + ": inner dimension is not dim L - dim center");
      if (h->dim() <= 1100) reconstruct(s, *h, d, bad);
      // negative part at t = 1 for the second derived algebra
      const bool t1 = std::all_of(s.t.begin(), s.t.end(), [](int x) { return x == 1; });
      if (t1 && h->dim() == alg(with_variant(s, Variant::derived2))->dim()) {
        std::size_t neg = 0, lneg = 0;
        for (const auto& b : d.dims_by_block)
          if (b.k < 0) neg += b.total;
        for (std::size_t i = 0; i < h->dim(); ++i)
          if (h->zdeg(i) < 0) ++lneg;
        const std::size_t want_neg = lneg + ho + (s.family == Family::SHO && s.m == 3);
        if (neg != want_neg)
          bad.push_back(s.label() + ": negative derivations " + std::to_string(neg) + ", expected " + std::to_string(want_neg));
      }
    }
    info.push_back(std::to_string(rows) + " reconstruction rows");
  }

  // Der(L) is spanned by ad Nor(L) and the explicit candidates modulo inner derivations
  void reconstruct(const AlgebraSpec& s, const Algebra& h, const DerivationReport& d, std::vector<std::string>& bad) {
    std::vector<LinearMap> maps;
    for (const auto& D : nor(s)) {
      auto a = ad_external(h, D);
      if (!a.escapes.empty()) {
        bad.push_back(s.label() + ": normalizer element does not preserve L");
        return;
      }
      maps.push_back(std::move(a));
    }
    std::size_t cands = 0;
    if (s.family == Family::HO) maps.push_back(candidate_phi(h)), ++cands;
    if (s.family == Family::SHO && s.variant == Variant::derived2 && s.m == 3) maps.push_back(candidate_theta(h)), ++cands;
    for (int i = 0; i < s.m; ++i)
      for (int j = 1; j < s.t[i]; ++j) maps.push_back(candidate_ad_ppower(h, i, j)), ++cands;
    for (std::size_t q = maps.size() - cands; q < maps.size(); ++q)
      if (!verify_leibniz(h, maps[q])) bad.push_back(s.label() + ": explicit candidate fails Leibniz");
    const std::size_t r = rank_mod_inner(h, maps);
    if (r != d.outer)
      bad.push_back(s.label() + ": ad Nor plus candidates span " + std::to_string(r) + " outer classes of " +
                    std::to_string(d.outer));
  }

  void restrictedness(std::vector<std::string>& bad, std::vector<std::string>& info) {
    for (const auto& s : distinct([](const AlgebraSpec& s) { return s.family == Family::W && s.variant == Variant::plain; })) {
      auto h = alg(s);
      const WSpace& W = h->W();
      for (int i = 0; i < s.m; ++i) {
        long e = 1;
        for (int q = 0; q < s.t[i]; ++q) e *= s.p;
        const VectorField di = field(W, mono(W.O().one()), i);
        bool zero = true, tight = false;
        for (std::uint32_t w = 0; w < W.size() && zero; ++w) {
          VectorField v{{w, 1}};
          for (long q = 0; q < e && !v.empty(); ++q) {
            if (q == e - 1) tight = true;
            v = bracket(W, di, v);
          }
          zero = v.empty();
        }
        if (!zero) bad.push_back(s.label() + ": (ad d" + std::to_string(i + 1) + ")^p^t is nonzero");
        if (!tight) info.push_back(s.label() + ": power bound not reached for index " + std::to_string(i + 1));
      }
      std::vector<LinearMap> cands;
      for (int i = 0; i < s.m; ++i)
        for (int j = 1; j < s.t[i]; ++j) {
          auto c = candidate_ad_ppower(*h, i, j);
          auto r = check_candidate(*h, c);
          if (!r.is_derivation || r.is_inner)
            bad.push_back(s.label() + ": ad d" + std::to_string(i + 1) + "^p^" + std::to_string(j) + " is not outer");
          cands.push_back(std::move(c));
        }
      const long want = s.eta() - s.m;
      const long r = static_cast<long>(rank_mod_inner(*h, cands));
      if (r != want) bad.push_back(s.label() + ": p-power candidates span " + std::to_string(r) + ", expected " + std::to_string(want));
      info.push_back(s.label() + ": " + std::to_string(cands.size()) + " p-power candidates");
    }
  }

  void outer_character(std::vector<std::string>& bad, std::vector<std::string>& info) {
    for (const auto& s : distinct([](const AlgebraSpec& s) { return expected_outer_dim(s).has_value(); })) {
      const auto& d = der(s);
      const Family f = s.family;
      const bool plain_family = s.variant == Variant::plain && (f == Family::W || f == Family::S || f == Family::H ||
                                                                 f == Family::K || f == Family::KO);
      const bool must = asserted(s) && (plain_family || (f == Family::K && s.variant == Variant::derived1));
      if (must && !d.bracket.abelian) bad.push_back(s.label() + ": outer algebra is not abelian");
      if (!must)
        info.push_back(s.label() + ": " + (d.bracket.abelian ? "abelian" : "nonabelian") + ", outer " +
                       std::to_string(d.outer) + ", derived " + std::to_string(d.bracket.derived_dim));
    }
  }

  const std::vector<GridRow>& grid() const { return grid_; }

  std::set<std::string> seen_heights_;

 private:
  SuiteOptions opt_;
  std::vector<GridRow> grid_;
  std::map<std::string, AlgebraPtr> algs_;
  std::map<std::string, DerivationReport> ders_;
  std::map<std::string, std::vector<VectorField>> nors_;
};

}  // namespace

const std::vector<std::string>& suite_groups() {
  static const std::vector<std::string> g{"jacobi",        "heights",     "outer-dims",         "exceptional",
                                          "normalizers",   "decomposition", "simplicity",       "solver-consistency",
                                          "restrictedness", "outer-character"};
  return g;
}

std::vector<CheckResult> run_acceptance(const SuiteOptions& opt) {
  const auto& groups = suite_groups();
  for (const auto& o : opt.only)
    if (std::find(groups.begin(), groups.end(), o) == groups.end()) throw std::invalid_argument("unknown check group '" + o + "'");
  Suite suite(opt);
  using Fn = void (Suite::*)(std::vector<std::string>&, std::vector<std::string>&);
  const Fn fns[] = {&Suite::jacobi,        &Suite::heights,          &Suite::outer_dims,         &Suite::exceptional,
                    &Suite::normalizers,   &Suite::decomposition,    &Suite::simplicity_group,   &Suite::solver_consistency,
                    &Suite::restrictedness, &Suite::outer_character};
  std::vector<CheckResult> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), groups[g]) == opt.only.end()) continue;
    CheckResult r;
    r.id = static_cast<int>(g + 1);
    r.name = groups[g];
    auto t0 = Clock::now();
    std::vector<std::string> bad, info;
    try {
      (suite.*fns[g])(bad, info);
    } catch (const std::exception& e) {
      bad.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = since(t0);
    r.pass = bad.empty();
    std::ostringstream d;
    const auto& lines = r.pass ? info : bad;
    for (std::size_t i = 0; i < lines.size(); ++i) d << (i ? "; " : "") << lines[i];
    if (!r.pass && !info.empty()) d << " | " << info.back();
    r.detail = d.str();
    if (opt.progress) *opt.progress << result_line(r) << std::endl;
    out.push_back(std::move(r));
  }
  return out;
}

std::string result_line(const CheckResult& r) {
  std::ostringstream o;
  o << (r.pass ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.name << " (";
  o.setf(std::ios::fixed);
  o.precision(1);
  o << r.seconds << " s)";
  if (!r.detail.empty()) o << ": " << r.detail;
  return o.str();
}

}  // namespace cartan::tools
