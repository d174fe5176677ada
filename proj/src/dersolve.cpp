#include "cartan/dersolve.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <stdexcept>

#include "cartan/structure.hpp"

namespace cartan {

SVec LinearMap::apply(const FieldCtx& F, const SVec& x) const {
  SVec out;
  for (const auto& e : x) out = sv_axpy(F, out, e.v, cols[e.i]);
  return out;
}

bool LinearMap::is_zero() const {
  for (const auto& c : cols)
    if (!c.empty()) return false;
  return escapes.empty();
}

LinearMap compose(const FieldCtx& F, const LinearMap& a, const LinearMap& b) {
  LinearMap r;
  r.dim = b.dim;
  r.parity = a.parity ^ b.parity;
  r.zshift = a.zshift + b.zshift;
  r.cols.resize(b.dim);
  for (std::size_t s = 0; s < b.dim; ++s) r.cols[s] = a.apply(F, b.cols[s]);
  r.escapes = a.escapes;
  r.escapes.insert(r.escapes.end(), b.escapes.begin(), b.escapes.end());
  return r;
}

LinearMap supercommutator(const FieldCtx& F, const LinearMap& a, const LinearMap& b) {
  LinearMap ab = compose(F, a, b);
  LinearMap ba = compose(F, b, a);
  Res c = F.neg(F.sign(a.parity & b.parity));
  for (std::size_t s = 0; s < ab.dim; ++s) ab.cols[s] = sv_axpy(F, ab.cols[s], c, ba.cols[s]);
  return ab;
}

LinearMap ad_map(const Algebra& L, const SVec& x, int zdeg, int parity) {
  LinearMap r;
  r.dim = L.dim();
  r.zshift = zdeg;
  r.parity = parity;
  r.cols.resize(r.dim);
  for (std::uint32_t s = 0; s < r.dim; ++s)
    for (const auto& e : x) {
      SVec b = L.bracket_direct(e.i, s);
      r.cols[s] = sv_axpy(L.F(), r.cols[s], e.v, b);
    }
  return r;
}

LinearMap ad_external(const Algebra& L, const VectorField& D) {
  LinearMap r;
  r.dim = L.dim();
  r.cols.resize(r.dim);
  bool set = false;
  for (std::uint32_t s = 0; s < r.dim; ++s) {
    auto c = L.coords(bracket(L.W(), D, L.basis(s)));
    if (!c) {
      r.escapes.push_back(s);
      continue;
    }
    if (!set && !c->empty()) {
      r.zshift = L.zdeg(c->front().i) - L.zdeg(s);
      r.parity = L.parity(c->front().i) ^ L.parity(s);
      set = true;
    }
    r.cols[s] = std::move(*c);
  }
  return r;
}

const char* mode_name(DerMode m) { return m == DerMode::full ? "full" : "weight-reduced"; }

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Res> dense_inverse(const FieldCtx& F, std::size_t n, std::vector<Res> a) {
  std::vector<Res> inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) throw std::logic_error("generator words do not span a block");
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[c * n + k]);
        std::swap(inv[piv * n + k], inv[c * n + k]);
      }
    Res s = F.inv(a[c * n + c]);
    for (std::size_t k = 0; k < n; ++k) {
      a[c * n + k] = F.mul(a[c * n + k], s);
      inv[c * n + k] = F.mul(inv[c * n + k], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r * n + c] == 0) continue;
      Res f = F.neg(a[r * n + c]);
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] = F.add(a[r * n + k], F.mul(f, a[c * n + k]));
        inv[r * n + k] = F.add(inv[r * n + k], F.mul(f, inv[c * n + k]));
      }
    }
  }
  return inv;
}

// closure words and, per block, the change of basis from words to basis vectors
struct GenCtx {
  const Algebra& L;
  const Closure& C;
  std::vector<std::vector<std::uint32_t>> words_of_block;  // closure vector indices
  std::vector<std::vector<Res>> inv;                       // inv[j * n + s]

  explicit GenCtx(const Algebra& alg) : L(alg), C(alg.generation()) {
    const auto& F = L.F();
    const std::size_t nb = L.blocks().size();
    words_of_block.resize(nb);
    for (std::uint32_t j = 0; j < C.vecs.size(); ++j) words_of_block[L.block_of(C.vecs[j].front().i)].push_back(j);
    inv.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t n = L.blocks()[b].size();
      if (words_of_block[b].size() != n) throw std::logic_error("generation closure does not fill a block");
      std::vector<Res> a(n * n, 0);
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : C.vecs[words_of_block[b][j]]) a[static_cast<std::size_t>(L.local_of(e.i)) * n + j] = e.v;
      // columns of a are the words; b_s = Σ_j inv[j][s] a_j
      auto ai = dense_inverse(F, n, std::move(a));
      inv[b] = std::move(ai);
    }
  }

  // coefficient of word j (local position) in basis vector s (local position)
  Res coef(int b, std::size_t j, std::size_t s) const {
    const std::size_t n = L.blocks()[b].size();
    return inv[b][j * n + s];
  }
};

LinearMap extend(const GenCtx& G, const std::vector<SVec>& values, int k, int rho) {
  const Algebra& L = G.L;
  const auto& F = L.F();
  const auto& C = G.C;
  std::vector<SVec> pa(C.vecs.size());
  for (std::size_t j = 0; j < C.vecs.size(); ++j) {
    const auto& w = C.words[j];
    if (w.src < 0) {
      pa[j] = values[w.gen];
      continue;
    }
    const std::uint32_t g = C.gens[w.gen];
    SVec a = L.bracket_vec(values[w.gen], C.vecs[w.src]);
    SVec b = L.ad(g, pa[w.src]);
    pa[j] = sv_axpy(F, a, F.sign(rho & L.parity(g)), b);
  }
  LinearMap r;
  r.dim = L.dim();
  r.zshift = k;
  r.parity = rho;
  r.cols.resize(r.dim);
  for (std::uint32_t s = 0; s < r.dim; ++s) {
    const int b = L.block_of(s);
    const auto& ws = G.words_of_block[b];
    SVec acc;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      Res c = G.coef(b, j, static_cast<std::size_t>(L.local_of(s)));
      if (c) acc = sv_axpy(F, acc, c, pa[ws[j]]);
    }
    r.cols[s] = std::move(acc);
  }
  return r;
}

// ----- linear systems for one (k, ρ) or (k, ρ, weight 0) component -----

struct Targets {
  const Algebra& L;
  bool by_weight;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> zp;
  std::vector<int> zp_pos;

  Targets(const Algebra& alg, bool byw) : L(alg), by_weight(byw) {
    if (!by_weight) {
      zp_pos.resize(L.dim());
      for (std::uint32_t s = 0; s < L.dim(); ++s) {
        auto& v = zp[{L.zdeg(s), L.parity(s)}];
        zp_pos[s] = static_cast<int>(v.size());
        v.push_back(s);
      }
    }
  }
  const std::vector<std::uint32_t>* get(int z, int par, std::uint64_t w) const {
    if (by_weight) {
      int b = L.find_block({z, par, w});
      return b < 0 ? nullptr : &L.blocks()[b];
    }
    auto it = zp.find({z, par});
    return it == zp.end() ? nullptr : &it->second;
  }
  int pos(std::uint32_t t) const { return by_weight ? L.local_of(t) : zp_pos[t]; }
};

struct Sym {
  std::size_t rows = 0;
  std::vector<Res> a;  // rows x U
};

struct SystemResult {
  std::size_t U = 0;
  std::size_t dimN = 0;
  std::size_t inner = 0;
  std::vector<std::vector<Res>> N;
  std::vector<std::vector<Res>> reps;
  std::vector<std::size_t> off;
  std::vector<const std::vector<std::uint32_t>*> gtgt;
};

SystemResult solve_system(const GenCtx& G, const Targets& T, int k, int rho) {
  const Algebra& L = G.L;
  const auto& F = L.F();
  const Res p = F.p();
  const auto& gens = G.C.gens;
  const std::size_t d = L.dim();
  SystemResult R;
  R.off.resize(gens.size());
  R.gtgt.resize(gens.size());
  // targets of each source block
  std::vector<const std::vector<std::uint32_t>*> btgt(L.blocks().size());
  for (std::size_t b = 0; b < btgt.size(); ++b) {
    const auto& key = L.block_keys()[b];
    btgt[b] = T.get(key.z + k, key.par ^ rho, key.w);
  }
  std::size_t U = 0;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    R.off[gi] = U;
    R.gtgt[gi] = btgt[L.block_of(gens[gi])];
    if (R.gtgt[gi]) U += R.gtgt[gi]->size();
  }
  R.U = U;
  if (U == 0) return R;
  auto rows_of = [&](std::uint32_t s) -> std::size_t {
    auto t = btgt[L.block_of(s)];
    return t ? t->size() : 0;
  };
  std::vector<std::uint64_t> acc;
  auto finish = [&](std::size_t rows) {
    Sym S;
    S.rows = rows;
    S.a.resize(rows * U);
    for (std::size_t q = 0; q < rows * U; ++q) S.a[q] = static_cast<Res>(acc[q] % p);
    return S;
  };
  // symbolic images of the closure words
  const auto& C = G.C;
  std::vector<Sym> pa(C.vecs.size());
  for (std::size_t j = 0; j < C.vecs.size(); ++j) {
    const auto& w = C.words[j];
    const std::size_t rows = rows_of(C.vecs[j].front().i);
    if (rows == 0) {
      pa[j].rows = 0;
      continue;
    }
    acc.assign(rows * U, 0);
    if (w.src < 0) {
      for (std::size_t l = 0; l < rows; ++l) acc[l * U + R.off[w.gen] + l] = 1;
      pa[j] = finish(rows);
      continue;
    }
    const std::uint32_t g = gens[w.gen];
    if (const auto* tg = R.gtgt[w.gen])
      for (std::size_t l = 0; l < tg->size(); ++l)
        for (const auto& e : C.vecs[w.src])
          for (const auto& x : L.bracket((*tg)[l], e.i))
            acc[static_cast<std::size_t>(T.pos(x.i)) * U + R.off[w.gen] + l] += static_cast<std::uint64_t>(e.v) * x.v;
    const Sym& ps = pa[w.src];
    if (ps.rows) {
      const auto* ts = btgt[L.block_of(C.vecs[w.src].front().i)];
      const Res sg = F.sign(rho & L.parity(g));
      for (std::size_t r0 = 0; r0 < ts->size(); ++r0)
        for (const auto& x : L.bracket(g, (*ts)[r0])) {
          const std::uint64_t c = F.mul(sg, x.v);
          std::uint64_t* dst = &acc[static_cast<std::size_t>(T.pos(x.i)) * U];
          const Res* src = &ps.a[r0 * U];
          for (std::size_t u = 0; u < U; ++u) dst[u] += c * src[u];
        }
    }
    pa[j] = finish(rows);
  }
  // symbolic images of the basis
  std::vector<Sym> pb(d);
  for (std::uint32_t s = 0; s < d; ++s) {
    const std::size_t rows = rows_of(s);
    pb[s].rows = rows;
    if (!rows) continue;
    const int b = L.block_of(s);
    const auto& ws = G.words_of_block[b];
    acc.assign(rows * U, 0);
    for (std::size_t j = 0; j < ws.size(); ++j) {
      std::uint64_t c = G.coef(b, j, static_cast<std::size_t>(L.local_of(s)));
      if (!c) continue;
      const auto& src = pa[ws[j]].a;
      for (std::size_t q = 0; q < rows * U; ++q) acc[q] += c * src[q];
    }
    pb[s] = finish(rows);
  }
  // Leibniz residuals on (generator, basis element)
  DenseEchelon E(F, U);
  std::vector<Res> eq(U);
  for (std::size_t gi = 0; gi < gens.size() && E.rank() < U; ++gi) {
    const std::uint32_t g = gens[gi];
    const Res sg = F.sign(rho & L.parity(g));
    std::map<int, const std::vector<std::uint32_t>*> tcache;
    for (std::uint32_t s = 0; s < d && E.rank() < U; ++s) {
      const int bs = L.block_of(s);
      auto it = tcache.find(bs);
      if (it == tcache.end()) {
        auto wsum = L.weight_add(L.weight(g), L.weight(s));
        it = tcache.emplace(bs, T.get(L.zdeg(g) + L.zdeg(s) + k, L.parity(g) ^ L.parity(s) ^ rho, L.wkey_of(wsum))).first;
      }
      const auto* tq = it->second;
      if (!tq) continue;
      const std::size_t rows = tq->size();
      acc.assign(rows * U, 0);
      for (const auto& x : L.bracket(g, s)) {
        const Sym& S = pb[x.i];
        for (std::size_t q = 0; q < rows * U; ++q) acc[q] += static_cast<std::uint64_t>(x.v) * S.a[q];
      }
      if (const auto* tg = R.gtgt[gi])
        for (std::size_t l = 0; l < tg->size(); ++l)
          for (const auto& x : L.bracket((*tg)[l], s))
            acc[static_cast<std::size_t>(T.pos(x.i)) * U + R.off[gi] + l] += p - x.v;
      if (pb[s].rows) {
        const auto* ts = btgt[bs];
        for (std::size_t r0 = 0; r0 < ts->size(); ++r0)
          for (const auto& x : L.bracket(g, (*ts)[r0])) {
            const std::uint64_t c = p - F.mul(sg, x.v);
            std::uint64_t* dst = &acc[static_cast<std::size_t>(T.pos(x.i)) * U];
            const Res* src = &pb[s].a[r0 * U];
            for (std::size_t u = 0; u < U; ++u) dst[u] += c * src[u];
          }
      }
      for (std::size_t r = 0; r < rows; ++r) {
        bool nz = false;
        for (std::size_t u = 0; u < U; ++u) {
          eq[u] = static_cast<Res>(acc[r * U + u] % p);
          nz |= eq[u] != 0;
        }
        if (nz) E.insert(eq);
      }
    }
  }
  R.N = E.nullspace();
  R.dimN = R.N.size();
  // inner derivations of this component
  const auto* X = T.get(k, rho, 0);
  DenseEchelon I(F, U);
  if (X)
    for (auto x : *X) {
      std::vector<Res> v(U, 0);
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const std::uint32_t g = gens[gi];
        const Res sg = F.neg(F.sign(L.parity(x) & L.parity(g)));
        for (const auto& e : L.bracket(g, x)) v[R.off[gi] + T.pos(e.i)] = F.mul(sg, e.v);
      }
      I.insert(std::move(v));
    }
  R.inner = I.rank();
  for (const auto& v : R.N)
    if (I.insert(v)) R.reps.push_back(v);
  if (I.rank() != R.dimN) throw std::logic_error("inner derivation outside the solution space");
  return R;
}

LinearMap to_map(const GenCtx& G, const SystemResult& R, const std::vector<Res>& u, int k, int rho) {
  const auto& gens = G.C.gens;
  std::vector<SVec> values(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    if (!R.gtgt[gi]) continue;
    const auto& tg = *R.gtgt[gi];
    for (std::size_t l = 0; l < tg.size(); ++l)
      if (Res c = u[R.off[gi] + l]) values[gi].push_back({tg[l], c});
    std::sort(values[gi].begin(), values[gi].end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  }
  return extend(G, values, k, rho);
}

// generator values of a map, flattened to index g * d + t
SVec gen_values(const Algebra& L, const LinearMap& phi) {
  const auto& gens = L.generation().gens;
  const std::size_t d = L.dim();
  SVec out;
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (const auto& e : phi.cols[gens[gi]]) out.push_back({static_cast<std::uint32_t>(gi * d + e.i), e.v});
  return out;
}

// generator values of ad(b_x)
SVec inner_values(const Algebra& L, std::uint32_t x) {
  const auto& F = L.F();
  const auto& gens = L.generation().gens;
  const std::size_t d = L.dim();
  SVec out;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Res sg = F.neg(F.sign(L.parity(x) & L.parity(gens[gi])));
    for (const auto& e : L.bracket(gens[gi], x))
      out.push_back({static_cast<std::uint32_t>(gi * d + e.i), F.mul(sg, e.v)});
  }
  return out;
}

std::vector<std::uint32_t> degree_part(const Algebra& L, int k, int rho) {
  std::vector<std::uint32_t> X;
  for (std::uint32_t s = 0; s < L.dim(); ++s)
    if (L.zdeg(s) == k && L.parity(s) == rho) X.push_back(s);
  return X;
}

LinearMap finalize(const Algebra& L, LinearMap r) {
  r.dim = L.dim();
  bool set = false;
  for (std::uint32_t s = 0; s < r.dim && !set; ++s)
    if (!r.cols[s].empty()) {
      r.zshift = L.zdeg(r.cols[s].front().i) - L.zdeg(s);
      r.parity = L.parity(r.cols[s].front().i) ^ L.parity(s);
      set = true;
    }
  return r;
}

}  // namespace

LinearMap extend_from_generators(const Algebra& L, const std::vector<SVec>& values, int k, int rho) {
  GenCtx G(L);
  return extend(G, values, k, rho);
}

bool verify_leibniz(const Algebra& L, const LinearMap& phi, std::size_t full_pair_limit, std::size_t random_pairs,
                    std::uint64_t seed) {
  if (!phi.escapes.empty() || phi.cols.size() != L.dim()) return false;
  const auto& F = L.F();
  const std::size_t d = L.dim();
  auto lbr = [&](const SVec& a, std::uint32_t y) {
    SVec o;
    for (const auto& e : a) o = sv_axpy(F, o, e.v, L.bracket_direct(e.i, y));
    return o;
  };
  auto rbr = [&](std::uint32_t x, const SVec& b) {
    SVec o;
    for (const auto& e : b) o = sv_axpy(F, o, e.v, L.bracket_direct(x, e.i));
    return o;
  };
  auto holds = [&](std::uint32_t x, std::uint32_t y) {
    SVec lhs = phi.apply(F, L.bracket_direct(x, y));
    SVec r1 = lbr(phi.cols[x], y);
    SVec r2 = rbr(x, phi.cols[y]);
    SVec v = sv_axpy(F, lhs, F.neg(1), r1);
    v = sv_axpy(F, v, F.neg(F.sign(phi.parity & L.parity(x))), r2);
    return v.empty();
  };
  if (d <= full_pair_limit) {
    for (std::uint32_t s = 0; s < d; ++s) L.pin_row(s);
    for (std::uint32_t x = 0; x < d; ++x)
      for (std::uint32_t y = 0; y < d; ++y)
        if (!holds(x, y)) return false;
    return true;
  }
  for (auto g : L.generation().gens)
    for (std::uint32_t y = 0; y < d; ++y)
      if (!holds(g, y)) return false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(d - 1));
  for (std::size_t n = 0; n < random_pairs; ++n)
    if (!holds(pick(rng), pick(rng))) return false;
  return true;
}

std::vector<LinearMap> der_component(const Algebra& L, int k, int rho) {
  GenCtx G(L);
  Targets T(L, false);
  auto R = solve_system(G, T, k, rho);
  std::vector<LinearMap> out;
  for (const auto& u : R.N) out.push_back(to_map(G, R, u, k, rho));
  return out;
}

DerivationReport der_full(const Algebra& L, DerMode mode, const DerOptions& opt) {
  const auto t0 = Clock::now();
  DerivationReport rep;
  rep.mode = mode;
  GenCtx G(L);
  const bool byw = mode == DerMode::weight_reduced;
  Targets T(L, byw);
  std::vector<std::size_t> zc(L.blocks().size(), 0);
  for (const auto& v : center(L)) ++zc[L.block_of(v.front().i)];
  for (auto c : zc) rep.center_dim += c;
  auto [lo, hi] = L.zrange();
  for (int k = lo - hi; k <= hi - lo; ++k)
    for (int rho = 0; rho < 2; ++rho) {
      auto R = solve_system(G, T, k, rho);
      BlockDims bd{k, rho, R.dimN, R.inner, R.dimN - R.inner};
      if (byw)
        for (std::size_t b = 0; b < L.blocks().size(); ++b) {
          const auto& key = L.block_keys()[b];
          if (key.z != k || key.par != rho || key.w == 0) continue;
          const std::size_t in = L.blocks()[b].size() - zc[b];
          bd.total += in;
          bd.inner += in;
        }
      if (bd.total == 0) continue;
      rep.dims_by_block.push_back(bd);
      rep.total += bd.total;
      rep.inner += bd.inner;
      rep.outer += bd.outer;
      if (opt.representatives)
        for (const auto& u : R.reps) rep.outer_reps.push_back(to_map(G, R, u, k, rho));
    }
  if (opt.verify && opt.representatives) {
    rep.leibniz_verified = true;
    for (const auto& r : rep.outer_reps)
      if (!verify_leibniz(L, r, opt.full_pair_limit, opt.random_pairs)) rep.leibniz_verified = false;
  }
  if (opt.outer_bracket && opt.representatives) rep.bracket = outer_bracket(L, rep.outer_reps);
  rep.expected_outer = expected_outer_dim(L.spec());
  rep.matched_expected = rep.expected_outer && *rep.expected_outer == static_cast<long>(rep.outer);
  rep.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

CandidateCheck check_candidate(const Algebra& L, const LinearMap& phi) {
  CandidateCheck c;
  c.is_derivation = verify_leibniz(L, phi);
  if (!c.is_derivation) return c;
  const auto X = degree_part(L, phi.zshift, phi.parity);
  const std::size_t d = L.dim();
  Echelon E(L.F(), L.generation().gens.size() * d, true);
  for (std::uint32_t q = 0; q < X.size(); ++q) E.insert(inner_values(L, X[q]), {{q, 1}});
  auto sol = E.solve(gen_values(L, phi));
  if (sol) {
    c.is_inner = true;
    SVec w;
    for (const auto& e : *sol) w.push_back({X[e.i], e.v});
    std::sort(w.begin(), w.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
    c.inner_witness = std::move(w);
  }
  return c;
}

std::size_t rank_mod_inner(const Algebra& L, const std::vector<LinearMap>& maps) {
  std::map<std::pair<int, int>, std::vector<const LinearMap*>> groups;
  for (const auto& m : maps) groups[{m.zshift, m.parity}].push_back(&m);
  const std::size_t d = L.dim();
  std::size_t r = 0;
  for (const auto& [key, ms] : groups) {
    Echelon E(L.F(), L.generation().gens.size() * d);
    for (auto x : degree_part(L, key.first, key.second)) E.insert(inner_values(L, x));
    for (auto m : ms)
      if (E.insert(gen_values(L, *m))) ++r;
  }
  return r;
}

OuterBracket outer_bracket(const Algebra& L, const std::vector<LinearMap>& reps) {
  OuterBracket ob;
  const auto& F = L.F();
  const std::size_t n = reps.size();
  const std::size_t d = L.dim();
  const std::size_t cols = L.generation().gens.size() * d;
  ob.table.assign(n, std::vector<SVec>(n));
  std::map<std::pair<int, int>, std::unique_ptr<Echelon>> solvers;
  auto solver = [&](int k, int rho) -> Echelon& {
    auto& s = solvers[{k, rho}];
    if (!s) {
      s = std::make_unique<Echelon>(F, cols, true);
      const auto X = degree_part(L, k, rho);
      for (std::uint32_t q = 0; q < X.size(); ++q) s->insert(inner_values(L, X[q]), {{q, 1}});
      for (std::uint32_t j = 0; j < n; ++j)
        if (reps[j].zshift == k && reps[j].parity == rho)
          s->insert(gen_values(L, reps[j]), {{static_cast<std::uint32_t>(d + j), 1}});
    }
    return *s;
  };
  const auto& gens = L.generation().gens;
  Echelon span(F, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Res c = F.neg(F.sign(reps[a].parity & reps[b].parity));
      SVec v;
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const auto g = gens[gi];
        SVec x = reps[a].apply(F, reps[b].cols[g]);
        x = sv_axpy(F, x, c, reps[b].apply(F, reps[a].cols[g]));
        for (const auto& e : x) v.push_back({static_cast<std::uint32_t>(gi * d + e.i), e.v});
      }
      if (v.empty()) continue;
      auto sol = solver(reps[a].zshift + reps[b].zshift, reps[a].parity ^ reps[b].parity).solve(v);
      if (!sol) throw std::logic_error("bracket of derivations is not a derivation");
      SVec coord;
      for (const auto& e : *sol)
        if (e.i >= d) coord.push_back({static_cast<std::uint32_t>(e.i - d), e.v});
      if (!coord.empty()) {
        ob.abelian = false;
        span.insert(coord);
      }
      ob.table[a][b] = std::move(coord);
    }
  ob.derived_dim = span.rank();
  return ob;
}

// ----- explicit candidates -----

LinearMap candidate_ad_ppower(const Algebra& L, int i, int j) {
  const WSpace& W = L.W();
  if (i < 0 || i >= W.O().m()) throw std::invalid_argument("candidate_ad_ppower: index must be even");
  int e = 1;
  for (int q = 0; q < j; ++q) e *= static_cast<int>(W.F().p());
  LinearMap r;
  r.cols.resize(L.dim());
  for (std::uint32_t s = 0; s < L.dim(); ++s) {
    VectorField v = coeff_shift(W, i, e, L.basis(s));
    auto c = L.coords(v);
    if (!c) {
      r.escapes.push_back(s);
      continue;
    }
    r.cols[s] = std::move(*c);
  }
  r = finalize(L, std::move(r));
  r.parity = 0;
  r.zshift = -e * W.O().zd_var(i);
  return r;
}

LinearMap candidate_phi(const Algebra& HO) {
  const auto Wp = HO.W_ptr();
  const WSpace& W = *Wp;
  const SuperSpace& O = W.O();
  const int m = O.m();
  RealizationInverse inv(OpKind::TH, Wp);
  LinearMap r;
  r.cols.resize(HO.dim());
  for (std::uint32_t s = 0; s < HO.dim(); ++s) {
    auto f = inv.preimage(HO.basis(s));
    if (!f) {
      r.escapes.push_back(s);
      continue;
    }
    SuperPoly g;
    for (int i = 0; i < m; ++i) g = sv_add(W.F(), g, partial(O, i, partial(O, i + m, *f)));
    auto c = HO.coords(op_TH(W, g));
    if (!c) {
      r.escapes.push_back(s);
      continue;
    }
    r.cols[s] = std::move(*c);
  }
  r = finalize(HO, std::move(r));
  r.parity = 1;
  bool set = false;
  for (std::uint32_t s = 0; s < HO.dim() && !set; ++s)
    if (!r.cols[s].empty()) set = true;
  if (!set) r.zshift = -2;
  return r;
}

Res theta_coefficient(const FieldCtx& F, const std::vector<int>& alpha, std::uint32_t u, int m, int i) {
  const Res ai = F.from_int(alpha[i]);
  if (F.add(ai, 1) == 0) return 0;
  int b = 0;
  for (int j = 0; j < m; ++j)
    if (alpha[j] != 0 && ((u >> j) & 1u)) ++b;
  return F.inv(F.mul(F.from_int(1 + b), F.add(ai, 1)));
}

LinearMap candidate_theta(const Algebra& SHO) {
  const auto Wp = SHO.W_ptr();
  const WSpace& W = *Wp;
  const SuperSpace& O = W.O();
  const auto& F = W.F();
  const int m = O.m();
  if (m != 3 || O.n() != 3) throw std::invalid_argument("candidate_theta: needs m = n = 3");
  RealizationInverse inv(OpKind::TH, Wp);
  auto tau = [&](const SuperPoly& f) {
    SuperPoly out;
    for (const auto& e : f) {
      std::vector<int> alpha(O.alpha(e.i), O.alpha(e.i) + m);
      const std::uint32_t u = O.umask(e.i);
      const SuperPoly x = mono(e.i, e.v);
      for (int i = 0; i < 3; ++i) {
        const Res a = theta_coefficient(F, alpha, u, m, i);
        if (!a) continue;
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        SuperPoly y = partial(O, j + m, partial(O, k + m, x));
        if (y.empty()) continue;
        y = poly_mul(O, mono(static_cast<std::uint32_t>(O.var(i)), a), y);
        out = sv_add(F, out, y);
      }
    }
    return out;
  };
  LinearMap r;
  r.cols.resize(SHO.dim());
  for (std::uint32_t s = 0; s < SHO.dim(); ++s) {
    auto f = inv.preimage(SHO.basis(s));
    if (!f) {
      r.escapes.push_back(s);
      continue;
    }
    auto c = SHO.coords(op_TH(W, tau(*f)));
    if (!c) {
      r.escapes.push_back(s);
      continue;
    }
    r.cols[s] = std::move(*c);
  }
  return finalize(SHO, std::move(r));
}

// ----- outer dimensions -----

long l_lambda(int m, Res lambda, std::uint32_t p) {
  long total = 0;
  std::vector<long> binom(m + 1, 1);
  for (int k = 1; k <= m; ++k) binom[k] = binom[k - 1] * (m - k + 1) / k;
  const long ml = static_cast<long>(m) * lambda;
  for (int l : {0, 2})
    for (int k = 0; k <= m; ++k) {
      long v = ml - m + 2L * k + l;
      if (((v % static_cast<long>(p)) + p) % p == 0) total += binom[k];
    }
  return total;
}

std::optional<long> expected_outer_dim(const AlgebraSpec& s) {
  const long eta = s.eta();
  const long m = s.m;
  const long p = s.p;
  auto cong = [p](long a, long b) { return (((a - b) % p) + p) % p == 0; };
  const bool d1 = s.variant == Variant::derived1;
  const bool d2 = s.variant == Variant::derived2;
  const bool pl = s.variant == Variant::plain;
  switch (s.family) {
    case Family::W:
      if (pl) return eta - m;
      break;
    case Family::S:
      if (pl) return eta - m + 1;
      if (d1) return eta + 1;
      break;
    case Family::H:
      if (pl) return eta + 1;
      if (d1) return eta + 2;
      break;
    case Family::K:
      if (pl) return eta - m;
      if (d1) return eta - m + (cong(s.n - m, 3) ? 1 : 0);
      break;
    case Family::HO:
      if (pl) return eta + 2;
      break;
    case Family::SHO:
      if (pl) return eta + 2;
      if (d1) return eta + (1L << m) + 2;
      if (d2) return eta + (1L << m) + 3 + (m == 3 ? 1 : 0);
      break;
    case Family::KO:
      if (pl) return eta - m;
      break;
    case Family::SKO: {
      const long l = l_lambda(s.m, s.lambda, s.p);
      if (pl) return eta - m + 1;
      if (d1) return eta - m + 1 + l;
      if (d2) return eta - m + 1 + l + (cong(m * static_cast<long>(s.lambda), -1) ? 1 : 0);
      break;
    }
  }
  return std::nullopt;
}

}  // namespace cartan
