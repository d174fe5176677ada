#include "cartan/structure.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace cartan {

namespace {

// per block of h: kernel of x ↦ ([s_1, x], [s_2, x], ...)
std::vector<SVec> common_kernel(const Algebra& h, const std::vector<std::uint32_t>& acting) {
  const auto& F = h.F();
  const std::size_t d = h.dim();
  std::vector<SVec> out;
  for (const auto& blk : h.blocks()) {
    std::vector<SVec> images;
    images.reserve(blk.size());
    for (auto s : blk) {
      SVec im;
      for (std::size_t g = 0; g < acting.size(); ++g)
        for (const auto& e : h.bracket(acting[g], s))
          im.push_back({static_cast<std::uint32_t>(g * d + e.i), e.v});
      images.push_back(std::move(im));
    }
    for (const auto& c : kernel_of_images(F, images)) {
      SVec v;
      for (const auto& e : c) v.push_back({blk[e.i], e.v});
      std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
      out.push_back(std::move(v));
    }
  }
  return out;
}

SVec bracket_with(const FieldCtx& F, const BracketFn& br, std::uint32_t i, const SVec& v, bool left) {
  SVec out;
  for (const auto& e : v) out = sv_axpy(F, out, e.v, left ? br(i, e.i) : br(e.i, i));
  return out;
}

}  // namespace

std::vector<SVec> center(const Algebra& h) { return common_kernel(h, h.generation().gens); }

std::size_t ideal_dim(const Algebra& h, const SVec& v) {
  Closure c(h);
  c.seed(v);
  return c.dim();
}

SimplicityReport simplicity(const Algebra& h, std::size_t point_limit) {
  SimplicityReport r;
  const auto& F = h.F();
  const std::size_t d = h.dim();
  if (d < 2) {
    r.reason = "dimension < 2";
    return r;
  }
  bool nonzero = false;
  for (auto g : h.generation().gens)
    for (std::uint32_t s = 0; s < d && !nonzero; ++s) nonzero = !h.bracket(g, s).empty();
  if (!nonzero) {
    r.reason = "abelian";
    return r;
  }
  // a nonzero ideal meets the centralizer of the negative part in a weight vector
  std::vector<std::uint32_t> neg;
  for (std::uint32_t s = 0; s < d; ++s)
    if (h.zdeg(s) < 0) neg.push_back(s);
  std::vector<SVec> C = neg.empty() ? std::vector<SVec>{} : common_kernel(h, neg);
  if (neg.empty()) {
    for (std::uint32_t s = 0; s < d; ++s) C.push_back({{s, 1}});
    r.complete = false;
  }
  std::map<std::pair<int, std::uint64_t>, std::vector<SVec>> spaces;
  for (auto& v : C) spaces[{h.parity(v.front().i), h.wkey(v.front().i)}].push_back(std::move(v));
  const Res p = F.p();
  for (auto& [key, vs] : spaces) {
    const std::size_t k = vs.size();
    double points = 0;
    for (std::size_t l = 0; l < k; ++l) points = points * p + 1;
    std::vector<SVec> seeds;
    if (points <= static_cast<double>(point_limit)) {
      for (std::size_t lead = 0; lead < k; ++lead) {
        std::size_t tail = k - lead - 1;
        std::size_t count = 1;
        for (std::size_t q = 0; q < tail; ++q) count *= p;
        for (std::size_t code = 0; code < count; ++code) {
          SVec v = vs[lead];
          std::size_t c = code;
          for (std::size_t q = lead + 1; q < k; ++q) {
            v = sv_axpy(F, v, static_cast<Res>(c % p), vs[q]);
            c /= p;
          }
          seeds.push_back(std::move(v));
        }
      }
    } else {
      seeds = vs;
      r.complete = false;
    }
    for (const auto& v : seeds) {
      ++r.seeds;
      std::size_t id = ideal_dim(h, v);
      if (id < d) {
        r.reason = "proper ideal of dimension " + std::to_string(id);
        return r;
      }
    }
  }
  r.simple = true;
  return r;
}

bool is_simple(const Algebra& h) { return simplicity(h).simple; }

HeightDepth height_depth(const Algebra& h) {
  auto [lo, hi] = h.zrange();
  return {-lo, hi};
}

long expected_height(const AlgebraSpec& s) {
  const long xi = s.xi();
  const long p = s.p;
  auto zero = [p](long a) { return ((a % p) + p) % p == 0; };
  switch (s.family) {
    case Family::W:
    case Family::KO:
      return xi - 1;
    case Family::S:
    case Family::HO:
      return xi - 2;
    case Family::SKO:
      return zero(static_cast<long>(s.m) * s.lambda + 1) ? xi - 3 : xi - 2;
    case Family::H:
      return xi - 3;
    case Family::SHO:
      return xi - 5;
    case Family::K: {
      long q = 1;
      for (int k = 0; k < s.t.back(); ++k) q *= p;
      return xi + q - (zero(s.n - s.m - 3) ? 4 : 3);
    }
  }
  return 0;
}

std::optional<std::size_t> expected_normalizer_dim(const AlgebraSpec& s) {
  if (s.variant == Variant::bar) return std::nullopt;
  AlgebraSpec b = s;
  b.variant = Variant::plain;
  switch (s.family) {
    case Family::W:
    case Family::K:
    case Family::KO:
      return build(b)->dim();
    case Family::SKO:
      return build(b)->dim() + 1;
    case Family::S:
      b.variant = Variant::bar;
      return build(b)->dim();
    case Family::H:
    case Family::HO:
    case Family::SHO:
      b.variant = Variant::bar;
      return build(b)->dim() + 1;
  }
  return std::nullopt;
}

std::vector<VectorField> normalizer(const Algebra& sub) {
  const WSpace& W = sub.W();
  const auto& F = W.F();
  const auto& G = sub.generation().gens;
  std::map<BlockKey, std::vector<std::uint32_t>> groups;
  for (std::uint32_t w = 0; w < W.size(); ++w) groups[{W.zdeg(w), W.parity(w), sub.wkey_of_W(w)}].push_back(w);
  std::vector<VectorField> out;
  for (auto& [key, cols] : groups) {
    std::vector<SVec> images;
    images.reserve(cols.size());
    for (auto w : cols) {
      const VectorField e{{w, 1}};
      SVec im;
      for (std::size_t g = 0; g < G.size(); ++g) {
        VectorField nf = sub.normal_form(bracket(W, e, sub.basis(G[g])));
        for (const auto& x : nf) im.push_back({static_cast<std::uint32_t>(g * W.size() + x.i), x.v});
      }
      images.push_back(std::move(im));
    }
    for (const auto& c : kernel_of_images(F, images)) {
      VectorField v;
      for (const auto& x : c) v.push_back({cols[x.i], x.v});
      std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
      out.push_back(std::move(v));
    }
  }
  return canonical_span(W, out);
}

std::vector<VectorField> normalizer(const Algebra& ambient, const Algebra& sub) {
  if (ambient.W().size() != sub.W().size()) throw std::invalid_argument("normalizer: different ambient spaces");
  for (const auto& b : sub.basis())
    if (!ambient.contains(b)) throw std::invalid_argument("normalizer: subalgebra not contained in ambient");
  auto N = normalizer(sub);
  std::vector<VectorField> out;
  for (auto& v : N)
    if (ambient.contains(v)) out.push_back(std::move(v));
  if (out.size() != N.size()) {
    // intersect with the ambient algebra
    return intersect_pairwise(sub.W(), N, ambient.basis());
  }
  return out;
}

bool same_subspace(const WSpace& W, const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
  return canonical_span(W, a) == canonical_span(W, b);
}

JacobiReport check_jacobi(const FieldCtx& F, const std::vector<int>& parity, const BracketFn& br,
                          std::size_t exhaustive_limit, std::size_t random_triples, std::uint64_t seed) {
  JacobiReport rep;
  const std::size_t d = parity.size();
  if (d == 0) return rep;
  auto fail = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, const char* kind) {
    ++rep.violations;
    if (!rep.first) {
      rep.first = std::array<std::uint32_t, 3>{i, j, k};
      rep.kind = kind;
    }
    rep.pass = false;
  };
  auto antisym = [&](std::uint32_t i, std::uint32_t j) {
    SVec a = br(i, j);
    SVec b = br(j, i);
    Res s = F.sign(parity[i] & parity[j]);
    return sv_axpy(F, a, s, b).empty();
  };
  auto jacobi = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    SVec jk = br(j, k);
    SVec ij = br(i, j);
    SVec ik = br(i, k);
    SVec lhs = bracket_with(F, br, i, jk, true);
    SVec r1 = bracket_with(F, br, k, ij, false);
    SVec r2 = bracket_with(F, br, j, ik, true);
    SVec v = sv_axpy(F, lhs, F.neg(1), r1);
    v = sv_axpy(F, v, F.neg(F.sign(parity[i] & parity[j])), r2);
    return v.empty();
  };
  if (d <= exhaustive_limit) {
    rep.exhaustive = true;
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = i; j < d; ++j)
        if (!antisym(i, j)) fail(i, j, j, "antisymmetry");
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = i; j < d; ++j)
        for (std::uint32_t k = j; k < d; ++k) {
          ++rep.triples;
          if (!jacobi(i, j, k)) fail(i, j, k, "jacobi");
        }
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(d - 1));
  for (std::size_t n = 0; n < random_triples; ++n) {
    std::uint32_t i = pick(rng), j = pick(rng), k = pick(rng);
    ++rep.triples;
    if (!antisym(i, j)) fail(i, j, k, "antisymmetry");
    if (!jacobi(i, j, k)) fail(i, j, k, "jacobi");
  }
  return rep;
}

JacobiReport check_jacobi(const Algebra& h, std::size_t exhaustive_limit, std::size_t random_triples,
                          std::uint64_t seed) {
  if (h.dim() <= exhaustive_limit)
    for (std::uint32_t i = 0; i < h.dim(); ++i) h.pin_row(i);
  std::vector<int> par(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) par[i] = h.parity(i);
  BracketFn br = [&h](std::uint32_t i, std::uint32_t j) { return h.bracket_direct(i, j); };
  return check_jacobi(h.F(), par, br, exhaustive_limit, random_triples, seed);
}

}  // namespace cartan
