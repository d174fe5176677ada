#include "cartan/families.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cartan {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::bar: return "bar";
    case Variant::derived1: return "derived1";
    case Variant::derived2: return "derived2";
  }
  return "?";
}

Variant variant_from_name(const std::string& s) {
  for (Variant v : {Variant::plain, Variant::bar, Variant::derived1, Variant::derived2})
    if (s == variant_name(v)) return v;
  throw SpecError("unknown variant '" + s + "'");
}

std::string AlgebraSpec::label() const {
  std::ostringstream os;
  os << family_name(family);
  if (variant == Variant::bar) os << "bar";
  os << "(" << m << "," << n << ";";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  if (variant == Variant::derived1) os << "^(1)";
  if (variant == Variant::derived2) os << "^(2)";
  if (family == Family::SKO) os << "[lambda=" << lambda << "]";
  return os.str();
}

int AlgebraSpec::eta() const {
  int s = 0;
  for (int x : t) s += x;
  return s;
}

long AlgebraSpec::xi() const {
  long s = 0;
  for (int x : t) {
    long q = 1;
    for (int k = 0; k < x; ++k) q *= p;
    s += q;
  }
  return s - m + n;
}

Family grading_of(Family f) {
  if (f == Family::K) return Family::K;
  if (f == Family::KO || f == Family::SKO) return Family::KO;
  return Family::W;
}

std::string validate(const AlgebraSpec& s) {
  if (s.p <= 3 || !FieldCtx::is_prime(s.p)) throw SpecError("p must be a prime > 3");
  if (s.m < 1) throw SpecError("m must be >= 1");
  if (s.n < 2) throw SpecError("n must be > 1");
  if (static_cast<int>(s.t.size()) != s.m) throw SpecError("t must have exactly m entries");
  for (int x : s.t)
    if (x < 1) throw SpecError("t entries must be >= 1");
  switch (s.family) {
    case Family::W:
    case Family::S: break;
    case Family::H:
      if (s.m % 2) throw SpecError("H requires even m");
      break;
    case Family::K:
      if (s.m % 2 == 0) throw SpecError("K requires odd m");
      break;
    case Family::HO:
    case Family::SHO:
      if (s.n != s.m) throw SpecError(std::string(family_name(s.family)) + " requires n = m");
      if (s.m < 3) throw SpecError(std::string(family_name(s.family)) + " requires m > 2");
      break;
    case Family::KO:
    case Family::SKO:
      if (s.n != s.m + 1) throw SpecError(std::string(family_name(s.family)) + " requires n = m+1");
      if (s.m < 3) throw SpecError(std::string(family_name(s.family)) + " requires m > 2");
      break;
  }
  if (s.variant == Variant::bar && s.family != Family::S && s.family != Family::H && s.family != Family::HO &&
      s.family != Family::SHO)
    throw SpecError("bar variant is defined only for S, H, HO, SHO");
  if (s.lambda >= s.p) throw SpecError("lambda must be a residue in [0, p)");
  if (s.family == Family::SKO && s.m == 3) return "m=3 outside the stated range m>3";
  return {};
}

std::shared_ptr<const WSpace> make_ambient(const AlgebraSpec& s) {
  SpaceParams P{s.m, s.n, s.t, s.p};
  return std::make_shared<const WSpace>(std::make_shared<const SuperSpace>(P, grading_of(s.family)));
}

std::vector<SuperPoly> all_monomials(const SuperSpace& O) {
  std::vector<SuperPoly> out;
  out.reserve(O.size());
  for (std::uint32_t k = 0; k < O.size(); ++k) out.push_back(mono(k));
  return out;
}

namespace {

std::vector<std::uint32_t> support_columns(const std::vector<SVec>& vecs) {
  std::vector<std::uint32_t> cols;
  for (const auto& v : vecs)
    for (const auto& e : v) cols.push_back(e.i);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

SVec to_global(const SVec& v, const std::vector<std::uint32_t>& cols) {
  SVec out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({cols[e.i], e.v});
  return out;
}

using BlockId = std::pair<int, int>;

std::map<BlockId, std::vector<SVec>> split_W(const WSpace& W, const std::vector<VectorField>& vecs) {
  std::map<BlockId, std::vector<SVec>> out;
  for (const auto& v : vecs) {
    std::map<BlockId, SVec> parts;
    for (const auto& e : v) parts[{W.zdeg(e.i), W.parity(e.i)}].push_back(e);
    for (auto& [k, s] : parts) out[k].push_back(std::move(s));
  }
  return out;
}

std::map<BlockId, std::vector<std::uint32_t>> group_O(const SuperSpace& O) {
  std::map<BlockId, std::vector<std::uint32_t>> g;
  for (std::uint32_t k = 0; k < O.size(); ++k) g[{O.zdeg(k), O.parity(k)}].push_back(k);
  return g;
}

std::map<BlockId, std::vector<std::uint32_t>> group_W(const WSpace& W) {
  std::map<BlockId, std::vector<std::uint32_t>> g;
  for (std::uint32_t w = 0; w < W.size(); ++w) g[{W.zdeg(w), W.parity(w)}].push_back(w);
  return g;
}

SVec combine(const FieldCtx& F, const std::vector<SVec>& vecs, const SVec& coef, std::size_t n) {
  Accum& acc = scratch(4);
  acc.reset(n);
  for (const auto& c : coef) acc.axpy(F, c.v, vecs[c.i]);
  return acc.take();
}

}  // namespace

std::vector<VectorField> canonical_span(const WSpace& W, const std::vector<VectorField>& vectors) {
  std::vector<VectorField> out;
  for (auto& [k, vs] : split_W(W, vectors))
    for (auto& r : rref_span(W.F(), vs)) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), [](const SVec& a, const SVec& b) { return a.front().i < b.front().i; });
  return out;
}

std::vector<VectorField> span_W(const WSpace& W) {
  std::vector<VectorField> out;
  out.reserve(W.size());
  for (std::uint32_t w = 0; w < W.size(); ++w) out.push_back({{w, 1}});
  return out;
}

std::vector<VectorField> kernel_div(const WSpace& W, bool modulo_constants) {
  const auto& F = W.F();
  std::map<std::uint32_t, std::vector<Entry>> by_target;
  std::vector<VectorField> out;
  for (std::uint32_t w = 0; w < W.size(); ++w) {
    SuperPoly d = divergence(W, {{w, 1}});
    if (d.empty() || (modulo_constants && d.front().i == W.O().one())) {
      out.push_back({{w, 1}});
      continue;
    }
    by_target[d.front().i].push_back({w, d.front().v});
  }
  for (auto& [h, es] : by_target) {
    const Entry& e0 = es.front();
    Res inv0 = F.inv(e0.v);
    for (std::size_t k = 1; k < es.size(); ++k)
      out.push_back({{e0.i, F.neg(F.mul(es[k].v, inv0))}, {es[k].i, 1}});
  }
  return out;
}

std::vector<VectorField> image_of(OpKind op, const WSpace& W, const std::vector<SuperPoly>& polys) {
  std::vector<VectorField> out;
  out.reserve(polys.size());
  for (const auto& a : polys) {
    auto v = apply_op(op, W, a);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<VectorField> solve_bar_condition(const WSpace& W, Family fam) {
  const auto& O = W.O();
  const auto& F = W.F();
  const int N = O.N(), m = O.m();
  const IndexMaps mp = O.maps();
  const bool odd = fam == Family::HO;
  if (fam != Family::H && fam != Family::HO) throw std::invalid_argument("bar condition needs H or HO");
  auto partner = [&](int k) { return (odd ? mp.tilde(k + 1) : mp.prime(k + 1)) - 1; };
  auto dpar = [&](int k) { return k >= m ? 1 : 0; };
  std::vector<VectorField> out;
  for (auto& [bid, cols] : group_W(W)) {
    const int alpha = bid.second;
    auto cfac = [&](int i, int j) {
      int e = dpar(i) * dpar(j) + (dpar(i) + dpar(j)) * (odd ? alpha + 1 : alpha);
      Res c = F.sign(e & 1);
      if (!odd && mp.sigma(i + 1) * mp.sigma(j + 1) < 0) c = F.neg(c);
      return c;
    };
    struct Trip {
      std::uint64_t row;
      std::uint32_t col;
      Res v;
    };
    std::vector<Trip> trips;
    for (std::uint32_t c = 0; c < cols.size(); ++c) {
      const std::uint32_t w = cols[c];
      const std::uint32_t f = W.mono_of(w);
      const int k = W.dir_of(w);
      if (partner(k) < 0 || partner(k) >= N) continue;
      const int kp = partner(k);
      // a_k = f enters ∂_i(a_{j'}) with j = kp, and ∂_j(a_{i'}) with i = kp
      for (int i = 0; i < N; ++i) {
        auto t = O.deriv(i, f);
        if (t.k >= 0)
          trips.push_back({(static_cast<std::uint64_t>(i * N + kp) << 32) | static_cast<std::uint64_t>(t.k), c, t.c});
      }
      for (int j = 0; j < N; ++j) {
        auto t = O.deriv(j, f);
        if (t.k >= 0)
          trips.push_back({(static_cast<std::uint64_t>(kp * N + j) << 32) | static_cast<std::uint64_t>(t.k), c,
                           F.neg(F.mul(cfac(kp, j), t.c))});
      }
    }
    std::sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    MatrixFp A(0, cols.size());
    for (std::size_t s = 0; s < trips.size();) {
      std::size_t e = s;
      SVec row;
      while (e < trips.size() && trips[e].row == trips[s].row) {
        if (!row.empty() && row.back().i == trips[e].col) {
          row.back().v = F.add(row.back().v, trips[e].v);
          if (!row.back().v) row.pop_back();
        } else {
          row.push_back({trips[e].col, trips[e].v});
        }
        ++e;
      }
      if (!row.empty()) A.add_row(std::move(row));
      s = e;
    }
    for (const auto& v : nullspace(F, A)) out.push_back(to_global(v, cols));
  }
  return out;
}

std::vector<SuperPoly> kernel_div_lambda(const SuperSpace& O, Res lambda) {
  std::vector<SuperPoly> out;
  for (auto& [bid, monos] : group_O(O)) {
    std::vector<SVec> images;
    images.reserve(monos.size());
    for (auto k : monos) images.push_back(div_lambda(O, mono(k), lambda));
    for (const auto& v : kernel_of_images(O.F(), images)) out.push_back(to_global(v, monos));
  }
  return out;
}

std::vector<VectorField> intersect_kernel_div(const WSpace& W, const std::vector<VectorField>& basis,
                                              bool modulo_constants) {
  const auto& F = W.F();
  std::map<BlockId, std::vector<std::uint32_t>> blocks;
  for (std::uint32_t k = 0; k < basis.size(); ++k) {
    const auto w = basis[k].front().i;
    blocks[{W.zdeg(w), W.parity(w)}].push_back(k);
  }
  std::vector<VectorField> out;
  for (auto& [bid, idx] : blocks) {
    std::vector<SVec> images;
    for (auto k : idx) {
      SuperPoly d = divergence(W, basis[k]);
      if (modulo_constants && !d.empty() && d.front().i == W.O().one()) d.erase(d.begin());
      images.push_back(std::move(d));
    }
    std::vector<SVec> vecs;
    for (auto k : idx) vecs.push_back(basis[k]);
    for (const auto& c : kernel_of_images(F, images)) out.push_back(combine(F, vecs, c, W.size()));
  }
  return out;
}

std::vector<VectorField> intersect_pairwise(const WSpace& W, const std::vector<VectorField>& A,
                                            const std::vector<VectorField>& B) {
  const auto& F = W.F();
  auto sa = split_W(W, A);
  auto sb = split_W(W, B);
  std::vector<VectorField> out;
  for (auto& [bid, va] : sa) {
    auto it = sb.find(bid);
    if (it == sb.end()) continue;
    const auto& vb = it->second;
    std::vector<SVec> images = va;
    for (const auto& v : vb) images.push_back(sv_scale(F, v, F.neg(1)));
    for (const auto& c : kernel_of_images(F, images)) {
      SVec ca;
      for (const auto& e : c)
        if (e.i < va.size()) ca.push_back(e);
      auto v = combine(F, va, ca, W.size());
      if (!v.empty()) out.push_back(std::move(v));
    }
  }
  return canonical_span(W, out);
}

// ---------------------------------------------------------------------------

Algebra::Algebra(AlgebraSpec spec, std::shared_ptr<const WSpace> Wp, std::vector<VectorField> vectors,
                 bool refine_weights)
    : spec_(std::move(spec)), W_(std::move(Wp)) {
  const WSpace& W = *W_;
  const auto& F = W.F();
  const auto& O = W.O();
  const int N = W.N();
  auto base = canonical_span(W, vectors);

  // canonical torus: degree-0 even part lying in span{x_i∂_i}
  std::vector<std::uint32_t> tcols(N);
  for (int i = 0; i < N; ++i) tcols[i] = W.index(static_cast<std::uint32_t>(O.var(i)), i);
  auto is_tcol = [&](std::uint32_t w) { return std::find(tcols.begin(), tcols.end(), w) != tcols.end(); };
  std::vector<SVec> zero_block;
  for (const auto& v : base) {
    auto w = v.front().i;
    if (W.zdeg(w) == 0 && W.parity(w) == 0) zero_block.push_back(v);
  }
  {
    std::vector<SVec> images;
    for (const auto& v : zero_block) {
      SVec rest;
      for (const auto& e : v)
        if (!is_tcol(e.i)) rest.push_back(e);
      images.push_back(std::move(rest));
    }
    std::vector<SVec> tv;
    for (const auto& c : kernel_of_images(F, images)) tv.push_back(combine(F, zero_block, c, W.size()));
    torus_ = rref_span(F, tv);
  }
  for (const auto& t : torus_) {
    std::vector<Res> c(N, 0);
    for (int i = 0; i < N; ++i) c[i] = sv_get(t, tcols[i]);
    tcoef_.push_back(std::move(c));
  }
  {
    long double lim = 1;
    for (std::size_t l = 0; l < tcoef_.size(); ++l) lim *= F.p();
    if (lim > 9.0e18L) throw std::runtime_error("torus weight key overflow");
  }

  std::vector<VectorField> final_basis;
  if (refine_weights && !torus_.empty()) {
    std::map<std::pair<BlockId, std::uint64_t>, std::vector<SVec>> parts;
    for (const auto& v : base) {
      std::map<std::uint64_t, SVec> split;
      for (const auto& e : v) split[wkey_of_W(e.i)].push_back(e);
      const BlockId b{W.zdeg(v.front().i), W.parity(v.front().i)};
      for (auto& [k, s] : split) parts[{b, k}].push_back(std::move(s));
    }
    for (auto& [k, vs] : parts)
      for (auto& r : rref_span(F, vs)) final_basis.push_back(std::move(r));
    std::sort(final_basis.begin(), final_basis.end(),
              [](const SVec& a, const SVec& b) { return a.front().i < b.front().i; });
  } else {
    final_basis = std::move(base);
  }
  basis_ = std::move(final_basis);

  const std::size_t d = basis_.size();
  owner_.assign(W.size(), -1);
  zdeg_.resize(d);
  par_.resize(d);
  wkey_.resize(d);
  weight_.resize(d);
  blk_.resize(d);
  loc_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto w = basis_[i].front().i;
    owner_[w] = static_cast<std::int32_t>(i);
    zdeg_[i] = W.zdeg(w);
    par_[i] = W.parity(w);
    weight_[i] = weight_of_W(w);
    wkey_[i] = wkey_of(weight_[i]);
  }
  std::map<BlockKey, std::vector<std::uint32_t>> g;
  for (std::size_t i = 0; i < d; ++i) g[{zdeg_[i], par_[i], wkey_[i]}].push_back(static_cast<std::uint32_t>(i));
  for (auto& [k, idx] : g) {
    const int b = static_cast<int>(blocks_.size());
    bindex_[k] = b;
    bkeys_.push_back(k);
    for (std::size_t l = 0; l < idx.size(); ++l) {
      blk_[idx[l]] = b;
      loc_[idx[l]] = static_cast<int>(l);
    }
    blocks_.push_back(std::move(idx));
  }
}

std::vector<Res> Algebra::weight_of_W(std::uint32_t w) const {
  const auto& F = W_->F();
  std::vector<Res> out(tcoef_.size(), 0);
  for (std::size_t l = 0; l < tcoef_.size(); ++l) {
    Res s = 0;
    for (int i = 0; i < W_->N(); ++i)
      if (tcoef_[l][i]) s = F.add(s, F.mul(tcoef_[l][i], F.from_int(W_->weight(w, i))));
    out[l] = s;
  }
  return out;
}

std::uint64_t Algebra::wkey_of(const std::vector<Res>& wt) const {
  std::uint64_t k = 0;
  for (auto it = wt.rbegin(); it != wt.rend(); ++it) k = k * W_->F().p() + *it;
  return k;
}

std::uint64_t Algebra::wkey_of_W(std::uint32_t w) const { return wkey_of(weight_of_W(w)); }

std::vector<Res> Algebra::weight_add(const std::vector<Res>& a, const std::vector<Res>& b) const {
  std::vector<Res> out(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) out[l] = W_->F().add(a[l], b[l]);
  return out;
}

int Algebra::find_block(const BlockKey& k) const {
  auto it = bindex_.find(k);
  return it == bindex_.end() ? -1 : it->second;
}

std::pair<int, int> Algebra::zrange() const {
  if (zdeg_.empty()) return {0, 0};
  auto [lo, hi] = std::minmax_element(zdeg_.begin(), zdeg_.end());
  return {*lo, *hi};
}

SVec Algebra::coords_unchecked(const VectorField& v) const {
  SVec c;
  for (const auto& e : v)
    if (owner_[e.i] >= 0) c.push_back({static_cast<std::uint32_t>(owner_[e.i]), e.v});
  std::sort(c.begin(), c.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  return c;
}

std::optional<SVec> Algebra::coords(const VectorField& v) const {
  SVec c = coords_unchecked(v);
  const auto& F = W_->F();
  Accum& acc = scratch(6);
  acc.reset(W_->size());
  for (const auto& e : v) acc.add(F, e.i, e.v);
  for (const auto& e : c) acc.axpy(F, F.neg(e.v), basis_[e.i]);
  if (!acc.take().empty()) return std::nullopt;
  return c;
}

VectorField Algebra::normal_form(const VectorField& v) const {
  const auto& F = W_->F();
  Accum& acc = scratch(6);
  acc.reset(W_->size());
  for (const auto& e : v) acc.add(F, e.i, e.v);
  for (const auto& e : v)
    if (owner_[e.i] >= 0) acc.axpy(F, F.neg(e.v), basis_[owner_[e.i]]);
  return acc.take();
}

VectorField Algebra::to_W(const SVec& c) const {
  const auto& F = W_->F();
  Accum& acc = scratch(6);
  acc.reset(W_->size());
  for (const auto& e : c) acc.axpy(F, e.v, basis_[e.i]);
  return acc.take();
}

const Algebra::Row& Algebra::row(std::uint32_t i) const {
  if (rows_.empty()) rows_.resize(dim());
  if (rows_[i]) return *rows_[i];
  if (row_nnz_ > structure_nnz_budget) release_rows();
  auto r = std::make_unique<Row>();
  const std::size_t d = dim();
  r->off.reserve(d + 1);
  r->off.push_back(0);
  for (std::size_t t = 0; t < d; ++t) {
    VectorField br = cartan::bracket(*W_, basis_[i], basis_[t]);
    auto c = coords(br);
    if (!c) throw std::logic_error("basis is not closed under the bracket at (" + std::to_string(i) + "," +
                                   std::to_string(t) + ")");
    r->ent.insert(r->ent.end(), c->begin(), c->end());
    r->off.push_back(static_cast<std::uint32_t>(r->ent.size()));
  }
  r->ent.shrink_to_fit();
  row_nnz_ += r->ent.size() + d / 2;
  rows_[i] = std::move(r);
  return *rows_[i];
}

Span Algebra::bracket(std::uint32_t i, std::uint32_t j) const {
  const Row& r = row(i);
  return {r.ent.data() + r.off[j], r.ent.data() + r.off[j + 1]};
}

SVec Algebra::bracket_direct(std::uint32_t i, std::uint32_t j) const {
  if (row_cached(i)) {
    Span s = bracket(i, j);
    return SVec(s.begin(), s.end());
  }
  auto c = coords(cartan::bracket(*W_, basis_[i], basis_[j]));
  if (!c) throw std::logic_error("basis is not closed under the bracket at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
  return *c;
}

void Algebra::pin_row(std::uint32_t i) const {
  row(i);
  rows_[i]->pinned = true;
}

void Algebra::release_rows() const {
  for (auto& r : rows_)
    if (r && !r->pinned) {
      row_nnz_ -= std::min(row_nnz_, r->ent.size() + dim() / 2);
      r.reset();
    }
}

std::size_t Algebra::cached_rows() const {
  std::size_t c = 0;
  for (const auto& r : rows_) c += r ? 1 : 0;
  return c;
}

SVec Algebra::ad(std::uint32_t i, const SVec& v) const {
  const auto& F = W_->F();
  const Row& r = row(i);
  Accum& acc = scratch(5);
  acc.reset(dim());
  for (const auto& e : v)
    for (std::uint32_t q = r.off[e.i]; q < r.off[e.i + 1]; ++q)
      acc.add(F, r.ent[q].i, F.mul(e.v, r.ent[q].v));
  return acc.take();
}

SVec Algebra::bracket_vec(const SVec& a, const SVec& b) const {
  const auto& F = W_->F();
  SVec out;
  for (const auto& e : a) out = sv_axpy(F, out, e.v, ad(e.i, b));
  return out;
}

// ---------------------------------------------------------------------------

Closure::Closure(const Algebra& alg) : L(&alg) {
  for (const auto& b : alg.blocks()) ech.emplace_back(alg.F(), b.size());
}

SVec Closure::local(const SVec& v, int& block) const {
  SVec out;
  block = -1;
  for (const auto& e : v) {
    int b = L->block_of(e.i);
    if (block < 0) block = b;
    if (b != block) throw std::logic_error("vector is not block-homogeneous");
    out.push_back({static_cast<std::uint32_t>(L->local_of(e.i)), e.v});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  return out;
}

bool Closure::add(const SVec& v, Word w) {
  if (v.empty()) return false;
  int b;
  SVec lv = local(v, b);
  if (!ech[b].insert(lv)) return false;
  vecs.push_back(v);
  words.push_back(w);
  return true;
}

bool Closure::contains(const SVec& v) const {
  if (v.empty()) return true;
  int b;
  SVec lv = local(v, b);
  return ech[b].contains(lv);
}

void Closure::saturate(std::size_t from, const std::vector<std::uint32_t>& acting) {
  const std::size_t full = L->dim();
  for (std::size_t k = from; k < vecs.size() && vecs.size() < full; ++k)
    for (std::size_t g = 0; g < acting.size() && vecs.size() < full; ++g) {
      SVec v = L->ad(acting[g], vecs[k]);
      add(v, {static_cast<int>(g), static_cast<int>(k)});
    }
}

void Closure::add_generator(std::uint32_t s) {
  L->pin_row(s);
  const int gi = static_cast<int>(gens.size());
  gens.push_back(s);
  const std::size_t start = vecs.size();
  add({{s, 1}}, {gi, -1});
  for (std::size_t k = 0; k < start && vecs.size() < L->dim(); ++k)
    add(L->ad(s, vecs[k]), {gi, static_cast<int>(k)});
  saturate(start, gens);
}

void Closure::seed(const SVec& v) {
  const auto& G = L->generation().gens;
  const std::size_t start = vecs.size();
  if (!add(v, {-1, -1})) return;
  saturate(start, G);
}

const Closure& Algebra::generation() const {
  if (gen_) return *gen_;
  auto c = std::make_unique<Closure>(*this);
  std::vector<std::uint32_t> order(dim());
  for (std::uint32_t i = 0; i < dim(); ++i) order[i] = i;
  auto rank = [&](std::uint32_t i) {
    int z = zdeg_[i];
    return z < 0 ? std::make_pair(0, z) : z > 0 ? std::make_pair(1, z) : std::make_pair(2, 0);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return rank(a) < rank(b); });
  for (auto s : order) {
    if (c->dim() == dim()) break;
    if (!c->contains({{s, 1}})) c->add_generator(s);
  }
  gen_ = std::move(c);
  return *gen_;
}

// ---------------------------------------------------------------------------

AlgebraPtr build_from_vectors(const AlgebraSpec& spec, std::shared_ptr<const WSpace> W,
                              std::vector<VectorField> vectors) {
  return std::make_shared<const Algebra>(spec, std::move(W), std::move(vectors));
}

AlgebraPtr derived(const Algebra& h, Variant label) {
  const auto& G = h.generation();
  std::vector<VectorField> vecs;
  for (auto g : G.gens)
    for (std::uint32_t s = 0; s < h.dim(); ++s) {
      Span sp = h.bracket(g, s);
      if (!sp.empty()) vecs.push_back(h.to_W(SVec(sp.begin(), sp.end())));
    }
  AlgebraSpec s = h.spec();
  s.variant = label;
  auto out = std::make_shared<Algebra>(s, h.W_ptr(), std::move(vecs));
  out->set_warning(h.warning());
  return out;
}

namespace {

std::vector<VectorField> base_vectors(const AlgebraSpec& s, const WSpace& W) {
  const bool bar = s.variant == Variant::bar;
  const auto& O = W.O();
  switch (s.family) {
    case Family::W: return span_W(W);
    case Family::S: return kernel_div(W, bar);
    case Family::H:
      if (bar) return solve_bar_condition(W, Family::H);
      return image_of(OpKind::DH, W, all_monomials(O));
    case Family::K: return image_of(OpKind::DK, W, all_monomials(O));
    case Family::HO:
      if (bar) return solve_bar_condition(W, Family::HO);
      return image_of(OpKind::TH, W, all_monomials(O));
    case Family::SHO: {
      auto ho = canonical_span(W, bar ? solve_bar_condition(W, Family::HO)
                                      : image_of(OpKind::TH, W, all_monomials(O)));
      return intersect_kernel_div(W, ho, bar);
    }
    case Family::KO: return image_of(OpKind::DKO, W, all_monomials(O));
    case Family::SKO: return image_of(OpKind::DKO, W, kernel_div_lambda(O, s.lambda));
  }
  return {};
}

}  // namespace

AlgebraPtr build(const AlgebraSpec& spec) {
  std::string warn = validate(spec);
  auto W = make_ambient(spec);
  AlgebraSpec base = spec;
  if (spec.variant == Variant::derived1 || spec.variant == Variant::derived2) base.variant = Variant::plain;
  auto A = std::make_shared<Algebra>(base, W, base_vectors(base, *W));
  A->set_warning(warn);
  AlgebraPtr out = A;
  if (spec.variant == Variant::derived1 || spec.variant == Variant::derived2) out = derived(*out, Variant::derived1);
  if (spec.variant == Variant::derived2) out = derived(*out, Variant::derived2);
  return out;
}

std::vector<VectorField> canonical_torus(const Algebra& h) { return h.torus(); }

// ---------------------------------------------------------------------------

RealizationInverse::RealizationInverse(OpKind op, std::shared_ptr<const WSpace> W) : op_(op), W_(std::move(W)) {}

std::optional<SuperPoly> RealizationInverse::preimage(const VectorField& v) const {
  if (v.empty()) return SuperPoly{};
  const WSpace& W = *W_;
  const auto& O = W.O();
  const int z = W.zdeg(v.front().i) + 2;
  const int q = W.parity(v.front().i) ^ op_parity(op_);
  auto it = cache_.find({z, q});
  if (it == cache_.end()) {
    BlockSolver bs;
    for (std::uint32_t k = 0; k < O.size(); ++k)
      if (O.zdeg(k) == z && O.parity(k) == q) bs.monos.push_back(k);
    std::vector<SVec> images;
    for (auto k : bs.monos) images.push_back(apply_op(op_, W, mono(k)));
    for (const auto& c : support_columns(images)) bs.cols.emplace(c, static_cast<std::uint32_t>(bs.cols.size()));
    bs.ech = std::make_unique<Echelon>(W.F(), bs.cols.size(), true);
    for (const auto& im : images) {
      SVec l;
      for (const auto& e : im) l.push_back({bs.cols.at(e.i), e.v});
      bs.ech->insert(l);
    }
    it = cache_.emplace(std::make_pair(z, q), std::move(bs)).first;
  }
  const BlockSolver& bs = it->second;
  SVec l;
  for (const auto& e : v) {
    auto c = bs.cols.find(e.i);
    if (c == bs.cols.end()) return std::nullopt;
    l.push_back({c->second, e.v});
  }
  std::sort(l.begin(), l.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  auto sol = bs.ech->solve(l);
  if (!sol) return std::nullopt;
  SuperPoly out;
  for (const auto& e : *sol) out.push_back({bs.monos[e.i], e.v});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  return out;
}

}  // namespace cartan
