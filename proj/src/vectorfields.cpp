#include "cartan/vectorfields.hpp"

#include <sstream>
#include <stdexcept>

namespace cartan {

int WSpace::weight(std::uint32_t w, int i) const {
  const std::uint32_t k = mono_of(w);
  const int d = dir_of(w);
  int v = i < O_->m() ? O_->alpha(k)[i] : static_cast<int>(O_->umask(k) >> (i - O_->m()) & 1);
  return v - (d == i ? 1 : 0);
}

VectorField field(const WSpace& W, const SuperPoly& f, int dir) {
  VectorField out;
  out.reserve(f.size());
  for (const auto& e : f) out.push_back({W.index(e.i, dir), e.v});
  return out;
}

namespace {

// adds c * [f∂_i, g∂_j] for basis monomials f, g
inline void term_bracket(const WSpace& W, Accum& acc, std::uint32_t f, int i, std::uint32_t g, int j, Res c) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  auto dg = O.deriv(i, g);
  if (dg.k >= 0) {
    auto pr = O.mul(f, static_cast<std::uint32_t>(dg.k));
    if (pr.k >= 0) acc.add(F, W.index(static_cast<std::uint32_t>(pr.k), j), F.mul(c, F.mul(dg.c, pr.c)));
  }
  auto df = O.deriv(j, f);
  if (df.k >= 0) {
    auto pr = O.mul(g, static_cast<std::uint32_t>(df.k));
    if (pr.k >= 0) {
      int pa = O.parity(f) ^ O.var_parity(i);
      int pb = O.parity(g) ^ O.var_parity(j);
      Res s = (pa & pb) ? 1 : F.neg(1);
      acc.add(F, W.index(static_cast<std::uint32_t>(pr.k), i), F.mul(c, F.mul(s, F.mul(df.c, pr.c))));
    }
  }
}

}  // namespace

VectorField bracket(const WSpace& W, const VectorField& D, const VectorField& E) {
  const FieldCtx& F = W.F();
  Accum& acc = scratch(2);
  acc.reset(W.size());
  for (const auto& a : D)
    for (const auto& b : E)
      term_bracket(W, acc, W.mono_of(a.i), W.dir_of(a.i), W.mono_of(b.i), W.dir_of(b.i), F.mul(a.v, b.v));
  return acc.take();
}

SuperPoly apply(const WSpace& W, const VectorField& D, const SuperPoly& f) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  Accum& acc = scratch(3);
  acc.reset(O.size());
  for (const auto& d : D)
    for (const auto& e : f) {
      auto df = O.deriv(W.dir_of(d.i), e.i);
      if (df.k < 0) continue;
      auto pr = O.mul(W.mono_of(d.i), static_cast<std::uint32_t>(df.k));
      if (pr.k >= 0) acc.add(F, static_cast<std::uint32_t>(pr.k), F.mul(F.mul(d.v, e.v), F.mul(df.c, pr.c)));
    }
  return acc.take();
}

SuperPoly divergence(const WSpace& W, const VectorField& D) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  Accum& acc = scratch(3);
  acc.reset(O.size());
  for (const auto& d : D) {
    const std::uint32_t f = W.mono_of(d.i);
    const int k = W.dir_of(d.i);
    auto df = O.deriv(k, f);
    if (df.k < 0) continue;
    Res s = (O.var_parity(k) & O.parity(f)) ? F.neg(1) : 1;
    acc.add(F, static_cast<std::uint32_t>(df.k), F.mul(s, F.mul(df.c, d.v)));
  }
  return acc.take();
}

int field_parity(const WSpace& W, const VectorField& D) {
  if (D.empty()) return 0;
  int par = W.parity(D.front().i);
  for (const auto& e : D)
    if (W.parity(e.i) != par) return -1;
  return par;
}

std::string field_text(const WSpace& W, const VectorField& D) {
  if (D.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < D.size(); ++k)
    os << (k ? " + " : "") << D[k].v << "*" << W.O().mono_text(W.mono_of(D[k].i)) << "*d/dx[" << (W.dir_of(D[k].i) + 1)
       << "]";
  return os.str();
}

namespace {

struct Builder {
  const WSpace& W;
  Accum& acc;
  explicit Builder(const WSpace& w) : W(w), acc(scratch(4)) { acc.reset(W.size()); }
  // c * (monomial k) * ∂_dir
  void put(std::int64_t k, int dir, Res c) {
    if (k < 0 || c == 0) return;
    acc.add(W.F(), W.index(static_cast<std::uint32_t>(k), dir), c);
  }
  VectorField take() { return acc.take(); }
};

Res sgn(const FieldCtx& F, int e) { return (e & 1) ? F.neg(1) : 1; }

}  // namespace

VectorField op_DIJ(const WSpace& W, int i, int j, const SuperPoly& a) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  Builder b(W);
  const int pi = O.var_parity(i), pj = O.var_parity(j);
  for (const auto& e : a) {
    const int pa = O.parity(e.i);
    auto di = O.deriv(i, e.i);
    if (di.k >= 0) b.put(di.k, j, F.mul(e.v, F.mul(di.c, sgn(F, pi * pj))));
    auto dj = O.deriv(j, e.i);
    if (dj.k >= 0) b.put(dj.k, i, F.neg(F.mul(e.v, F.mul(dj.c, sgn(F, (pi + pj) * pa)))));
  }
  return b.take();
}

VectorField op_DH(const WSpace& W, const SuperPoly& a) {
  const SuperSpace& O = W.O();
  if (O.m() % 2) throw std::invalid_argument("H requires even m");
  const FieldCtx& F = W.F();
  const IndexMaps M = O.maps();
  Builder b(W);
  for (const auto& e : a) {
    const int pa = O.parity(e.i);
    for (int i = 0; i < O.N(); ++i) {
      auto d = O.deriv(i, e.i);
      if (d.k < 0) continue;
      Res c = F.mul(e.v, F.mul(d.c, sgn(F, O.var_parity(i) * pa)));
      if (M.sigma(i + 1) < 0) c = F.neg(c);
      b.put(d.k, M.prime(i + 1) - 1, c);
    }
  }
  return b.take();
}

VectorField op_DK(const WSpace& W, const SuperPoly& a) {
  const SuperSpace& O = W.O();
  if (O.m() % 2 == 0) throw std::invalid_argument("K requires odd m");
  const FieldCtx& F = W.F();
  const IndexMaps M = O.maps();
  const int mm = O.m() - 1;  // 0-based index of x_m
  Builder b(W);
  for (const auto& e : a) {
    const int pa = O.parity(e.i);
    auto dm = O.deriv(mm, e.i);
    for (int i = 0; i < O.N(); ++i) {
      if (i == mm) continue;
      Res s = F.mul(e.v, sgn(F, O.var_parity(i) * pa));
      // x_i ∂_m(a) ∂_i
      if (dm.k >= 0) {
        auto pr = O.mul(static_cast<std::uint32_t>(O.var(i)), static_cast<std::uint32_t>(dm.k));
        if (pr.k >= 0) b.put(pr.k, i, F.mul(s, F.mul(dm.c, pr.c)));
      }
      // σ(i') ∂_{i'}(a) ∂_i
      const int ip = M.prime(i + 1) - 1;
      auto dp = O.deriv(ip, e.i);
      if (dp.k >= 0) {
        Res c = F.mul(s, dp.c);
        if (M.sigma(ip + 1) < 0) c = F.neg(c);
        b.put(dp.k, i, c);
      }
      // -x_i ∂_i(a) ∂_m
      auto di = O.deriv(i, e.i);
      if (di.k >= 0) {
        auto pr = O.mul(static_cast<std::uint32_t>(O.var(i)), static_cast<std::uint32_t>(di.k));
        if (pr.k >= 0) b.put(pr.k, mm, F.neg(F.mul(e.v, F.mul(di.c, pr.c))));
      }
    }
    b.put(e.i, mm, F.mul(2, e.v));
  }
  return b.take();
}

VectorField op_TH(const WSpace& W, const SuperPoly& a) {
  const SuperSpace& O = W.O();
  if (O.n() != O.m() && O.n() != O.m() + 1) throw std::invalid_argument("odd Hamiltonian operators require n = m or m+1");
  const FieldCtx& F = W.F();
  const IndexMaps M = O.maps();
  Builder b(W);
  for (const auto& e : a) {
    const int pa = O.parity(e.i);
    for (int i = 0; i < 2 * O.m(); ++i) {
      auto d = O.deriv(i, e.i);
      if (d.k < 0) continue;
      b.put(d.k, M.tilde(i + 1) - 1, F.mul(e.v, F.mul(d.c, sgn(F, O.var_parity(i) * pa))));
    }
  }
  return b.take();
}

VectorField op_DKO(const WSpace& W, const SuperPoly& a) {
  const SuperSpace& O = W.O();
  if (O.n() != O.m() + 1) throw std::invalid_argument("KO requires n = m+1");
  const FieldCtx& F = W.F();
  const int z = 2 * O.m();  // 0-based index of x_{2m+1}
  VectorField th = op_TH(W, a);
  Builder b(W);
  for (const auto& e : th) b.acc.add(F, e.i, e.v);
  for (const auto& e : a) {
    const int pa = O.parity(e.i);
    auto dz = O.deriv(z, e.i);
    if (dz.k >= 0) {
      Res s = F.mul(e.v, F.mul(dz.c, sgn(F, pa)));
      for (int i = 0; i < z; ++i) {
        auto pr = O.mul(static_cast<std::uint32_t>(dz.k), static_cast<std::uint32_t>(O.var(i)));
        if (pr.k >= 0) b.put(pr.k, i, F.mul(s, pr.c));
      }
    }
    // (𝔇(a) - 2a) ∂_{2m+1}; 𝔇 acts on a monomial by its degree in the first 2m variables
    int deg = 0;
    for (int i = 0; i < O.m(); ++i) deg += O.alpha(e.i)[i];
    deg += __builtin_popcount(O.umask(e.i) & ((1u << O.m()) - 1));
    b.put(e.i, z, F.mul(e.v, F.from_int(deg - 2)));
  }
  return b.take();
}

SuperPoly div_lambda(const SuperSpace& O, const SuperPoly& a, Res lambda) {
  if (O.n() != O.m() + 1) throw std::invalid_argument("div_lambda requires n = m+1");
  const FieldCtx& F = O.F();
  const int m = O.m();
  const int z = 2 * m;
  Accum& acc = scratch(5);
  acc.reset(O.size());
  const Res ml = F.mul(F.from_int(m), lambda);
  for (const auto& e : a) {
    Res s = F.mul(e.v, F.mul(2, sgn(F, O.parity(e.i))));
    for (int i = 0; i < m; ++i) {
      auto d1 = O.deriv(i + m, e.i);
      if (d1.k < 0) continue;
      auto d2 = O.deriv(i, static_cast<std::uint32_t>(d1.k));
      if (d2.k < 0) continue;
      acc.add(F, static_cast<std::uint32_t>(d2.k), F.mul(s, F.mul(d1.c, d2.c)));
    }
    auto dz = O.deriv(z, e.i);
    if (dz.k >= 0) {
      std::uint32_t k = static_cast<std::uint32_t>(dz.k);
      int deg = 0;
      for (int i = 0; i < m; ++i) deg += O.alpha(k)[i];
      deg += __builtin_popcount(O.umask(k) & ((1u << m) - 1));
      Res c = F.sub(F.from_int(deg), ml);
      acc.add(F, k, F.mul(s, F.mul(dz.c, c)));
    }
  }
  return acc.take();
}

VectorField degree_full(const WSpace& W) {
  VectorField out;
  for (int i = 0; i < W.N(); ++i) out.push_back({W.index(static_cast<std::uint32_t>(W.O().var(i)), i), 1});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  return out;
}

VectorField degree_2m(const WSpace& W) {
  VectorField out;
  const int lim = std::min(W.N(), 2 * W.O().m());
  for (int i = 0; i < lim; ++i) out.push_back({W.index(static_cast<std::uint32_t>(W.O().var(i)), i), 1});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
  return out;
}

void check_op_compatible(OpKind op, int m, int n) {
  switch (op) {
    case OpKind::DH:
      if (m % 2) throw std::invalid_argument("H requires even m");
      break;
    case OpKind::DK:
      if (m % 2 == 0) throw std::invalid_argument("K requires odd m");
      break;
    case OpKind::TH:
      if (n != m) throw std::invalid_argument("HO requires n = m");
      break;
    case OpKind::DKO:
      if (n != m + 1) throw std::invalid_argument("KO requires n = m+1");
      break;
  }
}

VectorField apply_op(OpKind op, const WSpace& W, const SuperPoly& a) {
  switch (op) {
    case OpKind::DH: return op_DH(W, a);
    case OpKind::DK: return op_DK(W, a);
    case OpKind::TH: return op_TH(W, a);
    case OpKind::DKO: return op_DKO(W, a);
  }
  return {};
}

int op_parity(OpKind op) { return (op == OpKind::TH || op == OpKind::DKO) ? 1 : 0; }

SuperPoly bracket_O(Family fam, const WSpace& W, const SuperPoly& a, const SuperPoly& b) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  SuperPoly out;
  auto drop_const = [&](SuperPoly f) {
    if (!f.empty() && f.front().i == O.one()) f.erase(f.begin());
    return f;
  };
  switch (fam) {
    case Family::H:
      return drop_const(apply(W, op_DH(W, a), b));
    case Family::HO:
      return drop_const(apply(W, op_TH(W, a), b));
    case Family::K: {
      out = apply(W, op_DK(W, a), b);
      SuperPoly corr = poly_mul(O, partial(O, O.m() - 1, a), b);
      return sv_axpy(F, out, F.neg(2), corr);
    }
    case Family::KO: {
      out = apply(W, op_DKO(W, a), b);
      for (const auto& e : a) {
        SuperPoly pa = partial(O, 2 * O.m(), mono(e.i, e.v));
        SuperPoly corr = poly_mul(O, pa, b);
        Res c = F.mul(2, sgn(F, O.parity(e.i)));
        out = sv_axpy(F, out, F.neg(c), corr);
      }
      return out;
    }
    default:
      throw std::invalid_argument(std::string("no realized bracket for family ") + family_name(fam));
  }
}

VectorField insert_var(const WSpace& W, int i, const VectorField& D) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  Accum& acc = scratch(4);
  acc.reset(W.size());
  for (const auto& e : D) {
    const std::uint32_t k = W.mono_of(e.i);
    if (i < O.m()) {
      std::vector<int> a(O.alpha(k), O.alpha(k) + O.m());
      a[i] += 1;
      std::int64_t r = O.find(a, O.umask(k));
      if (r >= 0) acc.add(F, W.index(static_cast<std::uint32_t>(r), W.dir_of(e.i)), e.v);
    } else {
      auto pr = O.mul(static_cast<std::uint32_t>(O.var(i)), k);
      if (pr.k >= 0) acc.add(F, W.index(static_cast<std::uint32_t>(pr.k), W.dir_of(e.i)), F.mul(e.v, pr.c));
    }
  }
  return acc.take();
}

VectorField coeff_partial(const WSpace& W, int i, const VectorField& D) {
  const SuperSpace& O = W.O();
  const FieldCtx& F = W.F();
  Accum& acc = scratch(4);
  acc.reset(W.size());
  for (const auto& e : D) {
    auto d = O.deriv(i, W.mono_of(e.i));
    if (d.k >= 0) acc.add(F, W.index(static_cast<std::uint32_t>(d.k), W.dir_of(e.i)), F.mul(e.v, d.c));
  }
  return acc.take();
}

bool is_integral(const WSpace& W, int i, const VectorField& D) {
  return coeff_partial(W, i, insert_var(W, i, D)) == D;
}

VectorField coeff_shift(const WSpace& W, int i, int e, const VectorField& D) {
  const SuperSpace& O = W.O();
  Accum& acc = scratch(4);
  acc.reset(W.size());
  for (const auto& x : D) {
    std::int64_t r = O.shift_down(i, W.mono_of(x.i), e);
    if (r >= 0) acc.add(W.F(), W.index(static_cast<std::uint32_t>(r), W.dir_of(x.i)), x.v);
  }
  return acc.take();
}

}  // namespace cartan
