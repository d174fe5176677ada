#include "cartan/superspace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cartan {

const char* family_name(Family f) {
  switch (f) {
    case Family::W: return "W";
    case Family::S: return "S";
    case Family::H: return "H";
    case Family::K: return "K";
    case Family::HO: return "HO";
    case Family::SHO: return "SHO";
    case Family::KO: return "KO";
    case Family::SKO: return "SKO";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  for (Family f : {Family::W, Family::S, Family::H, Family::K, Family::HO, Family::SHO, Family::KO, Family::SKO})
    if (s == family_name(f)) return f;
  throw std::invalid_argument("unknown family '" + s + "'");
}

Res lucas_binom(unsigned long long a, unsigned long long b, std::uint32_t p) {
  if (b > a) return 0;
  unsigned long long r = 1;
  while (a || b) {
    unsigned long long ad = a % p, bd = b % p;
    if (bd > ad) return 0;
    // small binomial by multiplicative formula mod p
    unsigned long long num = 1, den = 1;
    for (unsigned long long k = 0; k < bd; ++k) {
      num = num * ((ad - k) % p) % p;
      den = den * ((k + 1) % p) % p;
    }
    unsigned long long inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = r * (num * inv % p) % p;
    a /= p;
    b /= p;
  }
  return static_cast<Res>(r);
}

int IndexMaps::prime(int i) const {
  if (i >= 1 && i <= r) return i + r;
  if (i > r && i <= 2 * r) return i - r;
  return i;
}

int IndexMaps::tilde(int i) const {
  if (i >= 1 && i <= m) return i + m;
  if (i > m && i <= 2 * m) return i - m;
  return i;
}

int IndexMaps::sigma(int i) const { return (i >= r + 1 && i <= 2 * r) ? -1 : 1; }

SuperSpace::SuperSpace(SpaceParams params, Family grading) : P_(std::move(params)), grading_(grading), F_(P_.p) {
  const int m = P_.m, n = P_.n;
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (n < 2) throw std::invalid_argument("n must be > 1");
  if (n > 20) throw std::invalid_argument("n too large");
  if (static_cast<int>(P_.t.size()) != m) throw std::invalid_argument("t must have m entries");
  std::size_t na = 1;
  for (int i = 0; i < m; ++i) {
    if (P_.t[i] < 1) throw std::invalid_argument("t_i must be >= 1");
    long long q = 1;
    for (int k = 0; k < P_.t[i]; ++k) q *= P_.p;
    if (q > 1024) throw std::invalid_argument("p^t_i too large");
    pi_.push_back(static_cast<int>(q - 1));
    radix_.push_back(static_cast<int>(q));
    na *= static_cast<std::size_t>(q);
  }
  const std::size_t total = na << n;
  if (total > (1u << 26)) throw std::invalid_argument("superspace too large");

  zdvar_.assign(m + n, 1);
  if (grading == Family::K) zdvar_[m - 1] = 2;
  if ((grading == Family::KO || grading == Family::SKO) && m + n > 2 * m) zdvar_[2 * m] = 2;

  struct Rec {
    std::vector<int> a;
    std::uint32_t u;
    std::uint32_t code;
    int sd;
  };
  std::vector<Rec> recs;
  recs.reserve(total);
  std::vector<int> a(m, 0);
  for (std::size_t c = 0; c < na; ++c) {
    std::size_t x = c;
    int s = 0;
    for (int i = 0; i < m; ++i) {
      a[i] = static_cast<int>(x % radix_[i]);
      x /= radix_[i];
      s += a[i];
    }
    for (std::uint32_t u = 0; u < (1u << n); ++u)
      recs.push_back({a, u, static_cast<std::uint32_t>(c), s + __builtin_popcount(u)});
  }
  auto useq = [](std::uint32_t u) {
    std::vector<int> v;
    for (int j = 0; j < 32; ++j)
      if (u >> j & 1) v.push_back(j);
    return v;
  };
  std::stable_sort(recs.begin(), recs.end(), [&](const Rec& x, const Rec& y) {
    if (x.sd != y.sd) return x.sd < y.sd;
    for (int i = m - 1; i >= 0; --i)
      if (x.a[i] != y.a[i]) return x.a[i] < y.a[i];
    return useq(x.u) < useq(y.u);
  });
  alpha_.resize(total * m);
  umask_.resize(total);
  acode_.resize(total);
  zdeg_.resize(total);
  std_.resize(total);
  code2idx_.assign(total, 0);
  for (std::size_t k = 0; k < total; ++k) {
    const Rec& r = recs[k];
    int z = 0;
    for (int i = 0; i < m; ++i) {
      alpha_[k * m + i] = static_cast<std::uint16_t>(r.a[i]);
      z += r.a[i] * zdvar_[i];
    }
    for (int j = 0; j < n; ++j)
      if (r.u >> j & 1) z += zdvar_[m + j];
    umask_[k] = r.u;
    acode_[k] = r.code;
    zdeg_[k] = z;
    std_[k] = r.sd;
    code2idx_[(static_cast<std::size_t>(r.code) << n) | r.u] = static_cast<std::uint32_t>(k);
  }
  int pm = *std::max_element(pi_.begin(), pi_.end());
  binom_.assign(pm + 1, std::vector<Res>(pm + 1, 0));
  for (int s = 0; s <= pm; ++s)
    for (int b = 0; b <= s; ++b) binom_[s][b] = lucas_binom(s, b, P_.p);
}

std::int64_t SuperSpace::find(const std::vector<int>& a, std::uint32_t u) const {
  if (static_cast<int>(a.size()) != P_.m || u >= (1u << P_.n)) return -1;
  std::size_t code = 0, mult = 1;
  for (int i = 0; i < P_.m; ++i) {
    if (a[i] < 0 || a[i] > pi_[i]) return -1;
    code += a[i] * mult;
    mult *= radix_[i];
  }
  return code2idx_[(code << P_.n) | u];
}

std::int64_t SuperSpace::var(int i) const {
  std::vector<int> a(P_.m, 0);
  std::uint32_t u = 0;
  if (i < P_.m) a[i] = 1;
  else u = 1u << (i - P_.m);
  return find(a, u);
}

SuperSpace::Term SuperSpace::mul(std::uint32_t x, std::uint32_t y) const {
  const std::uint32_t ux = umask_[x], uy = umask_[y];
  if (ux & uy) return {0, -1};
  const int m = P_.m;
  const std::uint16_t* ax = alpha(x);
  const std::uint16_t* ay = alpha(y);
  Res c = 1;
  for (int i = 0; i < m; ++i) {
    int s = ax[i] + ay[i];
    if (s > pi_[i]) return {0, -1};
    c = F_.mul(c, binom_[s][ax[i]]);
    if (!c) return {0, -1};
  }
  int inv = 0;
  for (std::uint32_t b = uy; b; b &= b - 1) {
    int k = __builtin_ctz(b);
    inv += __builtin_popcount(ux >> (k + 1));
  }
  if (inv & 1) c = F_.neg(c);
  std::size_t code = static_cast<std::size_t>(acode_[x]) + acode_[y];
  return {c, code2idx_[(code << P_.n) | (ux | uy)]};
}

SuperSpace::Term SuperSpace::deriv(int i, std::uint32_t x) const {
  const int m = P_.m;
  if (i < m) {
    const std::uint16_t* a = alpha(x);
    if (a[i] == 0) return {0, -1};
    std::size_t mult = 1;
    for (int k = 0; k < i; ++k) mult *= radix_[k];
    std::size_t code = acode_[x] - mult;
    return {1, code2idx_[(code << P_.n) | umask_[x]]};
  }
  const int j = i - m;
  const std::uint32_t u = umask_[x];
  if (!(u >> j & 1)) return {0, -1};
  Res c = (__builtin_popcount(u & ((1u << j) - 1)) & 1) ? F_.neg(1) : 1;
  return {c, code2idx_[(static_cast<std::size_t>(acode_[x]) << P_.n) | (u & ~(1u << j))]};
}

std::int64_t SuperSpace::shift_down(int i, std::uint32_t x, int e) const {
  const std::uint16_t* a = alpha(x);
  if (a[i] < e) return -1;
  std::size_t mult = 1;
  for (int k = 0; k < i; ++k) mult *= radix_[k];
  std::size_t code = acode_[x] - mult * e;
  return code2idx_[(code << P_.n) | umask_[x]];
}

std::string SuperSpace::mono_text(std::uint32_t k) const {
  std::ostringstream os;
  os << "x^(";
  for (int i = 0; i < P_.m; ++i) os << (i ? "," : "") << alpha(k)[i];
  os << ")";
  for (int j = 0; j < P_.n; ++j)
    if (umask_[k] >> j & 1) os << "*x[" << (P_.m + j + 1) << "]";
  return os.str();
}

SuperPoly mono(std::uint32_t k, Res c) {
  if (!c) return {};
  return {{k, c}};
}

SuperPoly poly_mul(const SuperSpace& O, const SuperPoly& f, const SuperPoly& g) {
  const auto& F = O.F();
  Accum& acc = scratch(1);
  acc.reset(O.size());
  for (const auto& a : f)
    for (const auto& b : g) {
      auto t = O.mul(a.i, b.i);
      if (t.k >= 0) acc.add(F, static_cast<std::uint32_t>(t.k), F.mul(t.c, F.mul(a.v, b.v)));
    }
  return acc.take();
}

SuperPoly partial(const SuperSpace& O, int i, const SuperPoly& f) {
  const auto& F = O.F();
  Accum& acc = scratch(1);
  acc.reset(O.size());
  for (const auto& a : f) {
    auto t = O.deriv(i, a.i);
    if (t.k >= 0) acc.add(F, static_cast<std::uint32_t>(t.k), F.mul(t.c, a.v));
  }
  return acc.take();
}

int poly_parity(const SuperSpace& O, const SuperPoly& f) {
  if (f.empty()) return 0;
  int par = O.parity(f.front().i);
  for (const auto& e : f)
    if (O.parity(e.i) != par) return -1;
  return par;
}

std::string poly_text(const SuperSpace& O, const SuperPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < f.size(); ++k) os << (k ? " + " : "") << f[k].v << "*" << O.mono_text(f[k].i);
  return os.str();
}

}  // namespace cartan
