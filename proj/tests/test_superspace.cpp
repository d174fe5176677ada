#include <gtest/gtest.h>

#include <random>

#include "cartan/superspace.hpp"

using namespace cartan;

namespace {

SuperSpace space(int m, int n, std::vector<int> t, Family g = Family::W, std::uint32_t p = 5) {
  return SuperSpace(SpaceParams{m, n, std::move(t), p}, g);
}

std::uint32_t at(const SuperSpace& O, std::vector<int> a, std::uint32_t u = 0) {
  auto k = O.find(a, u);
  EXPECT_GE(k, 0);
  return static_cast<std::uint32_t>(k);
}

unsigned long long factorial_binom(unsigned a, unsigned b) {
  if (b > a) return 0;
  unsigned long long r = 1;
  for (unsigned k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

}  // namespace

TEST(Lucas, Examples) {
  for (unsigned n : {0u, 1u, 7u, 124u}) EXPECT_EQ(lucas_binom(n, 0, 5), 1u);
  EXPECT_EQ(lucas_binom(6, 3, 5), 0u);
  EXPECT_EQ(lucas_binom(2, 5, 5), 0u);
}

TEST(Lucas, MatchesFactorialOracle) {
  for (std::uint32_t p : {5u, 7u})
    for (unsigned a = 0; a < 40; ++a)
      for (unsigned b = 0; b <= a; ++b) EXPECT_EQ(lucas_binom(a, b, p), factorial_binom(a, b) % p) << a << " " << b;
}

TEST(Lucas, ShiftedPowerIdentity) {
  const std::uint32_t p = 5;
  for (unsigned a = 1; a <= 2; ++a) {
    unsigned long long q = 1;
    for (unsigned k = 0; k < a; ++k) q *= p;
    for (unsigned l = 1; l <= p; ++l)
      for (unsigned b = 1; b <= p - 1; ++b) EXPECT_EQ(lucas_binom(l * q - b, q, p), (l - 1) % p);
  }
}

TEST(SuperSpace, DimensionByEnumeration) {
  auto O = space(2, 3, {2, 1});
  EXPECT_EQ(O.dim(), 8u * 25 * 5);
  std::size_t n = 0;
  for (std::uint32_t k = 0; k < O.size(); ++k) n += O.find(std::vector<int>(O.alpha(k), O.alpha(k) + 2), O.umask(k)) == k;
  EXPECT_EQ(n, O.dim());
  EXPECT_THROW(space(1, 1, {1}), std::invalid_argument);
}

TEST(MonoMul, DividedPowers) {
  auto O = space(1, 2, {1});
  auto x1 = at(O, {1});
  auto t = O.mul(x1, x1);
  EXPECT_EQ(t.c, 2u);
  EXPECT_EQ(t.k, at(O, {2}));
  auto x2 = at(O, {2});
  t = O.mul(x2, x2);
  EXPECT_EQ(t.c, 1u);
  EXPECT_EQ(t.k, at(O, {4}));
  EXPECT_EQ(O.mul(at(O, {4}), x1).k, -1);
}

TEST(MonoMul, ExteriorSigns) {
  auto O = space(1, 2, {1});
  auto a = at(O, {0}, 1), b = at(O, {0}, 2);
  EXPECT_EQ(O.mul(a, a).k, -1);
  auto t = O.mul(b, a);
  EXPECT_EQ(t.k, at(O, {0}, 3));
  EXPECT_EQ(t.c, 4u);
  EXPECT_EQ(O.mul(a, b).c, 1u);
}

TEST(PolyMul, Examples) {
  auto O = space(1, 2, {1});
  SuperPoly f = sv_add(O.F(), mono(at(O, {2}, 1), 3), mono(at(O, {1}, 2)));
  EXPECT_EQ(poly_mul(O, mono(O.one()), f), f);
  SuperPoly s = sv_add(O.F(), mono(at(O, {0}, 1)), mono(at(O, {0}, 2)));
  EXPECT_TRUE(poly_mul(O, s, s).empty());
  EXPECT_TRUE(poly_mul(O, mono(at(O, {4})), mono(at(O, {1}))).empty());
}

TEST(Partial, Examples) {
  auto O = space(1, 2, {1});
  EXPECT_EQ(partial(O, 0, mono(at(O, {3}))), mono(at(O, {2})));
  SuperPoly x23 = mono(at(O, {0}, 3));
  EXPECT_EQ(partial(O, 1, x23), mono(at(O, {0}, 2)));
  EXPECT_EQ(partial(O, 2, x23), mono(at(O, {0}, 1), 4));
}

TEST(Zdeg, Gradings) {
  auto W = space(1, 2, {1});
  EXPECT_EQ(W.zdeg(at(W, {1})), 1);
  auto K = space(3, 2, {1, 1, 1}, Family::K);
  EXPECT_EQ(K.zdeg(at(K, {0, 0, 2})), 4);
  EXPECT_EQ(K.zdeg(at(K, {1, 0, 0})), 1);
  auto KO = space(3, 4, {1, 1, 1}, Family::KO);
  EXPECT_EQ(KO.zdeg(static_cast<std::uint32_t>(KO.var(6))), 2);
  EXPECT_EQ(KO.zdeg(static_cast<std::uint32_t>(KO.var(3))), 1);
  auto SKO = space(3, 4, {1, 1, 1}, Family::SKO);
  EXPECT_EQ(SKO.zdeg(static_cast<std::uint32_t>(SKO.var(6))), 2);
}

TEST(IndexMaps, Involutions) {
  for (int m : {2, 3, 4, 5}) {
    IndexMaps M{m, m, m / 2};
    for (int i = 1; i <= m + m; ++i) EXPECT_EQ(M.prime(M.prime(i)), i);
    for (int i = 1; i <= 2 * m; ++i) EXPECT_EQ(M.tilde(M.tilde(i)), i);
    for (int i = 1; i <= 2 * M.r; ++i) EXPECT_EQ(M.sigma(i) * M.sigma(M.prime(i)), -1);
  }
}

class SuperSpaceProperty : public ::testing::Test {
 protected:
  SuperSpace O = space(2, 2, {1, 1});
};

TEST_F(SuperSpaceProperty, Supercommutative) {
  const auto& F = O.F();
  for (std::uint32_t a = 0; a < O.size(); ++a)
    for (std::uint32_t b = 0; b < O.size(); ++b) {
      auto ab = poly_mul(O, mono(a), mono(b));
      auto ba = poly_mul(O, mono(b), mono(a));
      EXPECT_EQ(ab, sv_scale(F, ba, F.sign(O.parity(a) & O.parity(b))));
    }
}

TEST_F(SuperSpaceProperty, Associative) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 2000; ++k) {
    std::uint32_t a = rng() % O.size(), b = rng() % O.size(), c = rng() % O.size();
    auto l = poly_mul(O, poly_mul(O, mono(a), mono(b)), mono(c));
    auto r = poly_mul(O, mono(a), poly_mul(O, mono(b), mono(c)));
    EXPECT_EQ(l, r);
  }
}

TEST_F(SuperSpaceProperty, PartialsSupercommute) {
  const auto& F = O.F();
  for (int i = 0; i < O.N(); ++i)
    for (int j = 0; j < O.N(); ++j)
      for (std::uint32_t a = 0; a < O.size(); ++a) {
        auto ij = partial(O, i, partial(O, j, mono(a)));
        auto ji = partial(O, j, partial(O, i, mono(a)));
        EXPECT_EQ(ij, sv_scale(F, ji, F.sign(O.var_parity(i) & O.var_parity(j))));
      }
}

TEST_F(SuperSpaceProperty, PartialsAreSuperderivations) {
  const auto& F = O.F();
  for (int i = 0; i < O.N(); ++i)
    for (std::uint32_t a = 0; a < O.size(); ++a)
      for (std::uint32_t b = 0; b < O.size(); ++b) {
        auto lhs = partial(O, i, poly_mul(O, mono(a), mono(b)));
        auto r1 = poly_mul(O, partial(O, i, mono(a)), mono(b));
        auto r2 = poly_mul(O, mono(a), partial(O, i, mono(b)));
        auto rhs = sv_axpy(F, r1, F.sign(O.var_parity(i) & O.parity(a)), r2);
        EXPECT_EQ(lhs, rhs);
      }
}

TEST(SuperSpace, MonomialText) {
  auto O = space(2, 2, {1, 1});
  EXPECT_EQ(O.mono_text(at(O, {2, 1}, 3)), "x^(2,1)*x[3]*x[4]");
}
