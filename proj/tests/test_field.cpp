#include <gtest/gtest.h>

#include <random>

#include "cartan/field.hpp"

using namespace cartan;

namespace {

MatrixFp dense(const FieldCtx& F, std::vector<std::vector<long long>> a) { return MatrixFp::from_dense(F, a); }

std::vector<std::vector<Res>> as_dense(const std::vector<SVec>& vs, std::size_t n) {
  std::vector<std::vector<Res>> out;
  for (const auto& v : vs) out.push_back(sv_to_dense(v, n));
  return out;
}

MatrixFp random_matrix(const FieldCtx& F, std::mt19937_64& rng, std::size_t r, std::size_t c, int density) {
  MatrixFp A(r, c);
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<Res> val(1, F.p() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density) A.set(F, i, j, val(rng));
  return A;
}

}  // namespace

TEST(Field, RejectsNonPrimeOrSmall) {
  EXPECT_THROW(FieldCtx(4), std::invalid_argument);
  EXPECT_THROW(FieldCtx(3), std::invalid_argument);
  EXPECT_THROW(FieldCtx(2), std::invalid_argument);
  EXPECT_NO_THROW(FieldCtx(5));
  EXPECT_NO_THROW(FieldCtx(7));
}

TEST(Field, ArithmeticIsCanonical) {
  FieldCtx F(7);
  for (Res a = 0; a < 7; ++a) {
    EXPECT_EQ(F.add(a, F.neg(a)), 0u);
    if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
    for (Res b = 0; b < 7; ++b) {
      EXPECT_LT(F.mul(a, b), 7u);
      EXPECT_EQ(F.sub(a, b), F.add(a, F.neg(b)));
    }
  }
  EXPECT_EQ(F.from_int(-1), 6u);
  EXPECT_EQ(F.from_int(15), 1u);
  EXPECT_EQ(F.pow(3, 6), 1u);
}

TEST(Nullspace, ZeroMatrixGivesFullSpace) {
  FieldCtx F(5);
  auto N = nullspace(F, dense(F, {{0, 0}, {0, 0}}));
  EXPECT_EQ(as_dense(N, 2), (std::vector<std::vector<Res>>{{1, 0}, {0, 1}}));
}

TEST(Nullspace, IdentityGivesEmpty) {
  FieldCtx F(5);
  EXPECT_TRUE(nullspace(F, dense(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
}

TEST(Nullspace, RankOneExample) {
  FieldCtx F(5);
  auto A = dense(F, {{1, 2}, {2, 4}});
  auto N = nullspace(F, A);
  ASSERT_EQ(N.size(), 1u);
  // the normalized basis vector is a multiple of (3,1)
  auto v = sv_to_dense(N[0], 2);
  EXPECT_EQ(F.mul(v[0], F.inv(v[1])), 3u);
  // brute force over all 25 vectors
  int count = 0;
  for (Res x = 0; x < 5; ++x)
    for (Res y = 0; y < 5; ++y)
      if (F.add(x, F.mul(2, y)) == 0) ++count;
  EXPECT_EQ(count, 5);
}

TEST(Rank, Examples) {
  FieldCtx F(5);
  EXPECT_EQ(rank(F, dense(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
  EXPECT_EQ(rank(F, dense(F, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})), 0u);
  EXPECT_EQ(rank(F, dense(F, {{1, 2}, {2, 4}})), 1u);
}

TEST(InSpan, Examples) {
  FieldCtx F(5);
  EXPECT_EQ(in_span(F, {{1, 0}}, {3, 0}), (std::vector<Res>{3}));
  EXPECT_FALSE(in_span(F, {{1, 0}}, {0, 1}).has_value());
  EXPECT_EQ(in_span(F, {{1, 2}, {0, 1}}, {2, 0}), (std::vector<Res>{2, 1}));
  EXPECT_THROW(in_span(F, {{1, 0}}, {1, 0, 0}), std::invalid_argument);
}

TEST(Property, RankNullityAndKernel) {
  FieldCtx F(7);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    auto A = random_matrix(F, rng, r, c, 20 + static_cast<int>(rng() % 60));
    auto N = nullspace(F, A);
    EXPECT_EQ(rank(F, A) + N.size(), c);
    for (const auto& v : N) {
      auto y = A.mul(F, sv_to_dense(v, c));
      for (auto e : y) EXPECT_EQ(e, 0u);
    }
  }
}

TEST(Property, NullspaceIsDeterministic) {
  FieldCtx F(5);
  std::mt19937_64 rng(3);
  auto A = random_matrix(F, rng, 8, 10, 40);
  auto B = A;
  EXPECT_EQ(nullspace(F, A), nullspace(F, B));
}

TEST(Property, EchelonSolveReconstructs) {
  FieldCtx F(11);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Res> val(0, 10);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 8;
    std::vector<SVec> vecs;
    Echelon E(F, n, true);
    for (int k = 0; k < 5; ++k) {
      std::vector<Res> d(n);
      for (auto& x : d) x = val(rng);
      vecs.push_back(sv_from_dense(d));
      E.insert(vecs.back());
    }
    SVec target;
    std::vector<Res> coef(vecs.size());
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      coef[k] = val(rng);
      target = sv_axpy(F, target, coef[k], vecs[k]);
    }
    auto sol = E.solve(target);
    ASSERT_TRUE(sol.has_value());
    SVec back;
    for (const auto& e : *sol) back = sv_axpy(F, back, e.v, vecs[e.i]);
    EXPECT_EQ(back, target);
  }
}

TEST(Property, DenseAndSparseEchelonAgree) {
  FieldCtx F(5);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    auto A = random_matrix(F, rng, 9, 7, 50);
    DenseEchelon D(F, 7);
    for (const auto& row : A.rows()) D.insert(sv_to_dense(row, 7));
    EXPECT_EQ(D.rank(), rank(F, A));
    EXPECT_EQ(D.nullspace().size(), nullspace(F, A).size());
  }
}
