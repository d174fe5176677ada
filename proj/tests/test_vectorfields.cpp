#include <gtest/gtest.h>

#include <random>

#include "cartan/families.hpp"

using namespace cartan;

namespace {

std::shared_ptr<const WSpace> ambient(Family f, int m, int n, std::vector<int> t) {
  AlgebraSpec s;
  s.family = f;
  s.m = m;
  s.n = n;
  s.t = std::move(t);
  return make_ambient(s);
}

std::uint32_t at(const SuperSpace& O, std::vector<int> a, std::uint32_t u = 0) {
  return static_cast<std::uint32_t>(O.find(a, u));
}

VectorField d(const WSpace& W, int i) { return field(W, mono(W.O().one()), i); }

SVec random_sparse(const FieldCtx& F, std::mt19937_64& rng, std::uint32_t size, int terms) {
  SVec v;
  for (int k = 0; k < terms; ++k) v = sv_axpy(F, v, 1 + rng() % (F.p() - 1), SVec{{static_cast<std::uint32_t>(rng() % size), 1}});
  return v;
}

Res sgn(const FieldCtx& F, int a, int b) { return F.sign(a & b); }

void expect_homomorphism(Family fam, OpKind op, const WSpace& W, int trials) {
  const auto& O = W.O();
  const auto& F = W.F();
  std::mt19937_64 rng(17);
  for (int k = 0; k < trials; ++k) {
    auto a = mono(rng() % O.size()), b = mono(rng() % O.size());
    auto lhs = bracket(W, apply_op(op, W, a), apply_op(op, W, b));
    auto rhs = apply_op(op, W, bracket_O(fam, W, a, b));
    EXPECT_EQ(lhs, rhs) << poly_text(O, a) << " , " << poly_text(O, b);
  }
  (void)F;
}

}  // namespace

TEST(VectorFields, ApplyExamples) {
  auto W = ambient(Family::W, 1, 2, {1});
  const auto& O = W->O();
  EXPECT_EQ(apply(*W, d(*W, 0), mono(at(O, {2}))), mono(at(O, {1})));
  EXPECT_EQ(apply(*W, field(*W, mono(at(O, {1})), 0), mono(at(O, {3}))), mono(at(O, {3}), 3));
  EXPECT_TRUE(apply(*W, d(*W, 1), mono(at(O, {4}))).empty());
}

TEST(VectorFields, BracketExamples) {
  auto W = ambient(Family::W, 1, 2, {1});
  const auto& O = W->O();
  auto e = field(*W, mono(at(O, {1})), 0);
  EXPECT_EQ(bracket(*W, d(*W, 0), e), d(*W, 0));
  auto odd = field(*W, mono(at(O, {0}, 1)), 1);
  EXPECT_EQ(bracket(*W, d(*W, 1), odd), d(*W, 1));
  // [∂_2, ∂_2] = 0 for the odd field ∂_2
  EXPECT_TRUE(bracket(*W, d(*W, 1), d(*W, 1)).empty());
}

TEST(VectorFields, DivergenceExamples) {
  auto W = ambient(Family::W, 1, 2, {1});
  const auto& O = W->O();
  EXPECT_EQ(divergence(*W, field(*W, mono(at(O, {1})), 0)), mono(O.one()));
  EXPECT_EQ(divergence(*W, field(*W, mono(at(O, {0}, 1)), 1)), mono(O.one(), 4));
  EXPECT_EQ(divergence(*W, degree_full(*W)), mono(O.one(), 4));
  EXPECT_TRUE(divergence(*W, d(*W, 2)).empty());
}

TEST(VectorFields, DijIsDivergenceFree) {
  auto W = ambient(Family::S, 2, 2, {1, 1});
  const auto& O = W->O();
  for (std::uint32_t a = 0; a < O.size(); ++a)
    for (int i = 0; i < O.N(); ++i)
      for (int j = 0; j < O.N(); ++j) EXPECT_TRUE(divergence(*W, op_DIJ(*W, i, j, mono(a))).empty());
  EXPECT_EQ(op_DIJ(*W, 0, 1, mono(at(O, {1, 0}))), d(*W, 1));
}

TEST(VectorFields, OperatorExamples) {
  auto H = ambient(Family::H, 2, 2, {1, 1});
  EXPECT_TRUE(op_DH(*H, mono(H->O().one())).empty());
  EXPECT_EQ(field_parity(*H, op_DH(*H, mono(at(H->O(), {0, 0}, 1)))), 1);
  auto K = ambient(Family::K, 1, 2, {1});
  // D_K(1) = 2∂_m
  EXPECT_EQ(op_DK(*K, mono(K->O().one())), sv_scale(K->F(), d(*K, 0), 2));
  auto HO = ambient(Family::HO, 3, 3, {1, 1, 1});
  EXPECT_EQ(field_parity(*HO, op_TH(*HO, mono(at(HO->O(), {1, 0, 0})))), 1);
  EXPECT_THROW(op_DH(*K, mono(0)), std::invalid_argument);
  EXPECT_THROW(op_DK(*H, mono(0)), std::invalid_argument);
  EXPECT_THROW(check_op_compatible(OpKind::TH, 3, 4), std::invalid_argument);
}

TEST(VectorFields, DivLambdaExamples) {
  auto KO = ambient(Family::KO, 3, 4, {1, 1, 1});
  const auto& O = KO->O();
  EXPECT_TRUE(div_lambda(O, mono(O.one()), 0).empty());
  EXPECT_TRUE(div_lambda(O, mono(at(O, {1, 0, 0})), 2).empty());
  auto W = ambient(Family::W, 2, 2, {1, 1});
  EXPECT_THROW(div_lambda(W->O(), mono(0), 0), std::invalid_argument);
}

TEST(Property, RealizationsAreHomomorphisms) {
  expect_homomorphism(Family::H, OpKind::DH, *ambient(Family::H, 2, 2, {1, 1}), 600);
  expect_homomorphism(Family::K, OpKind::DK, *ambient(Family::K, 1, 2, {1}), 400);
  expect_homomorphism(Family::K, OpKind::DK, *ambient(Family::K, 3, 2, {1, 1, 1}), 600);
  expect_homomorphism(Family::HO, OpKind::TH, *ambient(Family::HO, 3, 3, {1, 1, 1}), 600);
  expect_homomorphism(Family::KO, OpKind::DKO, *ambient(Family::KO, 3, 4, {1, 1, 1}), 600);
}

TEST(Property, HamiltonianFieldsAreDivergenceFree) {
  auto H = ambient(Family::H, 2, 2, {1, 1});
  for (std::uint32_t a = 0; a < H->O().size(); ++a) EXPECT_TRUE(divergence(*H, op_DH(*H, mono(a))).empty());
  auto HO = ambient(Family::HO, 3, 3, {1, 1, 1});
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    std::uint32_t a = rng() % HO->O().size();
    auto v = op_TH(*HO, mono(a));
    if (!v.empty()) EXPECT_EQ(field_parity(*HO, v), 1 - HO->O().parity(a));
  }
}

TEST(Property, BracketIsCommutatorOfOperators) {
  auto W = ambient(Family::W, 2, 2, {1, 1});
  const auto& O = W->O();
  const auto& F = W->F();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    auto D = SVec{{static_cast<std::uint32_t>(rng() % W->size()), 1}};
    auto E = SVec{{static_cast<std::uint32_t>(rng() % W->size()), 1}};
    auto f = random_sparse(F, rng, O.size(), 3);
    auto lhs = apply(*W, bracket(*W, D, E), f);
    auto de = apply(*W, D, apply(*W, E, f));
    auto ed = apply(*W, E, apply(*W, D, f));
    EXPECT_EQ(lhs, sv_axpy(F, de, F.neg(sgn(F, field_parity(*W, D), field_parity(*W, E))), ed));
  }
}

TEST(Property, BracketSuperJacobi) {
  auto W = ambient(Family::W, 1, 2, {1});
  const auto& F = W->F();
  std::mt19937_64 rng(4);
  for (int k = 0; k < 500; ++k) {
    SVec a{{static_cast<std::uint32_t>(rng() % W->size()), 1}};
    SVec b{{static_cast<std::uint32_t>(rng() % W->size()), 1}};
    SVec c{{static_cast<std::uint32_t>(rng() % W->size()), 1}};
    int pa = field_parity(*W, a), pb = field_parity(*W, b);
    auto ab = bracket(*W, a, b);
    auto ba = bracket(*W, b, a);
    EXPECT_EQ(ab, sv_scale(F, ba, F.neg(sgn(F, pa, pb))));
    auto l = bracket(*W, a, bracket(*W, b, c));
    auto r1 = bracket(*W, ab, c);
    auto r2 = bracket(*W, b, bracket(*W, a, c));
    EXPECT_EQ(l, sv_axpy(F, r1, sgn(F, pa, pb), r2));
  }
}

TEST(Property, KBracketJacobi) {
  auto K = ambient(Family::K, 3, 2, {1, 1, 1});
  const auto& O = K->O();
  const auto& F = K->F();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    auto a = mono(rng() % O.size()), b = mono(rng() % O.size()), c = mono(rng() % O.size());
    int pa = poly_parity(O, a), pb = poly_parity(O, b);
    auto l = bracket_O(Family::K, *K, a, bracket_O(Family::K, *K, b, c));
    auto r1 = bracket_O(Family::K, *K, bracket_O(Family::K, *K, a, b), c);
    auto r2 = bracket_O(Family::K, *K, b, bracket_O(Family::K, *K, a, c));
    EXPECT_EQ(l, sv_axpy(F, r1, sgn(F, pa, pb), r2));
  }
}

TEST(Property, Restrictedness) {
  auto W = ambient(Family::W, 2, 2, {2, 1});
  const auto& F = W->F();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 2; ++i) {
    const int q = i == 0 ? 25 : 5;
    for (int k = 0; k < 40; ++k) {
      SVec D{{static_cast<std::uint32_t>(rng() % W->size()), 1}};
      EXPECT_EQ(coeff_shift(*W, i, 1, D), bracket(*W, d(*W, i), D));
      SVec X = D;
      for (int r = 0; r < q && !X.empty(); ++r) X = bracket(*W, d(*W, i), X);
      EXPECT_TRUE(X.empty());
    }
  }
  (void)F;
}

TEST(Integrality, Examples) {
  auto W = ambient(Family::W, 1, 2, {1});
  const auto& O = W->O();
  EXPECT_TRUE(is_integral(*W, 0, d(*W, 0)));
  EXPECT_TRUE(is_integral(*W, 0, field(*W, mono(at(O, {3})), 1)));
  EXPECT_FALSE(is_integral(*W, 0, field(*W, mono(at(O, {4})), 0)));
  EXPECT_EQ(insert_var(*W, 0, d(*W, 1)), field(*W, mono(at(O, {1})), 1));
}

TEST(VectorFields, WeightsOfBasisFields) {
  auto W = ambient(Family::W, 1, 2, {1});
  const auto& O = W->O();
  EXPECT_EQ(W->weight(W->index(O.one(), 0), 0), -1);
  EXPECT_EQ(W->weight(W->index(at(O, {2}), 0), 0), 1);
  EXPECT_EQ(W->zdeg(W->index(at(O, {2}, 3), 0)), 3);
}
