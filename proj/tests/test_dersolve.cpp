#include <gtest/gtest.h>

#include "cartan/dersolve.hpp"
#include "cartan/structure.hpp"

using namespace cartan;

namespace {

AlgebraSpec spec(Family f, int m, int n, std::vector<int> t, Variant v = Variant::plain, Res lambda = 0) {
  AlgebraSpec s;
  s.family = f;
  s.m = m;
  s.n = n;
  s.t = std::move(t);
  s.variant = v;
  s.lambda = lambda;
  return s;
}

AlgebraPtr abelian(int k) {
  auto s = spec(Family::W, k, 2, std::vector<int>(k, 1));
  auto W = make_ambient(s);
  std::vector<VectorField> v;
  for (int i = 0; i < k; ++i) v.push_back(field(*W, mono(W->O().one()), i));
  return build_from_vectors(s, W, v);
}

}  // namespace

TEST(Formulas, LLambda) {
  EXPECT_EQ(l_lambda(3, 1, 5), 1);
  EXPECT_EQ(l_lambda(4, 1, 5), 2);
  EXPECT_EQ(l_lambda(3, 0, 5), 1);
  EXPECT_EQ(l_lambda(3, 2, 5), 4);
}

TEST(Formulas, ExpectedOuterDims) {
  EXPECT_EQ(expected_outer_dim(spec(Family::W, 1, 2, {1})), 0);
  EXPECT_EQ(expected_outer_dim(spec(Family::W, 2, 2, {2, 1})), 1);
  EXPECT_EQ(expected_outer_dim(spec(Family::S, 2, 2, {1, 1})), 1);
  EXPECT_EQ(expected_outer_dim(spec(Family::S, 2, 2, {1, 1}, Variant::derived1)), 3);
  EXPECT_EQ(expected_outer_dim(spec(Family::H, 2, 2, {1, 1})), 3);
  EXPECT_EQ(expected_outer_dim(spec(Family::K, 1, 4, {1}, Variant::derived1)), 1);
  EXPECT_EQ(expected_outer_dim(spec(Family::SHO, 3, 3, {1, 1, 1}, Variant::derived2)), 15);
  EXPECT_EQ(expected_outer_dim(spec(Family::SKO, 3, 4, {1, 1, 1}, Variant::derived2, 1)), 2);
  EXPECT_EQ(expected_outer_dim(spec(Family::SKO, 4, 5, {1, 1, 1, 1}, Variant::derived1, 1)), 3);
  EXPECT_EQ(expected_outer_dim(spec(Family::SKO, 4, 5, {1, 1, 1, 1}, Variant::derived2, 1)), 4);
  EXPECT_FALSE(expected_outer_dim(spec(Family::W, 1, 2, {1}, Variant::derived1)).has_value());
  EXPECT_FALSE(expected_outer_dim(spec(Family::S, 2, 2, {1, 1}, Variant::bar)).has_value());
  EXPECT_FALSE(expected_outer_dim(spec(Family::KO, 3, 4, {1, 1, 1}, Variant::derived2)).has_value());
}

TEST(Derivations, AbelianFixture) {
  auto h = abelian(1);
  auto r = der_full(*h, DerMode::full);
  EXPECT_EQ(r.total, 1u);
  EXPECT_EQ(r.inner, 0u);
  EXPECT_EQ(r.outer, 1u);
  EXPECT_EQ(r.center_dim, 1u);
  EXPECT_TRUE(r.leibniz_verified);
  auto r2 = der_full(*abelian(2), DerMode::full);
  EXPECT_EQ(r2.total, 4u);
  EXPECT_EQ(r2.outer, 4u);
  EXPECT_TRUE(r2.bracket.abelian == false);
}

TEST(Derivations, FarNegativeComponentIsZero) {
  auto h = build(spec(Family::W, 1, 2, {1}));
  EXPECT_TRUE(der_component(*h, -50, 0).empty());
  EXPECT_TRUE(der_component(*h, -50, 1).empty());
}

TEST(Derivations, InnerCandidatesAndZeroMap) {
  auto h = build(spec(Family::W, 1, 2, {1}));
  auto b = static_cast<std::uint32_t>(h->dim() / 2);
  auto ad = ad_map(*h, SVec{{b, 1}}, h->zdeg(b), h->parity(b));
  auto c = check_candidate(*h, ad);
  EXPECT_TRUE(c.is_derivation);
  EXPECT_TRUE(c.is_inner);
  ASSERT_TRUE(c.inner_witness.has_value());
  LinearMap zero;
  zero.dim = h->dim();
  zero.cols.resize(h->dim());
  auto z = check_candidate(*h, zero);
  EXPECT_TRUE(z.is_derivation);
  EXPECT_TRUE(z.is_inner);
  EXPECT_EQ(rank_mod_inner(*h, {ad, zero}), 0u);
}

TEST(Derivations, PPowerBeyondTruncationIsZero) {
  auto h = build(spec(Family::W, 1, 2, {1}));
  EXPECT_TRUE(candidate_ad_ppower(*h, 0, 1).is_zero());
  auto h2 = build(spec(Family::W, 2, 2, {2, 1}));
  auto d = candidate_ad_ppower(*h2, 0, 1);
  EXPECT_FALSE(d.is_zero());
  EXPECT_EQ(d.zshift, -5);
  auto c = check_candidate(*h2, d);
  EXPECT_TRUE(c.is_derivation);
  EXPECT_FALSE(c.is_inner);
}

TEST(Derivations, ThetaCoefficient) {
  FieldCtx F(5);
  EXPECT_EQ(theta_coefficient(F, {4, 0, 0}, 0, 3, 0), 0u);
  EXPECT_EQ(theta_coefficient(F, {0, 0, 0}, 0, 3, 0), 1u);
  // α_1 = 1, u = {ξ_1}: b = 1, coefficient (2·2)^{-1} = 4
  EXPECT_EQ(theta_coefficient(F, {1, 0, 0}, 1, 3, 0), 4u);
}

TEST(Derivations, ExceptionalCandidates) {
  auto ho = build(spec(Family::HO, 3, 3, {1, 1, 1}));
  auto phi = candidate_phi(*ho);
  EXPECT_TRUE(phi.escapes.empty());
  EXPECT_EQ(phi.parity, 1);
  auto cp = check_candidate(*ho, phi);
  EXPECT_TRUE(cp.is_derivation);
  EXPECT_FALSE(cp.is_inner);
  auto sho = build(spec(Family::SHO, 3, 3, {1, 1, 1}, Variant::derived2));
  auto th = candidate_theta(*sho);
  EXPECT_EQ(th.parity, 0);
  auto ct = check_candidate(*sho, th);
  EXPECT_TRUE(ct.is_derivation);
  EXPECT_FALSE(ct.is_inner);
}

TEST(Derivations, ModesAgree) {
  for (auto s : {spec(Family::W, 1, 2, {1}), spec(Family::H, 2, 2, {1, 1}), spec(Family::K, 1, 2, {1})}) {
    auto h = build(s);
    auto a = der_full(*h, DerMode::full);
    auto b = der_full(*h, DerMode::weight_reduced);
    EXPECT_EQ(a.dims_by_block, b.dims_by_block) << s.label();
    EXPECT_EQ(a.outer, b.outer);
    EXPECT_TRUE(a.leibniz_verified && b.leibniz_verified);
  }
}

TEST(Derivations, MatchesFormulaOnSmallFamilies) {
  for (auto s : {spec(Family::W, 1, 2, {1}), spec(Family::S, 2, 2, {1, 1}),
                 spec(Family::S, 2, 2, {1, 1}, Variant::derived1), spec(Family::H, 2, 2, {1, 1}),
                 spec(Family::H, 2, 2, {1, 1}, Variant::derived1), spec(Family::K, 1, 2, {1})}) {
    auto r = der_full(*build(s), DerMode::weight_reduced);
    ASSERT_TRUE(r.expected_outer.has_value());
    EXPECT_EQ(static_cast<long>(r.outer), *r.expected_outer) << s.label();
    EXPECT_TRUE(r.matched_expected);
    EXPECT_EQ(r.outer_reps.size(), r.outer);
  }
}

TEST(Property, DerivationsAreClosedUnderSupercommutator) {
  auto h = build(spec(Family::S, 2, 2, {1, 1}, Variant::derived1));
  auto r = der_full(*h, DerMode::weight_reduced);
  const auto& F = h->F();
  for (const auto& a : r.outer_reps)
    for (const auto& b : r.outer_reps) {
      auto c = supercommutator(F, a, b);
      EXPECT_TRUE(verify_leibniz(*h, c));
    }
}

TEST(Property, ExtendFromGeneratorsReproducesAd) {
  auto h = build(spec(Family::H, 2, 2, {1, 1}));
  const auto& gens = h->generation().gens;
  auto b = static_cast<std::uint32_t>(h->dim() - 1);
  auto ad = ad_map(*h, SVec{{b, 1}}, h->zdeg(b), h->parity(b));
  std::vector<SVec> values;
  for (auto g : gens) values.push_back(ad.cols[g]);
  auto ext = extend_from_generators(*h, values, ad.zshift, ad.parity);
  EXPECT_EQ(ext.cols, ad.cols);
}
