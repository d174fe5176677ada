#include <gtest/gtest.h>

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

std::string error_of(const AlgebraSpec& s) {
  try {
    validate(s);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

void expect_closed_and_graded(const Algebra& h) {
  const auto& W = h.W();
  for (std::uint32_t i = 0; i < h.dim(); ++i) {
    EXPECT_GE(field_parity(W, h.basis(i)), 0);
    for (const auto& e : h.basis(i)) {
      EXPECT_EQ(W.zdeg(e.i), h.zdeg(i));
      EXPECT_EQ(W.parity(e.i), h.parity(i));
    }
  }
  for (std::uint32_t i = 0; i < h.dim(); ++i)
    for (std::uint32_t j = i; j < h.dim(); ++j) {
      auto v = bracket(W, h.basis(i), h.basis(j));
      ASSERT_TRUE(h.contains(v)) << i << " " << j;
      SVec c(h.bracket(i, j).begin(), h.bracket(i, j).end());
      EXPECT_EQ(h.to_W(c), v);
    }
}

}  // namespace

TEST(Families, Dimensions) {
  EXPECT_EQ(build(spec(Family::W, 1, 2, {1}))->dim(), 60u);
  EXPECT_EQ(build(spec(Family::W, 2, 2, {1, 1}))->dim(), 400u);
  // K is realized on all of O
  EXPECT_EQ(build(spec(Family::K, 1, 2, {1}))->dim(), 20u);
  auto S = build(spec(Family::S, 2, 2, {1, 1}));
  auto Sb = build(spec(Family::S, 2, 2, {1, 1}, Variant::bar));
  EXPECT_EQ(Sb->dim() - S->dim(), 1u);
  auto H = build(spec(Family::H, 2, 2, {1, 1}));
  EXPECT_EQ(H->dim(), 100u - 1u);
}

TEST(Families, ValidationMessages) {
  EXPECT_EQ(error_of(spec(Family::H, 3, 2, {1, 1, 1})), "H requires even m");
  EXPECT_EQ(error_of(spec(Family::K, 2, 2, {1, 1})), "K requires odd m");
  EXPECT_EQ(error_of(spec(Family::HO, 3, 4, {1, 1, 1})), "HO requires n = m");
  EXPECT_EQ(error_of(spec(Family::KO, 3, 3, {1, 1, 1})), "KO requires n = m+1");
  EXPECT_EQ(error_of(spec(Family::SHO, 2, 2, {1, 1})), "SHO requires m > 2");
  EXPECT_EQ(error_of(spec(Family::W, 2, 2, {1})), "t must have exactly m entries");
  EXPECT_EQ(error_of(spec(Family::K, 1, 2, {1}, Variant::bar)), "bar variant is defined only for S, H, HO, SHO");
  auto s = spec(Family::W, 1, 2, {1});
  s.p = 3;
  EXPECT_EQ(error_of(s), "p must be a prime > 3");
  s.p = 9;
  EXPECT_EQ(error_of(s), "p must be a prime > 3");
  EXPECT_THROW(build(spec(Family::H, 3, 2, {1, 1, 1})), SpecError);
}

TEST(Families, SkoBoundaryWarns) {
  auto s = spec(Family::SKO, 3, 4, {1, 1, 1});
  EXPECT_FALSE(validate(s).empty());
  EXPECT_TRUE(validate(spec(Family::SKO, 4, 5, {1, 1, 1, 1})).empty());
}

TEST(Families, TorusDimensions) {
  EXPECT_EQ(build(spec(Family::W, 1, 2, {1}))->torus().size(), 3u);
  EXPECT_EQ(build(spec(Family::W, 2, 2, {1, 1}))->torus().size(), 4u);
  EXPECT_EQ(build(spec(Family::S, 2, 2, {1, 1}))->torus().size(), 3u);
}

TEST(Families, WeightsOfSimpleFields) {
  auto h = build(spec(Family::W, 1, 2, {1}));
  const auto& W = h->W();
  const auto& O = W.O();
  auto d1 = field(W, mono(O.one()), 0);
  auto x2d1 = field(W, mono(static_cast<std::uint32_t>(O.find({2}, 0))), 0);
  auto c1 = h->coords(d1), c2 = h->coords(x2d1);
  ASSERT_TRUE(c1 && c2);
  ASSERT_EQ(c1->size(), 1u);
  ASSERT_EQ(c2->size(), 1u);
  EXPECT_EQ(W.weight(W.index(O.one(), 0), 0), -1);
  EXPECT_EQ(h->zdeg(c1->front().i), -1);
  EXPECT_EQ(h->zdeg(c2->front().i), 1);
}

TEST(Families, LabelsAndCounts) {
  auto s = spec(Family::SHO, 3, 3, {1, 1, 1}, Variant::derived2);
  EXPECT_EQ(s.label(), "SHO(3,3;1,1,1)^(2)");
  EXPECT_EQ(spec(Family::W, 2, 2, {2, 1}).xi(), 25 + 5 - 2 + 2);
  EXPECT_EQ(spec(Family::W, 2, 2, {2, 1}).eta(), 3);
}

TEST(Property, ClosureAndGrading) {
  expect_closed_and_graded(*build(spec(Family::W, 1, 2, {1})));
  expect_closed_and_graded(*build(spec(Family::S, 2, 2, {1, 1}, Variant::bar)));
  expect_closed_and_graded(*build(spec(Family::H, 2, 2, {1, 1})));
  expect_closed_and_graded(*build(spec(Family::K, 1, 2, {1})));
  expect_closed_and_graded(*build(spec(Family::K, 1, 2, {1}, Variant::derived1)));
}

TEST(Property, WeightsAddUnderBracket) {
  auto h = build(spec(Family::H, 2, 2, {1, 1}));
  for (std::uint32_t i = 0; i < h->dim(); i += 3)
    for (std::uint32_t j = 0; j < h->dim(); j += 5)
      for (const auto& e : h->bracket(i, j)) {
        EXPECT_EQ(h->weight(e.i), h->weight_add(h->weight(i), h->weight(j)));
        EXPECT_EQ(h->zdeg(e.i), h->zdeg(i) + h->zdeg(j));
      }
}

TEST(Property, RealizedBasisMatchesOperatorImage) {
  auto h = build(spec(Family::HO, 3, 3, {1, 1, 1}));
  auto W = h->W_ptr();
  auto img = image_of(OpKind::TH, *W, all_monomials(W->O()));
  EXPECT_TRUE(same_subspace(*W, img, h->basis()));
}

TEST(Property, ShoIsIntersectionOfSAndHo) {
  auto s = spec(Family::SHO, 3, 3, {1, 1, 1});
  auto h = build(s);
  auto W = h->W_ptr();
  auto ho = image_of(OpKind::TH, *W, all_monomials(W->O()));
  auto via_div = intersect_kernel_div(*W, ho, false);
  auto S = kernel_div(*W, false);
  auto via_pairs = intersect_pairwise(*W, S, ho);
  EXPECT_TRUE(same_subspace(*W, via_div, via_pairs));
  EXPECT_TRUE(same_subspace(*W, via_div, h->basis()));
}

TEST(Property, DerivedVariantsAreNested) {
  auto s = spec(Family::SHO, 3, 3, {1, 1, 1});
  auto d0 = build(s);
  s.variant = Variant::derived1;
  auto d1 = build(s);
  s.variant = Variant::derived2;
  auto d2 = build(s);
  EXPECT_GE(d0->dim(), d1->dim());
  EXPECT_GE(d1->dim(), d2->dim());
  for (const auto& v : d2->basis()) EXPECT_TRUE(d1->contains(v));
  for (const auto& v : d1->basis()) EXPECT_TRUE(d0->contains(v));
}
