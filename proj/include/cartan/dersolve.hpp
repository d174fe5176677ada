#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartan/families.hpp"

namespace cartan {

// endomorphism of an algebra given by its columns φ(b_s), in algebra coordinates
struct LinearMap {
  std::size_t dim = 0;
  int parity = 0;
  int zshift = 0;
  std::vector<SVec> cols;
  std::vector<std::uint32_t> escapes;  // sources whose image is not in the algebra

  SVec apply(const FieldCtx& F, const SVec& x) const;
  bool is_zero() const;
};

LinearMap compose(const FieldCtx& F, const LinearMap& a, const LinearMap& b);
// a∘b − (−1)^{|a||b|} b∘a
LinearMap supercommutator(const FieldCtx& F, const LinearMap& a, const LinearMap& b);
LinearMap ad_map(const Algebra& L, const SVec& x, int zdeg, int parity);
// restriction of ad(D) to L for a field D normalizing L
LinearMap ad_external(const Algebra& L, const VectorField& D);

enum class DerMode { full, weight_reduced };
const char* mode_name(DerMode m);

struct BlockDims {
  int k = 0;
  int rho = 0;
  std::size_t total = 0;
  std::size_t inner = 0;
  std::size_t outer = 0;
  bool operator==(const BlockDims&) const = default;
};

struct OuterBracket {
  // table[a][b] = coordinates of [rep_a, rep_b] along the outer representatives
  std::vector<std::vector<SVec>> table;
  bool abelian = true;
  std::size_t derived_dim = 0;  // dimension of the span of all brackets
};

struct DerivationReport {
  DerMode mode = DerMode::full;
  std::vector<BlockDims> dims_by_block;
  std::size_t total = 0;
  std::size_t inner = 0;
  std::size_t outer = 0;
  std::size_t center_dim = 0;
  std::optional<long> expected_outer;
  bool matched_expected = false;
  std::vector<LinearMap> outer_reps;
  bool leibniz_verified = false;
  OuterBracket bracket;
  double runtime_ms = 0;
};

struct DerOptions {
  bool representatives = true;
  bool outer_bracket = true;
  bool verify = true;
  std::size_t full_pair_limit = 600;  // every basis pair is re-verified up to this dimension
  std::size_t random_pairs = 2000;
};

// basis of Der_{k,ρ}(L) across all weights
std::vector<LinearMap> der_component(const Algebra& L, int k, int rho);
DerivationReport der_full(const Algebra& L, DerMode mode, const DerOptions& opt = {});

// derivation determined by its values on the generators of L
LinearMap extend_from_generators(const Algebra& L, const std::vector<SVec>& values, int k, int rho);
bool verify_leibniz(const Algebra& L, const LinearMap& phi, std::size_t full_pair_limit = 600,
                    std::size_t random_pairs = 2000, std::uint64_t seed = 7);

LinearMap candidate_phi(const Algebra& HO);
LinearMap candidate_theta(const Algebra& SHO);
LinearMap candidate_ad_ppower(const Algebra& L, int i, int j);  // i is a 0-based even index, j >= 1
// coefficient of τ's i-th summand on x^(α)x^u (verbatim formula)
Res theta_coefficient(const FieldCtx& F, const std::vector<int>& alpha, std::uint32_t u, int m, int i);

struct CandidateCheck {
  bool is_derivation = false;
  bool is_inner = false;
  std::optional<SVec> inner_witness;
};
CandidateCheck check_candidate(const Algebra& L, const LinearMap& phi);

// rank of the given derivations modulo inner derivations (all homogeneous)
std::size_t rank_mod_inner(const Algebra& L, const std::vector<LinearMap>& maps);

OuterBracket outer_bracket(const Algebra& L, const std::vector<LinearMap>& reps);

long l_lambda(int m, Res lambda, std::uint32_t p);
std::optional<long> expected_outer_dim(const AlgebraSpec& s);

}  // namespace cartan
