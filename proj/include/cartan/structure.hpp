#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cartan/families.hpp"

namespace cartan {

// basis of the center, in algebra coordinates
std::vector<SVec> center(const Algebra& h);

struct SimplicityReport {
  bool simple = false;
  bool complete = true;  // false when some weight space was too large to enumerate
  std::size_t seeds = 0;
  std::string reason;
};
SimplicityReport simplicity(const Algebra& h, std::size_t point_limit = 200);
bool is_simple(const Algebra& h);

// dimension of the ideal generated by v
std::size_t ideal_dim(const Algebra& h, const SVec& v);

struct HeightDepth {
  int depth = 0;
  int height = 0;
};
HeightDepth height_depth(const Algebra& h);
// height of X^(2) from the family table
long expected_height(const AlgebraSpec& s);
// dimension of Nor_W(X) from the family table; nullopt for bar variants
std::optional<std::size_t> expected_normalizer_dim(const AlgebraSpec& s);

// {D in W : [D, sub] ⊆ sub}, canonical basis in W coordinates
std::vector<VectorField> normalizer(const Algebra& sub);
std::vector<VectorField> normalizer(const Algebra& ambient, const Algebra& sub);
bool same_subspace(const WSpace& W, const std::vector<VectorField>& a, const std::vector<VectorField>& b);

struct JacobiReport {
  bool pass = true;
  bool exhaustive = false;
  std::size_t triples = 0;
  std::size_t violations = 0;
  std::optional<std::array<std::uint32_t, 3>> first;
  std::string kind;  // "jacobi" or "antisymmetry"
};
using BracketFn = std::function<SVec(std::uint32_t, std::uint32_t)>;
JacobiReport check_jacobi(const FieldCtx& F, const std::vector<int>& parity, const BracketFn& br,
                          std::size_t exhaustive_limit = 200, std::size_t random_triples = 1000,
                          std::uint64_t seed = 1);
JacobiReport check_jacobi(const Algebra& h, std::size_t exhaustive_limit = 200, std::size_t random_triples = 1000,
                          std::uint64_t seed = 1);

}  // namespace cartan
