#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cartan/field.hpp"

namespace cartan {

enum class Family { W, S, H, K, HO, SHO, KO, SKO };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

struct SpaceParams {
  int m = 1;
  int n = 2;
  std::vector<int> t;
  std::uint32_t p = 5;
};

Res lucas_binom(unsigned long long a, unsigned long long b, std::uint32_t p);

// index maps on I = {1..m+n} (1-based, as in the formulas)
struct IndexMaps {
  int m, n, r;
  int prime(int i) const;  // i' ; for m odd the index m is fixed
  int tilde(int i) const;  // ĩ ; defined for i <= 2m when n >= m
  int sigma(int i) const;
};

// O(m,n;t): monomials x^(α)x^u indexed in canonical order
class SuperSpace {
 public:
  SuperSpace(SpaceParams params, Family grading = Family::W);

  const FieldCtx& F() const { return F_; }
  const SpaceParams& params() const { return P_; }
  int m() const { return P_.m; }
  int n() const { return P_.n; }
  int N() const { return P_.m + P_.n; }
  std::uint32_t p() const { return P_.p; }
  Family grading() const { return grading_; }
  int pi(int i) const { return pi_[i]; }  // 0-based even index
  IndexMaps maps() const { return {P_.m, P_.n, P_.m / 2}; }

  std::size_t dim() const { return umask_.size(); }
  std::uint32_t size() const { return static_cast<std::uint32_t>(umask_.size()); }
  const std::uint16_t* alpha(std::uint32_t k) const { return &alpha_[static_cast<std::size_t>(k) * P_.m]; }
  std::uint32_t umask(std::uint32_t k) const { return umask_[k]; }
  int zdeg(std::uint32_t k) const { return zdeg_[k]; }
  int stddeg(std::uint32_t k) const { return std_[k]; }
  int parity(std::uint32_t k) const { return __builtin_popcount(umask_[k]) & 1; }
  // zd(x_i) for a 0-based variable
  int zd_var(int i) const { return zdvar_[i]; }
  int var_parity(int i) const { return i >= P_.m ? 1 : 0; }

  // -1 when out of bounds
  std::int64_t find(const std::vector<int>& alpha, std::uint32_t u) const;
  std::uint32_t one() const { return 0; }
  std::int64_t var(int i) const;  // monomial x_i, 0-based

  struct Term {
    Res c;
    std::int64_t k;  // -1 for zero
  };
  Term mul(std::uint32_t a, std::uint32_t b) const;
  Term deriv(int i, std::uint32_t a) const;
  // ∂_i^{e} for even i, divided-power shift
  std::int64_t shift_down(int i, std::uint32_t a, int e) const;

  std::string mono_text(std::uint32_t k) const;

  std::uint32_t umax() const { return 1u << P_.n; }

 private:
  SpaceParams P_;
  Family grading_;
  FieldCtx F_;
  std::vector<int> pi_, radix_, zdvar_;
  std::vector<std::uint16_t> alpha_;
  std::vector<std::uint32_t> umask_;
  std::vector<std::uint32_t> acode_;
  std::vector<int> zdeg_, std_;
  std::vector<std::uint32_t> code2idx_;
  std::vector<std::vector<Res>> binom_;
};

// SuperPoly: sparse vector over monomial indices
using SuperPoly = SVec;

SuperPoly poly_mul(const SuperSpace& O, const SuperPoly& f, const SuperPoly& g);
SuperPoly partial(const SuperSpace& O, int i, const SuperPoly& f);
SuperPoly mono(std::uint32_t k, Res c = 1);
int poly_parity(const SuperSpace& O, const SuperPoly& f);  // -1 when inhomogeneous
std::string poly_text(const SuperSpace& O, const SuperPoly& f);

}  // namespace cartan
