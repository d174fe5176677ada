#pragma once

#include <memory>
#include <string>

#include "cartan/superspace.hpp"

namespace cartan {

// coordinates of W(m,n;t): index = monomial * (m+n) + direction (0-based)
class WSpace {
 public:
  explicit WSpace(std::shared_ptr<const SuperSpace> O) : O_(std::move(O)), N_(O_->N()) {}

  const SuperSpace& O() const { return *O_; }
  std::shared_ptr<const SuperSpace> O_ptr() const { return O_; }
  const FieldCtx& F() const { return O_->F(); }
  int N() const { return N_; }
  std::uint32_t size() const { return O_->size() * static_cast<std::uint32_t>(N_); }
  std::uint32_t index(std::uint32_t mono, int dir) const { return mono * N_ + dir; }
  std::uint32_t mono_of(std::uint32_t w) const { return w / N_; }
  int dir_of(std::uint32_t w) const { return static_cast<int>(w % N_); }
  int zdeg(std::uint32_t w) const { return O_->zdeg(mono_of(w)) - O_->zd_var(dir_of(w)); }
  int parity(std::uint32_t w) const { return O_->parity(mono_of(w)) ^ O_->var_parity(dir_of(w)); }
  // eigenvalue of x_i∂_i (0-based i) on the basis field w, as an integer
  int weight(std::uint32_t w, int i) const;

 private:
  std::shared_ptr<const SuperSpace> O_;
  int N_;
};

using VectorField = SVec;

VectorField field(const WSpace& W, const SuperPoly& f, int dir);
VectorField bracket(const WSpace& W, const VectorField& D, const VectorField& E);
SuperPoly apply(const WSpace& W, const VectorField& D, const SuperPoly& f);
SuperPoly divergence(const WSpace& W, const VectorField& D);
int field_parity(const WSpace& W, const VectorField& D);  // -1 when inhomogeneous
std::string field_text(const WSpace& W, const VectorField& D);

// operators; variable indices are 0-based (x_1 is index 0)
VectorField op_DIJ(const WSpace& W, int i, int j, const SuperPoly& a);
VectorField op_DH(const WSpace& W, const SuperPoly& a);
VectorField op_DK(const WSpace& W, const SuperPoly& a);
VectorField op_TH(const WSpace& W, const SuperPoly& a);
VectorField op_DKO(const WSpace& W, const SuperPoly& a);
SuperPoly div_lambda(const SuperSpace& O, const SuperPoly& a, Res lambda);
VectorField degree_full(const WSpace& W);
VectorField degree_2m(const WSpace& W);

enum class OpKind { DH, DK, TH, DKO };
VectorField apply_op(OpKind op, const WSpace& W, const SuperPoly& a);
int op_parity(OpKind op);
void check_op_compatible(OpKind op, int m, int n);

// realized brackets on O (H and HO are taken modulo constants)
SuperPoly bracket_O(Family fam, const WSpace& W, const SuperPoly& a, const SuperPoly& b);

// Φ_i inserts one factor of x_i; D is i-integral when ∂_i Φ_i(D) = D
VectorField insert_var(const WSpace& W, int i, const VectorField& D);
VectorField coeff_partial(const WSpace& W, int i, const VectorField& D);
bool is_integral(const WSpace& W, int i, const VectorField& D);
// D ↦ [∂_i^{e}, D] for even i: coefficientwise divided-power shift
VectorField coeff_shift(const WSpace& W, int i, int e, const VectorField& D);

}  // namespace cartan
