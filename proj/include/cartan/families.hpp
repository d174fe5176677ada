#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartan/vectorfields.hpp"

namespace cartan {

enum class Variant { plain, bar, derived1, derived2 };
const char* variant_name(Variant v);
Variant variant_from_name(const std::string& s);

struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AlgebraSpec {
  Family family = Family::W;
  Variant variant = Variant::plain;
  int m = 1;
  int n = 2;
  std::uint32_t p = 5;
  std::vector<int> t{1};
  Res lambda = 0;

  std::string label() const;  // e.g. SHO(3,3;1,1,1)^(2)
  int eta() const;
  long xi() const;
};

// throws SpecError naming the violated constraint; returns a warning (possibly empty)
std::string validate(const AlgebraSpec& s);
Family grading_of(Family f);

// read-only view of a contiguous run of entries
struct Span {
  const Entry* b = nullptr;
  const Entry* e = nullptr;
  const Entry* begin() const { return b; }
  const Entry* end() const { return e; }
  bool empty() const { return b == e; }
  std::size_t size() const { return static_cast<std::size_t>(e - b); }
};

struct BlockKey {
  int z;
  int par;
  std::uint64_t w;
  auto operator<=>(const BlockKey&) const = default;
};

class Algebra;

// subalgebra generated by a set of basis elements, with each spanning vector
// recorded as a generator or as [generator, earlier vector]
struct Closure {
  struct Word {
    int gen;  // position in gens
    int src;  // earlier vector, -1 for the generator itself
  };
  const Algebra* L = nullptr;
  std::vector<std::uint32_t> gens;
  std::vector<SVec> vecs;  // algebra coordinates
  std::vector<Word> words;
  std::vector<Echelon> ech;  // per block, local coordinates

  explicit Closure(const Algebra& alg);
  bool add(const SVec& v, Word w);
  bool contains(const SVec& v) const;
  void add_generator(std::uint32_t s);
  void seed(const SVec& v);  // ideal closure: saturate under ad of the algebra's generators
  std::size_t dim() const { return vecs.size(); }
  SVec local(const SVec& v, int& block) const;

 private:
  void saturate(std::size_t from, const std::vector<std::uint32_t>& acting);
};

class Algebra {
 public:
  Algebra(AlgebraSpec spec, std::shared_ptr<const WSpace> W, std::vector<VectorField> basis_vectors,
          bool refine_weights = true);

  const AlgebraSpec& spec() const { return spec_; }
  const WSpace& W() const { return *W_; }
  std::shared_ptr<const WSpace> W_ptr() const { return W_; }
  const FieldCtx& F() const { return W_->F(); }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<VectorField>& basis() const { return basis_; }
  const VectorField& basis(std::size_t i) const { return basis_[i]; }
  int zdeg(std::size_t i) const { return zdeg_[i]; }
  int parity(std::size_t i) const { return par_[i]; }
  std::uint64_t wkey(std::size_t i) const { return wkey_[i]; }
  const std::vector<Res>& weight(std::size_t i) const { return weight_[i]; }
  const std::vector<VectorField>& torus() const { return torus_; }
  const std::vector<std::vector<Res>>& torus_coef() const { return tcoef_; }
  std::uint64_t wkey_of_W(std::uint32_t w) const;
  std::vector<Res> weight_of_W(std::uint32_t w) const;
  std::uint64_t wkey_of(const std::vector<Res>& wt) const;
  std::vector<Res> weight_add(const std::vector<Res>& a, const std::vector<Res>& b) const;
  const std::string& warning() const { return warning_; }
  void set_warning(std::string w) { warning_ = std::move(w); }

  std::int32_t owner(std::uint32_t w) const { return owner_[w]; }
  // coordinates of a W-vector; nullopt when it lies outside the algebra
  std::optional<SVec> coords(const VectorField& v) const;
  SVec coords_unchecked(const VectorField& v) const;
  // v minus its pivot-column part along the basis; zero exactly when v lies in the algebra
  VectorField normal_form(const VectorField& v) const;
  bool contains(const VectorField& v) const { return coords(v).has_value(); }
  VectorField to_W(const SVec& c) const;

  // blocks by (zdeg, parity, torus weight)
  const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
  const std::vector<BlockKey>& block_keys() const { return bkeys_; }
  int block_of(std::size_t i) const { return blk_[i]; }
  int local_of(std::size_t i) const { return loc_[i]; }
  int find_block(const BlockKey& k) const;
  std::pair<int, int> zrange() const;

  // [b_i, b_j] in algebra coordinates
  Span bracket(std::uint32_t i, std::uint32_t j) const;
  // single bracket without touching the row cache (cached row used when present)
  SVec bracket_direct(std::uint32_t i, std::uint32_t j) const;
  bool row_cached(std::uint32_t i) const { return !rows_.empty() && rows_[i] != nullptr; }
  void pin_row(std::uint32_t i) const;
  void release_rows() const;
  std::size_t cached_rows() const;
  // ad(b_i) applied to a coordinate vector
  SVec ad(std::uint32_t i, const SVec& v) const;
  SVec bracket_vec(const SVec& a, const SVec& b) const;

  const Closure& generation() const;
  std::size_t structure_nnz_budget = 60'000'000;

 private:
  struct Row {
    std::vector<std::uint32_t> off;
    std::vector<Entry> ent;
    bool pinned = false;
  };
  const Row& row(std::uint32_t i) const;

  AlgebraSpec spec_;
  std::shared_ptr<const WSpace> W_;
  std::vector<VectorField> basis_;
  std::vector<int> zdeg_, par_;
  std::vector<std::uint64_t> wkey_;
  std::vector<std::vector<Res>> weight_;
  std::vector<VectorField> torus_;
  std::vector<std::vector<Res>> tcoef_;
  std::vector<std::int32_t> owner_;
  std::vector<std::vector<std::uint32_t>> blocks_;
  std::vector<BlockKey> bkeys_;
  std::map<BlockKey, int> bindex_;
  std::vector<int> blk_, loc_;
  std::string warning_;

  mutable std::vector<std::unique_ptr<Row>> rows_;
  mutable std::size_t row_nnz_ = 0;
  mutable std::unique_ptr<Closure> gen_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

std::shared_ptr<const WSpace> make_ambient(const AlgebraSpec& s);

AlgebraPtr build(const AlgebraSpec& spec);
AlgebraPtr derived(const Algebra& h, Variant label);
AlgebraPtr build_from_vectors(const AlgebraSpec& spec, std::shared_ptr<const WSpace> W,
                              std::vector<VectorField> vectors);

// canonical reduced echelon basis of the span, blockwise in W coordinates
std::vector<VectorField> canonical_span(const WSpace& W, const std::vector<VectorField>& vectors);

// spanning sets of the individual constructions (before canonicalization)
std::vector<VectorField> span_W(const WSpace& W);
std::vector<VectorField> kernel_div(const WSpace& W, bool modulo_constants);
std::vector<VectorField> image_of(OpKind op, const WSpace& W, const std::vector<SuperPoly>& polys);
std::vector<VectorField> solve_bar_condition(const WSpace& W, Family fam);
std::vector<SuperPoly> kernel_div_lambda(const SuperSpace& O, Res lambda);
std::vector<VectorField> intersect_kernel_div(const WSpace& W, const std::vector<VectorField>& basis,
                                              bool modulo_constants);
std::vector<VectorField> intersect_pairwise(const WSpace& W, const std::vector<VectorField>& A,
                                            const std::vector<VectorField>& B);
std::vector<SuperPoly> all_monomials(const SuperSpace& O);

std::vector<VectorField> canonical_torus(const Algebra& h);

// inverse of a realization operator on a W-vector; nullopt when not in the image
class RealizationInverse {
 public:
  RealizationInverse(OpKind op, std::shared_ptr<const WSpace> W);
  std::optional<SuperPoly> preimage(const VectorField& v) const;
  OpKind op() const { return op_; }

 private:
  OpKind op_;
  std::shared_ptr<const WSpace> W_;
  struct BlockSolver {
    std::vector<std::uint32_t> monos;
    std::unique_ptr<Echelon> ech;
    std::map<std::uint32_t, std::uint32_t> cols;
  };
  mutable std::map<std::pair<int, int>, BlockSolver> cache_;
};

}  // namespace cartan
