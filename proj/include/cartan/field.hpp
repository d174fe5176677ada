#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cartan {

using Res = std::uint32_t;

struct Entry {
  std::uint32_t i;
  Res v;
  bool operator==(const Entry&) const = default;
};

// sparse vector, strictly increasing indices, no zero values
using SVec = std::vector<Entry>;

class FieldCtx {
 public:
  explicit FieldCtx(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  Res add(Res a, Res b) const {
    Res s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Res sub(Res a, Res b) const { return a >= b ? a - b : a + p_ - b; }
  Res neg(Res a) const { return a == 0 ? 0 : p_ - a; }
  Res mul(Res a, Res b) const {
    return static_cast<Res>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Res inv(Res a) const;
  Res from_int(long long x) const {
    long long r = x % static_cast<long long>(p_);
    return static_cast<Res>(r < 0 ? r + p_ : r);
  }
  Res pow(Res a, std::uint64_t e) const;
  Res sign(bool negative) const { return negative ? p_ - 1 : 1; }

  static bool is_prime(std::uint32_t p);

 private:
  std::uint32_t p_;
  std::vector<Res> inv_;
};

class MatrixFp {
 public:
  MatrixFp(std::size_t nrows, std::size_t ncols) : ncols_(ncols), rows_(nrows) {}
  static MatrixFp from_dense(const FieldCtx& F, const std::vector<std::vector<long long>>& a);

  std::size_t nrows() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  void set(const FieldCtx& F, std::size_t r, std::size_t c, long long v);
  void add_row(SVec row) { rows_.push_back(std::move(row)); }
  const SVec& row(std::size_t r) const { return rows_[r]; }
  std::vector<SVec>& rows() { return rows_; }
  const std::vector<SVec>& rows() const { return rows_; }
  std::vector<Res> mul(const FieldCtx& F, const std::vector<Res>& v) const;

 private:
  std::size_t ncols_;
  std::vector<SVec> rows_;
};

// scratch accumulator over a fixed index range
class Accum {
 public:
  void reset(std::size_t n);
  void add(const FieldCtx& F, std::uint32_t i, Res v) {
    if (v == 0) return;
    if (!mark_[i]) {
      mark_[i] = 1;
      val_[i] = v;
      touched_.push_back(i);
    } else {
      val_[i] = F.add(val_[i], v);
    }
  }
  void axpy(const FieldCtx& F, Res a, const SVec& x) {
    if (a == 0) return;
    for (const auto& e : x) add(F, e.i, F.mul(a, e.v));
  }
  Res get(std::uint32_t i) const { return mark_[i] ? val_[i] : 0; }
  SVec take();
  std::size_t size() const { return val_.size(); }

 private:
  std::vector<Res> val_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
};

Accum& scratch(int slot = 0);

SVec sv_add(const FieldCtx& F, const SVec& a, const SVec& b);
SVec sv_axpy(const FieldCtx& F, const SVec& a, Res c, const SVec& b);  // a + c*b
SVec sv_scale(const FieldCtx& F, const SVec& a, Res c);
Res sv_get(const SVec& a, std::uint32_t i);
SVec sv_from_dense(const std::vector<Res>& d);
std::vector<Res> sv_to_dense(const SVec& a, std::size_t n);

// incremental reduced row echelon form over sparse rows;
// optional tags record each row as a combination of inserted vectors
class Echelon {
 public:
  Echelon(const FieldCtx& F, std::size_t ncols, bool track = false)
      : F_(&F), ncols_(ncols), track_(track), owner_(ncols, -1) {}

  // returns true when v was independent
  bool insert(const SVec& v, SVec tag = {});
  SVec reduce(const SVec& v) const;
  // coordinates along inserted vectors (needs tracking), nullopt if v not in span
  std::optional<SVec> solve(const SVec& v) const;
  bool contains(const SVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  std::size_t inserted() const { return inserted_; }
  const std::vector<SVec>& rows() const { return rows_; }
  const std::vector<SVec>& tags() const { return tags_; }
  std::int32_t owner(std::uint32_t col) const { return owner_[col]; }
  std::uint32_t pivot(std::size_t r) const { return rows_[r].front().i; }
  // rows sorted by pivot column
  std::vector<SVec> sorted_rows() const;
  std::vector<SVec> nullspace() const;

 private:
  const FieldCtx* F_;
  std::size_t ncols_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<SVec> rows_;
  std::vector<SVec> tags_;
  std::vector<std::int32_t> owner_;
};

std::vector<SVec> nullspace(const FieldCtx& F, const MatrixFp& A);
// nullspace of the linear map sending the k-th unit vector to images[k]
std::vector<SVec> kernel_of_images(const FieldCtx& F, const std::vector<SVec>& images);
// reduced echelon basis of a span, sorted by pivot
std::vector<SVec> rref_span(const FieldCtx& F, const std::vector<SVec>& vecs);
std::size_t rank(const FieldCtx& F, const MatrixFp& A);
std::optional<std::vector<Res>> in_span(const FieldCtx& F, const std::vector<std::vector<Res>>& basis,
                                        const std::vector<Res>& v);

// dense rows of fixed width, used by the derivation solver
class DenseEchelon {
 public:
  DenseEchelon(const FieldCtx& F, std::size_t ncols) : F_(&F), ncols_(ncols), owner_(ncols, -1) {}
  bool insert(std::vector<Res> v);
  void reduce_in_place(std::vector<Res>& v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  std::vector<std::vector<Res>> nullspace() const;
  std::int32_t owner(std::size_t c) const { return owner_[c]; }

 private:
  const FieldCtx* F_;
  std::size_t ncols_;
  std::vector<std::vector<Res>> rows_;
  std::vector<std::size_t> piv_;
  std::vector<std::int32_t> owner_;
};

}  // namespace cartan
