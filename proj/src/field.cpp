#include "cartan/field.hpp"

#include <algorithm>
#include <string>

namespace cartan {

bool FieldCtx::is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p) : p_(p) {
  if (p <= 3 || !is_prime(p)) throw std::invalid_argument("field modulus must be a prime > 3, got " + std::to_string(p));
  if (p >= (1u << 16)) throw std::invalid_argument("field modulus must be below 2^16");
  inv_.assign(p, 0);
  for (std::uint32_t a = 1; a < p; ++a) inv_[a] = pow(a, p - 2);
}

Res FieldCtx::inv(Res a) const {
  if (a == 0 || a >= p_) throw std::domain_error("inverse of zero");
  return inv_[a];
}

Res FieldCtx::pow(Res a, std::uint64_t e) const {
  Res r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

MatrixFp MatrixFp::from_dense(const FieldCtx& F, const std::vector<std::vector<long long>>& a) {
  std::size_t nc = a.empty() ? 0 : a.front().size();
  MatrixFp M(0, nc);
  for (const auto& r : a) {
    if (r.size() != nc) throw std::invalid_argument("ragged matrix");
    SVec row;
    for (std::size_t c = 0; c < nc; ++c) {
      Res v = F.from_int(r[c]);
      if (v) row.push_back({static_cast<std::uint32_t>(c), v});
    }
    M.add_row(std::move(row));
  }
  return M;
}

void MatrixFp::set(const FieldCtx& F, std::size_t r, std::size_t c, long long v) {
  if (r >= rows_.size() || c >= ncols_) throw std::out_of_range("matrix index");
  Res x = F.from_int(v);
  auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.i < k; });
  if (it != row.end() && it->i == c) {
    if (x) it->v = x;
    else row.erase(it);
  } else if (x) {
    row.insert(it, {static_cast<std::uint32_t>(c), x});
  }
}

std::vector<Res> MatrixFp::mul(const FieldCtx& F, const std::vector<Res>& v) const {
  if (v.size() != ncols_) throw std::invalid_argument("dimension mismatch");
  std::vector<Res> out(rows_.size(), 0);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) out[r] = F.add(out[r], F.mul(e.v, v[e.i]));
  return out;
}

void Accum::reset(std::size_t n) {
  if (val_.size() < n) {
    val_.assign(n, 0);
    mark_.assign(n, 0);
    touched_.clear();
    return;
  }
  for (auto i : touched_) mark_[i] = 0;
  touched_.clear();
}

SVec Accum::take() {
  std::sort(touched_.begin(), touched_.end());
  SVec out;
  out.reserve(touched_.size());
  for (auto i : touched_) {
    if (val_[i]) out.push_back({i, val_[i]});
    mark_[i] = 0;
  }
  touched_.clear();
  return out;
}

Accum& scratch(int slot) {
  thread_local Accum acc[8];
  return acc[slot];
}

SVec sv_axpy(const FieldCtx& F, const SVec& a, Res c, const SVec& b) {
  SVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].i < b[j].i)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].i < a[i].i) {
      Res v = F.mul(c, b[j].v);
      if (v) out.push_back({b[j].i, v});
      ++j;
    } else {
      Res v = F.add(a[i].v, F.mul(c, b[j].v));
      if (v) out.push_back({a[i].i, v});
      ++i;
      ++j;
    }
  }
  return out;
}

SVec sv_add(const FieldCtx& F, const SVec& a, const SVec& b) { return sv_axpy(F, a, 1, b); }

SVec sv_scale(const FieldCtx& F, const SVec& a, Res c) {
  if (c == 0) return {};
  SVec out(a);
  for (auto& e : out) e.v = F.mul(e.v, c);
  return out;
}

Res sv_get(const SVec& a, std::uint32_t i) {
  auto it = std::lower_bound(a.begin(), a.end(), i, [](const Entry& e, std::uint32_t k) { return e.i < k; });
  return (it != a.end() && it->i == i) ? it->v : 0;
}

SVec sv_from_dense(const std::vector<Res>& d) {
  SVec out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) out.push_back({static_cast<std::uint32_t>(i), d[i]});
  return out;
}

std::vector<Res> sv_to_dense(const SVec& a, std::size_t n) {
  std::vector<Res> d(n, 0);
  for (const auto& e : a) d.at(e.i) = e.v;
  return d;
}

SVec Echelon::reduce(const SVec& v) const {
  bool hit = false;
  for (const auto& e : v)
    if (owner_[e.i] >= 0) {
      hit = true;
      break;
    }
  if (!hit) return v;
  Accum& acc = scratch(7);
  acc.reset(ncols_);
  for (const auto& e : v) acc.add(*F_, e.i, e.v);
  for (const auto& e : v) {
    std::int32_t r = owner_[e.i];
    if (r >= 0) acc.axpy(*F_, F_->neg(e.v), rows_[r]);
  }
  return acc.take();
}

std::optional<SVec> Echelon::solve(const SVec& v) const {
  if (!reduce(v).empty()) return std::nullopt;
  SVec out;
  for (const auto& e : v) {
    std::int32_t r = owner_[e.i];
    if (r >= 0) out = sv_axpy(*F_, out, e.v, tags_[r]);
  }
  return out;
}

bool Echelon::insert(const SVec& v, SVec tag) {
  if (track_ && tag.empty()) tag = {{static_cast<std::uint32_t>(inserted_), 1}};
  ++inserted_;
  SVec r;
  SVec t;
  {
    bool hit = false;
    for (const auto& e : v)
      if (owner_[e.i] >= 0) {
        hit = true;
        break;
      }
    if (!hit) {
      r = v;
      t = std::move(tag);
    } else {
      Accum& acc = scratch(7);
      acc.reset(ncols_);
      for (const auto& e : v) acc.add(*F_, e.i, e.v);
      t = std::move(tag);
      for (const auto& e : v) {
        std::int32_t o = owner_[e.i];
        if (o >= 0) {
          acc.axpy(*F_, F_->neg(e.v), rows_[o]);
          if (track_) t = sv_axpy(*F_, t, F_->neg(e.v), tags_[o]);
        }
      }
      r = acc.take();
    }
  }
  if (r.empty()) return false;
  Res s = F_->inv(r.front().v);
  if (s != 1) {
    for (auto& e : r) e.v = F_->mul(e.v, s);
    if (track_)
      for (auto& e : t) e.v = F_->mul(e.v, s);
  }
  std::uint32_t c = r.front().i;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Res x = sv_get(rows_[k], c);
    if (x) {
      rows_[k] = sv_axpy(*F_, rows_[k], F_->neg(x), r);
      if (track_) tags_[k] = sv_axpy(*F_, tags_[k], F_->neg(x), t);
    }
  }
  owner_[c] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(r));
  if (track_) tags_.push_back(std::move(t));
  return true;
}

std::vector<SVec> Echelon::sorted_rows() const {
  std::vector<SVec> out(rows_);
  std::sort(out.begin(), out.end(), [](const SVec& a, const SVec& b) { return a.front().i < b.front().i; });
  return out;
}

std::vector<SVec> Echelon::nullspace() const {
  std::vector<std::vector<Entry>> bycol(ncols_);
  for (const auto& row : rows_) {
    std::uint32_t pc = row.front().i;
    for (std::size_t k = 1; k < row.size(); ++k) bycol[row[k].i].push_back({pc, F_->neg(row[k].v)});
  }
  std::vector<SVec> out;
  for (std::uint32_t f = 0; f < ncols_; ++f) {
    if (owner_[f] >= 0) continue;
    SVec v = bycol[f];
    v.push_back({f, 1});
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.i < b.i; });
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SVec> nullspace(const FieldCtx& F, const MatrixFp& A) {
  Echelon E(F, A.ncols());
  for (const auto& r : A.rows()) E.insert(r);
  return E.nullspace();
}

std::size_t rank(const FieldCtx& F, const MatrixFp& A) {
  Echelon E(F, A.ncols());
  for (const auto& r : A.rows()) E.insert(r);
  return E.rank();
}

std::optional<std::vector<Res>> in_span(const FieldCtx& F, const std::vector<std::vector<Res>>& basis,
                                        const std::vector<Res>& v) {
  for (const auto& b : basis)
    if (b.size() != v.size()) throw std::invalid_argument("in_span: dimension mismatch");
  Echelon E(F, v.size(), true);
  for (const auto& b : basis) E.insert(sv_from_dense(b));
  auto c = E.solve(sv_from_dense(v));
  if (!c) return std::nullopt;
  return sv_to_dense(*c, basis.size());
}

void DenseEchelon::reduce_in_place(std::vector<Res>& v) const {
  const std::uint32_t p = F_->p();
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Res x = v[piv_[k]];
    if (!x) continue;
    Res a = p - x;
    const auto& row = rows_[k];
    for (std::size_t c = piv_[k]; c < ncols_; ++c)
      if (row[c]) v[c] = static_cast<Res>((v[c] + static_cast<std::uint64_t>(a) * row[c]) % p);
  }
}

bool DenseEchelon::insert(std::vector<Res> v) {
  if (v.size() != ncols_) throw std::invalid_argument("dense row width");
  reduce_in_place(v);
  std::size_t c = 0;
  while (c < ncols_ && v[c] == 0) ++c;
  if (c == ncols_) return false;
  Res s = F_->inv(v[c]);
  for (std::size_t j = c; j < ncols_; ++j) v[j] = F_->mul(v[j], s);
  const std::uint32_t p = F_->p();
  for (auto& row : rows_) {
    Res x = row[c];
    if (!x) continue;
    Res a = p - x;
    for (std::size_t j = c; j < ncols_; ++j)
      if (v[j]) row[j] = static_cast<Res>((row[j] + static_cast<std::uint64_t>(a) * v[j]) % p);
  }
  owner_[c] = static_cast<std::int32_t>(rows_.size());
  piv_.push_back(c);
  rows_.push_back(std::move(v));
  return true;
}

std::vector<std::vector<Res>> DenseEchelon::nullspace() const {
  std::vector<std::vector<Res>> out;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (owner_[f] >= 0) continue;
    std::vector<Res> v(ncols_, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (rows_[k][f]) v[piv_[k]] = F_->neg(rows_[k][f]);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::vector<std::uint32_t> support_columns(const std::vector<SVec>& vecs) {
  std::vector<std::uint32_t> cols;
  for (const auto& v : vecs)
    for (const auto& e : v) cols.push_back(e.i);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

SVec to_local(const SVec& v, const std::vector<std::uint32_t>& cols) {
  SVec out;
  out.reserve(v.size());
  for (const auto& e : v) {
    auto it = std::lower_bound(cols.begin(), cols.end(), e.i);
    out.push_back({static_cast<std::uint32_t>(it - cols.begin()), e.v});
  }
  return out;
}

SVec to_global(const SVec& v, const std::vector<std::uint32_t>& cols) {
  SVec out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({cols[e.i], e.v});
  return out;
}

}  // namespace

std::vector<SVec> rref_span(const FieldCtx& F, const std::vector<SVec>& vecs) {
  auto cols = support_columns(vecs);
  Echelon E(F, cols.size());
  for (const auto& v : vecs) E.insert(to_local(v, cols));
  std::vector<SVec> out;
  for (const auto& r : E.sorted_rows()) out.push_back(to_global(r, cols));
  return out;
}

std::vector<SVec> kernel_of_images(const FieldCtx& F, const std::vector<SVec>& images) {
  auto rowsids = support_columns(images);
  MatrixFp A(rowsids.size(), images.size());
  std::vector<std::vector<Entry>> rows(rowsids.size());
  for (std::uint32_t k = 0; k < images.size(); ++k)
    for (const auto& e : images[k]) {
      auto it = std::lower_bound(rowsids.begin(), rowsids.end(), e.i);
      rows[it - rowsids.begin()].push_back({k, e.v});
    }
  for (std::size_t r = 0; r < rows.size(); ++r) A.rows()[r] = std::move(rows[r]);
  return nullspace(F, A);
}

}  // namespace cartan
