#pragma once

#include "monrep/field.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monrep {

/// Dense row-major matrix over an exact field. Rows and columns may be zero;
/// a k^n -> k^m linear map is an m x n matrix acting on column vectors from
/// the left. All reductions are deterministic (leftmost pivot, first nonzero
/// row, no pivoting heuristics) so downstream certificates are reproducible.
template <ExactField F>
class Mat {
 public:
  using Elem = typename F::Elem;

  Mat(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

  static Mat identity(F field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
    return m;
  }

  /// Build from integer rows; convenient in tests and fixtures.
  static Mat from_rows(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Mat m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ragged initializer");
      std::size_t j = 0;
      for (std::int64_t v : row) m.at(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Elem& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    for (const Elem& x : a_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) return false;
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      if (!x.field_.eq(x.a_[i], y.a_[i])) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat operator+(const Mat& o) const {
    require_shape(o);
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
  }

  Mat operator-(const Mat& o) const {
    require_shape(o);
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
    return r;
  }

  Mat operator-() const {
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.neg(a_[i]);
    return r;
  }

  Mat scaled(const Elem& c) const {
    Mat r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.mul(c, a_[i]);
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem& x = at(i, k);
        if (field_.is_zero(x)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = field_.add(r.at(i, j), field_.mul(x, o.at(k, j)));
      }
    return r;
  }

  /// Copy of the rectangular block with upper-left (r0, c0).
  Mat block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_) throw std::invalid_argument("block out of range");
    Mat b(field_, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
      for (std::size_t j = 0; j < ncols; ++j) b.at(i, j) = at(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::invalid_argument("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
  }

  Mat col(std::size_t j) const { return block(0, j, rows_, 1); }
  Mat row(std::size_t i) const { return block(i, 0, 1, cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " [";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
  }

 private:
  void require_shape(const Mat& o) const {
    if (!same_shape(o)) throw std::invalid_argument("matrix shape mismatch");
  }

  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

template <ExactField F>
Mat<F> hstack(const std::vector<Mat<F>>& parts) {
  if (parts.empty()) throw std::invalid_argument("hstack of empty list");
  std::size_t rows = parts.front().rows(), cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    cols += p.cols();
  }
  Mat<F> r(parts.front().field(), rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    r.set_block(0, c0, p);
    c0 += p.cols();
  }
  return r;
}

template <ExactField F>
Mat<F> vstack(const std::vector<Mat<F>>& parts) {
  if (parts.empty()) throw std::invalid_argument("vstack of empty list");
  std::size_t cols = parts.front().cols(), rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack col mismatch");
    rows += p.rows();
  }
  Mat<F> r(parts.front().field(), rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    r.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return r;
}

/// Block-diagonal assembly; empty list not allowed (field would be unknown).
template <ExactField F>
Mat<F> block_diag(const std::vector<Mat<F>>& parts) {
  if (parts.empty()) throw std::invalid_argument("block_diag of empty list");
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) rows += p.rows(), cols += p.cols();
  Mat<F> r(parts.front().field(), rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    r.set_block(r0, c0, p);
    r0 += p.rows();
    c0 += p.cols();
  }
  return r;
}

template <ExactField F>
struct RrefResult {
  Mat<F> reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row, strictly increasing
};

/// Reduced row echelon form: leftmost pivot, first nonzero row below the
/// current one, pivots normalized to 1, eliminated above and below. The
/// result is the unique RREF, hence bit-reproducible.
template <ExactField F>
RrefResult<F> rref(const Mat<F>& m) {
  const F& f = m.field();
  Mat<F> a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = a.rows();
    for (std::size_t i = row; i < a.rows(); ++i)
      if (!f.is_zero(a.at(i, col))) {
        sel = i;
        break;
      }
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(row, j));
    typename F::Elem piv_inv = f.inv(a.at(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = f.mul(piv_inv, a.at(row, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      const typename F::Elem c = a.at(i, col);
      if (f.is_zero(c)) continue;
      for (std::size_t j = col; j < a.cols(); ++j)
        a.at(i, j) = f.sub(a.at(i, j), f.mul(c, a.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return RrefResult<F>{std::move(a), pivots.size(), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Mat<F>& m) {
  return rref(m).rank;
}

/// Basis of the null space {x : m x = 0} as matrix columns, one per free
/// column of the RREF, in ascending free-column order: column for free
/// coordinate c has 1 at c and -reduced[r][c] at the pivot coordinate of
/// each row r.
template <ExactField F>
Mat<F> kernel_basis(const Mat<F>& m) {
  const F& f = m.field();
  RrefResult<F> rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat<F> k(f, m.cols(), free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t c = free_cols[t];
    k.at(c, t) = f.one();
    for (std::size_t r = 0; r < rr.rank; ++r) k.at(rr.pivots[r], t) = f.neg(rr.reduced.at(r, c));
  }
  return k;
}

/// Solve a x = b columnwise. No solution iff rank([a|b]) > rank(a); in that
/// case returns nullopt. Otherwise the unique deterministic representative
/// with all free variables set to zero.
template <ExactField F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const F& f = a.field();
  RrefResult<F> rr = rref(hstack<F>({a, b}));
  // any pivot beyond the a-columns witnesses an inconsistent column of b
  for (std::size_t p : rr.pivots)
    if (p >= a.cols()) return std::nullopt;
  Mat<F> x(f, a.cols(), b.cols());
  for (std::size_t r = 0; r < rr.rank; ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(rr.pivots[r], j) = rr.reduced.at(r, a.cols() + j);
  return x;
}

template <ExactField F>
bool is_injective_map(const Mat<F>& a) {
  return rank(a) == a.cols();
}

/// Echelon basis of the column space of a, one basis vector per matrix
/// column, expressed as the nonzero rows of rref(a^T) transposed back to
/// columns. Deterministic; pivot coordinates strictly increase.
template <ExactField F>
struct ColumnSpace {
  Mat<F> basis;                       // m x r, columns form the echelon basis
  std::vector<std::size_t> pivots;    // leading coordinate of each basis column
};

template <ExactField F>
ColumnSpace<F> column_space(const Mat<F>& a) {
  RrefResult<F> rr = rref(a.transpose());
  Mat<F> basis(a.field(), a.rows(), rr.rank);
  for (std::size_t r = 0; r < rr.rank; ++r)
    for (std::size_t c = 0; c < a.rows(); ++c) basis.at(c, r) = rr.reduced.at(r, c);
  return ColumnSpace<F>{std::move(basis), rr.pivots};
}

/// Cokernel projection of a: k^n -> k^m. Returns proj: k^m -> k^q,
/// q = m - rank(a), with proj * a = 0 and rank(proj) = q. Rows reduce a
/// vector modulo the echelon basis of im(a) and read off the coordinates at
/// the canonical complement (non-pivot) positions, so proj restricted to the
/// complement coordinates is the identity.
template <ExactField F>
Mat<F> cokernel_proj(const Mat<F>& a) {
  const F& f = a.field();
  ColumnSpace<F> cs = column_space(a);
  const std::size_t m = a.rows(), r = cs.pivots.size(), q = m - r;
  std::vector<bool> is_pivot(m, false);
  for (std::size_t p : cs.pivots) is_pivot[p] = true;
  Mat<F> proj(f, q, m);
  std::size_t t = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    proj.at(t, c) = f.one();
    for (std::size_t i = 0; i < r; ++i)
      proj.at(t, cs.pivots[i]) = f.neg(cs.basis.at(c, i));
    ++t;
  }
  return proj;
}

/// Canonical section of cokernel_proj(a): columns are the unit vectors at
/// the complement coordinates, so cokernel_proj(a) * s = identity and
/// [a | s] has full row rank (the complement is a genuine complement).
template <ExactField F>
Mat<F> cokernel_section(const Mat<F>& a) {
  const F& f = a.field();
  ColumnSpace<F> cs = column_space(a);
  const std::size_t m = a.rows(), r = cs.pivots.size(), q = m - r;
  std::vector<bool> is_pivot(m, false);
  for (std::size_t p : cs.pivots) is_pivot[p] = true;
  Mat<F> s(f, m, q);
  std::size_t t = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    s.at(c, t++) = f.one();
  }
  return s;
}

namespace detail {

/// Row-major flattening of a list of matrices into one column vector.
template <ExactField F>
Mat<F> vec_of(const F& f, const std::vector<Mat<F>>& comps) {
  std::size_t len = 0;
  for (const Mat<F>& c : comps) len += c.rows() * c.cols();
  Mat<F> v(f, len, 1);
  std::size_t r = 0;
  for (const Mat<F>& c : comps)
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) v.at(r++, 0) = c.at(i, j);
  return v;
}

}  // namespace detail

}  // namespace monrep
