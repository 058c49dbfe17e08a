#pragma once

#include "monrep/certificate.hpp"
#include "monrep/mat.hpp"
#include "monrep/quiver.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monrep {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFiniteDimensional : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class AlgebraValidationError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

template <ExactField F>
struct ModuleCache;  // defined with the module layer

/// Finite-dimensional associative unital algebra given by structure
/// constants, together with a complete set of primitive orthogonal
/// idempotents and a basis of its Jacobson radical. Elements are coordinate
/// columns; multiplication data is cached as left/right regular
/// representation matrices. Immutable after construction; always shared via
/// AlgebraPtr.
template <ExactField F>
class Algebra {
 public:
  using Vec = Mat<F>;  // dim x 1 coordinate column

  Algebra(F field, std::size_t dim, std::vector<std::string> labels,
          std::vector<std::vector<Vec>> table, Vec unit, std::vector<Vec> idempotents,
          std::vector<Vec> radical, std::vector<Vec> gens, std::string id)
      : field_(std::move(field)),
        dim_(dim),
        labels_(std::move(labels)),
        unit_(std::move(unit)),
        idempotents_(std::move(idempotents)),
        radical_(std::move(radical)),
        gens_(std::move(gens)),
        id_(std::move(id)) {
    if (labels_.size() != dim_) throw AlgebraError("label count mismatch");
    if (table.size() != dim_) throw AlgebraError("multiplication table shape mismatch");
    left_.assign(dim_, Mat<F>(field_, dim_, dim_));
    right_.assign(dim_, Mat<F>(field_, dim_, dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (table[i].size() != dim_) throw AlgebraError("multiplication table shape mismatch");
      for (std::size_t j = 0; j < dim_; ++j) {
        const Vec& c = table[i][j];
        if (c.rows() != dim_ || c.cols() != 1) throw AlgebraError("structure constant shape");
        for (std::size_t t = 0; t < dim_; ++t) {
          left_[i].at(t, j) = c.at(t, 0);
          right_[j].at(t, i) = c.at(t, 0);
        }
      }
    }
    if (gens_.empty())
      for (std::size_t i = 0; i < dim_; ++i) gens_.push_back(basis_vec(i));
  }

  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& id() const { return id_; }

  Vec basis_vec(std::size_t i) const {
    Vec v(field_, dim_, 1);
    v.at(i, 0) = field_.one();
    return v;
  }

  const Vec& unit() const { return unit_; }
  std::size_t num_idempotents() const { return idempotents_.size(); }
  const Vec& idempotent(std::size_t i) const { return idempotents_.at(i); }
  const std::vector<Vec>& idempotents() const { return idempotents_; }
  const std::vector<Vec>& radical_basis() const { return radical_; }
  const std::vector<Vec>& gens() const { return gens_; }

  /// Structure constants as a column: coordinates of b_i * b_j.
  Vec table(std::size_t i, std::size_t j) const { return left_[i].col(j); }

  const Mat<F>& left_mult_basis(std::size_t i) const { return left_[i]; }
  const Mat<F>& right_mult_basis(std::size_t j) const { return right_[j]; }

  Mat<F> left_mult(const Vec& x) const { return combine(left_, x); }
  Mat<F> right_mult(const Vec& x) const { return combine(right_, x); }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec r(field_, dim_, 1);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(x.at(i, 0))) continue;
      Vec part = left_[i] * y;
      for (std::size_t t = 0; t < dim_; ++t)
        r.at(t, 0) = field_.add(r.at(t, 0), field_.mul(x.at(i, 0), part.at(t, 0)));
    }
    return r;
  }

  Mat<F> radical_cols() const {
    Mat<F> r(field_, dim_, radical_.size());
    for (std::size_t k = 0; k < radical_.size(); ++k) r.set_block(0, k, radical_[k]);
    return r;
  }

  Mat<F> idempotent_cols() const {
    Mat<F> r(field_, dim_, idempotents_.size());
    for (std::size_t k = 0; k < idempotents_.size(); ++k) r.set_block(0, k, idempotents_[k]);
    return r;
  }

 private:
  Mat<F> combine(const std::vector<Mat<F>>& ms, const Vec& x) const {
    Mat<F> r(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(x.at(i, 0))) continue;
      r = r + ms[i].scaled(x.at(i, 0));
    }
    return r;
  }

  F field_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<Mat<F>> left_, right_;
  Vec unit_{field_, 0, 0};
  std::vector<Vec> idempotents_;
  std::vector<Vec> radical_;
  std::vector<Vec> gens_;
  std::string id_;

  mutable std::once_flag mcache_once_;
  mutable std::shared_ptr<const ModuleCache<F>> mcache_;

  template <ExactField G>
  friend const ModuleCache<G>& module_cache(const std::shared_ptr<const Algebra<G>>&);
};

template <ExactField F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

/// Check every algebra law and return the certificate; throws
/// AlgebraValidationError naming the first violated law. Semisimplicity of
/// A/J and primitivity of the idempotents are the caller's responsibility
/// for raw structure-constant input (downstream code guards at runtime).
template <ExactField F>
Certificate<F> validate_algebra(const Algebra<F>& a) {
  const F& f = a.field();
  const std::size_t d = a.dim();
  Certificate<F> cert;
  cert.kind = "algebra_laws";

  // unit laws as regular-representation identities
  cert.add_product_eq("left unit law", {a.left_mult(a.unit())}, {Mat<F>::identity(f, d)});
  cert.add_product_eq("right unit law", {a.right_mult(a.unit())}, {Mat<F>::identity(f, d)});

  // associativity, aggregated: vstack_i(L_i) * hstack_j(L_j) == vstack_i hstack_j L_{b_i b_j}
  {
    std::vector<Mat<F>> lrows, krows;
    std::vector<Mat<F>> hl;
    for (std::size_t j = 0; j < d; ++j) hl.push_back(a.left_mult_basis(j));
    Mat<F> HL = d ? hstack(hl) : Mat<F>(f, 0, 0);
    for (std::size_t i = 0; i < d; ++i) {
      lrows.push_back(a.left_mult_basis(i));
      std::vector<Mat<F>> ks;
      for (std::size_t j = 0; j < d; ++j) ks.push_back(a.left_mult(a.table(i, j)));
      krows.push_back(hstack(ks));
    }
    if (d) cert.add_product_eq("associativity", {vstack(lrows), HL}, {vstack(krows)});
  }

  // idempotent laws
  {
    Mat<F> E = a.idempotent_cols();
    for (std::size_t i = 0; i < a.num_idempotents(); ++i) {
      Mat<F> sel(f, a.num_idempotents(), a.num_idempotents());
      sel.at(i, i) = f.one();
      cert.add_product_eq("idempotent orthogonality e" + std::to_string(i + 1),
                          {a.left_mult(a.idempotent(i)), E}, {E, sel});
    }
    Mat<F> ones(f, a.num_idempotents(), 1);
    for (std::size_t i = 0; i < a.num_idempotents(); ++i) ones.at(i, 0) = f.one();
    cert.add_product_eq("idempotent completeness", {E, ones}, {a.unit()});
  }

  // radical: two-sided ideal with vanishing power chain
  {
    Mat<F> R = a.radical_cols();
    std::vector<Mat<F>> closure_parts{R};
    std::vector<Mat<F>> mults;
    for (std::size_t i = 0; i < d; ++i) {
      closure_parts.push_back(a.left_mult_basis(i) * R);
      closure_parts.push_back(a.right_mult_basis(i) * R);
    }
    cert.add_rank_eq("radical two-sided ideal",
                     R.cols() ? hstack(closure_parts) : Mat<F>(f, d, 0),
                     static_cast<std::int64_t>(rank(R)));
    for (const auto& r : a.radical_basis()) mults.push_back(a.left_mult(r));
    cert.add_closure("radical nilpotent", R, mults, 0, false,
                     static_cast<std::int64_t>(d) + 1);
  }

  // generators generate (nonempty products of gens span A)
  {
    std::vector<Mat<F>> gcols;
    std::vector<Mat<F>> mults;
    for (const auto& g : a.gens()) {
      gcols.push_back(g);
      mults.push_back(a.left_mult(g));
    }
    cert.add_closure("generators generate", hstack(gcols), mults,
                     static_cast<std::int64_t>(d), true, static_cast<std::int64_t>(d) + 1);
  }

  std::string bad;
  if (!verify(cert, &bad)) throw AlgebraValidationError("algebra law violated: " + bad);
  cert.verified = true;
  return cert;
}

namespace detail {

template <ExactField F>
typename Algebra<F>::Vec unit_coord(const F& f, std::size_t dim, std::size_t i) {
  Mat<F> v(f, dim, 1);
  v.at(i, 0) = f.one();
  return v;
}

inline std::string path_label(const Quiver& q, const Path& p) {
  if (p.length() == 0) return "e" + std::to_string(p.start);
  std::string s;
  for (std::size_t t = p.arrows.size(); t-- > 0;) s += "a" + std::to_string(p.arrows[t] + 1);
  return s;
}

}  // namespace detail

/// Path algebra kQ of an acyclic quiver. Basis: the paths in canonical order
/// (length, then lexicographic); p * q is concatenation when s(p) = e(q)
/// ("first q, then p") and zero otherwise. Trivial paths are the primitive
/// idempotents; paths of positive length span the radical; generators are the
/// trivial paths and the arrows.
template <ExactField F>
AlgebraPtr<F> path_algebra(const Quiver& q, const F& field, std::string id = "kQ") {
  if (!q.is_acyclic()) throw NotFiniteDimensional("path algebra of a quiver with a cycle");
  const auto& paths = q.all_paths();
  const std::size_t d = paths.size();
  std::vector<std::string> labels;
  for (const Path& p : paths) labels.push_back(detail::path_label(q, p));
  std::vector<std::vector<Mat<F>>> table(d, std::vector<Mat<F>>(d, Mat<F>(field, d, 1)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (paths[i].start == paths[j].end) {
        std::size_t t = q.path_index(q.compose(paths[i], paths[j]));
        table[i][j].at(t, 0) = field.one();
      }
  Mat<F> unit(field, d, 1);
  std::vector<Mat<F>> idem, rad, gens;
  for (std::size_t i = 0; i < d; ++i) {
    if (paths[i].length() == 0) {
      unit.at(i, 0) = field.one();
      idem.push_back(detail::unit_coord(field, d, i));
      gens.push_back(detail::unit_coord(field, d, i));
    } else {
      rad.push_back(detail::unit_coord(field, d, i));
    }
    if (paths[i].length() == 1) gens.push_back(detail::unit_coord(field, d, i));
  }
  return std::make_shared<Algebra<F>>(field, d, std::move(labels), std::move(table),
                                      std::move(unit), std::move(idem), std::move(rad),
                                      std::move(gens), std::move(id));
}

/// Monomial quotient kQ/(forbidden paths). The quiver may contain cycles;
/// each forbidden path is an arrow-index sequence (applied first to last) of
/// length >= 2. Basis: walks containing no forbidden factor, enumerated by
/// length. Finite-dimensionality is decided by a pumping bound: if a
/// surviving walk reaches length (#walks of length r-1) + r, where r is the
/// longest forbidden length, some factor-automaton state repeats and the walk
/// can be pumped forever.
template <ExactField F>
AlgebraPtr<F> monomial_quotient(const Quiver& q, const std::vector<std::vector<std::size_t>>& forbidden,
                                const F& field, std::string id = "kQ/I") {
  struct Walk {
    std::size_t start, end;
    std::vector<std::size_t> arrows;
  };
  std::size_t r = 2;
  for (const auto& fpath : forbidden) {
    if (fpath.size() < 2) throw AlgebraError("forbidden paths must have length >= 2");
    for (std::size_t t = 0; t + 1 < fpath.size(); ++t)
      if (q.arrow(fpath[t]).e != q.arrow(fpath[t + 1]).s)
        throw AlgebraError("forbidden path is not composable");
    r = std::max(r, fpath.size());
  }
  auto contains_factor = [&](const std::vector<std::size_t>& arrows) {
    for (const auto& fpath : forbidden) {
      if (fpath.size() > arrows.size()) continue;
      for (std::size_t off = 0; off + fpath.size() <= arrows.size(); ++off) {
        bool hit = true;
        for (std::size_t t = 0; t < fpath.size() && hit; ++t) hit = arrows[off + t] == fpath[t];
        if (hit) return true;
      }
    }
    return false;
  };
  // pumping cap: number of walks of length exactly r-1, plus r
  std::uint64_t walks_rm1 = 0;
  {
    std::vector<std::uint64_t> cnt(q.num_vertices() + 1, 1);  // walks of length L ending at v
    for (std::size_t L = 1; L + 1 <= r; ++L) {
      std::vector<std::uint64_t> nxt(q.num_vertices() + 1, 0);
      for (const Arrow& a : q.arrows()) nxt[a.e] += cnt[a.s];
      cnt = nxt;
    }
    for (std::size_t v = 1; v <= q.num_vertices(); ++v) walks_rm1 += cnt[v];
  }
  const std::size_t cap = static_cast<std::size_t>(walks_rm1) + r;

  std::vector<Walk> basis;
  std::vector<Walk> frontier;
  for (std::size_t v = 1; v <= q.num_vertices(); ++v) frontier.push_back(Walk{v, v, {}});
  basis = frontier;
  for (std::size_t len = 1; !frontier.empty(); ++len) {
    std::vector<Walk> next;
    for (const Walk& w : frontier)
      for (std::size_t k = 0; k < q.arrows().size(); ++k)
        if (q.arrow(k).s == w.end) {
          Walk x = w;
          x.arrows.push_back(k);
          x.end = q.arrow(k).e;
          if (!contains_factor(x.arrows)) next.push_back(std::move(x));
        }
    if (!next.empty() && len >= cap)
      throw NotFiniteDimensional("monomial quotient is infinite dimensional");
    basis.insert(basis.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(basis.begin(), basis.end(), [&](const Walk& a, const Walk& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    auto vs = [&](const Walk& w) {
      std::vector<std::size_t> seq{w.start};
      for (std::size_t k : w.arrows) seq.push_back(q.arrow(k).e);
      return seq;
    };
    auto va = vs(a), vb = vs(b);
    if (va != vb) return va < vb;
    return a.arrows < b.arrows;
  });

  const std::size_t d = basis.size();
  auto find_walk = [&](std::size_t start, const std::vector<std::size_t>& arrows) -> std::size_t {
    for (std::size_t i = 0; i < d; ++i)
      if (basis[i].start == start && basis[i].arrows == arrows) return i;
    throw AlgebraError("internal: surviving walk missing from basis");
  };
  std::vector<std::string> labels;
  for (const Walk& w : basis)
    labels.push_back(detail::path_label(q, Path{w.start, w.end, w.arrows}));
  std::vector<std::vector<Mat<F>>> table(d, std::vector<Mat<F>>(d, Mat<F>(field, d, 1)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (basis[i].start == basis[j].end) {
        std::vector<std::size_t> cat = basis[j].arrows;
        cat.insert(cat.end(), basis[i].arrows.begin(), basis[i].arrows.end());
        if (!contains_factor(cat)) table[i][j].at(find_walk(basis[j].start, cat), 0) = field.one();
      }
  Mat<F> unit(field, d, 1);
  std::vector<Mat<F>> idem, rad, gens;
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i].arrows.empty()) {
      unit.at(i, 0) = field.one();
      idem.push_back(detail::unit_coord(field, d, i));
      gens.push_back(detail::unit_coord(field, d, i));
    } else {
      rad.push_back(detail::unit_coord(field, d, i));
    }
    if (basis[i].arrows.size() == 1) gens.push_back(detail::unit_coord(field, d, i));
  }
  return std::make_shared<Algebra<F>>(field, d, std::move(labels), std::move(table),
                                      std::move(unit), std::move(idem), std::move(rad),
                                      std::move(gens), std::move(id));
}

/// Opposite algebra: same underlying space, reversed multiplication.
template <ExactField F>
AlgebraPtr<F> opposite(const Algebra<F>& a) {
  const std::size_t d = a.dim();
  std::vector<std::vector<Mat<F>>> table(d, std::vector<Mat<F>>(d, Mat<F>(a.field(), d, 1)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) table[i][j] = a.table(j, i);
  return std::make_shared<Algebra<F>>(a.field(), d, a.labels(), std::move(table), a.unit(),
                                      a.idempotents(), a.radical_basis(), a.gens(),
                                      a.id() + "^op");
}

/// Tensor product kQ (x) A for an acyclic quiver Q. Basis (p, b) at index
/// p*dim(A) + b, multiplying componentwise; idempotents are e_i (x) f_j in
/// (vertex-major, then A-idempotent) order; the radical is spanned by
/// p (x) b for len(p) >= 1 together with e_i (x) r over A's radical basis.
template <ExactField F>
AlgebraPtr<F> tensor_with_path_algebra(const Quiver& q, const Algebra<F>& a,
                                       std::string id = "") {
  if (!q.is_acyclic()) throw NotFiniteDimensional("tensor with an infinite path algebra");
  const F& f = a.field();
  const auto& paths = q.all_paths();
  const std::size_t dp = paths.size(), da = a.dim(), d = dp * da;
  if (id.empty()) id = "kQ#" + a.id();
  std::vector<std::string> labels;
  for (const Path& p : paths)
    for (std::size_t b = 0; b < da; ++b)
      labels.push_back(detail::path_label(q, p) + "#" + a.labels()[b]);
  std::vector<std::vector<Mat<F>>> table(d, std::vector<Mat<F>>(d, Mat<F>(f, d, 1)));
  for (std::size_t p = 0; p < dp; ++p)
    for (std::size_t pp = 0; pp < dp; ++pp) {
      if (paths[p].start != paths[pp].end) continue;
      std::size_t pt = q.path_index(q.compose(paths[p], paths[pp]));
      for (std::size_t b = 0; b < da; ++b)
        for (std::size_t bb = 0; bb < da; ++bb) {
          Mat<F> c = a.table(b, bb);
          for (std::size_t t = 0; t < da; ++t)
            table[p * da + b][pp * da + bb].at(pt * da + t, 0) = c.at(t, 0);
        }
    }
  auto embed = [&](std::size_t path_idx, const Mat<F>& acol) {
    Mat<F> v(f, d, 1);
    for (std::size_t t = 0; t < da; ++t) v.at(path_idx * da + t, 0) = acol.at(t, 0);
    return v;
  };
  Mat<F> unit(f, d, 1);
  std::vector<Mat<F>> idem, rad, gens;
  std::vector<std::size_t> trivial_of(q.num_vertices() + 1, 0);
  for (std::size_t p = 0; p < dp; ++p)
    if (paths[p].length() == 0) trivial_of[paths[p].start] = p;
  for (std::size_t v = 1; v <= q.num_vertices(); ++v) {
    Mat<F> u = embed(trivial_of[v], a.unit());
    unit = unit + u;
    for (const auto& e : a.idempotents()) idem.push_back(embed(trivial_of[v], e));
    for (const auto& r : a.radical_basis()) rad.push_back(embed(trivial_of[v], r));
    for (const auto& g : a.gens()) gens.push_back(embed(trivial_of[v], g));
  }
  for (std::size_t p = 0; p < dp; ++p) {
    if (paths[p].length() == 0) continue;
    for (std::size_t t = 0; t < da; ++t) rad.push_back(detail::unit_coord(f, d, p * da + t));
    if (paths[p].length() == 1) gens.push_back(embed(p, a.unit()));
  }
  return std::make_shared<Algebra<F>>(f, d, std::move(labels), std::move(table), std::move(unit),
                                      std::move(idem), std::move(rad), std::move(gens),
                                      std::move(id));
}

template <ExactField F>
AlgebraPtr<F> make_algebra(F field, std::size_t dim, std::vector<std::string> labels,
                           std::vector<std::vector<Mat<F>>> table, Mat<F> unit,
                           std::vector<Mat<F>> idempotents, std::vector<Mat<F>> radical,
                           std::string id = "A") {
  return std::make_shared<Algebra<F>>(std::move(field), dim, std::move(labels), std::move(table),
                                      std::move(unit), std::move(idempotents), std::move(radical),
                                      std::vector<Mat<F>>{}, std::move(id));
}

}  // namespace monrep
