#pragma once

// Representations of a finite acyclic quiver Q with values in the category of
// finite-dimensional left modules over an algebra A, i.e. functorial data
//   X = (X_i for each vertex, X_alpha : X_{s(alpha)} -> X_{e(alpha)} per arrow)
// with every X_alpha an A-linear map.  This header provides:
//   - Representation / RepMorphism value types with validation,
//   - the collection map delta(x, i) : (+)_{e(alpha)=i} X_{s(alpha)} -> X_i,
//     monicity reports and vertexwise cokernels cok_i,
//   - the branch functors m_i (vertex j carries mod^{#paths i->j}) and their
//     total sum m_total, including the action on module maps,
//   - a solver for the space of representation morphisms (hom_rep_basis),
//   - a certificate for the adjunction Hom(m_i(M), X) = Hom_A(M, X_i),
//   - vertexwise kernels, cokernels, direct sums and exactness certificates,
//   - the equivalence with modules over the tensor algebra kQ (x) A
//     (to_lambda_module / from_lambda_module) and an isomorphism test that
//     reuses the module-level machinery through that equivalence.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monrep/algebra.hpp"
#include "monrep/certificate.hpp"
#include "monrep/mat.hpp"
#include "monrep/module.hpp"
#include "monrep/quiver.hpp"

namespace monrep {

class RepError : public std::runtime_error {
 public:
  explicit RepError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool same_quiver(const Quiver& a, const Quiver& b) {
  return a.num_vertices() == b.num_vertices() && a.arrows() == b.arrows();
}

}  // namespace detail

template <ExactField F>
class Representation {
 public:
  Representation(Quiver q, AlgebraPtr<F> alg, std::vector<Module<F>> vertices,
                 std::vector<Mat<F>> arrow_mats)
      : q_(std::move(q)), alg_(std::move(alg)), verts_(std::move(vertices)),
        mats_(std::move(arrow_mats)) {
    if (!alg_) throw RepError("representation requires an algebra");
    if (!q_.is_acyclic()) throw RepError("representation quiver must be acyclic");
    if (verts_.size() != q_.num_vertices())
      throw RepError("vertex module count does not match the quiver");
    if (mats_.size() != q_.arrows().size())
      throw RepError("arrow matrix count does not match the quiver");
    for (const auto& v : verts_)
      if (v.algebra() != alg_) throw RepError("vertex module over a different algebra");
    for (std::size_t k = 0; k < mats_.size(); ++k) {
      const Arrow& a = q_.arrows()[k];
      const Mat<F>& m = mats_[k];
      if (m.rows() != verts_[a.e - 1].dim() || m.cols() != verts_[a.s - 1].dim())
        throw RepError("arrow matrix " + std::to_string(k) + " has the wrong shape");
      if (!ModuleMap<F>(verts_[a.s - 1], verts_[a.e - 1], m).is_hom())
        throw RepError("arrow matrix " + std::to_string(k) + " is not a module map");
    }
  }

  const Quiver& quiver() const { return q_; }
  const AlgebraPtr<F>& algebra() const { return alg_; }
  const F& field() const { return alg_->field(); }

  /// Vertex module, 1-based vertex label.
  const Module<F>& vertex(std::size_t i) const { return verts_.at(i - 1); }
  /// Arrow matrix, 0-based arrow index into quiver().arrows().
  const Mat<F>& arrow_mat(std::size_t k) const { return mats_.at(k); }
  ModuleMap<F> arrow_map(std::size_t k) const {
    const Arrow& a = q_.arrows().at(k);
    return ModuleMap<F>(verts_[a.s - 1], verts_[a.e - 1], mats_[k]);
  }

  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& v : verts_) d += v.dim();
    return d;
  }
  std::vector<std::size_t> dim_vector() const {
    std::vector<std::size_t> d;
    d.reserve(verts_.size());
    for (const auto& v : verts_) d.push_back(v.dim());
    return d;
  }

  /// The composite X_p along a path: arrows applied first sit rightmost, so a
  /// trivial path yields the identity on X_{p.start}.
  Mat<F> path_mat(const Path& p) const {
    Mat<F> acc = Mat<F>::identity(field(), vertex(p.start).dim());
    for (std::size_t k : p.arrows) acc = mats_.at(k) * acc;
    return acc;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    return detail::same_quiver(a.q_, b.q_) && a.alg_ == b.alg_ && a.verts_ == b.verts_ &&
           a.mats_ == b.mats_;
  }

 private:
  Quiver q_;
  AlgebraPtr<F> alg_;
  std::vector<Module<F>> verts_;
  std::vector<Mat<F>> mats_;
};

template <ExactField F>
Representation<F> zero_rep(const Quiver& q, const AlgebraPtr<F>& a) {
  std::vector<Module<F>> verts(q.num_vertices(), zero_module(a));
  std::vector<Mat<F>> mats;
  mats.reserve(q.arrows().size());
  for (std::size_t k = 0; k < q.arrows().size(); ++k) mats.emplace_back(a->field(), 0, 0);
  return Representation<F>(q, a, std::move(verts), std::move(mats));
}

/// Morphism of representations: one matrix per vertex, commuting with every
/// arrow map.
template <ExactField F>
struct RepMorphism {
  Representation<F> src, tgt;
  std::vector<Mat<F>> comps;  // comps[i-1] : X_i -> Y_i

  RepMorphism(Representation<F> s, Representation<F> t, std::vector<Mat<F>> c)
      : src(std::move(s)), tgt(std::move(t)), comps(std::move(c)) {
    if (!detail::same_quiver(src.quiver(), tgt.quiver()))
      throw RepError("morphism endpoints live over different quivers");
    if (comps.size() != src.quiver().num_vertices())
      throw RepError("morphism component count does not match the quiver");
    for (std::size_t i = 1; i <= comps.size(); ++i)
      if (comps[i - 1].rows() != tgt.vertex(i).dim() || comps[i - 1].cols() != src.vertex(i).dim())
        throw RepError("morphism component at vertex " + std::to_string(i) +
                       " has the wrong shape");
  }

  const Mat<F>& comp(std::size_t i) const { return comps.at(i - 1); }

  bool is_hom() const {
    for (std::size_t i = 1; i <= comps.size(); ++i)
      if (!ModuleMap<F>(src.vertex(i), tgt.vertex(i), comps[i - 1]).is_hom()) return false;
    const Quiver& q = src.quiver();
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
      const Arrow& a = q.arrows()[k];
      if (!(comps[a.e - 1] * src.arrow_mat(k) == tgt.arrow_mat(k) * comps[a.s - 1])) return false;
    }
    return true;
  }
};

template <ExactField F>
RepMorphism<F> identity_rep_morphism(const Representation<F>& x) {
  std::vector<Mat<F>> comps;
  for (std::size_t i = 1; i <= x.quiver().num_vertices(); ++i)
    comps.push_back(Mat<F>::identity(x.field(), x.vertex(i).dim()));
  return RepMorphism<F>(x, x, std::move(comps));
}

template <ExactField F>
RepMorphism<F> zero_rep_morphism(const Representation<F>& x, const Representation<F>& y) {
  std::vector<Mat<F>> comps;
  for (std::size_t i = 1; i <= x.quiver().num_vertices(); ++i)
    comps.emplace_back(x.field(), y.vertex(i).dim(), x.vertex(i).dim());
  return RepMorphism<F>(x, y, std::move(comps));
}

template <ExactField F>
RepMorphism<F> compose(const RepMorphism<F>& later, const RepMorphism<F>& earlier) {
  if (!(earlier.tgt == later.src)) throw RepError("composition endpoint mismatch");
  std::vector<Mat<F>> comps;
  for (std::size_t i = 0; i < later.comps.size(); ++i)
    comps.push_back(later.comps[i] * earlier.comps[i]);
  return RepMorphism<F>(earlier.src, later.tgt, std::move(comps));
}

// ---------------------------------------------------------------------------
// The collection map delta and vertexwise cokernels.
// ---------------------------------------------------------------------------

/// Incoming data at a vertex: the direct sum over incoming arrows (in quiver
/// arrow order) together with the block-row map into X_i.
template <ExactField F>
struct DeltaData {
  std::vector<std::size_t> arrows;  // incoming arrow indices, ascending
  DirectSum<F> dom;                 // (+)_{e(alpha)=i} X_{s(alpha)}
  ModuleMap<F> map;                 // block row of the X_alpha
};

template <ExactField F>
DeltaData<F> delta_data(const Representation<F>& x, std::size_t i) {
  const Quiver& q = x.quiver();
  std::vector<std::size_t> in = q.arrows_into(i);
  std::vector<Module<F>> parts;
  std::vector<Mat<F>> blocks;
  for (std::size_t k : in) {
    parts.push_back(x.vertex(q.arrows()[k].s));
    blocks.push_back(x.arrow_mat(k));
  }
  DirectSum<F> dom = direct_sum(x.algebra(), parts);
  Mat<F> m = blocks.empty() ? Mat<F>(x.field(), x.vertex(i).dim(), 0) : hstack(blocks);
  ModuleMap<F> map(dom.mod, x.vertex(i), std::move(m));
  return {std::move(in), std::move(dom), std::move(map)};
}

template <ExactField F>
ModuleMap<F> delta(const Representation<F>& x, std::size_t i) {
  return delta_data(x, i).map;
}

struct MonicVertexReport {
  std::size_t vertex = 0;
  std::size_t domain_dim = 0;
  std::size_t rank = 0;
  bool injective = true;
};

struct MonicReport {
  bool monic = true;
  std::vector<MonicVertexReport> vertices;
};

/// A representation is monic when every collection map delta(x, i) is
/// injective; the report carries the per-vertex ranks.
template <ExactField F>
MonicReport is_monic(const Representation<F>& x) {
  MonicReport rep;
  for (std::size_t i = 1; i <= x.quiver().num_vertices(); ++i) {
    ModuleMap<F> d = delta(x, i);
    std::size_t r = rank(d.mat);
    bool inj = (r == d.src.dim());
    rep.vertices.push_back({i, d.src.dim(), r, inj});
    rep.monic = rep.monic && inj;
  }
  return rep;
}

template <ExactField F>
struct CokResult {
  Module<F> cok;
  ModuleMap<F> proj;  // X_i -> cok
};

/// Cokernel of delta(x, i).  At a source the collection map has zero domain,
/// so the cokernel is X_i itself with the identity projection.
template <ExactField F>
CokResult<F> cok_i(const Representation<F>& x, std::size_t i) {
  if (x.quiver().arrows_into(i).empty())
    return {x.vertex(i), identity_map(x.vertex(i))};
  QuotientResult<F> qr = cokernel(delta(x, i));
  return {std::move(qr.quot), std::move(qr.proj)};
}

// ---------------------------------------------------------------------------
// Branch functors m_i and their total sum.
// ---------------------------------------------------------------------------

/// m_i(mod): vertex j carries one copy of mod per path i -> j (in canonical
/// path order); the arrow alpha maps the copy indexed by a path p to the copy
/// indexed by the concatenation alpha after p, by the identity.
template <ExactField F>
Representation<F> m_i(const Quiver& q, const Module<F>& mod, std::size_t i) {
  if (i == 0 || i > q.num_vertices()) throw RepError("branch vertex out of range");
  const F& f = mod.field();
  const std::size_t dm = mod.dim();
  const AlgebraPtr<F>& a = mod.algebra();

  std::vector<Module<F>> verts;
  for (std::size_t j = 1; j <= q.num_vertices(); ++j) {
    std::vector<Module<F>> copies(q.path_count(i, j), mod);
    verts.push_back(direct_sum(a, copies).mod);
  }

  std::vector<Mat<F>> mats;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& ar = q.arrows()[k];
    const auto& src_paths = q.paths_from_to(i, ar.s);
    const auto& tgt_paths = q.paths_from_to(i, ar.e);
    std::unordered_map<std::size_t, std::size_t> slot_of;
    for (std::size_t t = 0; t < tgt_paths.size(); ++t) slot_of.emplace(tgt_paths[t], t);
    Mat<F> m(f, tgt_paths.size() * dm, src_paths.size() * dm);
    for (std::size_t s = 0; s < src_paths.size(); ++s) {
      Path comp = q.compose(q.arrow_path(k), q.all_paths()[src_paths[s]]);
      std::size_t t = slot_of.at(q.path_index(comp));
      for (std::size_t d = 0; d < dm; ++d) m.at(t * dm + d, s * dm + d) = f.one();
    }
    mats.push_back(std::move(m));
  }
  return Representation<F>(q, a, std::move(verts), std::move(mats));
}

/// Action of m_i on module maps: blockwise copies of g at every vertex.
template <ExactField F>
RepMorphism<F> m_i_map(const Quiver& q, const ModuleMap<F>& g, std::size_t i) {
  Representation<F> src = m_i(q, g.src, i);
  Representation<F> tgt = m_i(q, g.tgt, i);
  std::vector<Mat<F>> comps;
  for (std::size_t j = 1; j <= q.num_vertices(); ++j) {
    std::size_t cnt = q.path_count(i, j);
    std::vector<Mat<F>> blocks(cnt, g.mat);
    comps.push_back(cnt == 0 ? Mat<F>(g.mat.field(), 0, 0) : block_diag(blocks));
  }
  return RepMorphism<F>(std::move(src), std::move(tgt), std::move(comps));
}

/// Direct sum of representations with per-vertex offset bookkeeping.
template <ExactField F>
struct RepDirectSum {
  Representation<F> rep;
  std::vector<Representation<F>> parts;
  std::vector<std::vector<std::size_t>> offsets;  // offsets[v-1] has parts+1 entries

  std::size_t count() const { return parts.size(); }

  RepMorphism<F> injection(std::size_t k) const {
    std::vector<Mat<F>> comps;
    const F& f = rep.field();
    for (std::size_t v = 1; v <= rep.quiver().num_vertices(); ++v) {
      const auto& off = offsets[v - 1];
      Mat<F> m(f, rep.vertex(v).dim(), parts[k].vertex(v).dim());
      for (std::size_t j = 0; j < parts[k].vertex(v).dim(); ++j)
        m.at(off[k] + j, j) = f.one();
      comps.push_back(std::move(m));
    }
    return RepMorphism<F>(parts[k], rep, std::move(comps));
  }

  RepMorphism<F> projection(std::size_t k) const {
    std::vector<Mat<F>> comps;
    const F& f = rep.field();
    for (std::size_t v = 1; v <= rep.quiver().num_vertices(); ++v) {
      const auto& off = offsets[v - 1];
      Mat<F> m(f, parts[k].vertex(v).dim(), rep.vertex(v).dim());
      for (std::size_t j = 0; j < parts[k].vertex(v).dim(); ++j)
        m.at(j, off[k] + j) = f.one();
      comps.push_back(std::move(m));
    }
    return RepMorphism<F>(rep, parts[k], std::move(comps));
  }
};

template <ExactField F>
RepDirectSum<F> direct_sum_rep(const Quiver& q, const AlgebraPtr<F>& a,
                               const std::vector<Representation<F>>& parts) {
  for (const auto& p : parts) {
    if (!detail::same_quiver(p.quiver(), q)) throw RepError("summand over a different quiver");
    if (p.algebra() != a) throw RepError("summand over a different algebra");
  }
  std::vector<Module<F>> verts;
  std::vector<std::vector<std::size_t>> offsets;
  for (std::size_t v = 1; v <= q.num_vertices(); ++v) {
    std::vector<Module<F>> mods;
    std::vector<std::size_t> off{0};
    for (const auto& p : parts) {
      mods.push_back(p.vertex(v));
      off.push_back(off.back() + p.vertex(v).dim());
    }
    verts.push_back(direct_sum(a, mods).mod);
    offsets.push_back(std::move(off));
  }
  std::vector<Mat<F>> mats;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    std::vector<Mat<F>> blocks;
    for (const auto& p : parts) blocks.push_back(p.arrow_mat(k));
    const Arrow& ar = q.arrows()[k];
    mats.push_back(blocks.empty()
                       ? Mat<F>(a->field(), verts[ar.e - 1].dim(), verts[ar.s - 1].dim())
                       : block_diag(blocks));
  }
  Representation<F> rep(q, a, std::move(verts), std::move(mats));
  return {std::move(rep), parts, std::move(offsets)};
}

/// m_total(mod) = (+)_{i in Q_0} m_i(mod), with the branch summand structure
/// exposed (part k is the branch at vertex k+1).
template <ExactField F>
RepDirectSum<F> m_total(const Quiver& q, const Module<F>& mod) {
  std::vector<Representation<F>> parts;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) parts.push_back(m_i(q, mod, i));
  return direct_sum_rep(q, mod.algebra(), parts);
}

// ---------------------------------------------------------------------------
// Morphism spaces.
// ---------------------------------------------------------------------------

/// Basis of the space of representation morphisms x -> y.  Stage one computes
/// per-vertex module hom bases; stage two solves the commuting-square
/// constraints for the coefficients.
template <ExactField F>
std::vector<RepMorphism<F>> hom_rep_basis(const Representation<F>& x, const Representation<F>& y) {
  if (!detail::same_quiver(x.quiver(), y.quiver()))
    throw RepError("hom endpoints live over different quivers");
  if (x.algebra() != y.algebra()) throw RepError("hom endpoints over different algebras");
  const Quiver& q = x.quiver();
  const F& f = x.field();
  const std::size_t n = q.num_vertices();

  std::vector<std::vector<Mat<F>>> H;
  std::vector<std::size_t> off{0};
  for (std::size_t i = 1; i <= n; ++i) {
    H.push_back(hom_basis(x.vertex(i), y.vertex(i)));
    off.push_back(off.back() + H.back().size());
  }
  const std::size_t total = off.back();
  if (total == 0) return {};

  std::size_t rows = 0;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& a = q.arrows()[k];
    rows += y.vertex(a.e).dim() * x.vertex(a.s).dim();
  }
  Mat<F> c(f, rows, total);
  std::size_t row0 = 0;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& a = q.arrows()[k];
    const std::size_t block = y.vertex(a.e).dim() * x.vertex(a.s).dim();
    for (std::size_t l = 0; l < H[a.e - 1].size(); ++l) {
      Mat<F> p = H[a.e - 1][l] * x.arrow_mat(k);
      for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t cc = 0; cc < p.cols(); ++cc)
          c.at(row0 + r * p.cols() + cc, off[a.e - 1] + l) = p.at(r, cc);
    }
    for (std::size_t l = 0; l < H[a.s - 1].size(); ++l) {
      Mat<F> p = y.arrow_mat(k) * H[a.s - 1][l];
      for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t cc = 0; cc < p.cols(); ++cc)
          c.at(row0 + r * p.cols() + cc, off[a.s - 1] + l) = f.neg(p.at(r, cc));
    }
    row0 += block;
  }

  Mat<F> ker = kernel_basis(c);
  std::vector<RepMorphism<F>> out;
  for (std::size_t col = 0; col < ker.cols(); ++col) {
    std::vector<Mat<F>> comps;
    for (std::size_t i = 1; i <= n; ++i) {
      Mat<F> m(f, y.vertex(i).dim(), x.vertex(i).dim());
      for (std::size_t l = 0; l < H[i - 1].size(); ++l) {
        const auto& lam = ker.at(off[i - 1] + l, col);
        if (f.is_zero(lam)) continue;
        const Mat<F>& b = H[i - 1][l];
        for (std::size_t r = 0; r < b.rows(); ++r)
          for (std::size_t cc = 0; cc < b.cols(); ++cc)
            m.at(r, cc) = f.add(m.at(r, cc), f.mul(lam, b.at(r, cc)));
      }
      comps.push_back(std::move(m));
    }
    out.emplace_back(x, y, std::move(comps));
  }
  return out;
}

template <ExactField F>
std::size_t hom_rep_dim(const Representation<F>& x, const Representation<F>& y) {
  return hom_rep_basis(x, y).size();
}

/// Certificate that restriction to the branch vertex, phi -> phi_i, is a
/// bijection Hom(m_i(mod), x) -> Hom_A(mod, X_i): the two spaces have equal
/// dimension and the restriction matrix has full column rank.
template <ExactField F>
Certificate<F> adjunction_check(const Module<F>& mod, const Representation<F>& x, std::size_t i) {
  const F& f = mod.field();
  Representation<F> mi = m_i(x.quiver(), mod, i);
  std::vector<RepMorphism<F>> rep_homs = hom_rep_basis(mi, x);
  std::size_t module_side = hom_dim(mod, x.vertex(i));

  Certificate<F> cert;
  cert.kind = "branch adjunction at vertex " + std::to_string(i);
  cert.add_rank_eq("hom spaces have equal dimension",
                   Mat<F>::identity(f, rep_homs.size()),
                   static_cast<std::int64_t>(module_side));
  Mat<F> branch(f, x.vertex(i).dim() * mod.dim(), rep_homs.size());
  for (std::size_t t = 0; t < rep_homs.size(); ++t) {
    const Mat<F>& c = rep_homs[t].comp(i);
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t cc = 0; cc < c.cols(); ++cc)
        branch.at(r * c.cols() + cc, t) = c.at(r, cc);
  }
  cert.add_rank_eq("branch restriction is injective", branch,
                   static_cast<std::int64_t>(rep_homs.size()));
  finalize(cert);
  return cert;
}

// ---------------------------------------------------------------------------
// Vertexwise kernels, cokernels, exactness.
// ---------------------------------------------------------------------------

template <ExactField F>
struct RepSub {
  Representation<F> sub;
  RepMorphism<F> incl;
};

template <ExactField F>
struct RepQuot {
  Representation<F> quot;
  RepMorphism<F> proj;
  std::vector<Mat<F>> sections;  // per-vertex linear sections of proj
};

template <ExactField F>
RepSub<F> kernel_rep(const RepMorphism<F>& f) {
  const Quiver& q = f.src.quiver();
  std::vector<Module<F>> mods;
  std::vector<Mat<F>> incls;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    SubmoduleResult<F> k = kernel(ModuleMap<F>(f.src.vertex(i), f.tgt.vertex(i), f.comp(i)));
    mods.push_back(std::move(k.sub));
    incls.push_back(std::move(k.incl.mat));
  }
  std::vector<Mat<F>> mats;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& a = q.arrows()[k];
    auto ind = solve(incls[a.e - 1], f.src.arrow_mat(k) * incls[a.s - 1]);
    if (!ind) throw RepError("kernel arrow map failed to restrict");
    mats.push_back(std::move(*ind));
  }
  Representation<F> sub(q, f.src.algebra(), std::move(mods), std::move(mats));
  RepMorphism<F> incl(sub, f.src, std::move(incls));
  return {std::move(sub), std::move(incl)};
}

template <ExactField F>
RepQuot<F> cokernel_rep(const RepMorphism<F>& f) {
  const Quiver& q = f.src.quiver();
  std::vector<Module<F>> mods;
  std::vector<Mat<F>> projs, secs;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    QuotientResult<F> c = cokernel(ModuleMap<F>(f.src.vertex(i), f.tgt.vertex(i), f.comp(i)));
    mods.push_back(std::move(c.quot));
    projs.push_back(std::move(c.proj.mat));
    secs.push_back(std::move(c.section));
  }
  std::vector<Mat<F>> mats;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& a = q.arrows()[k];
    mats.push_back(projs[a.e - 1] * f.tgt.arrow_mat(k) * secs[a.s - 1]);
  }
  Representation<F> quot(q, f.src.algebra(), std::move(mods), std::move(mats));
  RepMorphism<F> proj(f.tgt, quot, std::move(projs));
  if (!proj.is_hom()) throw RepError("cokernel projection is not a morphism");
  return {std::move(quot), std::move(proj), std::move(secs)};
}

/// Exactness certificate for a composable chain of morphisms, checked at every
/// inner object and every vertex; check names pinpoint the junction and vertex.
template <ExactField F>
Certificate<F> sequence_exactness(const std::vector<RepMorphism<F>>& chain) {
  if (chain.size() < 2) throw RepError("exactness needs at least two morphisms");
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!(chain[k].tgt == chain[k + 1].src)) throw RepError("chain endpoints mismatch");
  Certificate<F> cert;
  cert.kind = "sequence exactness";
  const std::size_t n = chain.front().src.quiver().num_vertices();
  for (std::size_t k = 1; k < chain.size(); ++k) {
    for (std::size_t i = 1; i <= n; ++i) {
      const Mat<F>& a = chain[k - 1].comp(i);
      const Mat<F>& b = chain[k].comp(i);
      std::string where = "junction " + std::to_string(k) + ", vertex " + std::to_string(i);
      cert.add_zero_eq("composite vanishes at " + where, {b * a});
      auto r = static_cast<std::int64_t>(rank(a));
      cert.add_rank_eq("image rank at " + where, a, r);
      cert.add_rank_eq("image spans kernel at " + where,
                       hstack(std::vector<Mat<F>>{a, kernel_basis(b)}), r);
    }
  }
  finalize(cert);
  return cert;
}

// ---------------------------------------------------------------------------
// Equivalence with modules over the tensor algebra kQ (x) A.
// ---------------------------------------------------------------------------

namespace detail {

template <ExactField F>
void check_lambda_shape(const Quiver& q, std::size_t base_dim, const AlgebraPtr<F>& lambda) {
  if (lambda->dim() != q.all_paths().size() * base_dim)
    throw RepError("tensor algebra dimension does not match the quiver and base algebra");
}

/// Column of the tensor-algebra element (path p) (x) (base element x).
template <ExactField F>
Mat<F> tensor_elem(const Quiver& q, std::size_t base_dim, const AlgebraPtr<F>& lambda,
                   const Path& p, const Mat<F>& x) {
  Mat<F> col(lambda->field(), lambda->dim(), 1);
  std::size_t pidx = q.path_index(p);
  for (std::size_t b = 0; b < base_dim; ++b) col.at(pidx * base_dim + b, 0) = x.at(b, 0);
  return col;
}

}  // namespace detail

/// The module over lambda = tensor algebra of (Q, A) carried by x: underlying
/// space (+)_i X_i in ascending vertex order; (p (x) b) acts on the X_{start(p)}
/// component by X_p after the action of b, landing in X_{end(p)}.
template <ExactField F>
Module<F> to_lambda_module(const Representation<F>& x, const AlgebraPtr<F>& lambda) {
  const Quiver& q = x.quiver();
  const AlgebraPtr<F>& a = x.algebra();
  detail::check_lambda_shape(q, a->dim(), lambda);
  const F& f = x.field();

  std::vector<std::size_t> off{0};
  for (std::size_t i = 1; i <= q.num_vertices(); ++i)
    off.push_back(off.back() + x.vertex(i).dim());
  const std::size_t dim = off.back();

  std::vector<Mat<F>> act;
  act.reserve(lambda->dim());
  for (std::size_t pidx = 0; pidx < q.all_paths().size(); ++pidx) {
    const Path& p = q.all_paths()[pidx];
    Mat<F> xp = x.path_mat(p);
    for (std::size_t b = 0; b < a->dim(); ++b) {
      Mat<F> m(f, dim, dim);
      m.set_block(off[p.end - 1], off[p.start - 1], xp * x.vertex(p.start).action_basis(b));
      act.push_back(std::move(m));
    }
  }
  return Module<F>(lambda, dim, std::move(act));
}

/// Inverse construction: the vertex component X_i is the column space of the
/// action of (trivial path at i) (x) 1, with the base algebra acting through
/// e_i (x) b and arrows through alpha (x) 1.
template <ExactField F>
Representation<F> from_lambda_module(const Module<F>& m, const Quiver& q,
                                     const AlgebraPtr<F>& base) {
  const AlgebraPtr<F>& lambda = m.algebra();
  detail::check_lambda_shape(q, base->dim(), lambda);
  const F& f = m.field();

  std::vector<Mat<F>> comp_basis;
  std::size_t dims = 0;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    Mat<F> col = detail::tensor_elem(q, base->dim(), lambda, q.trivial_path(i), base->unit());
    comp_basis.push_back(column_space(m.action(col)).basis);
    dims += comp_basis.back().cols();
  }
  if (dims != m.dim())
    throw RepError("vertex idempotents do not decompose the module");

  std::vector<Module<F>> verts;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    std::vector<Mat<F>> act;
    for (std::size_t b = 0; b < base->dim(); ++b) {
      Mat<F> col = detail::tensor_elem(q, base->dim(), lambda, q.trivial_path(i),
                                       Mat<F>::identity(f, base->dim()).col(b));
      auto r = solve(comp_basis[i - 1], m.action(col) * comp_basis[i - 1]);
      if (!r) throw RepError("base action does not preserve a vertex component");
      act.push_back(std::move(*r));
    }
    verts.emplace_back(base, comp_basis[i - 1].cols(), std::move(act));
  }

  std::vector<Mat<F>> mats;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& ar = q.arrows()[k];
    Mat<F> col = detail::tensor_elem(q, base->dim(), lambda, q.arrow_path(k), base->unit());
    auto r = solve(comp_basis[ar.e - 1], m.action(col) * comp_basis[ar.s - 1]);
    if (!r) throw RepError("arrow action does not map between vertex components");
    mats.push_back(std::move(*r));
  }
  return Representation<F>(q, base, std::move(verts), std::move(mats));
}

/// Witness that to_lambda_module(from_lambda_module(m)) is isomorphic to m:
/// the assembled vertex-component bases form an invertible module map.
template <ExactField F>
ModuleMap<F> lambda_round_trip_witness(const Module<F>& m, const Quiver& q,
                                       const AlgebraPtr<F>& base) {
  const AlgebraPtr<F>& lambda = m.algebra();
  Representation<F> x = from_lambda_module(m, q, base);
  Module<F> tl = to_lambda_module(x, lambda);
  std::vector<Mat<F>> cols;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    Mat<F> col = detail::tensor_elem(q, base->dim(), lambda, q.trivial_path(i), base->unit());
    cols.push_back(column_space(m.action(col)).basis);
  }
  ModuleMap<F> w(tl, m, hstack(cols));
  if (rank(w.mat) != m.dim() || !w.is_hom())
    throw RepError("round trip comparison map is not an isomorphism");
  return w;
}

template <ExactField F>
struct RepIsoResult {
  IsoStatus status = IsoStatus::Inconclusive;
  std::optional<RepMorphism<F>> witness;
};

/// Isomorphism test for representations, delegated to the module-level test
/// through the tensor-algebra equivalence.  The witness of a module
/// isomorphism between the associated modules is block-diagonal in the vertex
/// decomposition, and the blocks assemble the representation isomorphism.
template <ExactField F>
RepIsoResult<F> is_isomorphic_rep(const Representation<F>& x, const Representation<F>& y,
                                  const AlgebraPtr<F>& lambda, std::uint64_t seed = 1) {
  if (x.dim_vector() != y.dim_vector()) return {IsoStatus::No, std::nullopt};
  IsoResult<F> r = is_isomorphic(to_lambda_module(x, lambda), to_lambda_module(y, lambda), seed);
  RepIsoResult<F> out;
  out.status = r.status;
  if (r.status == IsoStatus::Yes && r.witness) {
    std::vector<Mat<F>> comps;
    std::size_t off = 0;
    for (std::size_t i = 1; i <= x.quiver().num_vertices(); ++i) {
      comps.push_back(r.witness->block(off, off, y.vertex(i).dim(), x.vertex(i).dim()));
      off += x.vertex(i).dim();
    }
    RepMorphism<F> w(x, y, std::move(comps));
    if (!w.is_hom()) throw RepError("isomorphism witness failed to split into branches");
    out.witness = std::move(w);
  }
  return out;
}

}  // namespace monrep
