#pragma once

#include "monrep/algebra.hpp"
#include "monrep/certificate.hpp"
#include "monrep/mat.hpp"
#include "monrep/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monrep {

class ModuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-dimensional left module over a shared algebra, given by one action
/// matrix per algebra basis element (column convention: act(x)*act(y) =
/// act(x*y), vectors are columns).
template <ExactField F>
class Module {
 public:
  Module(AlgebraPtr<F> alg, std::size_t dim, std::vector<Mat<F>> action)
      : alg_(std::move(alg)), dim_(dim), act_(std::move(action)) {
    if (!alg_) throw ModuleError("module needs an algebra");
    if (act_.size() != alg_->dim())
      throw ModuleError("one action matrix per algebra basis element required");
    for (const auto& m : act_)
      if (m.rows() != dim_ || m.cols() != dim_) throw ModuleError("action matrix shape mismatch");
  }

  const AlgebraPtr<F>& algebra() const { return alg_; }
  const F& field() const { return alg_->field(); }
  std::size_t dim() const { return dim_; }
  const Mat<F>& action_basis(std::size_t i) const { return act_.at(i); }
  const std::vector<Mat<F>>& actions() const { return act_; }

  /// Action matrix of an arbitrary algebra element (coordinate column).
  Mat<F> action(const Mat<F>& x) const {
    if (x.rows() != alg_->dim() || x.cols() != 1) throw ModuleError("element shape mismatch");
    Mat<F> r(field(), dim_, dim_);
    for (std::size_t i = 0; i < act_.size(); ++i)
      if (!field().is_zero(x.at(i, 0))) r = r + act_[i].scaled(x.at(i, 0));
    return r;
  }

  friend bool operator==(const Module& a, const Module& b) {
    return a.alg_ == b.alg_ && a.dim_ == b.dim_ && a.act_ == b.act_;
  }

 private:
  AlgebraPtr<F> alg_;
  std::size_t dim_;
  std::vector<Mat<F>> act_;
};

template <ExactField F>
Module<F> zero_module(const AlgebraPtr<F>& a) {
  return Module<F>(a, 0, std::vector<Mat<F>>(a->dim(), Mat<F>(a->field(), 0, 0)));
}

/// The algebra as a left module over itself.
template <ExactField F>
Module<F> regular_module(const AlgebraPtr<F>& a) {
  std::vector<Mat<F>> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(a->left_mult_basis(i));
  return Module<F>(a, a->dim(), act);
}

/// Module laws: the unit acts as the identity, and the action is
/// multiplicative against every declared algebra generator (which suffices,
/// since the generators generate). Throws on failure.
template <ExactField F>
Certificate<F> validate_module(const Module<F>& m) {
  const auto& a = *m.algebra();
  const F& f = a.field();
  Certificate<F> cert;
  cert.kind = "module_laws";
  cert.add_product_eq("unit acts as identity", {m.action(a.unit())},
                      {Mat<F>::identity(f, m.dim())});
  std::vector<Mat<F>> all;
  for (std::size_t j = 0; j < a.dim(); ++j) all.push_back(m.action_basis(j));
  Mat<F> row = a.dim() ? hstack(all) : Mat<F>(f, m.dim(), 0);
  for (std::size_t gi = 0; gi < a.gens().size(); ++gi) {
    const Mat<F>& g = a.gens()[gi];
    Mat<F> lg = a.left_mult(g);
    std::vector<Mat<F>> prods;
    for (std::size_t j = 0; j < a.dim(); ++j) prods.push_back(m.action(lg.col(j)));
    cert.add_product_eq("generator " + std::to_string(gi) + " multiplicative",
                        {m.action(g), row}, {a.dim() ? hstack(prods) : row});
  }
  std::string bad;
  if (!verify(cert, &bad)) throw ModuleError("module law violated: " + bad);
  cert.verified = true;
  return cert;
}

/// Module homomorphism src -> tgt; mat is tgt.dim x src.dim acting on
/// coordinate columns.
template <ExactField F>
struct ModuleMap {
  Module<F> src, tgt;
  Mat<F> mat;

  ModuleMap(Module<F> s, Module<F> t, Mat<F> m)
      : src(std::move(s)), tgt(std::move(t)), mat(std::move(m)) {
    if (mat.rows() != tgt.dim() || mat.cols() != src.dim())
      throw ModuleError("hom matrix shape mismatch");
  }

  bool is_hom() const {
    for (const auto& g : src.algebra()->gens())
      if (!(mat * src.action(g) == tgt.action(g) * mat)) return false;
    return true;
  }
};

template <ExactField F>
ModuleMap<F> identity_map(const Module<F>& m) {
  return ModuleMap<F>(m, m, Mat<F>::identity(m.field(), m.dim()));
}

template <ExactField F>
ModuleMap<F> zero_map(const Module<F>& src, const Module<F>& tgt) {
  return ModuleMap<F>(src, tgt, Mat<F>(src.field(), tgt.dim(), src.dim()));
}

template <ExactField F>
ModuleMap<F> compose(const ModuleMap<F>& later, const ModuleMap<F>& earlier) {
  if (later.mat.cols() != earlier.mat.rows()) throw ModuleError("composition shape mismatch");
  return ModuleMap<F>(earlier.src, later.tgt, later.mat * earlier.mat);
}

namespace detail {

template <ExactField F>
Mat<F> vec_row_major(const Mat<F>& m) {
  Mat<F> v(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.at(r * m.cols() + c, 0) = m.at(r, c);
  return v;
}

template <ExactField F>
Mat<F> unvec_row_major(const F& f, const Mat<F>& v, std::size_t rows, std::size_t cols) {
  Mat<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = v.at(r * cols + c, 0);
  return m;
}

template <ExactField F>
void require_same_algebra(const Module<F>& a, const Module<F>& b) {
  if (a.algebra() != b.algebra()) throw ModuleError("modules live over different algebras");
}

}  // namespace detail

/// Linear constraints cutting out Hom(src, tgt) inside the space of
/// tgt.dim x src.dim matrices: commutation with every algebra generator.
template <ExactField F>
Mat<F> hom_constraints(const Module<F>& src, const Module<F>& tgt) {
  detail::require_same_algebra(src, tgt);
  const F& f = src.field();
  const std::size_t m = src.dim(), n = tgt.dim();
  const auto& gens = src.algebra()->gens();
  Mat<F> c(f, gens.size() * n * m, n * m);
  std::size_t row = 0;
  for (const auto& g : gens) {
    Mat<F> rs = src.action(g), rt = tgt.action(g);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t cc = 0; cc < m; ++cc) {
        for (std::size_t k = 0; k < m; ++k)
          c.at(row, r * m + k) = f.add(c.at(row, r * m + k), rs.at(k, cc));
        for (std::size_t k = 0; k < n; ++k)
          c.at(row, k * m + cc) = f.sub(c.at(row, k * m + cc), rt.at(r, k));
        ++row;
      }
  }
  return c;
}

template <ExactField F>
std::vector<Mat<F>> hom_basis(const Module<F>& src, const Module<F>& tgt) {
  const F& f = src.field();
  const std::size_t m = src.dim(), n = tgt.dim();
  if (m == 0 || n == 0) return {};
  Mat<F> kb = kernel_basis(hom_constraints(src, tgt));
  std::vector<Mat<F>> out;
  for (std::size_t j = 0; j < kb.cols(); ++j)
    out.push_back(detail::unvec_row_major(f, kb.col(j), n, m));
  return out;
}

template <ExactField F>
std::size_t hom_dim(const Module<F>& src, const Module<F>& tgt) {
  const std::size_t m = src.dim(), n = tgt.dim();
  if (m == 0 || n == 0) return 0;
  return n * m - rank(hom_constraints(src, tgt));
}

template <ExactField F>
struct SubmoduleResult {
  Module<F> sub;
  ModuleMap<F> incl;  // sub -> ambient
};

template <ExactField F>
struct QuotientResult {
  Module<F> quot;
  ModuleMap<F> proj;  // ambient -> quot
  Mat<F> section;     // linear section of proj (not a module map in general)
};

/// Submodule spanned by independent invariant columns; the induced action is
/// the unique solution of basis * X = action * basis.
template <ExactField F>
SubmoduleResult<F> submodule_from_basis(const Module<F>& m, const Mat<F>& basis) {
  if (basis.rows() != m.dim()) throw ModuleError("submodule basis shape mismatch");
  if (rank(basis) != basis.cols()) throw ModuleError("submodule basis not independent");
  const auto& a = *m.algebra();
  std::vector<Mat<F>> act;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto x = solve(basis, m.action_basis(i) * basis);
    if (!x) throw ModuleError("basis does not span a submodule");
    act.push_back(std::move(*x));
  }
  Module<F> sub(m.algebra(), basis.cols(), std::move(act));
  ModuleMap<F> incl(sub, m, basis);
  return {std::move(sub), std::move(incl)};
}

template <ExactField F>
SubmoduleResult<F> kernel(const ModuleMap<F>& f) {
  return submodule_from_basis(f.src, kernel_basis(f.mat));
}

template <ExactField F>
SubmoduleResult<F> image(const ModuleMap<F>& f) {
  return submodule_from_basis(f.tgt, column_space(f.mat).basis);
}

template <ExactField F>
QuotientResult<F> cokernel(const ModuleMap<F>& f) {
  Mat<F> pr = cokernel_proj(f.mat);
  Mat<F> sec = cokernel_section(f.mat);
  const auto& a = *f.tgt.algebra();
  std::vector<Mat<F>> act;
  for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(pr * f.tgt.action_basis(i) * sec);
  Module<F> q(f.tgt.algebra(), pr.rows(), std::move(act));
  ModuleMap<F> proj(f.tgt, q, pr);
  return {std::move(q), std::move(proj), std::move(sec)};
}

/// Direct sum with remembered block offsets (offsets.size() == count + 1).
template <ExactField F>
struct DirectSum {
  Module<F> mod;
  std::vector<std::size_t> offsets;

  std::size_t count() const { return offsets.size() - 1; }
  std::size_t block_dim(std::size_t k) const { return offsets.at(k + 1) - offsets.at(k); }

  Mat<F> injection(std::size_t k) const {
    Mat<F> m(mod.field(), mod.dim(), block_dim(k));
    for (std::size_t j = 0; j < block_dim(k); ++j) m.at(offsets[k] + j, j) = mod.field().one();
    return m;
  }
  Mat<F> projection(std::size_t k) const {
    Mat<F> m(mod.field(), block_dim(k), mod.dim());
    for (std::size_t j = 0; j < block_dim(k); ++j) m.at(j, offsets[k] + j) = mod.field().one();
    return m;
  }
};

template <ExactField F>
DirectSum<F> direct_sum(const AlgebraPtr<F>& a, const std::vector<Module<F>>& parts) {
  std::vector<std::size_t> offsets{0};
  for (const auto& p : parts) {
    detail::require_same_algebra(p, parts.front());
    if (p.algebra() != a) throw ModuleError("summand over a different algebra");
    offsets.push_back(offsets.back() + p.dim());
  }
  if (parts.empty()) return {zero_module(a), std::move(offsets)};
  std::vector<Mat<F>> act;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    std::vector<Mat<F>> blocks;
    for (const auto& p : parts) blocks.push_back(p.action_basis(i));
    act.push_back(block_diag(blocks));
  }
  return {Module<F>(a, offsets.back(), std::move(act)), std::move(offsets)};
}

/// Largest semisimple submodule: the joint kernel of the radical action.
template <ExactField F>
SubmoduleResult<F> socle(const Module<F>& m) {
  const F& f = m.field();
  const auto& rad = m.algebra()->radical_basis();
  if (rad.empty() || m.dim() == 0)
    return submodule_from_basis(m, Mat<F>::identity(f, m.dim()));
  std::vector<Mat<F>> rows;
  for (const auto& r : rad) rows.push_back(m.action(r));
  return submodule_from_basis(m, kernel_basis(vstack(rows)));
}

/// rad M = J*M as a submodule.
template <ExactField F>
SubmoduleResult<F> radical_submodule(const Module<F>& m) {
  const F& f = m.field();
  const auto& rad = m.algebra()->radical_basis();
  if (rad.empty() || m.dim() == 0) return submodule_from_basis(m, Mat<F>(f, m.dim(), 0));
  std::vector<Mat<F>> cols;
  for (const auto& r : rad) cols.push_back(m.action(r));
  return submodule_from_basis(m, column_space(hstack(cols)).basis);
}

/// top M = M / rad M.
template <ExactField F>
QuotientResult<F> top(const Module<F>& m) {
  return cokernel(radical_submodule(m).incl);
}

/// Per-algebra cache of the indecomposable projectives P(i) = A e_i,
/// injectives I(i) = dual of e_i A, simples S(i) = top P(i), the canonical
/// embeddings S(i) -> I(i), and the grouping of idempotents by isomorphism
/// class of their simple.
template <ExactField F>
struct ModuleCache {
  struct ProjInfo {
    Module<F> mod;
    Mat<F> basis;      // algebra-coordinate columns spanning A e_i
    Mat<F> gen_coord;  // coordinates of e_i in that basis
    Mat<F> top_proj;   // P(i) ->> S(i)
  };
  struct InjInfo {
    Module<F> mod;
    Mat<F> basis;   // algebra-coordinate columns spanning e_i A
    Mat<F> counit;  // coordinates of e_i in that basis
  };
  std::vector<ProjInfo> proj;
  std::vector<InjInfo> inj;
  std::vector<Module<F>> simple;
  std::vector<ModuleMap<F>> soc_embed;  // S(i) -> I(i), socle embedding
  std::vector<std::size_t> class_of;    // idempotent -> simple iso-class
  std::vector<std::size_t> class_reps;  // class -> first idempotent in it
};

template <ExactField F>
const ModuleCache<F>& module_cache(const std::shared_ptr<const Algebra<F>>& ap) {
  const Algebra<F>& a = *ap;
  std::call_once(a.mcache_once_, [&] {
    auto c = std::make_shared<ModuleCache<F>>();
    const F& f = a.field();
    for (std::size_t i = 0; i < a.num_idempotents(); ++i) {
      const Mat<F>& e = a.idempotent(i);
      {
        Mat<F> b = column_space(a.right_mult(e)).basis;
        std::vector<Mat<F>> act;
        for (std::size_t j = 0; j < a.dim(); ++j) {
          auto x = solve(b, a.left_mult_basis(j) * b);
          if (!x) throw ModuleError("A e_i is not closed under the left action");
          act.push_back(std::move(*x));
        }
        Module<F> mod(ap, b.cols(), std::move(act));
        auto g = solve(b, e);
        if (!g) throw ModuleError("idempotent missing from A e_i");
        auto tp = top(mod);
        c->simple.push_back(tp.quot);
        c->proj.push_back({std::move(mod), std::move(b), std::move(*g), tp.proj.mat});
      }
      {
        Mat<F> b = column_space(a.left_mult(e)).basis;
        std::vector<Mat<F>> act;
        for (std::size_t j = 0; j < a.dim(); ++j) {
          auto y = solve(b, a.right_mult_basis(j) * b);
          if (!y) throw ModuleError("e_i A is not closed under the right action");
          act.push_back(y->transpose());
        }
        Module<F> mod(ap, b.cols(), std::move(act));
        auto cu = solve(b, e);
        if (!cu) throw ModuleError("idempotent missing from e_i A");
        c->inj.push_back({std::move(mod), std::move(b), std::move(*cu)});
      }
    }
    for (std::size_t i = 0; i < a.num_idempotents(); ++i) {
      auto hb = hom_basis(c->simple[i], c->inj[i].mod);
      if (hb.empty()) throw ModuleError("no embedding of a simple into its injective hull");
      c->soc_embed.push_back(ModuleMap<F>(c->simple[i], c->inj[i].mod, hb.front()));
      bool placed = false;
      for (std::size_t cls = 0; cls < c->class_reps.size() && !placed; ++cls) {
        const Module<F>& rep = c->simple[c->class_reps[cls]];
        if (rep.dim() != c->simple[i].dim()) continue;
        auto homs = hom_basis(c->simple[i], rep);
        if (!homs.empty() && rank(homs.front()) == rep.dim()) {
          c->class_of.push_back(cls);
          placed = true;
        }
      }
      if (!placed) {
        c->class_of.push_back(c->class_reps.size());
        c->class_reps.push_back(i);
      }
    }
    a.mcache_ = std::move(c);
  });
  return *a.mcache_;
}

template <ExactField F>
const Module<F>& indec_projective(const AlgebraPtr<F>& a, std::size_t i) {
  return module_cache(a).proj.at(i).mod;
}

template <ExactField F>
const Module<F>& indec_injective(const AlgebraPtr<F>& a, std::size_t i) {
  return module_cache(a).inj.at(i).mod;
}

template <ExactField F>
const Module<F>& simple_module(const AlgebraPtr<F>& a, std::size_t i) {
  return module_cache(a).simple.at(i);
}

/// Hom(P(i), n) identified with e_i * n: vec_basis columns are the parameter
/// vectors, homs[j] the corresponding maps, and any hom h recovers its
/// parameter as h * gen_coord.
template <ExactField F>
struct ProjHomSpace {
  Mat<F> vec_basis;
  std::vector<Mat<F>> homs;
  Mat<F> gen_coord;
};

template <ExactField F>
ProjHomSpace<F> proj_hom_space(const AlgebraPtr<F>& a, std::size_t i, const Module<F>& n) {
  const auto& cache = module_cache(a);
  const auto& pi = cache.proj.at(i);
  const F& f = a->field();
  Mat<F> w = column_space(n.action(a->idempotent(i))).basis;
  std::vector<Mat<F>> acts;
  for (std::size_t s = 0; s < pi.basis.cols(); ++s) acts.push_back(n.action(pi.basis.col(s)));
  std::vector<Mat<F>> homs;
  for (std::size_t j = 0; j < w.cols(); ++j) {
    Mat<F> h(f, n.dim(), pi.basis.cols());
    for (std::size_t s = 0; s < acts.size(); ++s) h.set_block(0, s, acts[s] * w.col(j));
    homs.push_back(std::move(h));
  }
  return {std::move(w), std::move(homs), pi.gen_coord};
}

/// Hom(m, I(i)) identified with the dual of e_i * m: vec_basis rows are the
/// parameter functionals, homs[j] the corresponding maps, and any hom h
/// recovers its parameter row as counit^T * h.
template <ExactField F>
struct InjHomSpace {
  Mat<F> vec_basis;  // t x m.dim rows
  std::vector<Mat<F>> homs;
  Mat<F> counit;
};

template <ExactField F>
InjHomSpace<F> inj_hom_space(const AlgebraPtr<F>& a, std::size_t i, const Module<F>& m) {
  const auto& cache = module_cache(a);
  const auto& ii = cache.inj.at(i);
  const F& f = a->field();
  Mat<F> rows = column_space(m.action(a->idempotent(i)).transpose()).basis.transpose();
  std::vector<Mat<F>> acts;
  for (std::size_t t = 0; t < ii.basis.cols(); ++t) acts.push_back(m.action(ii.basis.col(t)));
  std::vector<Mat<F>> homs;
  for (std::size_t j = 0; j < rows.rows(); ++j) {
    Mat<F> u = rows.block(j, 0, 1, rows.cols());
    Mat<F> h(f, ii.basis.cols(), m.dim());
    for (std::size_t t = 0; t < acts.size(); ++t) h.set_block(t, 0, u * acts[t]);
    homs.push_back(std::move(h));
  }
  return {std::move(rows), std::move(homs), ii.counit};
}

/// Greedy decomposition of a semisimple module into images of the cached
/// simples. Each chosen component is injective with image independent of the
/// span so far; stalls only on invalid input (a non-semisimple argument or
/// non-primitive idempotents).
template <ExactField F>
struct SemisimpleDecomposition {
  std::vector<std::size_t> idems;  // chosen simple per component
  std::vector<Mat<F>> comps;       // matrices S(idem) -> module
};

template <ExactField F>
SemisimpleDecomposition<F> decompose_semisimple(const Module<F>& t) {
  const auto& cache = module_cache(t.algebra());
  SemisimpleDecomposition<F> out;
  if (t.dim() == 0) return out;
  const F& f = t.field();
  std::vector<std::pair<std::size_t, std::vector<Mat<F>>>> cand;
  for (std::size_t r : cache.class_reps) cand.emplace_back(r, hom_basis(cache.simple[r], t));
  Mat<F> u(f, t.dim(), 0);
  while (u.cols() < t.dim()) {
    bool progress = false;
    for (auto& [r, homs] : cand) {
      const std::size_t sd = cache.simple[r].dim();
      for (const Mat<F>& h : homs) {
        if (u.cols() == t.dim()) break;
        Mat<F> cat = u.cols() ? hstack(std::vector<Mat<F>>{u, h}) : h;
        if (rank(cat) == u.cols() + sd) {
          u = std::move(cat);
          out.idems.push_back(r);
          out.comps.push_back(h);
          progress = true;
        }
      }
    }
    if (!progress)
      throw ModuleError(
          "semisimple decomposition stalled (module not semisimple, or idempotents not "
          "primitive)");
  }
  return out;
}

/// Find f with f o mono = g, searching inside the span of hom_yz
/// (a basis of Hom(mono.tgt, g.tgt)); empty optional when no extension
/// exists, e.g. when the target is not injective.
template <ExactField F>
std::optional<ModuleMap<F>> extend_along_mono(const ModuleMap<F>& mono, const ModuleMap<F>& g,
                                              const std::vector<Mat<F>>& hom_yz) {
  if (mono.src.dim() != g.src.dim()) throw ModuleError("extension sources disagree");
  const F& f = mono.src.field();
  const std::size_t nx = mono.src.dim(), nz = g.tgt.dim();
  Mat<F> sys(f, nz * nx, hom_yz.size());
  for (std::size_t j = 0; j < hom_yz.size(); ++j)
    sys.set_block(0, j, detail::vec_row_major(hom_yz[j] * mono.mat));
  auto lam = solve(sys, detail::vec_row_major(g.mat));
  if (!lam) return std::nullopt;
  Mat<F> fm(f, nz, mono.tgt.dim());
  for (std::size_t j = 0; j < hom_yz.size(); ++j)
    if (!f.is_zero(lam->at(j, 0))) fm = fm + hom_yz[j].scaled(lam->at(j, 0));
  return ModuleMap<F>(mono.tgt, g.tgt, std::move(fm));
}

template <ExactField F>
std::optional<ModuleMap<F>> extend_along_mono(const ModuleMap<F>& mono, const ModuleMap<F>& g) {
  return extend_along_mono(mono, g, hom_basis(mono.tgt, g.tgt));
}

namespace detail {

template <ExactField F>
void add_hom_checks(Certificate<F>& cert, const std::string& what, const Module<F>& src,
                    const Module<F>& tgt, const Mat<F>& m) {
  const auto& gens = src.algebra()->gens();
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    cert.add_product_eq(what + " commutes with generator " + std::to_string(gi),
                        {m, src.action(gens[gi])}, {tgt.action(gens[gi]), m});
}

}  // namespace detail

/// Injective envelope: socle decomposition, one indecomposable injective per
/// socle component, and an extension of the componentwise socle embeddings
/// along soc M -> M. The certificate records the hom property, injectivity,
/// and essentiality (the whole socle of E lies in the image).
template <ExactField F>
struct EnvelopeResult {
  Module<F> envelope;
  ModuleMap<F> embed;                 // M -> envelope, injective and essential
  std::vector<std::size_t> summands;  // idempotent index per injective block
  std::vector<std::size_t> offsets;
  Certificate<F> cert;
};

template <ExactField F>
EnvelopeResult<F> injective_envelope(const Module<F>& m) {
  const auto& ap = m.algebra();
  const auto& cache = module_cache(ap);
  const F& f = m.field();
  auto soc = socle(m);
  auto dec = decompose_semisimple(soc.sub);

  std::vector<Module<F>> sblocks, iblocks;
  for (std::size_t i : dec.idems) {
    sblocks.push_back(cache.simple[i]);
    iblocks.push_back(cache.inj[i].mod);
  }
  auto sdom = direct_sum(ap, sblocks);
  auto env = direct_sum(ap, iblocks);

  Mat<F> sigma(f, m.dim(), sdom.mod.dim());
  Mat<F> psi(f, env.mod.dim(), sdom.mod.dim());
  for (std::size_t k = 0; k < dec.idems.size(); ++k) {
    sigma.set_block(0, sdom.offsets[k], soc.incl.mat * dec.comps[k]);
    psi.set_block(env.offsets[k], sdom.offsets[k], cache.soc_embed[dec.idems[k]].mat);
  }

  std::vector<Mat<F>> hom_me;
  for (std::size_t k = 0; k < dec.idems.size(); ++k) {
    auto hs = inj_hom_space(ap, dec.idems[k], m);
    for (const Mat<F>& h : hs.homs) {
      Mat<F> big(f, env.mod.dim(), m.dim());
      big.set_block(env.offsets[k], 0, h);
      hom_me.push_back(std::move(big));
    }
  }
  ModuleMap<F> sigma_map(sdom.mod, m, std::move(sigma));
  ModuleMap<F> psi_map(sdom.mod, env.mod, std::move(psi));
  auto ext = extend_along_mono(sigma_map, psi_map, hom_me);
  if (!ext) throw ModuleError("internal: socle embedding failed to extend");

  Certificate<F> cert;
  cert.kind = "injective_envelope";
  detail::add_hom_checks(cert, "envelope map", m, env.mod, ext->mat);
  cert.add_rank_eq("envelope map injective", ext->mat, static_cast<std::int64_t>(m.dim()));
  Mat<F> soc_env = socle(env.mod).incl.mat;
  cert.add_rank_eq("image contains the socle of the envelope",
                   soc_env.cols() ? hstack(std::vector<Mat<F>>{ext->mat, soc_env}) : ext->mat,
                   static_cast<std::int64_t>(m.dim()));
  std::string bad;
  if (!verify(cert, &bad)) throw ModuleError("envelope certificate failed: " + bad);
  cert.verified = true;
  return {env.mod, std::move(*ext), std::move(dec.idems), std::move(env.offsets),
          std::move(cert)};
}

/// Projective cover: decompose top M, lift each component through M ->> top M
/// using projectivity of P(i). The certificate records the hom property and
/// surjectivity; minimality holds because the cover's top matches top M.
template <ExactField F>
struct CoverResult {
  Module<F> cover;
  ModuleMap<F> project;  // cover -> M, surjective
  std::vector<std::size_t> summands;
  std::vector<std::size_t> offsets;
  Certificate<F> cert;
};

template <ExactField F>
CoverResult<F> projective_cover(const Module<F>& m) {
  const auto& ap = m.algebra();
  const auto& cache = module_cache(ap);
  const F& f = m.field();
  auto tp = top(m);
  auto dec = decompose_semisimple(tp.quot);

  std::vector<Module<F>> pblocks;
  for (std::size_t i : dec.idems) pblocks.push_back(cache.proj[i].mod);
  auto cov = direct_sum(ap, pblocks);

  Mat<F> p(f, m.dim(), cov.mod.dim());
  for (std::size_t k = 0; k < dec.idems.size(); ++k) {
    const std::size_t i = dec.idems[k];
    auto hs = proj_hom_space(ap, i, m);
    Mat<F> rhs = dec.comps[k] * cache.proj[i].top_proj;  // wanted composite into top M
    Mat<F> sys(f, rhs.rows() * rhs.cols(), hs.homs.size());
    for (std::size_t j = 0; j < hs.homs.size(); ++j)
      sys.set_block(0, j, detail::vec_row_major(tp.proj.mat * hs.homs[j]));
    auto lam = solve(sys, detail::vec_row_major(rhs));
    if (!lam) throw ModuleError("internal: projective lift failed");
    Mat<F> pk(f, m.dim(), cache.proj[i].mod.dim());
    for (std::size_t j = 0; j < hs.homs.size(); ++j)
      if (!f.is_zero(lam->at(j, 0))) pk = pk + hs.homs[j].scaled(lam->at(j, 0));
    p.set_block(0, cov.offsets[k], pk);
  }

  Certificate<F> cert;
  cert.kind = "projective_cover";
  detail::add_hom_checks(cert, "cover map", cov.mod, m, p);
  cert.add_rank_eq("cover map surjective", p, static_cast<std::int64_t>(m.dim()));
  std::string bad;
  if (!verify(cert, &bad)) throw ModuleError("cover certificate failed: " + bad);
  cert.verified = true;
  ModuleMap<F> pm(cov.mod, m, std::move(p));
  return {cov.mod, std::move(pm), std::move(dec.idems), std::move(cov.offsets), std::move(cert)};
}

enum class IsoStatus { Yes, No, Inconclusive };

template <ExactField F>
struct IsoResult {
  IsoStatus status = IsoStatus::Inconclusive;
  std::optional<Mat<F>> witness;  // invertible hom when status == Yes
};

namespace detail {

template <ExactField F>
std::vector<std::size_t> layer_dims(const Module<F>& m) {
  std::vector<std::size_t> out{m.dim()};
  Module<F> cur = m;
  while (cur.dim() > 0) {
    auto r = radical_submodule(cur);
    if (r.sub.dim() == cur.dim()) break;  // not nilpotent on this module: bail out
    out.push_back(r.sub.dim());
    if (r.sub.dim() == 0) break;
    cur = r.sub;
  }
  out.push_back(socle(m).sub.dim());
  return out;
}

}  // namespace detail

/// Exact isomorphism test. Refutes via dimensions and radical/socle layers,
/// then searches Hom(m, n) for an invertible element: single basis elements,
/// full enumeration when the coefficient space is small, and finally a seeded
/// random search. Over infinite fields a failed search is Inconclusive.
template <ExactField F>
IsoResult<F> is_isomorphic(const Module<F>& m, const Module<F>& n, std::uint64_t seed = 1,
                           std::size_t random_budget = 4000) {
  detail::require_same_algebra(m, n);
  const F& f = m.field();
  if (m.dim() != n.dim()) return {IsoStatus::No, std::nullopt};
  if (m.dim() == 0) return {IsoStatus::Yes, Mat<F>(f, 0, 0)};
  if (detail::layer_dims(m) != detail::layer_dims(n)) return {IsoStatus::No, std::nullopt};

  auto homs = hom_basis(m, n);
  if (homs.empty()) return {IsoStatus::No, std::nullopt};
  for (const auto& h : homs)
    if (rank(h) == m.dim()) return {IsoStatus::Yes, h};

  const std::size_t t = homs.size();
  auto combo = [&](auto&& coeff_at) {
    Mat<F> c(f, n.dim(), m.dim());
    for (std::size_t j = 0; j < t; ++j) {
      auto e = coeff_at(j);
      if (!f.is_zero(e)) c = c + homs[j].scaled(e);
    }
    return c;
  };

  auto ord = f.order();
  if (ord) {
    // full enumeration when q^t is small
    long double total = 1;
    for (std::size_t j = 0; j < t && total <= (1 << 20); ++j) total *= static_cast<long double>(*ord);
    if (total <= (1 << 20)) {
      std::vector<std::uint64_t> digits(t, 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < t && ++digits[pos] == *ord) digits[pos++] = 0;
        if (pos == t) break;
        Mat<F> c = combo([&](std::size_t j) { return f.from_int(static_cast<std::int64_t>(digits[j])); });
        if (rank(c) == m.dim()) return {IsoStatus::Yes, c};
      }
      return {IsoStatus::No, std::nullopt};
    }
  }

  Rng rng(seed);
  for (std::size_t it = 0; it < random_budget; ++it) {
    Mat<F> c = combo([&](std::size_t) {
      if (ord) return f.from_int(static_cast<std::int64_t>(rng.below(*ord)));
      return f.from_int(static_cast<std::int64_t>(rng.below(9)) - 4);
    });
    if (rank(c) == m.dim()) return {IsoStatus::Yes, c};
  }
  return {IsoStatus::Inconclusive, std::nullopt};
}

}  // namespace monrep
