#pragma once

// Stable morphism theory for monic representations over a self-injective
// coefficient algebra: detection of self-injectivity, the projective =
// injective object list, hom spaces modulo maps factoring through injective
// objects (with canonical coset coordinates), the shift functor realized as
// the embedding cokernel, shifted-hom vanishing tables, and a certified
// comparison of the stable endomorphism algebra of the total branch object
// with a path-algebra tensor of the module-level stable endomorphisms.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monrep/algebra.hpp"
#include "monrep/certificate.hpp"
#include "monrep/embed.hpp"
#include "monrep/mat.hpp"
#include "monrep/module.hpp"
#include "monrep/quiver.hpp"
#include "monrep/rep.hpp"

namespace monrep {

class NotSelfInjective : public RepError {
 public:
  using RepError::RepError;
};

/// A verified identity required by a comparison map failed to hold.
class CheckFailed : public RepError {
 public:
  using RepError::RepError;
};

// ---------------------------------------------------------------------------
// Self-injectivity.
// ---------------------------------------------------------------------------

template <ExactField F>
struct SelfInjectivity {
  bool self_injective = false;
  /// P(i) -> envelope(P(i)) for every idempotent; all isomorphisms exactly
  /// when the algebra is self-injective.
  std::vector<ModuleMap<F>> witnesses;
  std::optional<std::size_t> failing;  // first idempotent whose projective is not injective
};

template <ExactField F>
SelfInjectivity<F> is_self_injective(const AlgebraPtr<F>& a) {
  SelfInjectivity<F> out;
  out.self_injective = true;
  for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
    Module<F> p = indec_projective(a, i);
    EnvelopeResult<F> env = injective_envelope(p);
    if (env.envelope.dim() != p.dim() && out.self_injective) {
      out.self_injective = false;
      out.failing = i;
    }
    out.witnesses.push_back(std::move(env.embed));
  }
  return out;
}

namespace detail {

template <ExactField F>
void require_self_injective(const AlgebraPtr<F>& a, const char* who) {
  SelfInjectivity<F> s = is_self_injective(a);
  if (!s.self_injective)
    throw NotSelfInjective(std::string(who) + ": projective module at idempotent " +
                           std::to_string(*s.failing) + " is not injective");
}

/// Coordinates on a based hom space together with the canonical projection
/// onto the quotient by a recorded subspace. Quotient coordinates read off
/// the complement positions of the echelonized subspace, so they are
/// deterministic and basis-independent.
template <ExactField F>
struct QuotientCoords {
  Mat<F> ambient_mat;  // flattened ambient basis, one column per element
  Mat<F> sub_coords;   // ambient coordinates of the subspace spanning set
  Mat<F> sub_basis;    // echelon basis of the subspace, in ambient coordinates
  Mat<F> class_proj;   // quotient coordinates of ambient coordinates
  std::vector<std::size_t> free_idx;  // ambient indices of the canonical complement

  static QuotientCoords build(Mat<F> ambient, const Mat<F>& sub_vecs) {
    const F& f = ambient.field();
    QuotientCoords qc{std::move(ambient), Mat<F>(f, 0, 0), Mat<F>(f, 0, 0), Mat<F>(f, 0, 0), {}};
    auto s = solve(qc.ambient_mat, sub_vecs);
    if (!s)
      throw RepError("subspace element does not lie in the span of the ambient basis");
    qc.sub_coords = std::move(*s);
    ColumnSpace<F> cs = column_space(qc.sub_coords);
    qc.sub_basis = cs.basis;
    qc.class_proj = cokernel_proj(qc.sub_coords);
    std::vector<bool> pivot(qc.ambient_mat.cols(), false);
    for (std::size_t p : cs.pivots) pivot[p] = true;
    for (std::size_t k = 0; k < qc.ambient_mat.cols(); ++k)
      if (!pivot[k]) qc.free_idx.push_back(k);
    return qc;
  }

  Mat<F> coords_of(const Mat<F>& vec) const {
    auto c = solve(ambient_mat, vec);
    if (!c) throw RepError("element does not lie in the span of the ambient basis");
    return *c;
  }

  Mat<F> class_of(const Mat<F>& vec) const { return class_proj * coords_of(vec); }
};

template <ExactField F>
bool is_zero_mat(const Mat<F>& m) {
  return m == Mat<F>(m.field(), m.rows(), m.cols());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stable hom spaces, module level.
// ---------------------------------------------------------------------------

/// Hom_A(src, tgt) modulo the maps that factor through the injective
/// envelope of src.
template <ExactField F>
struct StableHomModule {
  Module<F> src, tgt;
  std::vector<Mat<F>> ambient;     // basis of the full hom space
  std::vector<Mat<F>> factoring;   // basis of the factoring subspace
  std::vector<Mat<F>> coset_reps;  // ambient basis elements spanning a complement
  detail::QuotientCoords<F> coords;

  std::size_t quotient_dim() const { return coset_reps.size(); }

  Mat<F> class_coords(const Mat<F>& h) const {
    return coords.class_of(detail::vec_of(src.field(), std::vector<Mat<F>>{h}));
  }
  bool stably_zero(const Mat<F>& h) const { return detail::is_zero_mat(class_coords(h)); }
  bool class_equal(const Mat<F>& g, const Mat<F>& h) const {
    return class_coords(g) == class_coords(h);
  }
};

template <ExactField F>
StableHomModule<F> stable_hom_module(const Module<F>& m, const Module<F>& n) {
  const F& f = m.field();
  std::vector<Mat<F>> ambient = hom_basis(m, n);
  EnvelopeResult<F> env = injective_envelope(m);
  std::vector<Mat<F>> through = hom_basis(env.envelope, n);

  const std::size_t len = m.dim() * n.dim();
  Mat<F> amb(f, len, ambient.size());
  for (std::size_t k = 0; k < ambient.size(); ++k)
    amb.set_block(0, k, detail::vec_of(f, std::vector<Mat<F>>{ambient[k]}));
  Mat<F> sub(f, len, through.size());
  for (std::size_t k = 0; k < through.size(); ++k)
    sub.set_block(0, k,
                  detail::vec_of(f, std::vector<Mat<F>>{through[k] * env.embed.mat}));

  auto coords = detail::QuotientCoords<F>::build(std::move(amb), sub);
  std::vector<Mat<F>> factoring;
  for (std::size_t c = 0; c < coords.sub_basis.cols(); ++c) {
    Mat<F> acc(f, n.dim(), m.dim());
    for (std::size_t k = 0; k < ambient.size(); ++k)
      acc = acc + ambient[k].scaled(coords.sub_basis.at(k, c));
    factoring.push_back(std::move(acc));
  }
  std::vector<Mat<F>> reps;
  for (std::size_t k : coords.free_idx) reps.push_back(ambient[k]);
  return {m, n, std::move(ambient), std::move(factoring), std::move(reps), std::move(coords)};
}

/// Iterated cokernel of the injective envelope embedding.
template <ExactField F>
Module<F> cosyzygy_module(const Module<F>& m, std::size_t n) {
  Module<F> z = m;
  for (std::size_t k = 0; k < n; ++k) z = cokernel(injective_envelope(z).embed).quot;
  return z;
}

/// Iterated kernel of the projective cover map.
template <ExactField F>
Module<F> syzygy_module(const Module<F>& m, std::size_t n) {
  Module<F> z = m;
  for (std::size_t k = 0; k < n; ++k) z = kernel(projective_cover(z).project).sub;
  return z;
}

// ---------------------------------------------------------------------------
// Stable hom spaces for monic representations.
// ---------------------------------------------------------------------------

/// Hom(src, tgt) modulo the maps h∘f where f: src -> E is the canonical
/// injective embedding; over a self-injective coefficient algebra these are
/// exactly the maps factoring through a projective = injective object.
template <ExactField F>
struct StableHomSpace {
  Representation<F> src, tgt;
  std::vector<RepMorphism<F>> ambient;
  std::vector<RepMorphism<F>> factoring;
  std::vector<RepMorphism<F>> coset_reps;
  detail::QuotientCoords<F> coords;

  std::size_t quotient_dim() const { return coset_reps.size(); }

  Mat<F> class_coords(const RepMorphism<F>& h) const {
    return coords.class_of(detail::vec_of(src.field(), h.comps));
  }
  bool stably_zero(const RepMorphism<F>& h) const {
    return detail::is_zero_mat(class_coords(h));
  }
  bool class_equal(const RepMorphism<F>& g, const RepMorphism<F>& h) const {
    return class_coords(g) == class_coords(h);
  }
};

template <ExactField F>
StableHomSpace<F> stable_hom(const Representation<F>& x, const Representation<F>& y) {
  detail::require_self_injective(x.algebra(), "stable_hom");
  detail::require_monic(x, "stable_hom");
  detail::require_monic(y, "stable_hom");
  const F& f = x.field();

  std::vector<RepMorphism<F>> ambient = hom_rep_basis(x, y);
  EmbeddingResult<F> emb = injective_embedding(x);
  std::vector<RepMorphism<F>> through = hom_rep_basis(emb.e, y);

  std::size_t len = 0;
  for (std::size_t v = 1; v <= x.quiver().num_vertices(); ++v)
    len += x.vertex(v).dim() * y.vertex(v).dim();
  Mat<F> amb(f, len, ambient.size());
  for (std::size_t k = 0; k < ambient.size(); ++k)
    amb.set_block(0, k, detail::vec_of(f, ambient[k].comps));
  Mat<F> sub(f, len, through.size());
  for (std::size_t k = 0; k < through.size(); ++k)
    sub.set_block(0, k, detail::vec_of(f, compose(through[k], emb.embed).comps));

  auto coords = detail::QuotientCoords<F>::build(std::move(amb), sub);
  std::vector<RepMorphism<F>> factoring;
  for (std::size_t c = 0; c < coords.sub_basis.cols(); ++c) {
    std::vector<Mat<F>> comps;
    for (std::size_t v = 1; v <= x.quiver().num_vertices(); ++v) {
      Mat<F> acc(f, y.vertex(v).dim(), x.vertex(v).dim());
      for (std::size_t k = 0; k < ambient.size(); ++k)
        acc = acc + ambient[k].comp(v).scaled(coords.sub_basis.at(k, c));
      comps.push_back(std::move(acc));
    }
    factoring.push_back(RepMorphism<F>(x, y, std::move(comps)));
  }
  std::vector<RepMorphism<F>> reps;
  for (std::size_t k : coords.free_idx) reps.push_back(ambient[k]);
  return {x, y, std::move(ambient), std::move(factoring), std::move(reps), std::move(coords)};
}

/// n-fold shift: iterated cokernel of the canonical injective embedding.
template <ExactField F>
Representation<F> cosyzygy(const Representation<F>& x, std::size_t n) {
  detail::require_self_injective(x.algebra(), "cosyzygy");
  Representation<F> z = x;
  for (std::size_t k = 0; k < n; ++k) z = injective_embedding(z).z;
  return z;
}

// ---------------------------------------------------------------------------
// Projective = injective objects.
// ---------------------------------------------------------------------------

template <ExactField F>
std::vector<BranchObject<F>> projective_injective_objects(const Quiver& q,
                                                          const AlgebraPtr<F>& a,
                                                          std::size_t end_bound = 10) {
  detail::require_self_injective(a, "projective_injective_objects");
  return detail::collect_branch_objects(
      q, a, [&](std::size_t j) { return indec_projective(a, j); }, end_bound);
}

/// Matches every branch object on a projective module with a branch object on
/// an injective module and certifies the matching isomorphisms, the count
/// equality, and the vanishing embedding cokernels.
template <ExactField F>
Certificate<F> frobenius_check(const Quiver& q, const AlgebraPtr<F>& a,
                               std::size_t end_bound = 10) {
  auto projs = projective_injective_objects(q, a, end_bound);
  auto injs = indec_injectives_mon(q, a, end_bound);
  auto lambda = tensor_with_path_algebra(q, *a);
  const F& f = a->field();

  Certificate<F> cert;
  cert.kind = "projective and injective objects coincide";
  cert.add_rank_eq("object counts agree", Mat<F>::identity(f, projs.size()),
                   static_cast<std::int64_t>(injs.size()));
  std::vector<bool> used(injs.size(), false);
  for (std::size_t k = 0; k < projs.size(); ++k) {
    const std::string tag = "object " + std::to_string(k);
    std::optional<std::size_t> match;
    std::optional<RepMorphism<F>> witness;
    for (std::size_t l = 0; l < injs.size() && !match; ++l) {
      if (used[l] || injs[l].rep.dim_vector() != projs[k].rep.dim_vector()) continue;
      RepIsoResult<F> r = is_isomorphic_rep(projs[k].rep, injs[l].rep, lambda);
      if (r.status == IsoStatus::Yes) {
        match = l;
        witness = std::move(r.witness);
      }
    }
    if (match) {
      used[*match] = true;
      const Representation<F>& src = projs[k].rep;
      const Representation<F>& tgt = injs[*match].rep;
      for (std::size_t v = 1; v <= q.num_vertices(); ++v)
        cert.add_rank_eq(tag + " matching invertible at vertex " + std::to_string(v),
                         witness->comp(v), static_cast<std::int64_t>(src.vertex(v).dim()));
      for (std::size_t ar = 0; ar < q.arrows().size(); ++ar) {
        const Arrow& arr = q.arrows()[ar];
        cert.add_product_eq(tag + " matching square at arrow " + std::to_string(ar),
                            std::vector<Mat<F>>{witness->comp(arr.e), src.arrow_mat(ar)},
                            std::vector<Mat<F>>{tgt.arrow_mat(ar), witness->comp(arr.s)});
      }
    } else {
      cert.add_rank_eq(tag + " has an injective partner", Mat<F>::identity(f, 1), 0);
    }
    EmbeddingResult<F> emb = injective_embedding(projs[k].rep);
    cert.add_rank_eq(tag + " has vanishing embedding cokernel",
                     Mat<F>::identity(f, emb.z.total_dim()), 0);
  }
  finalize(cert);
  return cert;
}

// ---------------------------------------------------------------------------
// Shifted-hom vanishing tables.
// ---------------------------------------------------------------------------

struct ShiftVanishingReport {
  std::size_t nmax = 0;
  // entry n-1 holds the stable hom dimension at shift +n / -n
  std::vector<std::size_t> module_pos, module_neg;
  std::vector<std::size_t> mon_pos, mon_neg;
  // whenever the module-level dimension vanishes at a shift, the
  // representation-level dimension vanishes at the same shift
  bool implication_holds = true;
  bool module_all_zero = true;
  bool mon_all_zero = true;
};

template <ExactField F>
ShiftVanishingReport t1_check(const Quiver& q, const Module<F>& t, std::size_t nmax) {
  detail::require_self_injective(t.algebra(), "t1_check");
  ShiftVanishingReport report;
  report.nmax = nmax;

  RepDirectSum<F> mt = m_total(q, t);
  Module<F> up = t;    // iterated module-level shift of t
  Module<F> down = t;  // iterated module-level syzygy of t
  Representation<F> shifted = mt.rep;
  for (std::size_t n = 1; n <= nmax; ++n) {
    up = cosyzygy_module(up, 1);
    down = syzygy_module(down, 1);
    shifted = cosyzygy(shifted, 1);
    report.module_pos.push_back(stable_hom_module(t, up).quotient_dim());
    report.module_neg.push_back(stable_hom_module(t, down).quotient_dim());
    report.mon_pos.push_back(stable_hom(mt.rep, shifted).quotient_dim());
    report.mon_neg.push_back(stable_hom(shifted, mt.rep).quotient_dim());
  }
  for (std::size_t n = 0; n < nmax; ++n) {
    if (report.module_pos[n] == 0 && report.mon_pos[n] != 0) report.implication_holds = false;
    if (report.module_neg[n] == 0 && report.mon_neg[n] != 0) report.implication_holds = false;
    if (report.module_pos[n] != 0 || report.module_neg[n] != 0)
      report.module_all_zero = false;
    if (report.mon_pos[n] != 0 || report.mon_neg[n] != 0) report.mon_all_zero = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Stable endomorphism algebra comparison.
// ---------------------------------------------------------------------------

/// Certifies that sending (path p: i -> j) x (stable class [g]) to the class
/// of the slot-shifting morphism m_j(t) -> m_i(t) with block g, corner
/// embedded into the total branch object, is an algebra isomorphism from a
/// path-indexed matrix algebra over the stable endomorphisms of t onto the
/// stable endomorphisms of the total branch object. Throws CheckFailed with
/// the violated identity if any check fails.
template <ExactField F>
Certificate<F> end_iso_check(const Quiver& q, const Module<F>& t) {
  detail::require_self_injective(t.algebra(), "end_iso_check");
  const F& f = t.field();
  const std::size_t dt = t.dim();

  RepDirectSum<F> mt = m_total(q, t);
  StableHomSpace<F> ends = stable_hom(mt.rep, mt.rep);
  StableHomModule<F> endt = stable_hom_module(t, t);
  const std::vector<Path>& paths = q.all_paths();

  // Slot-shifting morphism m_{p.end}(t) -> m_{p.start}(t): the slot of a
  // path s from p.end moves to the slot of s∘p, carrying g on the seed.
  auto branch_shift = [&](const Path& p, const Mat<F>& g) -> RepMorphism<F> {
    std::vector<Mat<F>> comps;
    for (std::size_t v = 1; v <= q.num_vertices(); ++v) {
      const auto& from_j = q.paths_from_to(p.end, v);
      const auto& from_i = q.paths_from_to(p.start, v);
      Mat<F> c(f, from_i.size() * dt, from_j.size() * dt);
      for (std::size_t s = 0; s < from_j.size(); ++s) {
        const std::size_t pidx = q.path_index(q.compose(paths[from_j[s]], p));
        std::size_t tslot = from_i.size();
        for (std::size_t u = 0; u < from_i.size(); ++u)
          if (from_i[u] == pidx) {
            tslot = u;
            break;
          }
        if (tslot == from_i.size())
          throw CheckFailed("end_iso_check: composed path missing from the slot order");
        c.set_block(tslot * dt, s * dt, g);
      }
      comps.push_back(std::move(c));
    }
    RepMorphism<F> sh(mt.parts[p.end - 1], mt.parts[p.start - 1], std::move(comps));
    if (!sh.is_hom())
      throw CheckFailed("end_iso_check: slot-shifting map violates a morphism equation");
    return sh;
  };
  auto embed_endo = [&](const Path& p, const Mat<F>& g) -> RepMorphism<F> {
    return compose(mt.injection(p.start - 1),
                   compose(branch_shift(p, g), mt.projection(p.end - 1)));
  };

  Certificate<F> cert;
  cert.kind = "stable endomorphism algebra comparison";

  // Well-defined: stably trivial endomorphisms of the seed land in the
  // stably trivial endomorphisms of the branch object.
  for (std::size_t pi = 0; pi < paths.size(); ++pi)
    for (std::size_t s = 0; s < endt.factoring.size(); ++s)
      cert.add_zero_eq("kills factoring generator " + std::to_string(s) + " along path " +
                           std::to_string(pi),
                       std::vector<Mat<F>>{
                           ends.class_coords(embed_endo(paths[pi], endt.factoring[s]))});

  // Multiplicative on the (path x coset representative) grid; products of
  // non-composable pairs vanish.
  for (std::size_t pi = 0; pi < paths.size(); ++pi)
    for (std::size_t r = 0; r < endt.coset_reps.size(); ++r)
      for (std::size_t pj = 0; pj < paths.size(); ++pj)
        for (std::size_t r2 = 0; r2 < endt.coset_reps.size(); ++r2) {
          RepMorphism<F> prod = compose(embed_endo(paths[pj], endt.coset_reps[r2]),
                                        embed_endo(paths[pi], endt.coset_reps[r]));
          const std::string tag = "(" + std::to_string(pi) + "," + std::to_string(r) +
                                  ")x(" + std::to_string(pj) + "," + std::to_string(r2) + ")";
          if (paths[pi].start == paths[pj].end) {
            RepMorphism<F> expect =
                embed_endo(q.compose(paths[pi], paths[pj]),
                           endt.coset_reps[r2] * endt.coset_reps[r]);
            cert.add_zero_eq(
                "multiplicative at " + tag,
                std::vector<Mat<F>>{ends.class_coords(prod) - ends.class_coords(expect)});
          } else {
            cert.add_zero_eq("orthogonal at " + tag,
                             std::vector<Mat<F>>{ends.class_coords(prod)});
          }
        }

  // Unital: the sum over trivial paths with the identity seed class is the
  // identity class.
  {
    std::vector<Mat<F>> ucomps;
    for (std::size_t v = 1; v <= q.num_vertices(); ++v)
      ucomps.push_back(Mat<F>(f, mt.rep.vertex(v).dim(), mt.rep.vertex(v).dim()));
    for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
      RepMorphism<F> e = embed_endo(q.trivial_path(i), Mat<F>::identity(f, dt));
      for (std::size_t v = 1; v <= q.num_vertices(); ++v)
        ucomps[v - 1] = ucomps[v - 1] + e.comp(v);
    }
    RepMorphism<F> unit(mt.rep, mt.rep, std::move(ucomps));
    cert.add_zero_eq("unit maps to the identity class",
                     std::vector<Mat<F>>{ends.class_coords(unit) -
                                         ends.class_coords(identity_rep_morphism(mt.rep))});
  }

  // Bijective: dimension equality plus invertibility of the assembled
  // coordinate matrix.
  const std::size_t lhs = paths.size() * endt.quotient_dim();
  cert.add_rank_eq("domain and codomain dimensions agree", Mat<F>::identity(f, lhs),
                   static_cast<std::int64_t>(ends.quotient_dim()));
  Mat<F> big(f, ends.quotient_dim(), lhs);
  std::size_t col = 0;
  for (std::size_t pi = 0; pi < paths.size(); ++pi)
    for (std::size_t r = 0; r < endt.coset_reps.size(); ++r)
      big.set_block(0, col++, ends.class_coords(embed_endo(paths[pi], endt.coset_reps[r])));
  cert.add_rank_eq("comparison matrix invertible", big, static_cast<std::int64_t>(lhs));

  finalize(cert);
  if (!cert.verified) {
    std::string bad;
    verify(cert, &bad);
    throw CheckFailed("stable endomorphism comparison failed: " + bad);
  }
  return cert;
}

}  // namespace monrep
