#pragma once

#include "monrep/module.hpp"
#include "monrep/quiver.hpp"
#include "monrep/rep.hpp"
#include "monrep/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace monrep {

/// Seeded random construction of modules, homomorphisms, representations and
/// quivers. Every draw goes through an explicit Rng, so any generated
/// instance is reproducible from its seed alone; nothing here touches global
/// state.

/// A small "generic" scalar: over GF(p) a uniform residue (capped at seven
/// values so large fields still hit zero occasionally), over the rationals an
/// integer in [-2, 2].
template <ExactField F>
typename F::Elem random_elem(const F& f, Rng& rng) {
  const std::optional<std::uint64_t> ord = f.order();
  if (ord) {
    const std::uint64_t span = *ord < 7 ? *ord : 7;
    return f.from_int(static_cast<std::int64_t>(rng.below(span)));
  }
  return f.from_int(static_cast<std::int64_t>(rng.below(5)) - 2);
}

template <ExactField F>
Mat<F> random_mat(const F& f, Rng& rng, std::size_t rows, std::size_t cols) {
  Mat<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = random_elem(f, rng);
  return m;
}

/// Random module map: a random coefficient combination of a basis of the
/// hom space, hence always a genuine homomorphism.
template <ExactField F>
ModuleMap<F> random_hom(const Module<F>& m, const Module<F>& n, Rng& rng) {
  const F& f = m.field();
  Mat<F> acc(f, n.dim(), m.dim());
  for (const Mat<F>& h : hom_basis(m, n)) acc = acc + h.scaled(random_elem(f, rng));
  return ModuleMap<F>(m, n, acc);
}

/// Random finitely generated module, presented as the cokernel of a random
/// map between random sums of indecomposable projectives. Draws that come
/// out zero-dimensional are retried a few times and then accepted, so zero
/// summands stay possible but rare.
template <ExactField F>
Module<F> random_module(const AlgebraPtr<F>& a, Rng& rng, std::size_t max_retries = 3) {
  const F& f = a->field();
  const std::size_t ni = a->num_idempotents();
  for (std::size_t attempt = 0;; ++attempt) {
    std::vector<Module<F>> tops;
    const std::size_t nt = 1 + rng.below(2);
    for (std::size_t k = 0; k < nt; ++k)
      tops.push_back(indec_projective(a, rng.below(ni)));
    Module<F> cover = direct_sum(a, tops).mod;

    std::vector<Module<F>> rels;
    const std::size_t nr = rng.below(3);
    for (std::size_t k = 0; k < nr; ++k)
      rels.push_back(indec_projective(a, rng.below(ni)));
    Module<F> relations = rels.empty() ? zero_module(a) : direct_sum(a, rels).mod;

    Mat<F> phi(f, cover.dim(), relations.dim());
    for (const Mat<F>& h : hom_basis(relations, cover))
      phi = phi + h.scaled(random_elem(f, rng));
    Module<F> quot = cokernel(ModuleMap<F>(relations, cover, phi)).quot;
    if (quot.dim() > 0 || attempt >= max_retries) return quot;
  }
}

/// Random representation with independent vertex modules and random arrow
/// homomorphisms; no injectivity constraint.
template <ExactField F>
Representation<F> random_rep(const Quiver& q, const AlgebraPtr<F>& a, Rng& rng) {
  const std::size_t n = q.num_vertices();
  std::vector<Module<F>> verts;
  verts.reserve(n);
  for (std::size_t v = 1; v <= n; ++v) verts.push_back(random_module(a, rng));
  std::vector<Mat<F>> mats;
  mats.reserve(q.arrows().size());
  for (const Arrow& ar : q.arrows())
    mats.push_back(random_hom(verts[ar.s - 1], verts[ar.e - 1], rng).mat);
  return Representation<F>(q, a, std::move(verts), std::move(mats));
}

/// Random representation whose combined arrow map into every vertex is
/// injective by construction: processing vertices in topological order
/// (sources first), each vertex is the direct sum of all incoming branches
/// plus a fresh random summand, and each arrow is its canonical block
/// injection perturbed by a random homomorphism into the fresh summand.
template <ExactField F>
Representation<F> random_monic_rep(const Quiver& q, const AlgebraPtr<F>& a, Rng& rng) {
  const F& f = a->field();
  const auto order = q.topo_order();
  if (!order) throw RepError("monic representations require an acyclic quiver");
  const std::size_t n = q.num_vertices();
  std::vector<Module<F>> verts(n, zero_module(a));
  std::vector<Mat<F>> mats(q.arrows().size(), Mat<F>(f, 0, 0));
  for (std::size_t v : *order) {
    const std::vector<std::size_t> in = q.arrows_into(v);
    std::vector<Module<F>> blocks;
    blocks.reserve(in.size() + 1);
    for (std::size_t k : in) blocks.push_back(verts[q.arrows()[k].s - 1]);
    blocks.push_back(random_module(a, rng));
    DirectSum<F> sum = direct_sum(a, blocks);
    verts[v - 1] = sum.mod;
    const Mat<F> into_fresh = sum.injection(in.size());
    for (std::size_t pos = 0; pos < in.size(); ++pos) {
      const Module<F>& src = verts[q.arrows()[in[pos]].s - 1];
      mats[in[pos]] =
          sum.injection(pos) + into_fresh * random_hom(src, blocks[in.size()], rng).mat;
    }
  }
  return Representation<F>(q, a, std::move(verts), std::move(mats));
}

/// Destroy injectivity at one vertex by zeroing a random arrow whose source
/// module is nonzero (the combined map then has that block in its kernel).
/// Returns nothing when every arrow has a zero source, in which case no
/// arrow-level perturbation can break injectivity.
template <ExactField F>
std::optional<Representation<F>> perturb_non_monic(const Representation<F>& x, Rng& rng) {
  const Quiver& q = x.quiver();
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < q.arrows().size(); ++k)
    if (x.vertex(q.arrows()[k].s).dim() > 0) candidates.push_back(k);
  if (candidates.empty()) return std::nullopt;
  const std::size_t pick = candidates[rng.below(candidates.size())];
  std::vector<Module<F>> verts;
  for (std::size_t v = 1; v <= q.num_vertices(); ++v) verts.push_back(x.vertex(v));
  std::vector<Mat<F>> mats;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) mats.push_back(x.arrow_mat(k));
  mats[pick] = Mat<F>(x.field(), mats[pick].rows(), mats[pick].cols());
  return Representation<F>(q, x.algebra(), std::move(verts), std::move(mats));
}

/// Random acyclic quiver on n vertices: each descending pair j > i carries an
/// arrow j -> i with probability about one third, and at least one arrow is
/// always present (for n >= 2).
inline Quiver random_acyclic_quiver(Rng& rng, std::size_t n) {
  std::vector<Arrow> arrows;
  for (std::size_t j = 2; j <= n; ++j)
    for (std::size_t i = 1; i < j; ++i)
      if (rng.below(100) < 35) arrows.push_back(Arrow{j, i});
  if (arrows.empty() && n >= 2) arrows.push_back(Arrow{n, 1});
  return Quiver(n, std::move(arrows));
}

}  // namespace monrep
