#pragma once

// Minimal projective resolutions with exactness certificates, higher
// extension-space dimensions computed from the dualized resolution complex,
// the injective dimension of the regular module, bounded perpendicular
// membership reports, and the two-sided comparison between vertexwise
// perpendicular monicity of a representation and perpendicular membership of
// its module over the path-algebra tensor.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monrep/algebra.hpp"
#include "monrep/certificate.hpp"
#include "monrep/mat.hpp"
#include "monrep/module.hpp"
#include "monrep/quiver.hpp"
#include "monrep/rep.hpp"

namespace monrep {

// ---------------------------------------------------------------------------
// Minimal projective resolutions.
// ---------------------------------------------------------------------------

template <ExactField F>
struct ResolutionChain {
  Module<F> target;
  std::vector<Module<F>> terms;    // degrees 0..L, each a sum of indecomposable projectives
  std::vector<ModuleMap<F>> maps;  // maps[0]: terms[0] -> target; maps[k]: terms[k] -> terms[k-1]
  std::vector<std::vector<std::size_t>> summands;  // idempotent index per block of each term
  Certificate<F> cert;
};

template <ExactField F>
ResolutionChain<F> projective_resolution(const Module<F>& m, std::size_t length) {
  const auto& a = m.algebra();
  const auto& cache = module_cache(a);
  ResolutionChain<F> out{m, {}, {}, {}, {}};

  Module<F> cur = m;
  std::optional<ModuleMap<F>> incl;  // kernel of the previous cover, included in its term
  for (std::size_t k = 0; k <= length; ++k) {
    CoverResult<F> cov = projective_cover(cur);
    out.terms.push_back(cov.cover);
    out.summands.push_back(cov.summands);
    if (k == 0)
      out.maps.push_back(cov.project);
    else
      out.maps.push_back(
          ModuleMap<F>(cov.cover, out.terms[k - 1], incl->mat * cov.project.mat));
    SubmoduleResult<F> ker = kernel(cov.project);
    cur = ker.sub;
    incl = ker.incl;
  }

  Certificate<F> cert;
  cert.kind = "minimal projective resolution";
  cert.add_rank_eq("augmentation surjective", out.maps[0].mat,
                   static_cast<std::int64_t>(m.dim()));
  for (std::size_t k = 0; k <= length; ++k) {
    const Module<F>& tgt = k == 0 ? m : out.terms[k - 1];
    detail::add_hom_checks(cert, "differential at degree " + std::to_string(k), out.terms[k],
                           tgt, out.maps[k].mat);
    std::size_t block_total = 0;
    for (std::size_t idx : out.summands[k]) block_total += cache.proj[idx].mod.dim();
    cert.add_rank_eq("degree " + std::to_string(k) + " assembled from projective blocks",
                     Mat<F>::identity(m.field(), out.terms[k].dim()),
                     static_cast<std::int64_t>(block_total));
    if (k == 0) continue;
    cert.add_zero_eq("composite vanishes at degree " + std::to_string(k),
                     std::vector<Mat<F>>{out.maps[k - 1].mat * out.maps[k].mat});
    const std::int64_t nullity = static_cast<std::int64_t>(out.terms[k - 1].dim()) -
                                 static_cast<std::int64_t>(rank(out.maps[k - 1].mat));
    cert.add_rank_eq("image spans the kernel at degree " + std::to_string(k - 1),
                     out.maps[k].mat, nullity);
  }
  finalize(cert);
  if (!cert.verified) {
    std::string bad;
    verify(cert, &bad);
    throw ModuleError("projective resolution certificate failed: " + bad);
  }
  out.cert = std::move(cert);
  return out;
}

// ---------------------------------------------------------------------------
// Extension-space dimensions.
// ---------------------------------------------------------------------------

/// Dimensions of the extension spaces from m to n in degrees 1..imax,
/// measured as ker/im of the dualized minimal resolution complex.
template <ExactField F>
std::vector<std::size_t> ext_dims(const Module<F>& m, const Module<F>& n, std::size_t imax) {
  if (imax == 0) return {};
  const F& f = m.field();
  ResolutionChain<F> res = projective_resolution(m, imax + 1);

  std::vector<std::vector<Mat<F>>> bases;
  for (std::size_t k = 0; k <= imax + 1; ++k) bases.push_back(hom_basis(res.terms[k], n));

  // dstar[k-1]: matrix of precomposition with maps[k], from the hom space at
  // degree k-1 to the hom space at degree k
  std::vector<Mat<F>> dstar;
  for (std::size_t k = 1; k <= imax + 1; ++k) {
    const std::size_t len = res.terms[k].dim() * n.dim();
    Mat<F> basis_mat(f, len, bases[k].size());
    for (std::size_t j = 0; j < bases[k].size(); ++j)
      basis_mat.set_block(0, j, detail::vec_of(f, std::vector<Mat<F>>{bases[k][j]}));
    Mat<F> rhs(f, len, bases[k - 1].size());
    for (std::size_t j = 0; j < bases[k - 1].size(); ++j)
      rhs.set_block(0, j,
                    detail::vec_of(f, std::vector<Mat<F>>{bases[k - 1][j] * res.maps[k].mat}));
    auto sol = solve(basis_mat, rhs);
    if (!sol) throw ModuleError("precomposition left the hom space span");
    dstar.push_back(std::move(*sol));
  }

  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= imax; ++i) {
    const std::size_t ker = bases[i].size() - rank(dstar[i]);
    out.push_back(ker - rank(dstar[i - 1]));
  }
  return out;
}

template <ExactField F>
std::size_t ext_dim(const Module<F>& m, const Module<F>& n, std::size_t i) {
  if (i == 0) return hom_basis(m, n).size();
  return ext_dims(m, n, i).back();
}

// ---------------------------------------------------------------------------
// Injective dimension of the regular module.
// ---------------------------------------------------------------------------

/// Length of the minimal injective coresolution of the regular module, when
/// it terminates within the cutoff; empty optional otherwise.
template <ExactField F>
std::optional<std::size_t> injective_dimension(const AlgebraPtr<F>& a, std::size_t cutoff) {
  Module<F> cur = regular_module(a);
  for (std::size_t d = 0; d <= cutoff; ++d) {
    EnvelopeResult<F> env = injective_envelope(cur);
    Module<F> cok = cokernel(env.embed).quot;
    if (cok.dim() == 0) return d;
    cur = std::move(cok);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Perpendicular membership.
// ---------------------------------------------------------------------------

struct PerpReport {
  bool member = false;
  std::size_t bound = 0;
  std::vector<std::size_t> table;  // extension dimensions against the target, degrees 1..bound
  std::string justification;       // caller-supplied reason the bound suffices
};

template <ExactField F>
PerpReport perp_membership(const Module<F>& m, const Module<F>& t, std::size_t d,
                           std::string justification = "") {
  PerpReport r;
  r.bound = d;
  r.justification = std::move(justification);
  r.table = ext_dims(m, t, d);
  r.member = true;
  for (std::size_t v : r.table)
    if (v != 0) r.member = false;
  return r;
}

// ---------------------------------------------------------------------------
// Two-sided comparison for representations.
// ---------------------------------------------------------------------------

struct AgreementReport {
  bool monic = false;
  std::vector<bool> vertexwise_perp;  // vertex values in the perpendicular of the regular module
  std::vector<bool> cok_perp;         // vertexwise cokernels likewise
  bool lambda_perp = false;           // tensor-algebra module in the perpendicular of its regular module
  std::size_t bound = 0;
  bool left = false;   // monic and all vertexwise memberships
  bool right = false;  // membership over the tensor algebra
  bool agree = false;
};

template <ExactField F>
AgreementReport mon_cm_check(const Representation<F>& x, std::size_t d) {
  AgreementReport r;
  r.bound = d;
  const Quiver& q = x.quiver();
  const AlgebraPtr<F>& a = x.algebra();
  Module<F> reg = regular_module(a);

  r.monic = is_monic(x).monic;
  bool vertex_all = true, cok_all = true;
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    const bool vm = perp_membership(x.vertex(i), reg, d).member;
    r.vertexwise_perp.push_back(vm);
    vertex_all = vertex_all && vm;
  }
  for (std::size_t i = 1; i <= q.num_vertices(); ++i) {
    const bool cm = perp_membership(cok_i(x, i).cok, reg, d).member;
    r.cok_perp.push_back(cm);
    cok_all = cok_all && cm;
  }

  AlgebraPtr<F> lambda = tensor_with_path_algebra(q, *a);
  Module<F> lm = to_lambda_module(x, lambda);
  r.lambda_perp = perp_membership(lm, regular_module(lambda), d).member;

  r.left = r.monic && vertex_all && cok_all;
  r.right = r.lambda_perp;
  r.agree = (r.left == r.right);
  return r;
}

}  // namespace monrep
