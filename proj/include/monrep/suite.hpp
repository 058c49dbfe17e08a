#pragma once

#include "monrep/embed.hpp"
#include "monrep/generate.hpp"
#include "monrep/homological.hpp"
#include "monrep/module.hpp"
#include "monrep/quiver.hpp"
#include "monrep/rep.hpp"
#include "monrep/rng.hpp"
#include "monrep/stable.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace monrep {

/// Randomized verification batteries shared by the command-line driver and
/// the acceptance harness. Instance #k of a battery draws all its randomness
/// from Rng(seed).split(k), so any failure is reproducible in isolation and
/// results do not depend on scheduling. Instances may run on several threads
/// (capped by the MONREP_THREADS environment variable); outcomes are stored
/// by instance index, keeping reports byte-identical for a given config.

struct InstanceOutcome {
  bool ok = true;
  bool finding = false;  // informational disagreement; never fails a battery
  std::string message;
};

struct BatteryResult {
  std::string name;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
  std::vector<std::string> findings;

  bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::size_t suite_thread_cap() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("MONREP_THREADS")) {
    std::size_t cap = 0;
    for (const char* c = env; *c; ++c) {
      if (*c < '0' || *c > '9') return hw;
      cap = cap * 10 + static_cast<std::size_t>(*c - '0');
    }
    if (cap > 0 && cap < hw) hw = cap;
  }
  return hw;
}

/// Run fn(k) for k in [0, count) on up to suite_thread_cap() threads,
/// collecting results in instance order. fn must not throw; wrap bodies
/// with guarded() below.
template <typename Fn>
std::vector<InstanceOutcome> indexed_instances(std::size_t count, Fn&& fn) {
  std::vector<InstanceOutcome> out(count);
  std::size_t threads = suite_thread_cap();
  if (threads > count) threads = count;
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = fn(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        out[k] = fn(k);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

template <typename Fn>
InstanceOutcome guarded(std::size_t k, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return InstanceOutcome{false, false,
                           "instance " + std::to_string(k) + ": unexpected error: " + e.what()};
  }
}

inline BatteryResult collect(std::string name, std::vector<InstanceOutcome> outs) {
  BatteryResult r;
  r.name = std::move(name);
  r.total = outs.size();
  for (const InstanceOutcome& o : outs) {
    if (o.ok) ++r.passed;
    if (!o.ok) r.failures.push_back(o.message);
    else if (o.finding) r.findings.push_back(o.message);
  }
  return r;
}

}  // namespace detail

// --------------------------------------------------------------------------
// Standard configurations

struct NamedQuiver {
  std::string name;
  Quiver quiver;
};

/// The fixed fan-in/fan-out shapes plus one random acyclic 5-vertex quiver
/// derived deterministically from the seed.
inline std::vector<NamedQuiver> standard_quivers(std::uint64_t seed) {
  Rng qr = Rng(seed).split(1000003);
  return {NamedQuiver{"A2", Quiver(2, {Arrow{2, 1}})},
          NamedQuiver{"one-source-two-sinks", Quiver(3, {Arrow{3, 1}, Arrow{3, 2}})},
          NamedQuiver{"two-sources-one-sink", Quiver(3, {Arrow{2, 1}, Arrow{3, 1}})},
          NamedQuiver{"random5", random_acyclic_quiver(qr, 5)}};
}

struct NamedAlgebra {
  std::string name;
  AlgebraPtr<PrimeField> algebra;
};

/// The coefficient algebras exercised by every randomized battery. All three
/// are self-injective.
inline std::vector<NamedAlgebra> standard_algebras() {
  Quiver loop(1, {Arrow{1, 1}});
  Quiver cycle2(2, {Arrow{1, 2}, Arrow{2, 1}});
  return {NamedAlgebra{"F2[x]/x^2",
                       monomial_quotient(loop, {{0, 0}}, PrimeField(2), "F2[x]/x^2")},
          NamedAlgebra{"F3[x]/x^3",
                       monomial_quotient(loop, {{0, 0, 0}}, PrimeField(3), "F3[x]/x^3")},
          NamedAlgebra{"Nakayama2/F2",
                       monomial_quotient(cycle2, {{0, 1}, {1, 0}}, PrimeField(2), "Nakayama2/F2")}};
}

// --------------------------------------------------------------------------
// Batteries

/// Random constrained representations embed into injective objects: the
/// construction certificate verifies, the per-vertex maps are injective with
/// exact columns, and the cokernel is again constrained.
template <ExactField F>
BatteryResult embedding_battery(const std::string& name, const Quiver& q, const AlgebraPtr<F>& a,
                                std::size_t count, std::uint64_t seed) {
  auto outs = detail::indexed_instances(count, [&](std::size_t k) {
    return detail::guarded(k, [&] {
      Rng rng = Rng(seed).split(k);
      Representation<F> x = random_monic_rep(q, a, rng);
      EmbeddingResult<F> emb = injective_embedding(x);
      std::string bad;
      if (!verify(emb.cert, &bad))
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) + ": " + bad};
      if (!is_monic(emb.z).monic)
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) + ": cokernel not constrained"};
      return InstanceOutcome{};
    });
  });
  return detail::collect(name, std::move(outs));
}

/// Stripping the source branches is exact, leaves a constrained cokernel
/// vanishing at the sources, and the iterated filtration stays within the
/// longest-path stage bound.
template <ExactField F>
BatteryResult strip_battery(const std::string& name, const Quiver& q, const AlgebraPtr<F>& a,
                            std::size_t count, std::uint64_t seed) {
  auto outs = detail::indexed_instances(count, [&](std::size_t k) {
    return detail::guarded(k, [&] {
      Rng rng = Rng(seed).split(k);
      Representation<F> x = random_monic_rep(q, a, rng);
      StripResult<F> st = source_strip(x);
      std::string bad;
      if (!verify(st.cert, &bad))
        return InstanceOutcome{false, false, "instance " + std::to_string(k) + ": " + bad};
      if (!is_monic(st.z).monic)
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) + ": strip cokernel not constrained"};
      FiltrationResult<F> filt = strip_filtration(x);
      if (!verify(filt.cert, &bad))
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) + ": filtration: " + bad};
      if (filt.stages.size() > q.longest_path_length() + 1)
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) + ": filtration used " +
                                   std::to_string(filt.stages.size()) + " stages"};
      return InstanceOutcome{};
    });
  });
  return detail::collect(name, std::move(outs));
}

/// Hom from a one-branch representation equals Hom into the branch vertex:
/// random (module, representation, vertex) triples.
inline BatteryResult adjunction_battery(const std::vector<NamedQuiver>& quivers,
                                        const std::vector<NamedAlgebra>& algebras,
                                        std::size_t count, std::uint64_t seed) {
  auto outs = detail::indexed_instances(count, [&](std::size_t k) {
    return detail::guarded(k, [&] {
      Rng rng = Rng(seed).split(k);
      const Quiver& q = quivers[rng.below(quivers.size())].quiver;
      const AlgebraPtr<PrimeField>& a = algebras[rng.below(algebras.size())].algebra;
      Module<PrimeField> m = random_module(a, rng);
      Representation<PrimeField> x = random_rep(q, a, rng);
      std::size_t i = 1 + rng.below(q.num_vertices());
      Certificate<PrimeField> cert = adjunction_check(m, x, i);
      std::string bad;
      if (!verify(cert, &bad))
        return InstanceOutcome{false, false, "instance " + std::to_string(k) + ": " + bad};
      return InstanceOutcome{};
    });
  });
  return detail::collect("adjunction", std::move(outs));
}

/// The cokernel of a block-diagonal map is isomorphic to the direct sum of
/// the blockwise cokernels, witnessed by an explicit isomorphism.
inline BatteryResult cokernel_sum_battery(const std::vector<NamedAlgebra>& algebras,
                                          std::size_t count, std::uint64_t seed) {
  auto outs = detail::indexed_instances(count, [&](std::size_t k) {
    return detail::guarded(k, [&] {
      Rng rng = Rng(seed).split(k);
      const AlgebraPtr<PrimeField>& a = algebras[rng.below(algebras.size())].algebra;
      std::size_t parts = 1 + rng.below(3);
      std::vector<Module<PrimeField>> srcs, tgts, coks;
      std::vector<Mat<PrimeField>> mats;
      for (std::size_t t = 0; t < parts; ++t) {
        Module<PrimeField> m = random_module(a, rng);
        Module<PrimeField> n = random_module(a, rng);
        ModuleMap<PrimeField> h = random_hom(m, n, rng);
        coks.push_back(cokernel(h).quot);
        srcs.push_back(std::move(m));
        tgts.push_back(std::move(n));
        mats.push_back(h.mat);
      }
      Module<PrimeField> big_src = direct_sum(a, srcs).mod;
      Module<PrimeField> big_tgt = direct_sum(a, tgts).mod;
      ModuleMap<PrimeField> diag(big_src, big_tgt, block_diag(mats));
      Module<PrimeField> lhs = cokernel(diag).quot;
      Module<PrimeField> rhs = direct_sum(a, coks).mod;
      IsoResult<PrimeField> iso = is_isomorphic(lhs, rhs, seed + k);
      if (iso.status != IsoStatus::Yes)
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) +
                                   ": no isomorphism witness between the cokernels"};
      return InstanceOutcome{};
    });
  });
  return detail::collect("cokernel-of-diagonal", std::move(outs));
}

/// Over a self-injective coefficient algebra, projective and injective
/// branch objects coincide and each has vanishing embedding cokernel.
inline BatteryResult frobenius_battery(const std::vector<NamedQuiver>& quivers,
                                       const std::vector<NamedAlgebra>& algebras) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t qi = 0; qi < quivers.size(); ++qi)
    for (std::size_t ai = 0; ai < algebras.size(); ++ai) pairs.emplace_back(qi, ai);
  auto outs = detail::indexed_instances(pairs.size(), [&](std::size_t k) {
    return detail::guarded(k, [&] {
      const NamedQuiver& nq = quivers[pairs[k].first];
      const NamedAlgebra& na = algebras[pairs[k].second];
      Certificate<PrimeField> cert = frobenius_check(nq.quiver, na.algebra);
      std::string bad;
      if (!verify(cert, &bad))
        return InstanceOutcome{false, false, nq.name + " / " + na.name + ": " + bad};
      return InstanceOutcome{};
    });
  });
  return detail::collect("projective-injective-coincidence", std::move(outs));
}

/// Membership agreement between the vertexwise description and the
/// tensor-algebra description, on a half-monic half-perturbed population.
inline BatteryResult agreement_battery(const std::vector<NamedQuiver>& quivers,
                                       const std::vector<NamedAlgebra>& algebras,
                                       std::size_t count, std::uint64_t seed, std::size_t bound) {
  auto outs = detail::indexed_instances(count, [&](std::size_t k) {
    return detail::guarded(k, [&] {
      Rng rng = Rng(seed).split(k);
      const Quiver& q = quivers[rng.below(quivers.size())].quiver;
      const AlgebraPtr<PrimeField>& a = algebras[rng.below(algebras.size())].algebra;
      Representation<PrimeField> x = random_monic_rep(q, a, rng);
      bool expect_monic = (k % 2 == 0);
      if (!expect_monic) {
        auto bad_rep = perturb_non_monic(x, rng);
        if (bad_rep) x = *bad_rep;
        else expect_monic = true;  // nothing to break: keep the monic instance
      }
      AgreementReport rep = mon_cm_check(x, bound);
      if (rep.monic != expect_monic)
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) + ": expected monic=" +
                                   std::to_string(expect_monic)};
      if (!rep.agree)
        return InstanceOutcome{false, false,
                               "instance " + std::to_string(k) +
                                   ": two-sided membership disagrees (left=" +
                                   std::to_string(rep.left) + ", right=" +
                                   std::to_string(rep.right) + ")"};
      return InstanceOutcome{};
    });
  });
  return detail::collect("membership-agreement", std::move(outs));
}

/// Stable endomorphism dimension identity for random seed modules: the
/// branch-sum object has stable endomorphism dimension (number of paths) x
/// (module-level stable endomorphism dimension), with the explicit
/// isomorphism verified. Disagreements on random seeds are recorded as
/// findings, not failures.
inline BatteryResult end_iso_battery(const Quiver& q, const NamedAlgebra& na, std::size_t count,
                                     std::uint64_t seed) {
  auto outs = detail::indexed_instances(count, [&](std::size_t k) {
    return detail::guarded(k, [&] {
      Rng rng = Rng(seed).split(k);
      const AlgebraPtr<PrimeField>& a = na.algebra;
      Module<PrimeField> t = random_module(a, rng);
      std::size_t module_end = stable_hom_module(t, t).quotient_dim();
      RepDirectSum<PrimeField> mt = m_total(q, t);
      std::size_t rep_end = stable_hom(mt.rep, mt.rep).quotient_dim();
      std::size_t paths = q.all_paths().size();
      if (rep_end != paths * module_end)
        return InstanceOutcome{true, true,
                               "instance " + std::to_string(k) + " (" + na.name +
                                   ", dim t = " + std::to_string(t.dim()) +
                                   "): stable End dimension " + std::to_string(rep_end) +
                                   " != " + std::to_string(paths) + " * " +
                                   std::to_string(module_end)};
      try {
        end_iso_check(q, t);
      } catch (const CheckFailed& e) {
        return InstanceOutcome{true, true,
                               "instance " + std::to_string(k) + " (" + na.name +
                                   "): " + e.what()};
      }
      return InstanceOutcome{};
    });
  });
  return detail::collect("stable-endomorphism-identity/" + na.name, std::move(outs));
}

// --------------------------------------------------------------------------
// Full suite

struct SuiteReport {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::vector<BatteryResult> batteries;

  bool ok() const {
    for (const auto& b : batteries)
      if (!b.ok()) return false;
    return true;
  }
};

/// Run every battery at the given per-configuration instance count. Battery
/// seeds are derived from the suite seed by battery position, so the whole
/// report is a pure function of (count, seed).
inline SuiteReport run_standard_suite(std::size_t count, std::uint64_t seed) {
  SuiteReport report;
  report.seed = seed;
  report.count = count;
  std::vector<NamedQuiver> quivers = standard_quivers(seed);
  std::vector<NamedAlgebra> algebras = standard_algebras();
  std::uint64_t battery_index = 0;
  auto next_seed = [&] { return Rng(seed).split(battery_index++).next(); };

  for (const NamedQuiver& nq : quivers)
    for (const NamedAlgebra& na : algebras)
      report.batteries.push_back(embedding_battery("embedding/" + nq.name + "/" + na.name,
                                                   nq.quiver, na.algebra, count, next_seed()));
  for (const NamedQuiver& nq : quivers)
    report.batteries.push_back(strip_battery("source-strip/" + nq.name, nq.quiver,
                                             algebras[0].algebra, count, next_seed()));
  report.batteries.push_back(adjunction_battery(quivers, algebras, count, next_seed()));
  report.batteries.push_back(
      cokernel_sum_battery(algebras, count > 1 ? count / 2 : 1, next_seed()));
  report.batteries.push_back(frobenius_battery(quivers, algebras));
  report.batteries.push_back(agreement_battery(quivers, algebras, count, next_seed(), 2));
  Quiver a2 = quivers[0].quiver;
  for (const NamedAlgebra& na : algebras) {
    std::size_t n = count < 20 ? count : 20;
    report.batteries.push_back(end_iso_battery(a2, na, n, next_seed()));
  }
  return report;
}

}  // namespace monrep
