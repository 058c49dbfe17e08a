#pragma once

#include "monrep/mat.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace monrep {

/// A certificate is a self-contained bundle of matrix identities: everything
/// needed to re-verify a claim is stored by value, so verification never has
/// to re-run the construction that produced the claim.
enum class CheckKind {
  ProductEq,  // product(lhs) == product(rhs); empty rhs means the zero matrix
  RankEq,     // rank(lhs[0]) == expected (lhs has exactly one matrix)
  Closure,    // iterate span growth of lhs[0] under the multiplier list rhs
};

template <ExactField F>
struct Check {
  CheckKind kind = CheckKind::ProductEq;
  std::string name;
  std::vector<Mat<F>> lhs;
  std::vector<Mat<F>> rhs;
  std::int64_t expected = 0;   // RankEq / Closure: expected terminal rank
  bool accumulate = false;     // Closure: keep earlier span (subalgebra closure)
  std::int64_t max_steps = 0;  // Closure: iteration bound (0 = ambient dimension)
};

template <ExactField F>
struct Certificate {
  std::string kind;
  std::vector<Check<F>> checks;
  bool verified = false;

  void add_product_eq(std::string name, std::vector<Mat<F>> lhs, std::vector<Mat<F>> rhs) {
    checks.push_back(Check<F>{CheckKind::ProductEq, std::move(name), std::move(lhs), std::move(rhs), 0, false, 0});
  }
  void add_zero_eq(std::string name, std::vector<Mat<F>> lhs) {
    add_product_eq(std::move(name), std::move(lhs), {});
  }
  void add_rank_eq(std::string name, Mat<F> m, std::int64_t expected) {
    checks.push_back(Check<F>{CheckKind::RankEq, std::move(name), {std::move(m)}, {}, expected, false, 0});
  }
  void add_closure(std::string name, Mat<F> start, std::vector<Mat<F>> multipliers,
                   std::int64_t expected_rank, bool accumulate, std::int64_t max_steps) {
    checks.push_back(Check<F>{CheckKind::Closure, std::move(name), {std::move(start)},
                              std::move(multipliers), expected_rank, accumulate, max_steps});
  }
};

namespace detail {

template <ExactField F>
Mat<F> fold_product(const std::vector<Mat<F>>& ms) {
  Mat<F> acc = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = acc * ms[i];
  return acc;
}

}  // namespace detail

template <ExactField F>
bool check_holds(const Check<F>& c) {
  switch (c.kind) {
    case CheckKind::ProductEq: {
      if (c.lhs.empty()) return false;
      Mat<F> l = detail::fold_product(c.lhs);
      if (c.rhs.empty()) return l.is_zero();
      Mat<F> r = detail::fold_product(c.rhs);
      return l == r;
    }
    case CheckKind::RankEq: {
      if (c.lhs.size() != 1 || c.expected < 0) return false;
      return rank(c.lhs.front()) == static_cast<std::size_t>(c.expected);
    }
    case CheckKind::Closure: {
      if (c.lhs.size() != 1) return false;
      Mat<F> span = column_space(c.lhs.front()).basis;
      std::int64_t bound = c.max_steps > 0 ? c.max_steps
                                           : static_cast<std::int64_t>(c.lhs.front().rows()) + 1;
      for (std::int64_t step = 0; step < bound; ++step) {
        std::vector<Mat<F>> parts;
        if (c.accumulate) parts.push_back(span);
        for (const Mat<F>& m : c.rhs) parts.push_back(m * span);
        if (parts.empty()) break;
        Mat<F> next = column_space(hstack(parts)).basis;
        // accumulate: span grows, equal rank means fixpoint; power chain:
        // compare canonical bases (ideal power chains descend, so this stops)
        bool stable = next.cols() == span.cols() && (c.accumulate || next == span);
        span = std::move(next);
        if (stable || span.cols() == 0) break;
      }
      return span.cols() == static_cast<std::size_t>(c.expected);
    }
  }
  return false;
}

/// Re-run every stored identity; independent of whatever code built the
/// certificate. The name of the first failing check is reported if requested.
template <ExactField F>
bool verify(const Certificate<F>& cert, std::string* first_failure = nullptr) {
  for (const Check<F>& c : cert.checks)
    if (!check_holds(c)) {
      if (first_failure) *first_failure = c.name;
      return false;
    }
  return true;
}

template <ExactField F>
void finalize(Certificate<F>& cert) {
  cert.verified = verify(cert);
}

}  // namespace monrep
