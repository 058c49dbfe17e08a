#pragma once

// Test-side helpers: a self-contained RNG and exhaustive brute-force oracles.
// Everything here deliberately avoids the library's reduction / solving code
// paths so that expected values come from an independent route (enumeration
// and counting over small prime fields, or frozen hand computations).

#include "monrep/field.hpp"
#include "monrep/mat.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testsupport {

struct TestRng {
  std::uint64_t s;
  explicit TestRng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

inline monrep::Mat<monrep::PrimeField> random_mat(const monrep::PrimeField& f, std::size_t r,
                                                  std::size_t c, TestRng& rng) {
  monrep::Mat<monrep::PrimeField> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.below(*f.order());
  return m;
}

inline monrep::Mat<monrep::RationalField> random_mat(const monrep::RationalField& f, std::size_t r,
                                                     std::size_t c, TestRng& rng) {
  monrep::Mat<monrep::RationalField> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = f.from_int(static_cast<std::int64_t>(rng.below(11)) - 5);
  return m;
}

/// Number of solutions of a x = 0 by plain enumeration of all p^n vectors.
inline std::uint64_t count_kernel_vectors(const monrep::Mat<monrep::PrimeField>& a) {
  const auto& f = a.field();
  const std::uint64_t p = *f.order();
  const std::size_t n = a.cols();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= p;
    if (total > (1u << 20)) throw std::runtime_error("kernel enumeration too large");
  }
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> v(n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = c % p;
      c /= p;
    }
    bool zero = true;
    for (std::size_t r = 0; r < a.rows() && zero; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc = (acc + a.at(r, i) * v[i]) % p;
      zero = acc == 0;
    }
    if (zero) ++hits;
  }
  return hits;
}

/// Visit every r x c matrix over GF(p); the callback returns void.
inline void enumerate_matrices(const monrep::PrimeField& f, std::size_t r, std::size_t c,
                               const std::function<void(const monrep::Mat<monrep::PrimeField>&)>& cb) {
  const std::uint64_t p = *f.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < r * c; ++i) {
    total *= p;
    if (total > (1u << 20)) throw std::runtime_error("matrix enumeration too large");
  }
  monrep::Mat<monrep::PrimeField> m(f, r, c);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        m.at(i, j) = x % p;
        x /= p;
      }
    cb(m);
  }
}

inline std::uint64_t ilog(std::uint64_t base, std::uint64_t value) {
  std::uint64_t e = 0;
  while (value > 1) {
    if (value % base != 0) throw std::runtime_error("not a power of the base");
    value /= base;
    ++e;
  }
  return e;
}

}  // namespace testsupport
