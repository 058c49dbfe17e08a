#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace monrep {

/// Runtime description of a coefficient field: a prime field GF(p) with
/// p < 2^31, or the rational numbers.
struct FieldSpec {
  enum class Kind { Prime, Rationals };
  Kind kind = Kind::Prime;
  std::uint32_t p = 2;  // modulus, meaningful for Kind::Prime only

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    if (a.kind != b.kind) return false;
    return a.kind == Kind::Rationals || a.p == b.p;
  }

  std::string name() const {
    return kind == Kind::Rationals ? std::string("Q") : std::to_string(p);
  }
};

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// GF(p) with elements stored as canonical representatives in [0, p).
/// Products of two representatives fit in 64 bits because p < 2^31.
class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 31)) throw FieldError("prime modulus must be < 2^31");
    if (!detail::is_prime_u32(p)) throw FieldError("modulus is not prime: " + std::to_string(p));
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }

  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("division by zero in GF(p)");
    // extended Euclid on (a, p)
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p_),
                 nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }

  Elem from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(m);
  }

  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::Prime, static_cast<std::uint32_t>(p_)}; }
  bool compatible(const PrimeField& o) const { return p_ == o.p_; }
  std::optional<std::uint64_t> order() const { return p_; }
  std::uint64_t modulus() const { return p_; }

 private:
  std::uint64_t p_;
};

/// Arbitrary-precision rationals (always stored in lowest terms).
class RationalField {
 public:
  using Elem = boost::multiprecision::cpp_rational;

  RationalField() = default;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a.is_zero()) throw FieldError("division by zero in Q");
    return Elem(1) / a;
  }

  Elem from_int(std::int64_t v) const { return Elem(v); }

  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::Rationals, 0}; }
  bool compatible(const RationalField&) const { return true; }
  std::optional<std::uint64_t> order() const { return std::nullopt; }

 private:
};

template <class F>
concept ExactField = requires(const F f, const typename F::Elem a, const typename F::Elem b) {
  typename F::Elem;
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.eq(a, b) } -> std::same_as<bool>;
  { f.add(a, b) } -> std::same_as<typename F::Elem>;
  { f.sub(a, b) } -> std::same_as<typename F::Elem>;
  { f.neg(a) } -> std::same_as<typename F::Elem>;
  { f.mul(a, b) } -> std::same_as<typename F::Elem>;
  { f.inv(a) } -> std::same_as<typename F::Elem>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::Elem>;
  { f.spec() } -> std::same_as<FieldSpec>;
  { f.compatible(f) } -> std::same_as<bool>;
  { f.order() } -> std::same_as<std::optional<std::uint64_t>>;
};

}  // namespace monrep
