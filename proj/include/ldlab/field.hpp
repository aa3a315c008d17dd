#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "ldlab/errors.hpp"

namespace ldlab {

// Which exact field the computation runs over. Characteristic 0 selects the
// rationals.
struct FieldSpec {
  enum class Kind { kPrime, kRational };

  Kind kind = Kind::kPrime;
  std::uint32_t characteristic = 101;

  static FieldSpec prime(std::uint32_t p);
  static FieldSpec rationals() { return {Kind::kRational, 0}; }
  // Accepts 0 (rationals) or a prime below 2^31.
  static FieldSpec from_characteristic(long long c);

  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

// GF(p) for a prime p < 2^31. Elements are kept in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element from_int(long long v) const;
  // Throws InvalidInput if the denominator vanishes mod p.
  Element from_rational(const mpq_class& q) const;
  // Representative in (-p/2, p/2], used when printing.
  long long lift(Element a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : a;
  }
  std::string format(Element a) const { return std::to_string(lift(a)); }

  // dst -= c * src, elementwise.
  void sub_mul(std::span<Element> dst, Element c, std::span<const Element> src) const {
    const std::uint64_t nc = p_ - c;
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (src[k] != 0) dst[k] = reduce(dst[k] + nc * src[k]);
    }
  }
  // dst += c * src, elementwise.
  void add_mul(std::span<Element> dst, Element c, std::span<const Element> src) const {
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (src[k] != 0) dst[k] = reduce(dst[k] + static_cast<std::uint64_t>(c) * src[k]);
    }
  }
  void scale(std::span<Element> v, Element c) const {
    for (auto& x : v) x = mul(x, c);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  // Barrett reduction, valid for any 64-bit input.
  Element reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<Element>(r);
  }

  std::uint32_t p_;
  std::uint64_t barrett_;
};

// The rationals via GMP. Slow on large problems because of coefficient
// growth, but exact.
class RationalField {
 public:
  using Element = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (is_zero(a)) throw LogicFailure("division by zero in Q");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return a * inv(b); }

  Element from_int(long long v) const { return Element(static_cast<long>(v)); }
  Element from_rational(const mpq_class& q) const { return q; }
  std::string format(const Element& a) const { return a.get_str(); }

  void sub_mul(std::span<Element> dst, const Element& c, std::span<const Element> src) const {
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (sgn(src[k]) != 0) dst[k] -= c * src[k];
    }
  }
  void add_mul(std::span<Element> dst, const Element& c, std::span<const Element> src) const {
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (sgn(src[k]) != 0) dst[k] += c * src[k];
    }
  }
  void scale(std::span<Element> v, const Element& c) const {
    for (auto& x : v) x *= c;
  }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept ExactField = requires(const F& f, const typename F::Element& a) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.spec() } -> std::convertible_to<FieldSpec>;
};

// Calls fn with a concrete field object matching spec. Every overload of fn
// must return the same type.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::kRational) return std::forward<Fn>(fn)(RationalField{});
  return std::forward<Fn>(fn)(PrimeField{spec.characteristic});
}

}  // namespace ldlab
