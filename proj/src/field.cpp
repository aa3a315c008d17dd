#include "ldlab/field.hpp"

#include <limits>

namespace ldlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw InvalidInput("characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }
  return {Kind::kPrime, p};
}

FieldSpec FieldSpec::from_characteristic(long long c) {
  if (c == 0) return rationals();
  if (c < 0 || c >= (1ll << 31)) {
    throw InvalidInput("characteristic " + std::to_string(c) + " out of range");
  }
  return prime(static_cast<std::uint32_t>(c));
}

std::string FieldSpec::name() const {
  if (kind == Kind::kRational) return "QQ";
  return "GF(" + std::to_string(characteristic) + ")";
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  FieldSpec::prime(p);  // validates
  barrett_ = std::numeric_limits<std::uint64_t>::max() / p;
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw LogicFailure("division by zero in GF(" + std::to_string(p_) + ")");
  // Extended Euclid on signed 64-bit values.
  long long t = 0, new_t = 1;
  long long r = p_, new_r = a;
  while (new_r != 0) {
    const long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Element>(t);
}

PrimeField::Element PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_rational(const mpq_class& q) const {
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0) {
    throw InvalidInput("coefficient " + q.get_str() + " has a denominator divisible by " +
                       std::to_string(p_));
  }
  return div(static_cast<Element>(num.get_ui()), static_cast<Element>(den.get_ui()));
}

}  // namespace ldlab
