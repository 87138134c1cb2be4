#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rcd/rational.hpp"

namespace rcd {

// Multi-quadratic number field Q(sqrt(p_1), ..., sqrt(p_k)) over a fixed set
// of distinct primes. Elements are stored in the basis of square-free
// products prod_{i in S} sqrt(p_i), indexed by bitmask S.
class RadicalField {
 public:
  explicit RadicalField(std::vector<unsigned long> primes);

  // Smallest field containing sqrt(r) for every r in `radicands` (all r >= 0).
  static std::shared_ptr<const RadicalField> containing(std::span<const Rational> radicands);

  const std::vector<unsigned long>& primes() const { return primes_; }
  std::size_t dimension() const { return std::size_t{1} << primes_.size(); }

  // Value of the basis product for mask `m` as a double.
  double basis_value(std::size_t mask) const;

 private:
  std::vector<unsigned long> primes_;
};

class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(std::shared_ptr<const RadicalField> field, const Rational& value);

  // sqrt(r) inside `field`; throws std::domain_error if the field is too small.
  static QuadraticNumber sqrt(std::shared_ptr<const RadicalField> field, const Rational& r);

  QuadraticNumber& operator+=(const QuadraticNumber& other);
  QuadraticNumber& operator-=(const QuadraticNumber& other);
  QuadraticNumber& operator*=(const QuadraticNumber& other);
  friend QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b) { return a += b; }
  friend QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b) { return a -= b; }
  friend QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b) { return a *= b; }
  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b);

  bool is_rational() const;
  // Coefficient of the basis element 1. Throws if the value is irrational.
  Rational to_rational() const;
  double to_double() const;

  const std::vector<Rational>& coefficients() const { return coeffs_; }

 private:
  std::shared_ptr<const RadicalField> field_;
  std::vector<Rational> coeffs_;
};

}  // namespace rcd
