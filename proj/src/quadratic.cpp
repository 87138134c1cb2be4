#include "rcd/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcd {

namespace {

// Square-free kernel of n*d for r = n/d, as a list of primes, plus the
// rational prefactor s/d with sqrt(r) = (s/d) * sqrt(prod primes).
struct RadicalForm {
  Rational prefactor;
  std::vector<unsigned long> primes;
};

RadicalForm radical_form(const Rational& r) {
  if (r < 0) throw std::domain_error("square root of a negative rational");
  RadicalForm out;
  if (r == 0) {
    out.prefactor = 0;
    return out;
  }
  Rational c(r);
  c.canonicalize();
  mpz_class m = c.get_num() * c.get_den();
  mpz_class square_part = 1;
  for (unsigned long p = 2; mpz_class(p) * p <= m; ++p) {
    unsigned count = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++count;
    }
    for (unsigned i = 0; i + 1 < count; i += 2) square_part *= p;
    if (count % 2 == 1) out.primes.push_back(p);
  }
  if (m > 1) {
    if (!m.fits_ulong_p()) throw std::domain_error("radicand too large");
    out.primes.push_back(m.get_ui());
  }
  out.prefactor = Rational(square_part, c.get_den());
  out.prefactor.canonicalize();
  return out;
}

}  // namespace

RadicalField::RadicalField(std::vector<unsigned long> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  if (primes_.size() > 16) throw std::length_error("too many radicals");
}

std::shared_ptr<const RadicalField> RadicalField::containing(std::span<const Rational> radicands) {
  std::vector<unsigned long> primes;
  for (const auto& r : radicands) {
    auto form = radical_form(r);
    primes.insert(primes.end(), form.primes.begin(), form.primes.end());
  }
  return std::make_shared<const RadicalField>(std::move(primes));
}

double RadicalField::basis_value(std::size_t mask) const {
  double v = 1.0;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (mask >> i & 1u) v *= std::sqrt(static_cast<double>(primes_[i]));
  return v;
}

QuadraticNumber::QuadraticNumber(std::shared_ptr<const RadicalField> field, const Rational& value)
    : field_(std::move(field)) {
  coeffs_.assign(field_->dimension(), Rational(0));
  coeffs_[0] = value;
}

QuadraticNumber QuadraticNumber::sqrt(std::shared_ptr<const RadicalField> field, const Rational& r) {
  auto form = radical_form(r);
  QuadraticNumber out(field, 0);
  std::size_t mask = 0;
  const auto& primes = out.field_->primes();
  for (auto p : form.primes) {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p) throw std::domain_error("radical not in field");
    mask |= std::size_t{1} << (it - primes.begin());
  }
  out.coeffs_[mask] = form.prefactor;
  return out;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& other) {
  if (!field_) return *this = other;
  if (!other.field_) return *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& other) {
  if (!other.field_) return *this;
  if (!field_) *this = QuadraticNumber(other.field_, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& other) {
  if (!field_ || !other.field_) throw std::logic_error("uninitialized QuadraticNumber");
  const auto& primes = field_->primes();
  std::vector<Rational> out(coeffs_.size(), Rational(0));
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < other.coeffs_.size(); ++b) {
      if (other.coeffs_[b] == 0) continue;
      Rational term = coeffs_[a] * other.coeffs_[b];
      std::size_t common = a & b;
      for (std::size_t i = 0; common; ++i, common >>= 1)
        if (common & 1u) term *= static_cast<unsigned long>(primes[i]);
      out[a ^ b] += term;
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
  QuadraticNumber d = a;
  d -= b;
  return std::all_of(d.coeffs_.begin(), d.coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool QuadraticNumber::is_rational() const {
  return std::all_of(coeffs_.begin() + std::min<std::size_t>(1, coeffs_.size()), coeffs_.end(),
                     [](const Rational& c) { return c == 0; });
}

Rational QuadraticNumber::to_rational() const {
  if (!is_rational()) throw std::domain_error("value is irrational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

double QuadraticNumber::to_double() const {
  double v = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) v += coeffs_[i].get_d() * field_->basis_value(i);
  return v;
}

}  // namespace rcd
