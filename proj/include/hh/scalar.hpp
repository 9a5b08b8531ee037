#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hh {

class Scalar;

/// Coefficient field: the rationals or a prime field F_p.
///
/// A Field is a plain value; every Scalar remembers the field it was made in
/// and arithmetic between different fields throws std::domain_error.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t n) const;
  Scalar from_ratio(std::int64_t num, std::int64_t den) const;
  /// Exact rational value, reduced mod p over F_p (denominator must be a unit).
  Scalar from_rational(const mpq_class& q) const;
  /// Parses `p/q`, `-3`, or a residue. Throws std::invalid_argument.
  Scalar parse(std::string_view text) const;

  std::string to_string() const;

  bool operator==(const Field&) const = default;

 private:
  friend class Scalar;
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

class Scalar {
 public:
  /// Rational zero. Prefer Field::zero() when the field may be F_p.
  Scalar() = default;

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  /// Multiplicative inverse; throws std::domain_error on zero.
  Scalar inverse() const;
  /// Integer power, negative exponents through the inverse.
  Scalar pow(std::int64_t exponent) const;

  bool operator==(const Scalar& rhs) const;

  /// Canonical text: `p/q` with `/1` omitted for Q, residue in [0,p) for F_p.
  std::string to_string() const;

  /// Only meaningful over Q.
  const mpq_class& rational() const { return q_; }
  /// Only meaningful over F_p.
  std::uint64_t residue() const { return r_; }

 private:
  friend class Field;

  void require_same_field(const Scalar& rhs) const;

  std::uint32_t p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// (-1)^exponent in the given field.
Scalar sign_power(std::int64_t exponent, const Field& k);

/// (-1)^(a*b): the Koszul sign for passing an object of degree `b` past one of
/// degree `a`. Every Koszul sign in the library comes from here.
Scalar koszul_sign(std::int64_t a_degree, std::int64_t b_degree, const Field& k);

}  // namespace hh
