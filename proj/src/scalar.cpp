#include "hh/scalar.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace hh {
namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t reduce(std::int64_t n, std::uint32_t p) {
  std::int64_t r = n % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return result;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  // residues are multiplied in 64 bits
  if (p >= (1U << 31)) throw std::invalid_argument("prime too large for F_p arithmetic");
  return Field{p};
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t n) const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.q_ = mpq_class(mpz_class(static_cast<long>(n)));
  else
    s.r_ = reduce(n, p_);
  return s;
}

Scalar Field::from_ratio(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw std::domain_error("zero denominator");
  return from_int(num) / from_int(den);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (p_ == 0) {
    Scalar s;
    s.q_ = q;
    return s;
  }
  return parse(q.get_str());
}

Scalar Field::parse(std::string_view text) const {
  auto parse_int = [](std::string_view t) {
    if (t.empty()) throw std::invalid_argument("empty number");
    mpz_class z;
    std::string s(t);
    if (s.front() == '+') s.erase(0, 1);
    if (z.set_str(s, 10) != 0) throw std::invalid_argument("malformed number '" + std::string(t) + "'");
    return z;
  };
  auto slash = text.find('/');
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) {
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
  }
  mpz_class p(p_);
  mpz_class n = num % p;
  if (n < 0) n += p;
  mpz_class d = den % p;
  if (d < 0) d += p;
  if (d == 0) throw std::invalid_argument("denominator vanishes mod " + std::to_string(p_));
  Scalar a = from_int(static_cast<std::int64_t>(n.get_ui()));
  Scalar b = from_int(static_cast<std::int64_t>(d.get_ui()));
  return a / b;
}

std::string Field::to_string() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Field Scalar::field() const { return Field{p_}; }

bool Scalar::is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

void Scalar::require_same_field(const Scalar& rhs) const {
  if (p_ != rhs.p_) throw std::domain_error("scalar arithmetic across different fields");
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ == 0)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : p_ - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs);
  if (p_ == 0)
    q_ += rhs.q_;
  else
    r_ = (r_ + rhs.r_) % p_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs);
  if (p_ == 0)
    q_ -= rhs.q_;
  else
    r_ = (r_ + p_ - rhs.r_) % p_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs);
  if (p_ == 0)
    q_ *= rhs.q_;
  else
    r_ = r_ * rhs.r_ % p_;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s = *this;
  if (p_ == 0)
    s.q_ = 1 / q_;
  else
    s.r_ = pow_mod(r_, p_ - 2, p_);  // Fermat
  return s;
}

Scalar Scalar::pow(std::int64_t exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result = field().one();
  Scalar base = *this;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

bool Scalar::operator==(const Scalar& rhs) const {
  if (p_ != rhs.p_) return false;
  return p_ == 0 ? q_ == rhs.q_ : r_ == rhs.r_;
}

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(r_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar sign_power(std::int64_t exponent, const Field& k) {
  return (exponent % 2 == 0) ? k.one() : -k.one();
}

Scalar koszul_sign(std::int64_t a_degree, std::int64_t b_degree, const Field& k) {
  return sign_power((a_degree % 2) * (b_degree % 2), k);
}

}  // namespace hh
