#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hh/lifting.hpp"

namespace hh {

/// Thrown when a bar complex would exceed dim(R)^{N+2} > 10^6 k-dimensions.
struct SizeGuardError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kBarGuard = 1000000;

/// Generator index of e(r_1, ..., r_n): sum r_i d^{n-i}.
std::size_t bar_index(std::size_t dim, const std::vector<std::size_t>& tuple);
std::vector<std::size_t> bar_tuple(std::size_t dim, std::size_t n, std::size_t index);

/// Unnormalized bar resolution of `r` truncated at `length`:
/// d e(r_1..r_n) = r_1 e(r_2..r_n) + sum_i (-1)^i e(..r_i r_{i+1}..) + (-1)^n e(r_1..r_{n-1}) r_n.
ComplexPtr bar_resolution(const AlgebraPtr& r, std::size_t length);

/// Gerstenhaber bracket of bar cochains through the circle product
/// f o g = sum_i (-1)^{(i-1)(n-1)} f(.., g(..), ..).
Cochain circle_product(const Cochain& f, const Cochain& g);
Cochain circle_bracket(const Cochain& f, const Cochain& g);

/// iota: P -> Bar and pi: Bar -> P lifting the identity of A.
class ComparisonMaps {
 public:
  /// Lifts both maps up to `up_to`; needs rank P_0 = 1 with augmentation 1.
  ComparisonMaps(ComplexPtr p, ComplexPtr bar, std::size_t up_to);

  const ComplexPtr& resolution() const { return p_; }
  const ComplexPtr& bar() const { return bar_; }
  const ChainMap& iota() const { return iota_; }
  const ChainMap& pi() const { return pi_; }

  /// f o iota o pi ~ f for every cohomology-basis class of P in degrees 0..up_to-1.
  bool certify() const;
  bool certified() const { return certified_; }

  /// f o pi on the bar complex.
  Cochain to_bar(const Cochain& f) const;
  /// F o iota on P.
  Cochain from_bar(const Cochain& f) const;

 private:
  ComplexPtr p_;
  ComplexPtr bar_;
  ChainMap iota_;
  ChainMap pi_;
  std::size_t up_to_;
  bool certified_ = false;
};

struct OracleVerdict {
  std::size_t m_index, n_index;  // positions in `classes`
  bool pass = false;
  std::string detail;
};

struct OracleReport {
  bool comparison_certified = false;
  std::vector<Cochain> classes;
  std::vector<OracleVerdict> pairs;
  bool all_pass() const;
  /// `PASS oracle=(i,j)` / `FAIL oracle=(i,j) ...` lines.
  std::string to_string() const;
};

/// Brackets of all pairs of cohomology-basis classes of degrees m, n >= 1 with
/// m + n - 1 <= max_degree, via homotopy liftings on `p` and via the circle
/// bracket on the bar resolution after transport; compared on both sides.
OracleReport oracle_check(const ComplexPtr& p, std::size_t max_degree, std::size_t threads = 1);

}  // namespace hh
