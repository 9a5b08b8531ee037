#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hh/grading.hpp"
#include "hh/scalar.hpp"

namespace hh {

/// One term `coeff * b_index` of a structure-constant expansion.
struct Term {
  std::size_t index;
  Scalar coeff;
};

/// Finite-dimensional graded algebra given by a full multiplication table on a
/// homogeneous basis.
class GradedAlgebra {
 public:
  using Table = std::vector<std::vector<std::vector<Term>>>;  // [i][j] -> b_i b_j

  GradedAlgebra(Field k, GradingGroupPtr group, std::vector<std::string> labels, std::vector<Degree> degrees,
                std::size_t unit, Table table);

  const Field& field() const { return field_; }
  const GradingGroupPtr& group() const { return group_; }
  std::size_t dim() const { return labels_.size(); }
  std::size_t unit() const { return unit_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Degree& degree(std::size_t i) const { return degrees_[i]; }
  /// Expansion of b_i * b_j; zero terms are never stored.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const Table& table() const { return table_; }

  std::optional<std::size_t> find_label(const std::string& label) const;

 private:
  Field field_;
  GradingGroupPtr group_;
  std::vector<std::string> labels_;
  std::vector<Degree> degrees_;
  std::size_t unit_;
  Table table_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Element of an algebra as a dense coefficient vector on the basis.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(AlgebraPtr algebra);
  AlgebraElement(AlgebraPtr algebra, std::vector<Scalar> coeffs);

  static AlgebraElement basis(const AlgebraPtr& algebra, std::size_t i, const Scalar& c);
  static AlgebraElement unit(const AlgebraPtr& algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
  void add(std::size_t i, const Scalar& c) { coeffs_[i] += c; }
  bool is_zero() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement scaled(const Scalar& c) const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

  bool operator==(const AlgebraElement& rhs) const;

  /// `2*x + -1/3*x^2`, `0` for zero.
  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  std::vector<Scalar> coeffs_;
};

/// Bilinear extension of the table; throws std::invalid_argument for
/// elements of different algebras.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// Degree of an element: homogeneous, inhomogeneous, or the zero element.
struct ElementDegree {
  enum class Kind { homogeneous, inhomogeneous, zero };
  Kind kind = Kind::zero;
  Degree degree;  // valid when homogeneous

  bool is_homogeneous() const { return kind == Kind::homogeneous; }
};

ElementDegree element_degree(const AlgebraElement& a);

struct AlgebraReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of associativity, unit laws, and graded multiplication.
AlgebraReport validate(const GradedAlgebra& a);

/// k[x]/(x^n) with basis 1, x, ..., x^{n-1} and |x| = `x_degree`
/// (default: Z-graded with |x| = 1).
AlgebraPtr truncated_polynomial(Field k, std::size_t n, const std::string& var = "x",
                                std::optional<Degree> x_degree = std::nullopt);

/// If `a` is k[x]/(x^n) presented on the basis 1, x, ..., x^{n-1}, returns n.
std::optional<std::size_t> truncated_polynomial_order(const GradedAlgebra& a);

/// A (x)^t B: basis a_i (x) b_j at index i*dim(B)+j, graded by F (+) G, with
/// (a (x) b)(a' (x) b') = t^<|a'|,|b|> aa' (x) bb'.
AlgebraPtr twisted_tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const class Bicharacter& t);

}  // namespace hh
