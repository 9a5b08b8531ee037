#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/linalg.hpp"

namespace hh {

/// Coordinates of the k-basis element a_left * e_gen * a_right of a free
/// bimodule of rank r over an algebra of dimension d.
struct FreeIndex {
  std::size_t gen;
  std::size_t left;
  std::size_t right;
};

inline std::size_t free_index(std::size_t dim, std::size_t gen, std::size_t left, std::size_t right) {
  return (gen * dim + left) * dim + right;
}

inline FreeIndex decode_free_index(std::size_t dim, std::size_t index) {
  return {index / (dim * dim), (index / dim) % dim, index % dim};
}

/// a_left * v * a_right for v in a free bimodule over `a`.
SparseVector act(const GradedAlgebra& a, std::size_t left, const SparseVector& v, std::size_t right);

/// Sum of pure tensors a_left (x) a_right with coefficients: an element of the
/// enveloping algebra acting on a generator.
struct BimoduleWord {
  struct Term {
    std::size_t left;
    std::size_t right;
    Scalar coeff;
  };
  std::vector<Term> terms;  // sorted by (left, right), no zero coefficients

  bool empty() const { return terms.empty(); }
  /// The component of `v` on generator `gen`.
  static BimoduleWord of(const SparseVector& v, std::size_t dim, std::size_t gen);
  /// Adds this word applied to generator `gen` into `out`.
  void add_to(SparseVector& out, std::size_t dim, std::size_t gen) const;
  /// `1*x|1 + -1*1|x`, `0` when empty.
  std::string to_string(const GradedAlgebra& a) const;
};

/// Nonnegatively graded complex of finitely generated free bimodules,
/// truncated at `length`, with augmentation onto the algebra.
///
/// The differential is stored on generators: `differential(n, g)` is d(e_g) as
/// an element of P_{n-1} written on the k-basis a_s e_h a_t.
class FreeBimoduleComplex {
 public:
  enum class Kind { inline_complex, periodic, bar, tensor_square, twisted_total };

  FreeBimoduleComplex(AlgebraPtr algebra, std::vector<std::vector<Degree>> generator_degrees,
                      std::vector<std::vector<SparseVector>> differential, std::vector<AlgebraElement> augmentation,
                      std::vector<std::vector<std::string>> generator_labels = {});

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t length() const { return degrees_.size() - 1; }
  std::size_t rank(std::size_t n) const { return degrees_.at(n).size(); }
  /// k-dimension of P_n.
  std::size_t k_dim(std::size_t n) const { return rank(n) * algebra_->dim() * algebra_->dim(); }
  const Degree& generator_degree(std::size_t n, std::size_t g) const { return degrees_.at(n).at(g); }
  const std::string& generator_label(std::size_t n, std::size_t g) const { return labels_.at(n).at(g); }
  const SparseVector& differential(std::size_t n, std::size_t g) const { return differential_.at(n).at(g); }
  const AlgebraElement& augmentation(std::size_t g) const { return augmentation_.at(g); }
  const std::vector<AlgebraElement>& augmentation() const { return augmentation_; }

  /// Entry (row, col) of the matrix of d_n: the coefficient word of e_row in d(e_col).
  BimoduleWord differential_entry(std::size_t n, std::size_t row, std::size_t col) const;

  /// d applied to an element of P_n (n >= 1).
  SparseVector apply_differential(std::size_t n, const SparseVector& x) const;
  /// mu applied to an element of P_0.
  AlgebraElement apply_augmentation(const SparseVector& x) const;
  /// Generator e_g of P_n as a module element.
  SparseVector generator(std::size_t g) const;

  Kind kind() const { return kind_; }
  std::size_t kind_parameter() const { return kind_parameter_; }
  void set_kind(Kind kind, std::size_t parameter) {
    kind_ = kind;
    kind_parameter_ = parameter;
  }

 private:
  AlgebraPtr algebra_;
  std::vector<std::vector<Degree>> degrees_;
  std::vector<std::vector<SparseVector>> differential_;
  std::vector<AlgebraElement> augmentation_;
  std::vector<std::vector<std::string>> labels_;
  Kind kind_ = Kind::inline_complex;
  std::size_t kind_parameter_ = 0;
};

using ComplexPtr = std::shared_ptr<const FreeBimoduleComplex>;

/// Structural checks: d^2 = 0, mu d_1 = 0, internal homogeneity.
struct ComplexReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
ComplexReport check_complex(const FreeBimoduleComplex& p);

/// The differential of P expanded on the k-bases {a_s e_g a_t}.
struct KLinearComplex {
  std::vector<std::size_t> dims;   // dims[n] = k-dimension of P_n
  std::vector<Matrix> d;           // d[n]: dims[n-1] x dims[n] for n >= 1; d[0] is the augmentation dim(A) x dims[0]
};

Matrix differential_matrix(const FreeBimoduleComplex& p, std::size_t n);
Matrix augmentation_matrix(const FreeBimoduleComplex& p);
KLinearComplex expand_to_k_complex(const FreeBimoduleComplex& p);

struct ExactnessReport {
  std::size_t up_to = 0;
  std::vector<std::size_t> homology;  // homology[n] for 1 <= n <= up_to; homology[0] = dim ker(mu) / im(d_1)
  bool augmentation_onto = false;
  bool exact = false;
  std::string to_string() const;
};

/// Throws std::invalid_argument unless up_to < length.
ExactnessReport verify_exactness(const FreeBimoduleComplex& p, std::size_t up_to);

/// The 2-periodic resolution of k[x]/(x^N): rank one in each degree, d odd =
/// x e - e x, d even = sum_{i+j=N-1} x^i e x^j, |e_2j| = jN|x|, |e_2j+1| = (jN+1)|x|.
ComplexPtr periodic_truncated_resolution(const AlgebraPtr& a, std::size_t length);
ComplexPtr periodic_truncated_resolution(Field k, std::size_t n, std::size_t length);

/// Element of Hom_{A^e}(P_n, A), stored as its values on the generators.
class Cochain {
 public:
  Cochain(ComplexPtr complex, std::size_t degree);
  Cochain(ComplexPtr complex, std::size_t degree, std::vector<AlgebraElement> values);

  const ComplexPtr& complex() const { return complex_; }
  std::size_t degree() const { return degree_; }
  const AlgebraElement& value(std::size_t g) const { return values_.at(g); }
  const std::vector<AlgebraElement>& values() const { return values_; }
  void set_value(std::size_t g, AlgebraElement v);

  /// f(x) for x in P_degree.
  AlgebraElement evaluate(const SparseVector& x) const;

  /// Coordinates on the basis (e_g -> a_s) of Hom(P_n, A), index g*dim + s.
  std::vector<Scalar> coordinates() const;
  static Cochain from_coordinates(ComplexPtr complex, std::size_t degree, const std::vector<Scalar>& coords);

  bool is_zero() const;
  Cochain operator+(const Cochain& rhs) const;
  Cochain operator-(const Cochain& rhs) const;
  Cochain scaled(const Scalar& c) const;
  bool operator==(const Cochain& rhs) const;

  /// `e1 -> 1*x; e2 -> 0`.
  std::string to_string() const;

 private:
  void require_compatible(const Cochain& rhs) const;

  ComplexPtr complex_;
  std::size_t degree_;
  std::vector<AlgebraElement> values_;
};

/// The augmentation as a degree-0 cochain.
Cochain augmentation_cochain(const ComplexPtr& p);

/// v with |f(e)| = |e| - v for every generator; zero marker for the zero
/// cochain, inhomogeneous marker otherwise.
ElementDegree internal_degree(const Cochain& f);

/// f o d_{n+1}; requires n < length.
Cochain coboundary(const Cochain& f);
/// Matrix of f -> f o d_{n+1} in the coordinates of Cochain::coordinates().
Matrix coboundary_matrix(const FreeBimoduleComplex& p, std::size_t n);

bool is_cocycle(const Cochain& f);
bool is_coboundary(const Cochain& f);
/// Throws std::invalid_argument when either input is not a cocycle.
bool are_cohomologous(const Cochain& f, const Cochain& g);

struct CohomologyBasis {
  std::size_t degree = 0;
  std::vector<Cochain> classes;  // homogeneous representatives
  std::size_t dimension() const { return classes.size(); }
};

/// Homogeneous representatives of a basis of HH^n, computed separately in each
/// internal degree (ascending). Requires n < length.
CohomologyBasis cohomology_basis(const ComplexPtr& p, std::size_t n);

/// Text form of a complex relative to its algebra's labels:
///
///     complex length 2
///     degree 0 rank 1
///       gen e0 [0]
///       aug e0 : 1*1
///     degree 1 rank 1
///       gen e1 [1]
///       d (0, 0) : 1*x|1 + -1*1|x
///     ...
///     end
std::string print_complex(const FreeBimoduleComplex& p);
/// Inverse of print_complex. Throws ParseError with a 1-based line number.
ComplexPtr parse_complex(const AlgebraPtr& a, const std::string& text, std::size_t first_line = 1);

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line;
  std::size_t column;
};

/// Parses a bracketed degree `[a,b,...]` in `group`.
Degree parse_degree(const GradingGroupPtr& group, const std::string& text);

}  // namespace hh
