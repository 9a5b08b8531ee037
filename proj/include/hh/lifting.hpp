#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hh/complexes.hpp"

namespace hh {

/// Generator e_left (x) a_middle e_right of (P (x)_A P)_n with e_left in P_j
/// and e_right in P_{n-j}.
struct TensorGenerator {
  std::size_t left_degree;
  std::size_t left;
  std::size_t middle;
  std::size_t right;
};

/// P (x)_A P as a free bimodule complex: in degree n the generators are
/// e_g (x) a_t e_h for j + l = n, listed by j, then g, then t, then h.
class TensorSquare {
 public:
  TensorSquare(ComplexPtr base, std::size_t length);

  const ComplexPtr& base() const { return base_; }
  const ComplexPtr& complex() const { return complex_; }
  std::size_t length() const { return complex_->length(); }

  std::size_t index(std::size_t n, std::size_t j, std::size_t g, std::size_t t, std::size_t h) const;
  const TensorGenerator& generator(std::size_t n, std::size_t idx) const { return gens_.at(n).at(idx); }

  /// x (x) y for x in P_j and y in P_l.
  SparseVector tensor(std::size_t j, const SparseVector& x, std::size_t l, const SparseVector& y) const;

 private:
  ComplexPtr base_;
  ComplexPtr complex_;
  std::vector<std::vector<TensorGenerator>> gens_;
  std::vector<std::vector<std::size_t>> offsets_;  // offsets_[n][j]
};

/// Bimodule map P_n -> P'_{n+shift}, given on generators.
class ChainMap {
 public:
  ChainMap(ComplexPtr source, ComplexPtr target, int shift);

  const ComplexPtr& source() const { return source_; }
  const ComplexPtr& target() const { return target_; }
  int shift() const { return shift_; }
  /// Number of source degrees defined (0 .. top()-1).
  std::size_t defined_degrees() const { return images_.size(); }
  bool defined(std::size_t n) const { return n < images_.size(); }

  /// Appends the images of the generators of the next source degree.
  void push_degree(std::vector<SparseVector> images);
  const SparseVector& image(std::size_t n, std::size_t g) const { return images_.at(n).at(g); }
  const std::vector<SparseVector>& images(std::size_t n) const { return images_.at(n); }

  /// The map applied to x in source degree n.
  SparseVector apply(std::size_t n, const SparseVector& x) const;

  /// Target degree of source degree n, or -1 if negative.
  long target_degree(std::size_t n) const { return static_cast<long>(n) + shift_; }

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  int shift_;
  std::vector<std::vector<SparseVector>> images_;
};

struct LiftError : std::runtime_error {
  LiftError(std::size_t degree, const std::string& message);
  std::size_t degree;
};

/// Comparison-theorem lifting: a chain map phi: source -> target with the given
/// degree-0 images, solving d phi_n = phi_{n-1} d degree by degree up to
/// `up_to`. Throws LiftError naming the first degree without a solution.
ChainMap lift_chain_map(const ComplexPtr& source, const ComplexPtr& target, std::vector<SparseVector> degree0,
                        std::size_t up_to);

/// Closed form e_i -> sum_{j+l=i} e_j (x) e_l for the periodic resolution of
/// k[x]/(x^2); delegates to lift_diagonal for other periodic resolutions.
ChainMap diagonal_periodic(const TensorSquare& ts);
/// Diagonal lifting the identity with Delta(e_0) = e_0 (x) e_0 (needs rank P_0 = 1).
ChainMap lift_diagonal(const TensorSquare& ts);
/// Closed form when one is known for the complex, otherwise lift_diagonal.
ChainMap diagonal(const TensorSquare& ts);

/// Chain-map check d Delta = Delta d in every defined degree; returns the
/// first failing degree or -1.
long first_chain_map_failure(const ChainMap& phi);

/// (f (x) 1) x for x in (P (x)_A P)_n, read in P_{n-m}.
SparseVector apply_cochain_left(const TensorSquare& ts, std::size_t n, const SparseVector& x, const Cochain& f);
/// (1 (x) f) x with the Koszul sign (-1)^{m j}, read in P_{n-m}.
SparseVector apply_cochain_right(const TensorSquare& ts, std::size_t n, const SparseVector& x, const Cochain& f);
/// (f (x) g) x with the Koszul sign (-1)^{deg g * j}.
AlgebraElement apply_cochain_pair(const TensorSquare& ts, std::size_t n, const SparseVector& x, const Cochain& f,
                                  const Cochain& g);

/// ((f (x) 1 - 1 (x) f) Delta)(e) for a generator e of P_n.
SparseVector lifting_rhs(const TensorSquare& ts, const ChainMap& delta, const Cochain& f, std::size_t n,
                         std::size_t gen);

/// psi: P -> P[1] with d psi + psi d = (mu (x) 1 - 1 (x) mu) Delta, up to source degree `up_to`.
ChainMap solve_companion(const TensorSquare& ts, const ChainMap& delta, std::size_t up_to);

struct HomotopyLifting {
  Cochain f;
  ChainMap psi;                               // P_n -> P_{n-m+1}
  std::shared_ptr<const ChainMap> companion;  // P_n -> P_{n+1}
};

/// Ascending-degree solve of d psi_n - (-1)^{m-1} psi_{n-1} d = (f (x) 1 - 1 (x) f) Delta
/// for source degrees up to `up_to`, with psi_{m-1} chosen so that
/// mu psi_{m-1} = (-1)^{m-1} f psi_companion exactly. Requires m >= 1.
HomotopyLifting solve_homotopy_lifting(const TensorSquare& ts, const ChainMap& delta, const Cochain& f,
                                       std::size_t up_to, std::shared_ptr<const ChainMap> companion = nullptr);

struct LiftingOptions {
  /// Downgrades a condition-2 failure to a warning.
  bool koszul = false;
};

struct LiftingReport {
  bool condition1 = true;
  bool condition2 = true;
  bool companion_ok = true;
  bool warning = false;
  std::vector<std::string> residuals;
  bool ok() const { return condition1 && companion_ok && (condition2 || warning); }
};

LiftingReport verify_homotopy_lifting(const TensorSquare& ts, const ChainMap& delta, const Cochain& f,
                                      const ChainMap& psi, const ChainMap& companion, LiftingOptions options = {});

/// f cup f' = (f' (x) f) Delta on P_{m+m'}. `inputs_are_cocycles` is set when given.
Cochain cup(const TensorSquare& ts, const ChainMap& delta, const Cochain& f, const Cochain& fp,
            bool* inputs_are_cocycles = nullptr);

/// f psi_g - (-1)^{(m-1)(n-1)} g psi_f on P_{m+n-1}.
Cochain bracket(const Cochain& f, const ChainMap& psi_f, const Cochain& g, const ChainMap& psi_g);

/// Composition f o phi for a cochain f on the target of phi (shift 0 maps).
Cochain pull_back(const Cochain& f, const ChainMap& phi, std::size_t degree);

/// Generator-by-generator text of a map, e.g. `e2 -> 2*1|1 e2`.
std::string print_chain_map(const ChainMap& phi, std::size_t from, std::size_t to);
std::string print_element(const FreeBimoduleComplex& p, std::size_t n, const SparseVector& x);

}  // namespace hh
