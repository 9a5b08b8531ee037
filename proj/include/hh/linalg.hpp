#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hh/scalar.hpp"

namespace hh {

/// Sparse coordinate vector; zero entries are never stored, iteration is in
/// index order.
class SparseVector {
 public:
  using Map = std::map<std::size_t, Scalar>;

  void add(std::size_t index, const Scalar& c);
  void add_scaled(const SparseVector& other, const Scalar& c);
  SparseVector scaled(const Scalar& c) const;

  /// Entry at `index`, or nullptr when it is zero.
  const Scalar* find(std::size_t index) const;
  bool empty() const { return entries_.empty(); }
  std::size_t nonzeros() const { return entries_.size(); }

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  bool operator==(const SparseVector&) const = default;

 private:
  Map entries_;
};

SparseVector operator-(const SparseVector& a, const SparseVector& b);
SparseVector operator+(const SparseVector& a, const SparseVector& b);

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix(Field k, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> column(std::size_t c) const;
  void set_column(std::size_t c, const std::vector<Scalar>& v);
  void set_column(std::size_t c, const SparseVector& v);

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
  Matrix multiply(const Matrix& rhs) const;
  bool is_zero() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Row echelon form of `[a | b]` produced by deterministic sparse elimination:
/// columns are processed left to right and the pivot is the first remaining
/// row with a nonzero entry. Over Q rows are kept integral and divided by
/// their content (fraction-free); over F_p pivots are scaled to 1.
struct Echelon {
  std::vector<SparseVector> rows;        // pivot rows; rows[i] has its pivot at pivot_cols[i]
  std::vector<SparseVector> rest;        // remaining rows, zero on the `a` block
  std::vector<std::size_t> pivot_cols;   // pivot columns of the `a` block
  std::size_t a_cols = 0;
};

Echelon echelon_form(const Matrix& a, const Matrix* b = nullptr);

std::size_t rank(const Matrix& a);

/// Kernel basis, one vector per free column (in column order) with that
/// column set to 1 and the other free columns to 0.
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& a);

/// Solves a x = b_j for every column b_j of `b`. The returned solution sets all
/// free variables to zero; `nullopt` marks an inconsistent column.
std::vector<std::optional<std::vector<Scalar>>> solve_many(const Matrix& a, const Matrix& b);

std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b);

/// Incrementally maintained span of vectors of a fixed length.
class SpanTracker {
 public:
  SpanTracker(Field k, std::size_t length) : field_(k), length_(length) {}

  /// Adds `v` if it is independent of the current span; returns whether it was.
  bool add(const std::vector<Scalar>& v);
  bool contains(const std::vector<Scalar>& v) const;
  std::size_t dimension() const { return rows_.size(); }

 private:
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;

  Field field_;
  std::size_t length_;
  std::vector<std::vector<Scalar>> rows_;   // each normalized with pivot 1
  std::vector<std::size_t> pivots_;
};

bool is_zero_vector(const std::vector<Scalar>& v);

}  // namespace hh
