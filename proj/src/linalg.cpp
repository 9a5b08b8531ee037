#include "hh/linalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hh {

void SparseVector::add(std::size_t index, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = entries_.find(index);
  if (it == entries_.end()) {
    entries_.emplace(index, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) entries_.erase(it);
}

void SparseVector::add_scaled(const SparseVector& other, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [i, v] : other) add(i, v * c);
}

SparseVector SparseVector::scaled(const Scalar& c) const {
  SparseVector out;
  out.add_scaled(*this, c);
  return out;
}

const Scalar* SparseVector::find(std::size_t index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? nullptr : &it->second;
}

SparseVector operator-(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, v] : b) out.add(i, -v);
  return out;
}

SparseVector operator+(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, v] : b) out.add(i, v);
  return out;
}

Matrix::Matrix(Field k, std::size_t rows, std::size_t cols)
    : field_(k), rows_(rows), cols_(cols), data_(rows * cols, k.zero()) {}

std::vector<Scalar> Matrix::column(std::size_t c) const {
  std::vector<Scalar> v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

void Matrix::set_column(std::size_t c, const std::vector<Scalar>& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

void Matrix::set_column(std::size_t c, const SparseVector& v) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = field_.zero();
  for (const auto& [r, x] : v) {
    if (r >= rows_) throw std::out_of_range("sparse column entry beyond matrix rows");
    at(r, c) = x;
  }
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<Scalar> y(rows_, field_.zero());
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r)
      if (!at(r, c).is_zero()) y[r] += at(r, c) * x[c];
  }
  return y;
}

Matrix Matrix::multiply(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product size mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (!rhs.at(k, j).is_zero()) out.at(i, j) += at(i, k) * rhs.at(k, j);
    }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool is_zero_vector(const std::vector<Scalar>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

// Sparse row with entries sorted by column.
template <typename T>
using Row = std::vector<std::pair<std::size_t, T>>;

template <typename T>
const T* row_entry(const Row<T>& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

struct IntegerOps {
  using T = mpz_class;
  // a * x - b * y
  static T combine(const T& a, const T& x, const T& b, const T& y) { return a * x - b * y; }
  static bool is_zero(const T& x) { return x == 0; }
  static void normalize(Row<T>& row) {
    mpz_class g = 0;
    for (const auto& [c, v] : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g > 1)
      for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
};

struct ModularOps {
  using T = std::uint64_t;
  std::uint64_t p;
  T combine(const T& a, const T& x, const T& b, const T& y) const { return (a * x % p + (p - b * y % p)) % p; }
  static bool is_zero(const T& x) { return x == 0; }
  static void normalize(Row<T>&) {}
};

// row_i <- piv * row_i - f * row_r, dropping zeros; new columns are reported.
template <typename Ops>
Row<typename Ops::T> eliminate(const Ops& ops, const Row<typename Ops::T>& ri, const Row<typename Ops::T>& rr,
                               const typename Ops::T& piv, const typename Ops::T& f, std::vector<std::size_t>& fresh) {
  using T = typename Ops::T;
  const T zero{};
  Row<T> out;
  out.reserve(ri.size() + rr.size());
  std::size_t a = 0, b = 0;
  while (a < ri.size() || b < rr.size()) {
    if (b == rr.size() || (a < ri.size() && ri[a].first < rr[b].first)) {
      T v = ops.combine(piv, ri[a].second, f, zero);
      if (!Ops::is_zero(v)) out.emplace_back(ri[a].first, std::move(v));
      ++a;
    } else if (a == ri.size() || rr[b].first < ri[a].first) {
      T v = ops.combine(piv, zero, f, rr[b].second);
      if (!Ops::is_zero(v)) {
        fresh.push_back(rr[b].first);
        out.emplace_back(rr[b].first, std::move(v));
      }
      ++b;
    } else {
      T v = ops.combine(piv, ri[a].second, f, rr[b].second);
      if (!Ops::is_zero(v)) out.emplace_back(ri[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

template <typename Ops, typename Load, typename Store>
Echelon sparse_echelon(const Ops& ops, std::size_t nrows, std::size_t acols, std::size_t total, Load load, Store store,
                       const std::function<void(Row<typename Ops::T>&)>& make_pivot) {
  using T = typename Ops::T;
  std::vector<Row<T>> rows(nrows);
  std::vector<std::vector<std::size_t>> col_rows(total);
  for (std::size_t r = 0; r < nrows; ++r) {
    rows[r] = load(r);
    for (const auto& e : rows[r]) col_rows[e.first].push_back(r);
  }
  std::vector<char> used(nrows, 0);
  std::vector<std::size_t> stamp(nrows, static_cast<std::size_t>(-1));
  Echelon e;
  e.a_cols = acols;
  std::vector<std::size_t> order;
  std::vector<std::size_t> candidates;
  std::vector<std::size_t> fresh;
  for (std::size_t c = 0; c < acols; ++c) {
    candidates.clear();
    for (std::size_t r : col_rows[c])
      if (!used[r] && stamp[r] != c && row_entry(rows[r], c)) {
        stamp[r] = c;
        candidates.push_back(r);
      }
    col_rows[c].clear();
    if (candidates.empty()) continue;
    std::sort(candidates.begin(), candidates.end());
    const std::size_t pr = candidates.front();
    make_pivot(rows[pr]);
    const T piv = *row_entry(rows[pr], c);
    for (std::size_t k = 1; k < candidates.size(); ++k) {
      const std::size_t i = candidates[k];
      const T f = *row_entry(rows[i], c);
      fresh.clear();
      rows[i] = eliminate(ops, rows[i], rows[pr], piv, f, fresh);
      Ops::normalize(rows[i]);
      for (std::size_t col : fresh) col_rows[col].push_back(i);
    }
    used[pr] = 1;
    order.push_back(pr);
    e.pivot_cols.push_back(c);
  }
  for (std::size_t r : order) e.rows.push_back(store(rows[r]));
  for (std::size_t r = 0; r < nrows; ++r)
    if (!used[r] && !rows[r].empty()) e.rest.push_back(store(rows[r]));
  return e;
}

Echelon echelon_rational(const Matrix& a, const Matrix* b) {
  const std::size_t acols = a.cols();
  const std::size_t total = acols + (b ? b->cols() : 0);
  auto load = [&](std::size_t r) {
    Row<mpz_class> row;
    mpz_class lcm = 1;
    for (std::size_t c = 0; c < total; ++c) {
      const Scalar& x = c < acols ? a.at(r, c) : b->at(r, c - acols);
      if (x.is_zero()) continue;
      const auto& q = x.rational();
      if (q.get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
      row.emplace_back(c, 0);
    }
    for (auto& [c, v] : row) {
      const auto& q = (c < acols ? a.at(r, c) : b->at(r, c - acols)).rational();
      v = q.get_num() * (lcm / q.get_den());
    }
    IntegerOps::normalize(row);
    return row;
  };
  const Field k = a.field();
  auto store = [&](const Row<mpz_class>& row) {
    SparseVector v;
    for (const auto& [c, x] : row) v.add(c, k.from_rational(mpq_class(x)));
    return v;
  };
  return sparse_echelon(IntegerOps{}, a.rows(), acols, total, load, store, [](Row<mpz_class>&) {});
}

Echelon echelon_modular(const Matrix& a, const Matrix* b) {
  const std::size_t acols = a.cols();
  const std::size_t total = acols + (b ? b->cols() : 0);
  const Field k = a.field();
  const std::uint64_t p = k.characteristic();
  auto load = [&](std::size_t r) {
    Row<std::uint64_t> row;
    for (std::size_t c = 0; c < total; ++c) {
      const Scalar& x = c < acols ? a.at(r, c) : b->at(r, c - acols);
      if (!x.is_zero()) row.emplace_back(c, x.residue());
    }
    return row;
  };
  auto store = [&](const Row<std::uint64_t>& row) {
    SparseVector v;
    for (const auto& [c, x] : row) v.add(c, k.from_int(static_cast<std::int64_t>(x)));
    return v;
  };
  auto make_pivot = [&](Row<std::uint64_t>& row) {
    const std::uint64_t inv = k.from_int(static_cast<std::int64_t>(row.front().second)).inverse().residue();
    for (auto& [c, x] : row) x = x * inv % p;
  };
  return sparse_echelon(ModularOps{p}, a.rows(), acols, total, load, store, make_pivot);
}

// Back substitution with all free variables zero. `rhs(row)` gives the
// right-hand side entry of the echelon row.
template <typename Rhs>
std::vector<Scalar> back_substitute(const Echelon& e, const Field& k, Rhs rhs) {
  std::vector<Scalar> x(e.a_cols, k.zero());
  for (std::size_t idx = e.pivot_cols.size(); idx-- > 0;) {
    const std::size_t pc = e.pivot_cols[idx];
    Scalar acc = rhs(idx);
    const Scalar* pivot = nullptr;
    for (const auto& [j, v] : e.rows[idx]) {
      if (j >= e.a_cols) break;
      if (j == pc)
        pivot = &v;
      else if (!x[j].is_zero())
        acc -= v * x[j];
    }
    x[pc] = acc / *pivot;
  }
  return x;
}

Scalar entry_or_zero(const SparseVector& v, std::size_t col, const Field& k) {
  const Scalar* s = v.find(col);
  return s ? *s : k.zero();
}

}  // namespace

Echelon echelon_form(const Matrix& a, const Matrix* b) {
  if (b && (b->rows() != a.rows() || !(b->field() == a.field())))
    throw std::invalid_argument("augmented block does not match the matrix");
  return a.field().is_rational() ? echelon_rational(a, b) : echelon_modular(a, b);
}

std::size_t rank(const Matrix& a) { return echelon_form(a).pivot_cols.size(); }

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& a) {
  Echelon e = echelon_form(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  const Field& k = a.field();
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> x(a.cols(), k.zero());
    x[f] = k.one();
    for (std::size_t idx = e.pivot_cols.size(); idx-- > 0;) {
      const std::size_t pc = e.pivot_cols[idx];
      if (pc > f) continue;
      Scalar acc = k.zero();
      const Scalar* pivot = nullptr;
      for (const auto& [j, v] : e.rows[idx]) {
        if (j == pc)
          pivot = &v;
        else if (!x[j].is_zero())
          acc -= v * x[j];
      }
      x[pc] = acc / *pivot;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<std::optional<std::vector<Scalar>>> solve_many(const Matrix& a, const Matrix& b) {
  Echelon e = echelon_form(a, &b);
  const Field& k = a.field();
  std::vector<std::optional<std::vector<Scalar>>> out;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const std::size_t col = a.cols() + j;
    bool consistent = true;
    for (const auto& row : e.rest)
      if (row.find(col)) {
        consistent = false;
        break;
      }
    if (!consistent) {
      out.emplace_back(std::nullopt);
      continue;
    }
    out.emplace_back(back_substitute(e, k, [&](std::size_t row) { return entry_or_zero(e.rows[row], col, k); }));
  }
  return out;
}

std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b) {
  Matrix rhs(a.field(), a.rows(), 1);
  rhs.set_column(0, b);
  return solve_many(a, rhs).front();
}

std::vector<Scalar> SpanTracker::reduce(std::vector<Scalar> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < length_; ++j)
      if (!rows_[i][j].is_zero()) v[j] -= c * rows_[i][j];
  }
  return v;
}

bool SpanTracker::contains(const std::vector<Scalar>& v) const {
  if (v.size() != length_) throw std::invalid_argument("span vector length mismatch");
  return is_zero_vector(reduce(v));
}

bool SpanTracker::add(const std::vector<Scalar>& v) {
  if (v.size() != length_) throw std::invalid_argument("span vector length mismatch");
  auto r = reduce(v);
  std::size_t p = 0;
  while (p < length_ && r[p].is_zero()) ++p;
  if (p == length_) return false;
  const Scalar inv = r[p].inverse();
  for (auto& x : r) x *= inv;
  // keep existing rows reduced at the new pivot
  for (auto& row : rows_) {
    const Scalar c = row[p];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < length_; ++j)
      if (!r[j].is_zero()) row[j] -= c * r[j];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

}  // namespace hh
