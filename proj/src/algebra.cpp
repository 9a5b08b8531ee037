#include "hh/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace hh {

GradedAlgebra::GradedAlgebra(Field k, GradingGroupPtr group, std::vector<std::string> labels,
                             std::vector<Degree> degrees, std::size_t unit, Table table)
    : field_(k),
      group_(std::move(group)),
      labels_(std::move(labels)),
      degrees_(std::move(degrees)),
      unit_(unit),
      table_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("algebra must have a nonempty basis");
  if (degrees_.size() != n) throw std::invalid_argument("one degree per basis element is required");
  if (unit_ >= n) throw std::invalid_argument("unit index out of range");
  for (const auto& d : degrees_)
    if (!(d.group() == *group_)) throw std::invalid_argument("basis degree in the wrong grading group");
  if (table_.size() != n) throw std::invalid_argument("multiplication table has wrong size");
  for (auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("multiplication table has wrong size");
    for (auto& cell : row) {
      // merge repeated indices, drop zeros, keep sorted
      std::vector<Scalar> dense(n, k.zero());
      for (const auto& t : cell) {
        if (t.index >= n) throw std::invalid_argument("structure constant index out of range");
        if (!(t.coeff.field() == k)) throw std::invalid_argument("structure constant in the wrong field");
        dense[t.index] += t.coeff;
      }
      cell.clear();
      for (std::size_t l = 0; l < n; ++l)
        if (!dense[l].is_zero()) cell.push_back({l, dense[l]});
    }
  }
}

std::optional<std::size_t> GradedAlgebra::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra)
    : algebra_(std::move(algebra)), coeffs_(algebra_->dim(), algebra_->field().zero()) {}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<Scalar> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != algebra_->dim()) throw std::invalid_argument("coefficient vector has wrong length");
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, std::size_t i, const Scalar& c) {
  AlgebraElement e(algebra);
  e.coeffs_.at(i) = c;
  return e;
}

AlgebraElement AlgebraElement::unit(const AlgebraPtr& algebra) {
  return basis(algebra, algebra->unit(), algebra->field().one());
}

bool AlgebraElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  if (algebra_ != rhs.algebra_) throw std::invalid_argument("adding elements of different algebras");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  if (algebra_ != rhs.algebra_) throw std::invalid_argument("subtracting elements of different algebras");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement out = *this;
  for (auto& x : out.coeffs_) x *= c;
  return out;
}

bool AlgebraElement::operator==(const AlgebraElement& rhs) const {
  return algebra_ == rhs.algebra_ && coeffs_ == rhs.coeffs_;
}

std::string AlgebraElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i].to_string() << '*' << algebra_->label(i);
  }
  if (first) return "0";
  return os.str();
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.algebra() || a.algebra() != b.algebra()) throw std::invalid_argument("multiplying elements of different algebras");
  const auto& alg = *a.algebra();
  AlgebraElement out(a.algebra());
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (b[j].is_zero()) continue;
      const Scalar c = a[i] * b[j];
      for (const auto& t : alg.product(i, j)) out.add(t.index, c * t.coeff);
    }
  }
  return out;
}

ElementDegree element_degree(const AlgebraElement& a) {
  ElementDegree out;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i].is_zero()) continue;
    const Degree& d = a.algebra()->degree(i);
    if (out.kind == ElementDegree::Kind::zero) {
      out.kind = ElementDegree::Kind::homogeneous;
      out.degree = d;
    } else if (!(out.degree == d)) {
      out.kind = ElementDegree::Kind::inhomogeneous;
      out.degree = Degree();
      return out;
    }
  }
  return out;
}

AlgebraReport validate(const GradedAlgebra& a) {
  AlgebraReport report;
  const std::size_t n = a.dim();
  const Field& k = a.field();
  auto label = [&](std::size_t i) { return a.label(i); };

  if (!a.degree(a.unit()).is_zero()) report.violations.push_back("unit " + label(a.unit()) + " has nonzero degree");

  for (std::size_t i = 0; i < n; ++i) {
    auto left = a.product(a.unit(), i);
    auto right = a.product(i, a.unit());
    auto is_basis = [&](const std::vector<Term>& terms) {
      return terms.size() == 1 && terms[0].index == i && terms[0].coeff.is_one();
    };
    if (!is_basis(left)) report.violations.push_back("unit law fails: " + label(a.unit()) + "*" + label(i));
    if (!is_basis(right)) report.violations.push_back("unit law fails: " + label(i) + "*" + label(a.unit()));
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : a.product(i, j))
        if (!(a.degree(t.index) == a.degree(i) + a.degree(j)))
          report.violations.push_back("graded multiplication fails: " + label(i) + "*" + label(j) + " -> " +
                                      label(t.index));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<Scalar> lhs(n, k.zero()), rhs(n, k.zero());
        for (const auto& t : a.product(i, j))
          for (const auto& u : a.product(t.index, l)) lhs[u.index] += t.coeff * u.coeff;
        for (const auto& t : a.product(j, l))
          for (const auto& u : a.product(i, t.index)) rhs[u.index] += t.coeff * u.coeff;
        if (lhs != rhs)
          report.violations.push_back("associativity fails: (" + label(i) + "," + label(j) + "," + label(l) + ")");
      }
  return report;
}

AlgebraPtr truncated_polynomial(Field k, std::size_t n, const std::string& var, std::optional<Degree> x_degree) {
  if (n < 1) throw std::invalid_argument("truncation order must be positive");
  Degree xd = x_degree ? *x_degree : Degree(GradingGroup::make(1), {1});
  auto group = xd.group_ptr();
  std::vector<std::string> labels;
  std::vector<Degree> degrees;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : i == 1 ? var : var + "^" + std::to_string(i));
    degrees.push_back(xd.times(static_cast<std::int64_t>(i)));
  }
  GradedAlgebra::Table table(n, std::vector<std::vector<Term>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) table[i][j].push_back({i + j, k.one()});
  return std::make_shared<const GradedAlgebra>(k, group, std::move(labels), std::move(degrees), 0, std::move(table));
}

std::optional<std::size_t> truncated_polynomial_order(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  if (a.unit() != 0) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = a.product(i, j);
      if (i + j < n) {
        if (p.size() != 1 || p[0].index != i + j || !p[0].coeff.is_one()) return std::nullopt;
      } else if (!p.empty()) {
        return std::nullopt;
      }
    }
  return n;
}

AlgebraPtr twisted_tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const Bicharacter& t) {
  if (!(*t.left() == *a->group()) || !(*t.right() == *b->group()))
    throw std::invalid_argument("bicharacter domain does not match the algebra gradings");
  if (!(a->field() == b->field()) || !(t.field() == a->field()))
    throw std::invalid_argument("twisted tensor product over mismatched fields");
  const std::size_t da = a->dim(), db = b->dim();
  auto group = GradingGroup::direct_sum(*a->group(), *b->group());
  std::vector<std::string> labels;
  std::vector<Degree> degrees;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      labels.push_back(a->label(i) + "." + b->label(j));
      degrees.push_back(direct_sum_degree(group, a->degree(i), b->degree(j)));
    }
  GradedAlgebra::Table table(da * db, std::vector<std::vector<Term>>(da * db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t i2 = 0; i2 < da; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          // (a_i (x) b_j)(a_i2 (x) b_j2) = t^<|a_i2|,|b_j|> a_i a_i2 (x) b_j b_j2
          const Scalar twist = t.evaluate(a->degree(i2), b->degree(j));
          auto& cell = table[i * db + j][i2 * db + j2];
          for (const auto& u : a->product(i, i2))
            for (const auto& v : b->product(j, j2)) cell.push_back({u.index * db + v.index, twist * u.coeff * v.coeff});
        }
  return std::make_shared<const GradedAlgebra>(a->field(), group, std::move(labels), std::move(degrees),
                                               a->unit() * db + b->unit(), std::move(table));
}

}  // namespace hh
