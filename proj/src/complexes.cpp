#include "hh/complexes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hh {

SparseVector act(const GradedAlgebra& a, std::size_t left, const SparseVector& v, std::size_t right) {
  const std::size_t d = a.dim();
  const bool left_unit = left == a.unit();
  const bool right_unit = right == a.unit();
  if (left_unit && right_unit) return v;
  SparseVector out;
  for (const auto& [idx, c] : v) {
    const auto [g, s, t] = decode_free_index(d, idx);
    if (left_unit) {
      for (const auto& r : a.product(t, right)) out.add(free_index(d, g, s, r.index), c * r.coeff);
    } else if (right_unit) {
      for (const auto& l : a.product(left, s)) out.add(free_index(d, g, l.index, t), c * l.coeff);
    } else {
      for (const auto& l : a.product(left, s))
        for (const auto& r : a.product(t, right))
          out.add(free_index(d, g, l.index, r.index), c * l.coeff * r.coeff);
    }
  }
  return out;
}

BimoduleWord BimoduleWord::of(const SparseVector& v, std::size_t dim, std::size_t gen) {
  BimoduleWord w;
  for (const auto& [idx, c] : v) {
    const auto [g, s, t] = decode_free_index(dim, idx);
    if (g == gen) w.terms.push_back({s, t, c});
  }
  return w;
}

void BimoduleWord::add_to(SparseVector& out, std::size_t dim, std::size_t gen) const {
  for (const auto& t : terms) out.add(free_index(dim, gen, t.left, t.right), t.coeff);
}

std::string BimoduleWord::to_string(const GradedAlgebra& a) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << terms[i].coeff.to_string() << '*' << a.label(terms[i].left) << '|' << a.label(terms[i].right);
  }
  return os.str();
}

FreeBimoduleComplex::FreeBimoduleComplex(AlgebraPtr algebra, std::vector<std::vector<Degree>> generator_degrees,
                                         std::vector<std::vector<SparseVector>> differential,
                                         std::vector<AlgebraElement> augmentation,
                                         std::vector<std::vector<std::string>> generator_labels)
    : algebra_(std::move(algebra)),
      degrees_(std::move(generator_degrees)),
      differential_(std::move(differential)),
      augmentation_(std::move(augmentation)),
      labels_(std::move(generator_labels)) {
  if (degrees_.empty()) throw std::invalid_argument("complex needs at least degree 0");
  if (differential_.size() != degrees_.size()) throw std::invalid_argument("one differential block per degree");
  if (!differential_[0].empty()) throw std::invalid_argument("degree 0 has no differential");
  if (augmentation_.size() != degrees_[0].size()) throw std::invalid_argument("augmentation needs one value per degree-0 generator");
  for (const auto& v : augmentation_)
    if (v.algebra() != algebra_) throw std::invalid_argument("augmentation value in the wrong algebra");
  const std::size_t dd = algebra_->dim() * algebra_->dim();
  for (std::size_t n = 1; n < degrees_.size(); ++n) {
    if (differential_[n].size() != degrees_[n].size())
      throw std::invalid_argument("differential in degree " + std::to_string(n) + " needs one image per generator");
    for (const auto& v : differential_[n])
      for (const auto& [idx, c] : v)
        if (idx >= degrees_[n - 1].size() * dd)
          throw std::invalid_argument("differential image outside P_" + std::to_string(n - 1));
  }
  for (const auto& row : degrees_)
    for (const auto& d : row)
      if (!(d.group() == *algebra_->group())) throw std::invalid_argument("generator degree in the wrong grading group");
  if (labels_.empty()) {
    labels_.resize(degrees_.size());
    for (std::size_t n = 0; n < degrees_.size(); ++n)
      for (std::size_t g = 0; g < degrees_[n].size(); ++g)
        labels_[n].push_back(degrees_[n].size() == 1 ? "e" + std::to_string(n)
                                                      : "e" + std::to_string(n) + "_" + std::to_string(g));
  }
  if (labels_.size() != degrees_.size()) throw std::invalid_argument("generator labels have the wrong shape");
  for (std::size_t n = 0; n < degrees_.size(); ++n)
    if (labels_[n].size() != degrees_[n].size()) throw std::invalid_argument("generator labels have the wrong shape");
}

BimoduleWord FreeBimoduleComplex::differential_entry(std::size_t n, std::size_t row, std::size_t col) const {
  return BimoduleWord::of(differential(n, col), algebra_->dim(), row);
}

SparseVector FreeBimoduleComplex::apply_differential(std::size_t n, const SparseVector& x) const {
  if (n == 0 || n > length()) throw std::out_of_range("differential degree out of range");
  const std::size_t d = algebra_->dim();
  SparseVector out;
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(d, idx);
    out.add_scaled(act(*algebra_, s, differential_[n][g], t), c);
  }
  return out;
}

AlgebraElement FreeBimoduleComplex::apply_augmentation(const SparseVector& x) const {
  const auto& a = *algebra_;
  const std::size_t d = a.dim();
  AlgebraElement out(algebra_);
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(d, idx);
    const auto& mu = augmentation_[g];
    for (std::size_t u = 0; u < d; ++u) {
      if (mu[u].is_zero()) continue;
      for (const auto& l : a.product(s, u))
        for (const auto& r : a.product(l.index, t)) out.add(r.index, c * mu[u] * l.coeff * r.coeff);
    }
  }
  return out;
}

SparseVector FreeBimoduleComplex::generator(std::size_t g) const {
  SparseVector v;
  v.add(free_index(algebra_->dim(), g, algebra_->unit(), algebra_->unit()), algebra_->field().one());
  return v;
}

namespace {

// Adds c * a_l a_m a_r (expanded) into `out`.
void add_triple(const GradedAlgebra& a, std::size_t l, std::size_t m, std::size_t r, const Scalar& c,
                AlgebraElement& out) {
  for (const auto& x : a.product(l, m))
    for (const auto& y : a.product(x.index, r)) out.add(y.index, c * x.coeff * y.coeff);
}

}  // namespace

ComplexReport check_complex(const FreeBimoduleComplex& p) {
  ComplexReport report;
  const auto& a = *p.algebra();
  const std::size_t d = a.dim();
  for (std::size_t n = 1; n <= p.length(); ++n)
    for (std::size_t g = 0; g < p.rank(n); ++g) {
      const Degree& dg = p.generator_degree(n, g);
      for (const auto& [idx, c] : p.differential(n, g)) {
        const auto [h, s, t] = decode_free_index(d, idx);
        if (!(a.degree(s) + p.generator_degree(n - 1, h) + a.degree(t) == dg)) {
          report.violations.push_back("d(" + p.generator_label(n, g) + ") is not homogeneous at " + a.label(s) + " " +
                                      p.generator_label(n - 1, h) + " " + a.label(t));
          break;
        }
      }
      if (n >= 2 && !p.apply_differential(n - 1, p.differential(n, g)).empty())
        report.violations.push_back("d^2 != 0 on " + p.generator_label(n, g));
      if (n == 1 && !p.apply_augmentation(p.differential(1, g)).is_zero())
        report.violations.push_back("mu d_1 != 0 on " + p.generator_label(1, g));
    }
  for (std::size_t g = 0; g < p.rank(0); ++g) {
    auto deg = element_degree(p.augmentation(g));
    if (deg.kind == ElementDegree::Kind::inhomogeneous ||
        (deg.is_homogeneous() && !(deg.degree == p.generator_degree(0, g))))
      report.violations.push_back("augmentation of " + p.generator_label(0, g) + " is not homogeneous of its degree");
  }
  return report;
}

Matrix differential_matrix(const FreeBimoduleComplex& p, std::size_t n) {
  if (n == 0 || n > p.length()) throw std::out_of_range("differential degree out of range");
  const auto& a = *p.algebra();
  const std::size_t d = a.dim();
  Matrix m(a.field(), p.k_dim(n - 1), p.k_dim(n));
  for (std::size_t g = 0; g < p.rank(n); ++g)
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t)
        m.set_column(free_index(d, g, s, t), act(a, s, p.differential(n, g), t));
  return m;
}

Matrix augmentation_matrix(const FreeBimoduleComplex& p) {
  const auto& a = *p.algebra();
  const std::size_t d = a.dim();
  Matrix m(a.field(), d, p.k_dim(0));
  for (std::size_t idx = 0; idx < p.k_dim(0); ++idx) {
    SparseVector v;
    v.add(idx, a.field().one());
    m.set_column(idx, p.apply_augmentation(v).coeffs());
  }
  return m;
}

KLinearComplex expand_to_k_complex(const FreeBimoduleComplex& p) {
  KLinearComplex k;
  for (std::size_t n = 0; n <= p.length(); ++n) {
    k.dims.push_back(p.k_dim(n));
    k.d.push_back(n == 0 ? augmentation_matrix(p) : differential_matrix(p, n));
  }
  return k;
}

std::string ExactnessReport::to_string() const {
  std::ostringstream os;
  os << (exact ? "exact" : "not exact") << " up to degree " << up_to << ": augmentation "
     << (augmentation_onto ? "onto" : "not onto") << ", homology";
  for (std::size_t n = 0; n < homology.size(); ++n) os << " H" << n << "=" << homology[n];
  return os.str();
}

ExactnessReport verify_exactness(const FreeBimoduleComplex& p, std::size_t up_to) {
  if (up_to >= p.length())
    throw std::invalid_argument("exactness at degree " + std::to_string(up_to) + " is not determined by a complex of length " +
                                std::to_string(p.length()));
  ExactnessReport r;
  r.up_to = up_to;
  const std::size_t dim_a = p.algebra()->dim();
  const std::size_t mu_rank = rank(augmentation_matrix(p));
  r.augmentation_onto = mu_rank == dim_a;
  std::vector<std::size_t> ranks(up_to + 2, 0);
  for (std::size_t n = 1; n <= up_to + 1; ++n) ranks[n] = rank(differential_matrix(p, n));
  r.homology.push_back(p.k_dim(0) - mu_rank - ranks[1]);
  for (std::size_t n = 1; n <= up_to; ++n) r.homology.push_back(p.k_dim(n) - ranks[n] - ranks[n + 1]);
  r.exact = r.augmentation_onto && check_complex(p).ok() &&
            std::all_of(r.homology.begin(), r.homology.end(), [](std::size_t h) { return h == 0; });
  return r;
}

ComplexPtr periodic_truncated_resolution(const AlgebraPtr& a, std::size_t length) {
  auto order = truncated_polynomial_order(*a);
  if (!order || *order < 2) throw std::invalid_argument("periodic resolution needs k[x]/(x^N) with N >= 2 on the basis 1, x, ...");
  if (length < 1) throw std::invalid_argument("resolution length must be at least 1");
  const std::size_t big_n = *order;
  const std::size_t d = a->dim();
  const Field& k = a->field();
  const Degree& x = a->degree(1);
  std::vector<std::vector<Degree>> degrees(length + 1);
  std::vector<std::vector<SparseVector>> diff(length + 1);
  std::vector<std::vector<std::string>> labels(length + 1);
  for (std::size_t n = 0; n <= length; ++n) {
    const auto j = static_cast<std::int64_t>(n / 2);
    const auto nn = static_cast<std::int64_t>(big_n);
    degrees[n].push_back(x.times(n % 2 == 0 ? j * nn : j * nn + 1));
    labels[n].push_back("e" + std::to_string(n));
    if (n == 0) continue;
    SparseVector v;
    if (n % 2 == 1) {
      v.add(free_index(d, 0, 1, 0), k.one());
      v.add(free_index(d, 0, 0, 1), -k.one());
    } else {
      for (std::size_t i = 0; i < big_n; ++i) v.add(free_index(d, 0, i, big_n - 1 - i), k.one());
    }
    diff[n].push_back(std::move(v));
  }
  auto p = std::make_shared<FreeBimoduleComplex>(a, std::move(degrees), std::move(diff),
                                                 std::vector<AlgebraElement>{AlgebraElement::unit(a)}, std::move(labels));
  p->set_kind(FreeBimoduleComplex::Kind::periodic, big_n);
  return p;
}

ComplexPtr periodic_truncated_resolution(Field k, std::size_t n, std::size_t length) {
  return periodic_truncated_resolution(truncated_polynomial(k, n), length);
}

Cochain::Cochain(ComplexPtr complex, std::size_t degree) : complex_(std::move(complex)), degree_(degree) {
  if (degree_ > complex_->length()) throw std::out_of_range("cochain degree beyond the truncation");
  values_.assign(complex_->rank(degree_), AlgebraElement(complex_->algebra()));
}

Cochain::Cochain(ComplexPtr complex, std::size_t degree, std::vector<AlgebraElement> values)
    : complex_(std::move(complex)), degree_(degree), values_(std::move(values)) {
  if (degree_ > complex_->length()) throw std::out_of_range("cochain degree beyond the truncation");
  if (values_.size() != complex_->rank(degree_)) throw std::invalid_argument("cochain needs one value per generator");
  for (const auto& v : values_)
    if (v.algebra() != complex_->algebra()) throw std::invalid_argument("cochain value in the wrong algebra");
}

void Cochain::set_value(std::size_t g, AlgebraElement v) {
  if (v.algebra() != complex_->algebra()) throw std::invalid_argument("cochain value in the wrong algebra");
  values_.at(g) = std::move(v);
}

AlgebraElement Cochain::evaluate(const SparseVector& x) const {
  const auto& a = *complex_->algebra();
  const std::size_t d = a.dim();
  AlgebraElement out(complex_->algebra());
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(d, idx);
    const auto& v = values_.at(g);
    for (std::size_t u = 0; u < d; ++u)
      if (!v[u].is_zero()) add_triple(a, s, u, t, c * v[u], out);
  }
  return out;
}

std::vector<Scalar> Cochain::coordinates() const {
  std::vector<Scalar> out;
  out.reserve(values_.size() * complex_->algebra()->dim());
  for (const auto& v : values_)
    for (const auto& c : v.coeffs()) out.push_back(c);
  return out;
}

Cochain Cochain::from_coordinates(ComplexPtr complex, std::size_t degree, const std::vector<Scalar>& coords) {
  const auto& alg = complex->algebra();
  const std::size_t d = alg->dim();
  if (coords.size() != complex->rank(degree) * d) throw std::invalid_argument("cochain coordinate vector has wrong length");
  std::vector<AlgebraElement> values;
  for (std::size_t g = 0; g < complex->rank(degree); ++g)
    values.emplace_back(alg, std::vector<Scalar>(coords.begin() + g * d, coords.begin() + (g + 1) * d));
  return Cochain(std::move(complex), degree, std::move(values));
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const AlgebraElement& v) { return v.is_zero(); });
}

void Cochain::require_compatible(const Cochain& rhs) const {
  if (complex_ != rhs.complex_ || degree_ != rhs.degree_)
    throw std::invalid_argument("cochains live on different complexes or degrees");
}

Cochain Cochain::operator+(const Cochain& rhs) const {
  require_compatible(rhs);
  Cochain out = *this;
  for (std::size_t g = 0; g < values_.size(); ++g) out.values_[g] += rhs.values_[g];
  return out;
}

Cochain Cochain::operator-(const Cochain& rhs) const {
  require_compatible(rhs);
  Cochain out = *this;
  for (std::size_t g = 0; g < values_.size(); ++g) out.values_[g] -= rhs.values_[g];
  return out;
}

Cochain Cochain::scaled(const Scalar& c) const {
  Cochain out = *this;
  for (auto& v : out.values_) v = v.scaled(c);
  return out;
}

bool Cochain::operator==(const Cochain& rhs) const {
  return complex_ == rhs.complex_ && degree_ == rhs.degree_ && values_ == rhs.values_;
}

std::string Cochain::to_string() const {
  std::ostringstream os;
  for (std::size_t g = 0; g < values_.size(); ++g) {
    if (g) os << "; ";
    os << complex_->generator_label(degree_, g) << " -> " << values_[g].to_string();
  }
  return os.str();
}

Cochain augmentation_cochain(const ComplexPtr& p) { return Cochain(p, 0, p->augmentation()); }

ElementDegree internal_degree(const Cochain& f) {
  ElementDegree out;
  const auto& p = *f.complex();
  for (std::size_t g = 0; g < f.values().size(); ++g) {
    auto vd = element_degree(f.value(g));
    if (vd.kind == ElementDegree::Kind::zero) continue;
    if (vd.kind == ElementDegree::Kind::inhomogeneous) return vd;
    Degree v = p.generator_degree(f.degree(), g) - vd.degree;
    if (out.kind == ElementDegree::Kind::zero) {
      out.kind = ElementDegree::Kind::homogeneous;
      out.degree = v;
    } else if (!(out.degree == v)) {
      return {ElementDegree::Kind::inhomogeneous, Degree()};
    }
  }
  return out;
}

Cochain coboundary(const Cochain& f) {
  const auto& p = f.complex();
  const std::size_t n = f.degree();
  if (n >= p->length()) throw std::out_of_range("coboundary of a degree-" + std::to_string(n) + " cochain needs degree " +
                                                std::to_string(n + 1) + " beyond the truncation");
  Cochain out(p, n + 1);
  for (std::size_t g = 0; g < p->rank(n + 1); ++g) out.set_value(g, f.evaluate(p->differential(n + 1, g)));
  return out;
}

Matrix coboundary_matrix(const FreeBimoduleComplex& p, std::size_t n) {
  if (n >= p.length()) throw std::out_of_range("coboundary beyond the truncation");
  const auto& a = *p.algebra();
  const std::size_t d = a.dim();
  Matrix m(a.field(), p.rank(n + 1) * d, p.rank(n) * d);
  for (std::size_t h = 0; h < p.rank(n + 1); ++h)
    for (const auto& [idx, c] : p.differential(n + 1, h)) {
      const auto [g, l, r] = decode_free_index(d, idx);
      for (std::size_t s = 0; s < d; ++s) {
        AlgebraElement v(p.algebra());
        add_triple(a, l, s, r, c, v);
        for (std::size_t u = 0; u < d; ++u)
          if (!v[u].is_zero()) m.at(h * d + u, g * d + s) += v[u];
      }
    }
  return m;
}

bool is_cocycle(const Cochain& f) { return coboundary(f).is_zero(); }

bool is_coboundary(const Cochain& f) {
  if (f.is_zero()) return true;
  if (f.degree() == 0) return false;
  const auto& p = *f.complex();
  return solve(coboundary_matrix(p, f.degree() - 1), f.coordinates()).has_value();
}

bool are_cohomologous(const Cochain& f, const Cochain& g) {
  if (!is_cocycle(f) || !is_cocycle(g)) throw std::invalid_argument("are_cohomologous needs cocycles");
  return is_coboundary(f - g);
}

namespace {

bool degree_less(const Degree& a, const Degree& b) {
  auto x = a.coords();
  auto y = b.coords();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

// Indices of Hom(P_n, A) coordinates grouped by internal degree v = |e_g| - |a_s|.
std::vector<std::pair<Degree, std::vector<std::size_t>>> hom_blocks(const FreeBimoduleComplex& p, std::size_t n) {
  const auto& a = *p.algebra();
  std::vector<std::pair<Degree, std::vector<std::size_t>>> blocks;
  for (std::size_t g = 0; g < p.rank(n); ++g)
    for (std::size_t s = 0; s < a.dim(); ++s) {
      Degree v = p.generator_degree(n, g) - a.degree(s);
      auto it = std::find_if(blocks.begin(), blocks.end(), [&](const auto& b) { return b.first == v; });
      if (it == blocks.end()) {
        blocks.push_back({v, {}});
        it = blocks.end() - 1;
      }
      it->second.push_back(g * a.dim() + s);
    }
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return degree_less(x.first, y.first); });
  return blocks;
}

std::vector<std::size_t> block_of(const std::vector<std::pair<Degree, std::vector<std::size_t>>>& blocks, const Degree& v) {
  for (const auto& b : blocks)
    if (b.first == v) return b.second;
  return {};
}

Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix out(m.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out.at(i, j) = m.at(rows[i], cols[j]);
  return out;
}

}  // namespace

CohomologyBasis cohomology_basis(const ComplexPtr& p, std::size_t n) {
  if (n >= p->length())
    throw std::out_of_range("HH^" + std::to_string(n) + " needs degree " + std::to_string(n + 1) +
                            " beyond the truncation " + std::to_string(p->length()));
  const Field& k = p->algebra()->field();
  CohomologyBasis basis;
  basis.degree = n;
  const Matrix delta = coboundary_matrix(*p, n);
  std::optional<Matrix> delta_prev;
  if (n > 0) delta_prev = coboundary_matrix(*p, n - 1);
  const auto blocks = hom_blocks(*p, n);
  const auto next_blocks = hom_blocks(*p, n + 1);
  const auto prev_blocks = n > 0 ? hom_blocks(*p, n - 1) : decltype(blocks){};
  const std::size_t hom_dim = p->rank(n) * p->algebra()->dim();

  for (const auto& [v, cols] : blocks) {
    const auto rows = block_of(next_blocks, v);
    SpanTracker span(k, cols.size());
    if (delta_prev) {
      const auto prev_cols = block_of(prev_blocks, v);
      for (std::size_t j = 0; j < prev_cols.size(); ++j) {
        std::vector<Scalar> img;
        for (auto c : cols) img.push_back(delta_prev->at(c, prev_cols[j]));
        span.add(img);
      }
    }
    std::vector<std::vector<Scalar>> kernel;
    if (rows.empty()) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<Scalar> e(cols.size(), k.zero());
        e[j] = k.one();
        kernel.push_back(std::move(e));
      }
    } else {
      kernel = kernel_basis(submatrix(delta, rows, cols));
    }
    for (const auto& z : kernel) {
      if (!span.add(z)) continue;
      std::vector<Scalar> coords(hom_dim, k.zero());
      for (std::size_t j = 0; j < cols.size(); ++j) coords[cols[j]] = z[j];
      basis.classes.push_back(Cochain::from_coordinates(p, n, coords));
    }
  }
  return basis;
}

ParseError::ParseError(std::size_t line_, std::size_t column_, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + message),
      line(line_),
      column(column_) {}

Degree parse_degree(const GradingGroupPtr& group, const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("degree must be written [a,b,...], got '" + text + "'");
  std::vector<std::int64_t> coords;
  std::string inner = text.substr(1, text.size() - 2);
  if (!inner.empty()) {
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(item, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed degree coordinate '" + item + "'");
      }
      if (pos != item.size()) throw std::invalid_argument("malformed degree coordinate '" + item + "'");
      coords.push_back(v);
    }
  }
  return Degree(group, std::move(coords));
}

std::string print_complex(const FreeBimoduleComplex& p) {
  const auto& a = *p.algebra();
  std::ostringstream os;
  os << "complex length " << p.length() << "\n";
  for (std::size_t n = 0; n <= p.length(); ++n) {
    os << "degree " << n << " rank " << p.rank(n) << "\n";
    for (std::size_t g = 0; g < p.rank(n); ++g)
      os << "  gen " << p.generator_label(n, g) << " " << p.generator_degree(n, g).to_string() << "\n";
    if (n == 0) {
      for (std::size_t g = 0; g < p.rank(0); ++g)
        os << "  aug " << p.generator_label(0, g) << " : " << p.augmentation(g).to_string() << "\n";
      continue;
    }
    for (std::size_t col = 0; col < p.rank(n); ++col)
      for (std::size_t row = 0; row < p.rank(n - 1); ++row) {
        auto w = p.differential_entry(n, row, col);
        if (!w.empty()) os << "  d (" << row << ", " << col << ") : " << w.to_string(a) << "\n";
      }
  }
  os << "end\n";
  return os.str();
}

namespace {

struct LineCursor {
  std::size_t line;
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, pos + 1, msg); }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    if (start == pos) fail("unexpected end of line");
    return text.substr(start, pos - start);
  }
  void expect(const std::string& w) {
    skip_ws();
    std::size_t at = pos;
    if (word() != w) {
      pos = at;
      fail("expected '" + w + "'");
    }
  }
  std::size_t number() {
    skip_ws();
    std::size_t at = pos;
    std::string w;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) w += text[pos++];
    if (w.empty()) {
      pos = at;
      fail("expected a nonnegative integer");
    }
    return std::stoull(w);
  }
  void expect_char(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string rest() {
    skip_ws();
    std::string r = text.substr(pos);
    pos = text.size();
    return r;
  }
};

std::size_t label_index(const GradedAlgebra& a, LineCursor& cur, const std::string& label, std::size_t at) {
  if (auto i = a.find_label(label)) return *i;
  cur.pos = at;
  cur.fail("unknown basis label '" + label + "'");
}

// `c*l|r + ...` or `0`.
BimoduleWord parse_word(const GradedAlgebra& a, LineCursor& cur) {
  BimoduleWord w;
  std::string body = cur.rest();
  const std::size_t base = cur.text.size() - body.size();
  if (body == "0") return w;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t end = body.find(" + ", start);
    std::string term = body.substr(start, end == std::string::npos ? std::string::npos : end - start);
    cur.pos = base + start;
    auto star = term.find('*');
    auto bar = term.find('|');
    if (star == std::string::npos || bar == std::string::npos || bar < star) cur.fail("expected coeff*left|right");
    Scalar c;
    try {
      c = a.field().parse(term.substr(0, star));
    } catch (const std::exception& e) {
      cur.fail(e.what());
    }
    std::size_t l = label_index(a, cur, term.substr(star + 1, bar - star - 1), base + start + star + 1);
    std::size_t r = label_index(a, cur, term.substr(bar + 1), base + start + bar + 1);
    auto [it, fresh] = acc.emplace(std::make_pair(l, r), c);
    if (!fresh) it->second += c;
    if (end == std::string::npos) break;
    start = end + 3;
  }
  for (const auto& [lr, c] : acc)
    if (!c.is_zero()) w.terms.push_back({lr.first, lr.second, c});
  return w;
}

AlgebraElement parse_element(const AlgebraPtr& a, LineCursor& cur) {
  std::string body = cur.rest();
  const std::size_t base = cur.text.size() - body.size();
  AlgebraElement out(a);
  if (body == "0") return out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = body.find(" + ", start);
    std::string term = body.substr(start, end == std::string::npos ? std::string::npos : end - start);
    cur.pos = base + start;
    auto star = term.find('*');
    if (star == std::string::npos) cur.fail("expected coeff*label");
    Scalar c;
    try {
      c = a->field().parse(term.substr(0, star));
    } catch (const std::exception& e) {
      cur.fail(e.what());
    }
    out.add(label_index(*a, cur, term.substr(star + 1), base + start + star + 1), c);
    if (end == std::string::npos) break;
    start = end + 3;
  }
  return out;
}

}  // namespace

ComplexPtr parse_complex(const AlgebraPtr& a, const std::string& text, std::size_t first_line) {
  std::vector<std::string> lines;
  {
    std::stringstream ss(text);
    std::string l;
    while (std::getline(ss, l)) lines.push_back(l);
  }
  std::size_t i = 0;
  auto next_line = [&]() -> std::pair<std::size_t, std::string> {
    while (i < lines.size()) {
      std::string l = lines[i++];
      if (auto h = l.find('#'); h != std::string::npos) l = l.substr(0, h);
      while (!l.empty() && (l.back() == ' ' || l.back() == '\t' || l.back() == '\r')) l.pop_back();
      if (l.find_first_not_of(" \t") != std::string::npos) return {first_line + i - 1, l};
    }
    throw ParseError(first_line + lines.size(), 1, "unexpected end of complex (missing 'end')");
  };

  auto [ln, header] = next_line();
  LineCursor h{ln, header};
  h.expect("complex");
  h.expect("length");
  const std::size_t length = h.number();
  if (!h.at_end()) h.fail("trailing text");

  std::vector<std::vector<Degree>> degrees(length + 1);
  std::vector<std::vector<std::string>> labels(length + 1);
  std::vector<std::vector<SparseVector>> diff(length + 1);
  std::vector<AlgebraElement> aug;
  std::vector<std::optional<AlgebraElement>> aug_set;
  const std::size_t d = a->dim();

  std::size_t current = 0;
  bool have_degree = false;
  std::size_t expected_rank = 0;
  auto close_degree = [&](std::size_t line_no) {
    if (!have_degree) return;
    if (degrees[current].size() != expected_rank)
      throw ParseError(line_no, 1, "degree " + std::to_string(current) + " declares rank " + std::to_string(expected_rank) +
                                       " but lists " + std::to_string(degrees[current].size()) + " generators");
  };
  while (true) {
    auto [lnum, line] = next_line();
    LineCursor cur{lnum, line};
    std::string kw = cur.word();
    if (kw == "end") {
      close_degree(lnum);
      if (!have_degree || current != length) cur.fail("complex ends before degree " + std::to_string(length));
      if (!cur.at_end()) cur.fail("trailing text");
      break;
    }
    if (kw == "degree") {
      close_degree(lnum);
      std::size_t n = cur.number();
      if (have_degree ? n != current + 1 : n != 0) {
        cur.pos = 0;
        cur.fail("degrees must be listed in order starting at 0");
      }
      current = n;
      have_degree = true;
      cur.expect("rank");
      expected_rank = cur.number();
      if (!cur.at_end()) cur.fail("trailing text");
      if (n > 0) diff[n].assign(expected_rank, SparseVector());
      else aug_set.assign(expected_rank, std::nullopt);
      continue;
    }
    if (!have_degree) cur.fail("expected 'degree'");
    if (kw == "gen") {
      std::string label = cur.word();
      std::size_t at = cur.pos;
      std::string deg = cur.rest();
      try {
        degrees[current].push_back(parse_degree(a->group(), deg));
      } catch (const std::exception& e) {
        cur.pos = at;
        cur.fail(e.what());
      }
      if (degrees[current].size() > expected_rank) cur.fail("more generators than the declared rank");
      labels[current].push_back(label);
    } else if (kw == "aug") {
      if (current != 0) cur.fail("augmentation only in degree 0");
      std::string label = cur.word();
      auto it = std::find(labels[0].begin(), labels[0].end(), label);
      if (it == labels[0].end()) cur.fail("unknown generator '" + label + "'");
      cur.expect(":");
      aug_set[static_cast<std::size_t>(it - labels[0].begin())] = parse_element(a, cur);
    } else if (kw == "d") {
      if (current == 0) cur.fail("no differential in degree 0");
      cur.expect_char('(');
      std::size_t row = cur.number();
      cur.expect_char(',');
      std::size_t col = cur.number();
      cur.expect_char(')');
      cur.expect(":");
      if (row >= degrees[current - 1].size()) cur.fail("row index beyond the rank of degree " + std::to_string(current - 1));
      if (col >= expected_rank) cur.fail("column index beyond the rank of degree " + std::to_string(current));
      parse_word(*a, cur).add_to(diff[current][col], d, row);
    } else {
      cur.pos = 0;
      cur.fail("unknown keyword '" + kw + "'");
    }
  }
  for (std::size_t g = 0; g < aug_set.size(); ++g) {
    if (!aug_set[g]) throw ParseError(first_line, 1, "missing augmentation for " + labels[0][g]);
    aug.push_back(*aug_set[g]);
  }
  try {
    return std::make_shared<FreeBimoduleComplex>(a, std::move(degrees), std::move(diff), std::move(aug), std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(first_line, 1, e.what());
  }
}

}  // namespace hh
