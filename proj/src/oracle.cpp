#include "hh/oracle.hpp"

#include <sstream>

#include "hh/parallel.hpp"

namespace hh {

std::size_t bar_index(std::size_t dim, const std::vector<std::size_t>& tuple) {
  std::size_t idx = 0;
  for (std::size_t r : tuple) idx = idx * dim + r;
  return idx;
}

std::vector<std::size_t> bar_tuple(std::size_t dim, std::size_t n, std::size_t index) {
  std::vector<std::size_t> tuple(n);
  for (std::size_t i = n; i-- > 0;) {
    tuple[i] = index % dim;
    index /= dim;
  }
  return tuple;
}

ComplexPtr bar_resolution(const AlgebraPtr& r, std::size_t length) {
  const auto& a = *r;
  const std::size_t d = a.dim();
  const Field& k = a.field();
  double size = 1;
  for (std::size_t i = 0; i < length + 2; ++i) size *= static_cast<double>(d);
  if (size > static_cast<double>(kBarGuard))
    throw SizeGuardError("bar complex of length " + std::to_string(length) + " exceeds " + std::to_string(kBarGuard) +
                         " k-dimensions");

  std::vector<std::vector<Degree>> degrees(length + 1);
  std::vector<std::vector<std::string>> labels(length + 1);
  std::vector<std::vector<SparseVector>> diff(length + 1);
  std::size_t rank = 1;
  for (std::size_t n = 0; n <= length; ++n) {
    for (std::size_t g = 0; g < rank; ++g) {
      const auto tuple = bar_tuple(d, n, g);
      Degree deg = Degree::zero(a.group());
      std::string label = "e(";
      for (std::size_t i = 0; i < n; ++i) {
        deg = deg + a.degree(tuple[i]);
        label += (i ? "," : "") + a.label(tuple[i]);
      }
      degrees[n].push_back(deg);
      labels[n].push_back(label + ")");
      if (n == 0) continue;
      SparseVector v;
      std::vector<std::size_t> rest(tuple.begin() + 1, tuple.end());
      v.add(free_index(d, bar_index(d, rest), tuple[0], a.unit()), k.one());
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Scalar sign = sign_power(static_cast<std::int64_t>(i + 1), k);
        for (const auto& w : a.product(tuple[i], tuple[i + 1])) {
          std::vector<std::size_t> merged(tuple.begin(), tuple.begin() + static_cast<std::ptrdiff_t>(i));
          merged.push_back(w.index);
          merged.insert(merged.end(), tuple.begin() + static_cast<std::ptrdiff_t>(i + 2), tuple.end());
          v.add(free_index(d, bar_index(d, merged), a.unit(), a.unit()), sign * w.coeff);
        }
      }
      std::vector<std::size_t> init(tuple.begin(), tuple.end() - 1);
      v.add(free_index(d, bar_index(d, init), a.unit(), tuple[n - 1]), sign_power(static_cast<std::int64_t>(n), k));
      diff[n].push_back(std::move(v));
    }
    rank *= d;
  }
  auto c = std::make_shared<FreeBimoduleComplex>(r, std::move(degrees), std::move(diff),
                                                 std::vector<AlgebraElement>{AlgebraElement::unit(r)}, std::move(labels));
  c->set_kind(FreeBimoduleComplex::Kind::bar, 0);
  return c;
}

Cochain circle_product(const Cochain& f, const Cochain& g) {
  const auto& bar = f.complex();
  if (g.complex() != bar || bar->kind() != FreeBimoduleComplex::Kind::bar)
    throw std::invalid_argument("circle product needs cochains on one bar complex");
  const std::size_t m = f.degree();
  const std::size_t n = g.degree();
  if (m == 0) throw std::invalid_argument("circle product with a degree-0 outer cochain");
  const std::size_t top = m + n - 1;
  if (top > bar->length()) throw std::invalid_argument("circle product beyond the truncation");
  const auto& a = *bar->algebra();
  const std::size_t d = a.dim();
  Cochain out(bar, top);
  for (std::size_t idx = 0; idx < bar->rank(top); ++idx) {
    const auto r = bar_tuple(d, top, idx);
    AlgebraElement value(bar->algebra());
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> inner(r.begin() + static_cast<std::ptrdiff_t>(i),
                                     r.begin() + static_cast<std::ptrdiff_t>(i + n));
      const AlgebraElement& gv = g.value(bar_index(d, inner));
      const Scalar sign = sign_power(static_cast<std::int64_t>(i * (n + 1)), a.field());  // (-1)^{i(n-1)}
      for (std::size_t c = 0; c < d; ++c) {
        if (gv[c].is_zero()) continue;
        std::vector<std::size_t> outer(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
        outer.push_back(c);
        outer.insert(outer.end(), r.begin() + static_cast<std::ptrdiff_t>(i + n), r.end());
        value += f.value(bar_index(d, outer)).scaled(sign * gv[c]);
      }
    }
    out.set_value(idx, std::move(value));
  }
  return out;
}

Cochain circle_bracket(const Cochain& f, const Cochain& g) {
  const std::size_t m = f.degree();
  const std::size_t n = g.degree();
  if (m == 0 || n == 0) throw std::invalid_argument("brackets with degree-0 classes are not supported");
  const Scalar sign = sign_power(static_cast<std::int64_t>((m - 1) * (n - 1)), f.complex()->algebra()->field());
  return circle_product(f, g) - circle_product(g, f).scaled(sign);
}

namespace {

SparseVector degree0_generator(const GradedAlgebra& a) {
  SparseVector v;
  v.add(free_index(a.dim(), 0, a.unit(), a.unit()), a.field().one());
  return v;
}

}  // namespace

ComparisonMaps::ComparisonMaps(ComplexPtr p, ComplexPtr bar, std::size_t up_to)
    : p_(std::move(p)),
      bar_(std::move(bar)),
      iota_(lift_chain_map(p_, bar_, {degree0_generator(*p_->algebra())}, up_to)),
      pi_(lift_chain_map(bar_, p_, {degree0_generator(*p_->algebra())}, up_to)),
      up_to_(up_to) {
  if (p_->rank(0) != 1) throw std::invalid_argument("comparison maps need rank P_0 = 1");
  certified_ = certify();
}

bool ComparisonMaps::certify() const {
  for (std::size_t n = 0; n < up_to_ && n < p_->length(); ++n)
    for (const auto& f : cohomology_basis(p_, n).classes)
      if (!are_cohomologous(from_bar(to_bar(f)), f)) return false;
  return true;
}

Cochain ComparisonMaps::to_bar(const Cochain& f) const { return pull_back(f, pi_, f.degree()); }

Cochain ComparisonMaps::from_bar(const Cochain& f) const { return pull_back(f, iota_, f.degree()); }

bool OracleReport::all_pass() const {
  if (!comparison_certified) return false;
  for (const auto& p : pairs)
    if (!p.pass) return false;
  return true;
}

std::string OracleReport::to_string() const {
  std::ostringstream os;
  if (!comparison_certified) os << "FAIL comparison maps not certified\n";
  for (const auto& p : pairs) {
    os << (p.pass ? "PASS" : "FAIL") << " oracle=(" << p.m_index << ',' << p.n_index << ')';
    if (!p.detail.empty()) os << ' ' << p.detail;
    os << '\n';
  }
  return os.str();
}

OracleReport oracle_check(const ComplexPtr& p, std::size_t max_degree, std::size_t threads) {
  if (max_degree < 1) throw std::invalid_argument("oracle check needs max degree >= 1");
  if (p->length() < max_degree + 1) throw std::invalid_argument("resolution too short for the oracle degree");
  const std::size_t L = max_degree + 1;
  const ComplexPtr bar = bar_resolution(p->algebra(), L);
  const ComparisonMaps comp(p, bar, L);
  const TensorSquare ts(p, L);
  const ChainMap delta = diagonal(ts);

  OracleReport report;
  report.comparison_certified = comp.certified();
  std::vector<HomotopyLifting> lifts;
  for (std::size_t m = 1; m <= max_degree; ++m)
    for (const auto& f : cohomology_basis(p, m).classes) {
      report.classes.push_back(f);
      lifts.push_back(solve_homotopy_lifting(ts, delta, f, max_degree));
    }

  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t i = 0; i < report.classes.size(); ++i)
    for (std::size_t j = 0; j < report.classes.size(); ++j)
      if (report.classes[i].degree() + report.classes[j].degree() - 1 <= max_degree) todo.emplace_back(i, j);
  report.pairs.resize(todo.size());
  parallel_for(todo.size(), threads, [&](std::size_t t) {
    const auto [i, j] = todo[t];
    auto& v = report.pairs[t];
    v.m_index = i;
    v.n_index = j;
    try {
      const Cochain& f = report.classes[i];
      const Cochain& g = report.classes[j];
      const Cochain on_p = bracket(f, lifts[i].psi, g, lifts[j].psi);
      const Cochain on_bar = circle_bracket(comp.to_bar(f), comp.to_bar(g));
      const bool back = are_cohomologous(comp.from_bar(on_bar), on_p);
      const bool forth = are_cohomologous(on_bar, comp.to_bar(on_p));
      v.pass = back && forth;
      if (!v.pass) v.detail = "lifting bracket " + on_p.to_string() + " vs circle bracket " + comp.from_bar(on_bar).to_string();
    } catch (const std::exception& e) {
      v.detail = std::string("error: ") + e.what();
    }
  });
  return report;
}

}  // namespace hh
