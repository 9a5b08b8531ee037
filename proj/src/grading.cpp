#include "hh/grading.hpp"

#include <sstream>
#include <stdexcept>

namespace hh {

GradingGroup::GradingGroup(std::size_t free_rank, std::vector<std::int64_t> torsion) : orders_(free_rank, 0) {
  for (auto m : torsion) {
    if (m < 2) throw std::invalid_argument("torsion orders must be >= 2");
    orders_.push_back(m);
  }
}

GradingGroupPtr GradingGroup::make(std::size_t free_rank, std::vector<std::int64_t> torsion) {
  return std::make_shared<const GradingGroup>(free_rank, std::move(torsion));
}

GradingGroupPtr GradingGroup::from_orders(std::vector<std::int64_t> orders) {
  GradingGroup g;
  for (auto m : orders)
    if (m != 0 && m < 2) throw std::invalid_argument("cyclic factor order must be 0 (free) or >= 2");
  g.orders_ = std::move(orders);
  return std::make_shared<const GradingGroup>(std::move(g));
}

GradingGroupPtr GradingGroup::direct_sum(const GradingGroup& f, const GradingGroup& g) {
  std::vector<std::int64_t> orders = f.orders_;
  orders.insert(orders.end(), g.orders_.begin(), g.orders_.end());
  return from_orders(std::move(orders));
}

std::size_t GradingGroup::free_rank() const {
  std::size_t r = 0;
  for (auto m : orders_) r += (m == 0);
  return r;
}

std::vector<std::int64_t> GradingGroup::torsion() const {
  std::vector<std::int64_t> t;
  for (auto m : orders_)
    if (m != 0) t.push_back(m);
  return t;
}

std::string GradingGroup::signature() const {
  if (orders_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < orders_.size();) {
    if (i) os << " x ";
    if (orders_[i] == 0) {
      std::size_t run = 0;
      while (i < orders_.size() && orders_[i] == 0) ++run, ++i;
      os << "Z";
      if (run > 1) os << "^" << run;
    } else {
      os << "Z/" << orders_[i];
      ++i;
    }
  }
  return os.str();
}

Degree::Degree(GradingGroupPtr group, std::vector<std::int64_t> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
  if (!group_) throw std::invalid_argument("degree without group");
  if (coords_.size() != group_->num_factors())
    throw std::invalid_argument("degree has " + std::to_string(coords_.size()) + " coordinates, group " +
                                group_->signature() + " needs " + std::to_string(group_->num_factors()));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    auto m = group_->order(i);
    if (m != 0) {
      coords_[i] %= m;
      if (coords_[i] < 0) coords_[i] += m;
    }
  }
}

Degree Degree::zero(const GradingGroupPtr& group) { return Degree(group, std::vector<std::int64_t>(group->num_factors(), 0)); }

bool Degree::is_zero() const {
  for (auto c : coords_)
    if (c != 0) return false;
  return true;
}

bool Degree::same_group(const Degree& rhs) const {
  return group_ == rhs.group_ || (group_ && rhs.group_ && *group_ == *rhs.group_);
}

void Degree::require_same_group(const Degree& rhs) const {
  if (!same_group(rhs)) throw std::invalid_argument("degrees belong to different grading groups");
}

Degree Degree::operator+(const Degree& rhs) const {
  require_same_group(rhs);
  auto c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += rhs.coords_[i];
  return Degree(group_, std::move(c));
}

Degree Degree::operator-(const Degree& rhs) const { return *this + (-rhs); }

Degree Degree::operator-() const {
  auto c = coords_;
  for (auto& x : c) x = -x;
  return Degree(group_, std::move(c));
}

Degree Degree::times(std::int64_t n) const {
  auto c = coords_;
  for (auto& x : c) x *= n;
  return Degree(group_, std::move(c));
}

bool Degree::operator==(const Degree& rhs) const { return same_group(rhs) && coords_ == rhs.coords_; }

std::string Degree::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ']';
  return os.str();
}

Degree embed_left(const GradingGroupPtr& sum, const Degree& f) {
  std::vector<std::int64_t> c(sum->num_factors(), 0);
  auto fc = f.coords();
  if (fc.size() > c.size()) throw std::invalid_argument("degree does not embed into direct sum");
  std::copy(fc.begin(), fc.end(), c.begin());
  return Degree(sum, std::move(c));
}

Degree embed_right(const GradingGroupPtr& sum, const Degree& g) {
  std::vector<std::int64_t> c(sum->num_factors(), 0);
  auto gc = g.coords();
  if (gc.size() > c.size()) throw std::invalid_argument("degree does not embed into direct sum");
  std::copy(gc.begin(), gc.end(), c.end() - static_cast<std::ptrdiff_t>(gc.size()));
  return Degree(sum, std::move(c));
}

Degree direct_sum_degree(const GradingGroupPtr& sum, const Degree& f, const Degree& g) {
  std::vector<std::int64_t> c(f.coords().begin(), f.coords().end());
  c.insert(c.end(), g.coords().begin(), g.coords().end());
  return Degree(sum, std::move(c));
}

Bicharacter::Bicharacter(GradingGroupPtr left, GradingGroupPtr right, Field k, std::vector<std::vector<Scalar>> values)
    : left_(std::move(left)), right_(std::move(right)), field_(k), values_(std::move(values)) {
  if (values_.size() != left_->num_factors()) throw std::invalid_argument("bicharacter table has wrong row count");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].size() != right_->num_factors())
      throw std::invalid_argument("bicharacter table has wrong column count");
    for (std::size_t j = 0; j < values_[i].size(); ++j) {
      const Scalar& z = values_[i][j];
      if (!(z.field() == field_)) throw std::invalid_argument("bicharacter value in the wrong field");
      if (z.is_zero()) throw std::invalid_argument("bicharacter values must be nonzero");
      if (auto m = left_->order(i); m != 0 && !z.pow(m).is_one())
        throw std::invalid_argument("bicharacter value t(" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not an " + std::to_string(m) + "-th root of unity");
      if (auto n = right_->order(j); n != 0 && !z.pow(n).is_one())
        throw std::invalid_argument("bicharacter value t(" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not an " + std::to_string(n) + "-th root of unity");
    }
  }
}

Bicharacter Bicharacter::trivial(GradingGroupPtr left, GradingGroupPtr right, Field k) {
  std::vector<std::vector<Scalar>> v(left->num_factors(), std::vector<Scalar>(right->num_factors(), k.one()));
  return Bicharacter(std::move(left), std::move(right), k, std::move(v));
}

Bicharacter Bicharacter::uniform(GradingGroupPtr left, GradingGroupPtr right, Scalar q) {
  Field k = q.field();
  std::vector<std::vector<Scalar>> v(left->num_factors(), std::vector<Scalar>(right->num_factors(), q));
  return Bicharacter(std::move(left), std::move(right), k, std::move(v));
}

bool Bicharacter::is_trivial() const {
  for (const auto& row : values_)
    for (const auto& z : row)
      if (!z.is_one()) return false;
  return true;
}

Scalar Bicharacter::evaluate(const Degree& f, const Degree& g) const {
  if (!(f.group() == *left_)) throw std::invalid_argument("left degree is not in the bicharacter's left group");
  if (!(g.group() == *right_)) throw std::invalid_argument("right degree is not in the bicharacter's right group");
  Scalar result = field_.one();
  auto fc = f.coords();
  auto gc = g.coords();
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc[i] == 0) continue;
    for (std::size_t j = 0; j < gc.size(); ++j) {
      if (gc[j] == 0 || values_[i][j].is_one()) continue;
      result *= values_[i][j].pow(fc[i] * gc[j]);
    }
  }
  return result;
}

bool Bicharacter::in_f_prime(const Degree& f) const {
  for (std::size_t j = 0; j < right_->num_factors(); ++j) {
    std::vector<std::int64_t> e(right_->num_factors(), 0);
    e[j] = 1;
    if (!evaluate(f, Degree(right_, e)).is_one()) return false;
  }
  return true;
}

bool Bicharacter::in_g_prime(const Degree& g) const {
  for (std::size_t i = 0; i < left_->num_factors(); ++i) {
    std::vector<std::int64_t> e(left_->num_factors(), 0);
    e[i] = 1;
    if (!evaluate(Degree(left_, e), g).is_one()) return false;
  }
  return true;
}

}  // namespace hh
