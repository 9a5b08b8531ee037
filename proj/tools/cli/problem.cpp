#include "problem.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

#include "hh/algebra.hpp"
#include "hh/oracle.hpp"

namespace hh::cli {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  std::string out = h == std::string::npos ? line : line.substr(0, h);
  while (!out.empty() && (out.back() == '\r' || out.back() == ' ' || out.back() == '\t')) out.pop_back();
  return out;
}

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

bool is_scalar_text(const std::string& s) {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  return std::regex_match(s, re);
}

bool is_name(const std::string& s) {
  static const std::regex re("[A-Za-z_][A-Za-z0-9_]*");
  return std::regex_match(s, re);
}

std::size_t parse_count(const Token& t, std::size_t line, const char* what) {
  static const std::regex re("[0-9]+");
  if (!std::regex_match(t.text, re)) throw ParseError(line, t.column, std::string("expected ") + what);
  return std::stoul(t.text);
}

std::string join(const std::vector<Token>& toks, std::size_t from, const std::string& sep) {
  std::string s;
  for (std::size_t i = from; i < toks.size(); ++i) s += (i > from ? sep : "") + toks[i].text;
  return s;
}

class Parser {
 public:
  explicit Parser(const std::string& text) {
    std::stringstream ss(text);
    std::string l;
    while (std::getline(ss, l)) lines_.push_back(l);
  }

  ProblemFile run() {
    ProblemFile p;
    bool field_seen = false;
    while (i_ < lines_.size()) {
      const std::size_t ln = i_ + 1;
      auto toks = tokenize(strip_comment(lines_[i_++]));
      if (toks.empty()) continue;
      const std::string& kw = toks[0].text;
      if (kw == "field") {
        if (field_seen) throw ParseError(ln, 1, "duplicate field declaration");
        field_seen = true;
        p.field = parse_field_tokens(toks, ln);
      } else if (kw == "algebra") {
        p.algebras.push_back(parse_algebra(toks, ln));
      } else if (kw == "twist") {
        if (p.twist) throw ParseError(ln, 1, "duplicate twist block");
        p.twist = parse_twist(toks, ln);
      } else if (kw == "resolution") {
        p.resolutions.push_back(parse_resolution(toks, ln));
      } else if (kw == "task") {
        if (toks.size() < 2) throw ParseError(ln, toks[0].column + 4, "task needs a command");
        TaskSpec t;
        t.line = ln;
        for (std::size_t k = 1; k < toks.size(); ++k) t.words.push_back(toks[k].text);
        p.tasks.push_back(std::move(t));
      } else {
        throw ParseError(ln, toks[0].column, "unknown keyword '" + kw + "'");
      }
    }
    return p;
  }

 private:
  static std::string parse_field_tokens(const std::vector<Token>& toks, std::size_t ln) {
    if (toks.size() == 2 && toks[1].text == "Q") return "Q";
    if (toks.size() == 3 && toks[1].text == "F") {
      const std::size_t p = parse_count(toks[2], ln, "a prime");
      try {
        Field::prime(static_cast<std::uint32_t>(p));
      } catch (const std::exception& e) {
        throw ParseError(ln, toks[2].column, e.what());
      }
      return "F " + toks[2].text;
    }
    const std::size_t col = toks.size() > 1 ? toks[1].column : toks[0].column + 5;
    throw ParseError(ln, col, "expected 'Q' or 'F p'");
  }

  AlgebraSpec parse_algebra(const std::vector<Token>& toks, std::size_t ln) {
    AlgebraSpec a;
    a.line = ln;
    if (toks.size() < 2 || !is_name(toks[1].text))
      throw ParseError(ln, toks.size() > 1 ? toks[1].column : toks[0].column + 7, "expected an algebra name");
    a.name = toks[1].text;
    if (toks.size() > 2) {
      if (toks[2].text != "truncated") throw ParseError(ln, toks[2].column, "expected 'truncated' or end of line");
      a.truncated = true;
      if (toks.size() < 5) throw ParseError(ln, toks[2].column, "expected 'truncated N VAR'");
      a.order = parse_count(toks[3], ln, "the truncation order");
      if (a.order < 1) throw ParseError(ln, toks[3].column, "truncation order must be >= 1");
      a.var = toks[4].text;
      std::size_t k = 5;
      if (k < toks.size() && toks[k].text == "degree") {
        if (k + 1 >= toks.size()) throw ParseError(ln, toks[k].column, "expected a degree after 'degree'");
        a.degree = toks[k + 1].text;
        k += 2;
      }
      if (k < toks.size()) {
        if (toks[k].text != "group") throw ParseError(ln, toks[k].column, "expected 'degree' or 'group'");
        if (k + 1 >= toks.size()) throw ParseError(ln, toks[k].column, "expected a group after 'group'");
        a.group = join(toks, k + 1, " ");
      }
      return a;
    }
    while (true) {
      if (i_ >= lines_.size()) throw ParseError(lines_.size() + 1, 1, "algebra block without 'end'");
      const std::size_t bl = i_ + 1;
      auto b = tokenize(strip_comment(lines_[i_++]));
      if (b.empty()) continue;
      const std::string& kw = b[0].text;
      if (kw == "end") {
        if (b.size() > 1) throw ParseError(bl, b[1].column, "trailing text after 'end'");
        break;
      }
      if (kw == "group") {
        if (b.size() < 2) throw ParseError(bl, b[0].column + 5, "expected a group signature");
        a.group = join(b, 1, " ");
      } else if (kw == "basis") {
        if (b.size() != 3) throw ParseError(bl, b.size() > 3 ? b[3].column : b[0].column + 5, "expected 'basis LABEL DEGREE'");
        a.basis.emplace_back(b[1].text, b[2].text);
      } else if (kw == "unit") {
        if (b.size() != 2) throw ParseError(bl, b[0].column + 4, "expected 'unit LABEL'");
        a.unit = b[1].text;
      } else if (kw == "mult") {
        ProductSpec m;
        m.line = bl;
        if (b.size() < 2) throw ParseError(bl, b[0].column + 4, "expected 'mult i j -> l c'");
        if (b.size() < 3) throw ParseError(bl, b[1].column + b[1].text.size(), "expected the second factor");
        if (b.size() < 4 || b[3].text != "->")
          throw ParseError(bl, b.size() < 4 ? b[2].column + b[2].text.size() : b[3].column, "expected '->'");
        if (b.size() < 5) throw ParseError(bl, b[3].column + 2, "expected the result basis element");
        if (b.size() < 6) throw ParseError(bl, b[4].column + b[4].text.size(), "expected a coefficient");
        if (b.size() > 6) throw ParseError(bl, b[6].column, "trailing text");
        if (!is_scalar_text(b[5].text)) throw ParseError(bl, b[5].column, "malformed coefficient '" + b[5].text + "'");
        m.left = b[1].text;
        m.right = b[2].text;
        m.result = b[4].text;
        m.coeff = b[5].text;
        a.products.push_back(std::move(m));
      } else {
        throw ParseError(bl, b[0].column, "expected 'group', 'basis', 'unit', 'mult' or 'end'");
      }
    }
    if (a.basis.empty()) throw ParseError(ln, 1, "algebra '" + a.name + "' has no basis");
    if (a.unit.empty()) throw ParseError(ln, 1, "algebra '" + a.name + "' has no unit");
    return a;
  }

  TwistSpec parse_twist(const std::vector<Token>& toks, std::size_t ln) {
    TwistSpec t;
    t.line = ln;
    if (toks.size() < 3) throw ParseError(ln, toks[0].column + 6, "expected 'twist A B'");
    t.left = toks[1].text;
    t.right = toks[2].text;
    if (toks.size() > 3) {
      if (toks[3].text != "uniform") throw ParseError(ln, toks[3].column, "expected 'uniform' or end of line");
      if (toks.size() != 5) throw ParseError(ln, toks[3].column, "expected 'uniform q'");
      if (!is_scalar_text(toks[4].text)) throw ParseError(ln, toks[4].column, "malformed scalar '" + toks[4].text + "'");
      t.uniform = true;
      t.rows = {{toks[4].text}};
      return t;
    }
    while (true) {
      if (i_ >= lines_.size()) throw ParseError(lines_.size() + 1, 1, "twist block without 'end'");
      const std::size_t bl = i_ + 1;
      auto b = tokenize(strip_comment(lines_[i_++]));
      if (b.empty()) continue;
      if (b[0].text == "end") break;
      if (b[0].text != "row") throw ParseError(bl, b[0].column, "expected 'row' or 'end'");
      std::vector<std::string> row;
      for (std::size_t k = 1; k < b.size(); ++k) {
        if (!is_scalar_text(b[k].text)) throw ParseError(bl, b[k].column, "malformed scalar '" + b[k].text + "'");
        row.push_back(b[k].text);
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  ResolutionSpec parse_resolution(const std::vector<Token>& toks, std::size_t ln) {
    ResolutionSpec r;
    r.line = ln;
    if (toks.size() < 5 || toks[2].text != "of")
      throw ParseError(ln, toks.size() > 2 ? toks[2].column : toks[0].column + 11, "expected 'resolution NAME of ALGEBRA KIND'");
    r.name = toks[1].text;
    r.algebra = toks[3].text;
    const std::string kind = join(toks, 4, "");
    const std::size_t col = toks[4].column;
    std::smatch m;
    static const std::regex trunc_re("truncated\\(([0-9]+),([0-9]+)\\)");
    static const std::regex bar_re("bar\\(([0-9]+)\\)");
    if (std::regex_match(kind, m, trunc_re)) {
      r.kind = ResolutionSpec::Kind::truncated;
      r.order = std::stoul(m[1]);
      r.length = std::stoul(m[2]);
      if (r.order < 1) throw ParseError(ln, col, "truncation order must be >= 1");
    } else if (std::regex_match(kind, m, bar_re)) {
      r.kind = ResolutionSpec::Kind::bar;
      r.length = std::stoul(m[1]);
    } else if (kind == "inline") {
      r.kind = ResolutionSpec::Kind::inline_complex;
      r.text_line = i_ + 1;
      std::string text;
      while (true) {
        if (i_ >= lines_.size()) throw ParseError(lines_.size() + 1, 1, "inline complex without 'end'");
        const std::string raw = lines_[i_++];
        text += raw + "\n";
        auto b = tokenize(strip_comment(raw));
        if (b.size() == 1 && b[0].text == "end") break;
      }
      r.text = std::move(text);
    } else {
      throw ParseError(ln, col, "expected 'truncated(N, length)', 'bar(length)' or 'inline'");
    }
    return r;
  }

  std::vector<std::string> lines_;
  std::size_t i_ = 0;
};

std::string canonical_complex_text(const std::string& text) {
  std::stringstream ss(text);
  std::string l, out;
  while (std::getline(ss, l)) {
    auto toks = tokenize(strip_comment(l));
    if (toks.empty()) continue;
    const bool top = toks[0].text == "complex" || toks[0].text == "degree" || toks[0].text == "end";
    out += std::string(top ? "  " : "    ") + join(toks, 0, " ") + "\n";
  }
  return out;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) { return Parser(text).run(); }

std::string print_problem(const ProblemFile& p) {
  std::ostringstream os;
  os << "field " << p.field << "\n";
  for (std::size_t i = 0; i < p.algebras.size(); ++i) {
    const auto& a = p.algebras[i];
    if (i == 0 || !a.truncated || !p.algebras[i - 1].truncated) os << "\n";
    if (a.truncated) {
      os << "algebra " << a.name << " truncated " << a.order << ' ' << a.var;
      if (!a.degree.empty()) os << " degree " << a.degree;
      if (!a.group.empty()) os << " group " << a.group;
      os << "\n";
      continue;
    }
    os << "algebra " << a.name << "\n";
    os << "  group " << (a.group.empty() ? "Z" : a.group) << "\n";
    for (const auto& [label, deg] : a.basis) os << "  basis " << label << ' ' << deg << "\n";
    os << "  unit " << a.unit << "\n";
    for (const auto& m : a.products)
      os << "  mult " << m.left << ' ' << m.right << " -> " << m.result << ' ' << m.coeff << "\n";
    os << "end\n";
  }
  if (p.twist) {
    const auto& t = *p.twist;
    os << "\n";
    if (t.uniform) {
      os << "twist " << t.left << ' ' << t.right << " uniform " << t.rows[0][0] << "\n";
    } else {
      os << "twist " << t.left << ' ' << t.right << "\n";
      for (const auto& row : t.rows) {
        os << "  row";
        for (const auto& v : row) os << ' ' << v;
        os << "\n";
      }
      os << "end\n";
    }
  }
  if (!p.resolutions.empty()) os << "\n";
  for (const auto& r : p.resolutions) {
    os << "resolution " << r.name << " of " << r.algebra << ' ';
    switch (r.kind) {
      case ResolutionSpec::Kind::truncated:
        os << "truncated(" << r.order << ", " << r.length << ")\n";
        break;
      case ResolutionSpec::Kind::bar:
        os << "bar(" << r.length << ")\n";
        break;
      case ResolutionSpec::Kind::inline_complex:
        os << "inline\n" << canonical_complex_text(r.text);
        break;
    }
  }
  if (!p.tasks.empty()) os << "\n";
  for (const auto& t : p.tasks) {
    os << "task";
    for (const auto& w : t.words) os << ' ' << w;
    os << "\n";
  }
  return os.str();
}

Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  if (text.rfind("F ", 0) == 0) return Field::prime(static_cast<std::uint32_t>(std::stoul(text.substr(2))));
  throw std::invalid_argument("unknown field '" + text + "'");
}

GradingGroupPtr parse_group(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s == "0") return GradingGroup::from_orders({});
  std::vector<std::int64_t> orders;
  static const std::regex free_re("Z(\\^([0-9]+))?");
  static const std::regex cyclic_re("Z/([0-9]+)");
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::smatch m;
    if (std::regex_match(part, m, cyclic_re)) {
      orders.push_back(std::stoll(m[1]));
    } else if (std::regex_match(part, m, free_re)) {
      const std::size_t n = m[2].matched ? std::stoul(m[2]) : 1;
      if (n == 0) throw std::invalid_argument("Z^0 is not a factor; write 0 for the trivial group");
      orders.insert(orders.end(), n, 0);
    } else {
      throw std::invalid_argument("malformed group factor '" + part + "' in '" + text + "'");
    }
  }
  if (orders.empty()) throw std::invalid_argument("empty group signature");
  return GradingGroup::from_orders(std::move(orders));
}

namespace {

std::size_t resolve_basis(const std::vector<std::string>& labels, const std::string& ref, std::size_t line) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == ref) return i;
  static const std::regex digits("[0-9]+");
  if (std::regex_match(ref, digits)) {
    const std::size_t i = std::stoul(ref);
    if (i < labels.size()) return i;
  }
  throw ParseError(line, 1, "unknown basis element '" + ref + "'");
}

AlgebraPtr build_algebra(const Field& k, const AlgebraSpec& a) {
  try {
    if (a.truncated) {
      std::optional<Degree> deg;
      if (!a.group.empty() && a.degree.empty())
        throw std::invalid_argument("a group needs an explicit degree for " + a.var);
      if (!a.degree.empty()) deg = parse_degree(parse_group(a.group.empty() ? "Z" : a.group), a.degree);
      return truncated_polynomial(k, a.order, a.var, deg);
    }
    const auto group = parse_group(a.group.empty() ? "Z" : a.group);
    std::vector<std::string> labels;
    std::vector<Degree> degrees;
    for (const auto& [label, deg] : a.basis) {
      for (const auto& l : labels)
        if (l == label) throw std::invalid_argument("duplicate basis label '" + label + "'");
      labels.push_back(label);
      degrees.push_back(parse_degree(group, deg));
    }
    const std::size_t unit = resolve_basis(labels, a.unit, a.line);
    const std::size_t d = labels.size();
    std::vector<std::vector<std::vector<Scalar>>> dense(d, std::vector<std::vector<Scalar>>(d));
    for (const auto& m : a.products) {
      const std::size_t i = resolve_basis(labels, m.left, m.line);
      const std::size_t j = resolve_basis(labels, m.right, m.line);
      const std::size_t l = resolve_basis(labels, m.result, m.line);
      auto& row = dense[i][j];
      if (row.empty()) row.assign(d, k.zero());
      try {
        row[l] += k.parse(m.coeff);
      } catch (const std::exception& e) {
        throw ParseError(m.line, 1, e.what());
      }
    }
    GradedAlgebra::Table table(d, std::vector<std::vector<Term>>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < dense[i][j].size(); ++l)
          if (!dense[i][j][l].is_zero()) table[i][j].push_back({l, dense[i][j][l]});
    return std::make_shared<const GradedAlgebra>(k, group, std::move(labels), std::move(degrees), unit,
                                                 std::move(table));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(a.line, 1, "algebra '" + a.name + "': " + e.what());
  }
}

}  // namespace

Model::Model(ProblemFile file) : file_(std::move(file)) {
  field_ = parse_field(file_.field);
  for (const auto& a : file_.algebras) {
    if (algebras_.count(a.name)) throw ParseError(a.line, 1, "duplicate algebra '" + a.name + "'");
    algebras_[a.name] = build_algebra(field_, a);
    order_.push_back(a.name);
  }
  if (file_.twist) {
    const auto& t = *file_.twist;
    for (const auto* n : {&t.left, &t.right})
      if (!algebras_.count(*n)) throw ParseError(t.line, 1, "twist names unknown algebra '" + *n + "'");
    try {
      twist();
    } catch (const std::exception& e) {
      throw ParseError(t.line, 1, std::string("twist: ") + e.what());
    }
  }
  for (const auto& r : file_.resolutions) {
    if (!algebras_.count(r.algebra)) throw ParseError(r.line, 1, "resolution names unknown algebra '" + r.algebra + "'");
    for (const auto& other : file_.resolutions)
      if (&other != &r && other.name == r.name) throw ParseError(r.line, 1, "duplicate resolution '" + r.name + "'");
    if (r.kind == ResolutionSpec::Kind::inline_complex) declared_resolution(r);
  }
}

AlgebraPtr Model::algebra(const std::string& name) const {
  auto it = algebras_.find(name);
  if (it == algebras_.end()) throw std::invalid_argument("unknown algebra '" + name + "'");
  return it->second;
}

const AlgebraSpec& Model::algebra_spec(const std::string& name) const {
  for (const auto& a : file_.algebras)
    if (a.name == name) return a;
  throw std::invalid_argument("unknown algebra '" + name + "'");
}

std::pair<std::string, std::string> Model::twist_pair() const {
  if (file_.twist) return {file_.twist->left, file_.twist->right};
  if (order_.empty()) throw std::invalid_argument("the problem file declares no algebra");
  return {order_[0], order_.size() >= 2 ? order_[1] : order_[0]};
}

Bicharacter Model::twist(const std::optional<std::string>& q_override) const {
  const auto [left, right] = twist_pair();
  const auto& f = algebra(left)->group();
  const auto& g = algebra(right)->group();
  if (q_override) return Bicharacter::uniform(f, g, field_.parse(*q_override));
  if (!file_.twist) return Bicharacter::trivial(f, g, field_);
  const auto& t = *file_.twist;
  if (t.uniform) return Bicharacter::uniform(f, g, field_.parse(t.rows[0][0]));
  if (t.rows.size() != f->num_factors())
    throw std::invalid_argument("twist table needs " + std::to_string(f->num_factors()) + " rows");
  std::vector<std::vector<Scalar>> values;
  for (const auto& row : t.rows) {
    if (row.size() != g->num_factors())
      throw std::invalid_argument("twist table rows need " + std::to_string(g->num_factors()) + " entries");
    std::vector<Scalar> r;
    for (const auto& v : row) r.push_back(field_.parse(v));
    values.push_back(std::move(r));
  }
  return Bicharacter(f, g, field_, std::move(values));
}

ComplexPtr Model::declared_resolution(const ResolutionSpec& spec) const {
  const AlgebraPtr a = algebra(spec.algebra);
  switch (spec.kind) {
    case ResolutionSpec::Kind::truncated: {
      const auto n = truncated_polynomial_order(*a);
      if (!n || *n != spec.order)
        throw ParseError(spec.line, 1, "algebra '" + spec.algebra + "' is not k[x]/(x^" + std::to_string(spec.order) + ")");
      return periodic_truncated_resolution(a, spec.length);
    }
    case ResolutionSpec::Kind::bar:
      return bar_resolution(a, spec.length);
    case ResolutionSpec::Kind::inline_complex:
      return parse_complex(a, spec.text, spec.text_line);
  }
  throw std::logic_error("unreachable");
}

ComplexPtr Model::resolution(const std::string& algebra_name, std::size_t min_length,
                             const std::optional<std::string>& name) const {
  const ResolutionSpec* chosen = nullptr;
  for (const auto& r : file_.resolutions) {
    if (name ? r.name == *name : r.algebra == algebra_name) {
      chosen = &r;
      break;
    }
  }
  if (name && !chosen) throw std::invalid_argument("unknown resolution '" + *name + "'");
  if (chosen) {
    if (chosen->algebra != algebra_name)
      throw std::invalid_argument("resolution '" + chosen->name + "' resolves '" + chosen->algebra + "', not '" +
                                  algebra_name + "'");
    ComplexPtr p = declared_resolution(*chosen);
    if (p->length() < min_length)
      throw std::invalid_argument("resolution '" + chosen->name + "' has length " + std::to_string(p->length()) +
                                  ", this command needs " + std::to_string(min_length));
    return p;
  }
  const AlgebraPtr a = algebra(algebra_name);
  if (truncated_polynomial_order(*a)) return periodic_truncated_resolution(a, min_length);
  return bar_resolution(a, min_length);
}

}  // namespace hh::cli
