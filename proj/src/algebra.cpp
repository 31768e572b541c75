#include "mulhopf/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

#include "mulhopf/errors.hpp"
#include "mulhopf/linalg.hpp"
#include "mulhopf/parallel.hpp"

namespace mulhopf {

// ---------------------------------------------------------------------------
// BasisDomain

struct BasisDomain::Data {
  std::string name;
  std::size_t width = 0;
  std::optional<std::vector<BasisId>> finite;
  std::vector<std::string> symbols;
  std::map<std::string, BasisId, std::less<>> by_symbol;
  OracleSpec oracle;
  bool is_oracle = false;
  // Simple factors of a product domain, in order; empty for simple domains.
  std::vector<BasisDomain> parts;
  std::vector<std::size_t> factor_widths;
};

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits at top-level occurrences of `sep` (outside () and []).
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::vector<BasisId> product_ids(const std::vector<std::vector<BasisId>>& lists) {
  std::vector<BasisId> out{BasisId{}};
  for (const auto& list : lists) {
    std::vector<BasisId> next;
    next.reserve(out.size() * list.size());
    for (const auto& prefix : out) {
      for (const auto& id : list) next.push_back(prefix.concat(id));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

BasisDomain BasisDomain::finite(std::string name, std::vector<std::string> symbols) {
  auto d = std::make_shared<Data>();
  d->name = std::move(name);
  d->width = 1;
  std::vector<BasisId> ids;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    BasisId id{static_cast<std::int32_t>(i)};
    ids.push_back(id);
    if (!d->by_symbol.emplace(symbols[i], id).second) {
      throw InputError("duplicate basis symbol '" + symbols[i] + "'");
    }
  }
  d->finite = std::move(ids);
  d->symbols = std::move(symbols);
  d->factor_widths = {1};
  return BasisDomain(std::move(d));
}

BasisDomain BasisDomain::oracle(OracleSpec spec) {
  auto d = std::make_shared<Data>();
  d->name = spec.name;
  d->width = spec.width;
  d->is_oracle = true;
  d->oracle = std::move(spec);
  d->factor_widths = {d->width};
  return BasisDomain(std::move(d));
}

BasisDomain BasisDomain::point() {
  static const BasisDomain p = [] {
    auto d = std::make_shared<Data>();
    d->name = "k";
    d->width = 0;
    d->finite = std::vector<BasisId>{BasisId{}};
    d->symbols = {"1"};
    d->by_symbol.emplace("1", BasisId{});
    return BasisDomain(std::move(d));
  }();
  return p;
}

BasisDomain BasisDomain::tensor(const BasisDomain& a, const BasisDomain& b) {
  if (a.width() == 0) return b;
  if (b.width() == 0) return a;
  auto d = std::make_shared<Data>();
  d->name = a.name() + "⊗" + b.name();
  d->width = a.width() + b.width();
  auto add_parts = [&](const BasisDomain& x) {
    if (x.d_->parts.empty()) {
      d->parts.push_back(x);
    } else {
      d->parts.insert(d->parts.end(), x.d_->parts.begin(), x.d_->parts.end());
    }
  };
  add_parts(a);
  add_parts(b);
  bool all_finite = true;
  for (const auto& p : d->parts) {
    d->factor_widths.push_back(p.width());
    all_finite = all_finite && p.is_finite();
  }
  if (all_finite) {
    std::vector<std::vector<BasisId>> lists;
    for (const auto& p : d->parts) lists.push_back(p.basis());
    d->finite = product_ids(lists);
  }
  return BasisDomain(std::move(d));
}

const std::string& BasisDomain::name() const { return d_->name; }
std::size_t BasisDomain::width() const { return d_->width; }
bool BasisDomain::is_finite() const { return d_->finite.has_value(); }
const std::vector<std::size_t>& BasisDomain::factor_widths() const { return d_->factor_widths; }

const std::vector<BasisId>& BasisDomain::basis() const {
  if (!d_->finite) throw std::logic_error("basis(): domain " + d_->name + " is not finite");
  return *d_->finite;
}

Window BasisDomain::window(int radius) const {
  Window w;
  if (is_finite()) {
    w.ids = basis();
    w.exhaustive = true;
    w.label = "full basis (" + std::to_string(w.ids.size()) + ")";
    return w;
  }
  if (d_->parts.empty()) {
    w.ids = d_->oracle.box(radius);
  } else {
    std::vector<std::vector<BasisId>> lists;
    for (const auto& p : d_->parts) lists.push_back(p.window(radius).ids);
    w.ids = product_ids(lists);
  }
  std::sort(w.ids.begin(), w.ids.end());
  w.label = "radius " + std::to_string(radius) + " (" + std::to_string(w.ids.size()) + ")";
  return w;
}

int BasisDomain::radius(const BasisId& id) const {
  if (d_->parts.empty()) return d_->is_oracle ? d_->oracle.radius(id) : 0;
  int r = 0;
  std::size_t offset = 0;
  for (const auto& p : d_->parts) {
    r = std::max(r, p.radius(id.slice(offset, p.width())));
    offset += p.width();
  }
  return r;
}

bool BasisDomain::contains(const BasisId& id) const {
  if (id.size() != d_->width) return false;
  if (d_->parts.empty()) {
    if (d_->is_oracle) return d_->oracle.contains(id);
    return d_->width == 0 || (id[0] >= 0 && static_cast<std::size_t>(id[0]) < d_->symbols.size());
  }
  std::size_t offset = 0;
  for (const auto& p : d_->parts) {
    if (!p.contains(id.slice(offset, p.width()))) return false;
    offset += p.width();
  }
  return true;
}

std::string BasisDomain::format(const BasisId& id) const {
  if (d_->parts.empty()) {
    if (d_->is_oracle) return d_->oracle.format(id);
    if (d_->width == 0) return "1";
    return d_->symbols.at(static_cast<std::size_t>(id[0]));
  }
  std::string out = "(";
  std::size_t offset = 0;
  for (std::size_t i = 0; i < d_->parts.size(); ++i) {
    if (i) out += ",";
    out += d_->parts[i].format(id.slice(offset, d_->parts[i].width()));
    offset += d_->parts[i].width();
  }
  return out + ")";
}

std::optional<BasisId> BasisDomain::parse_symbol(std::string_view text) const {
  text = trim(text);
  if (d_->parts.empty()) {
    if (d_->is_oracle) {
      if (!d_->oracle.parse) return std::nullopt;
      auto id = d_->oracle.parse(text);
      if (id && !d_->oracle.contains(*id)) return std::nullopt;
      return id;
    }
    auto it = d_->by_symbol.find(text);
    if (it == d_->by_symbol.end()) return std::nullopt;
    return it->second;
  }
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
  auto pieces = split_top(text.substr(1, text.size() - 2), ',');
  if (pieces.size() != d_->parts.size()) return std::nullopt;
  BasisId id;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto part = d_->parts[i].parse_symbol(pieces[i]);
    if (!part) return std::nullopt;
    id = id.concat(*part);
  }
  return id;
}

// ---------------------------------------------------------------------------
// Elements

Element tensor(const Element& x, const Element& y) {
  std::vector<Element::Term> terms;
  terms.reserve(x.size() * y.size());
  for (const auto& [a, c] : x) {
    for (const auto& [b, d] : y) terms.emplace_back(a.concat(b), c * d);
  }
  return Element(x.is_zero() ? y.field() : x.field(), std::move(terms));
}

std::pair<BasisId, BasisId> split_id(const BasisId& id, std::size_t width) {
  return {id.slice(0, width), id.slice(width, id.size() - width)};
}

std::string format_element(const BasisDomain& domain, const Element& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [id, c] : x) {
    if (!first) out += " + ";
    first = false;
    out += c.to_string() + "*" + domain.format(id);
  }
  return out;
}

Element parse_element(const BasisDomain& domain, const Field& field, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty element");
  if (text == "0") return Element(field);
  // Split into signed terms at top-level '+' / '-'.
  std::vector<std::pair<bool, std::string_view>> terms;
  int depth = 0;
  std::size_t start = 0;
  bool negative = false;
  bool expect_term = true;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : '\0';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    const bool boundary = i == text.size() || (depth == 0 && (c == '+' || c == '-'));
    if (!boundary) {
      if (!std::isspace(static_cast<unsigned char>(c))) expect_term = false;
      continue;
    }
    if (expect_term) {
      // Sign attached to the next term, e.g. "-2*x" or "x + -1*y".
      if (c == '-') negative = !negative;
      if (i == text.size()) throw InputError("dangling operator in '" + std::string(text) + "'");
      start = i + 1;
      continue;
    }
    // A '-' directly after '*' belongs to the coefficient.
    auto body = trim(text.substr(start, i - start));
    if (c == '-' && !body.empty() && body.back() == '*') continue;
    terms.emplace_back(negative, body);
    negative = c == '-';
    start = i + 1;
    expect_term = true;
  }
  Accumulator<BasisId> acc(field);
  for (auto [neg, body] : terms) {
    Scalar coeff = Scalar::one(field);
    std::string_view symbol = body;
    auto star = split_top(body, '*');
    if (star.size() == 2) {
      coeff = Scalar::parse(field, trim(star[0]));
      symbol = trim(star[1]);
    } else if (star.size() > 2) {
      throw InputError("malformed term '" + std::string(body) + "'");
    } else if (domain.width() == 0) {
      coeff = Scalar::parse(field, body);
      symbol = "1";
    }
    auto id = domain.parse_symbol(symbol);
    if (!id) throw InputError("undeclared basis symbol '" + std::string(symbol) + "'");
    acc.add(*id, neg ? -coeff : coeff);
  }
  return acc.finish();
}

// ---------------------------------------------------------------------------
// Algebra

struct Algebra::Data {
  std::string name;
  Field field;
  BasisDomain domain = BasisDomain::point();
  MulRule mul;
  std::optional<Element> unit;
  std::function<Element(int)> local_unit;
  std::vector<Algebra> factors;  // empty for simple algebras
  std::mutex local_unit_mutex;
  std::map<int, Element> local_units;
};

Algebra::Algebra(Spec spec) : d_(std::make_shared<Data>()) {
  d_->name = std::move(spec.name);
  d_->field = spec.field;
  d_->domain = std::move(spec.domain);
  d_->mul = std::move(spec.mul);
  d_->unit = std::move(spec.unit);
  d_->local_unit = std::move(spec.local_unit);
  if (!d_->mul) throw InputError("algebra '" + d_->name + "' has no multiplication rule");
}

Algebra Algebra::ground(Field field) {
  Spec s;
  s.name = "k";
  s.field = field;
  s.domain = BasisDomain::point();
  s.mul = [field](const BasisId&, const BasisId&) { return Element::unit(field, BasisId{}); };
  s.unit = Element::unit(field, BasisId{});
  return Algebra(std::move(s));
}

const std::string& Algebra::name() const { return d_->name; }
const Field& Algebra::field() const { return d_->field; }
const BasisDomain& Algebra::domain() const { return d_->domain; }
const std::optional<Element>& Algebra::unit() const { return d_->unit; }

Element Algebra::basis(const BasisId& id) const {
  if (!domain().contains(id)) throw InputError("foreign basis index in algebra " + name());
  return Element::unit(field(), id);
}

Element Algebra::scalar(const Scalar& c) const {
  if (!is_ground()) throw std::logic_error("scalar(): not the ground field");
  return Element::single(BasisId{}, c);
}

Element Algebra::mul_basis(const BasisId& a, const BasisId& b) const { return d_->mul(a, b); }

void Algebra::require_member(const Element& x) const {
  for (const auto& [id, c] : x) {
    if (!domain().contains(id)) {
      std::string raw;
      for (std::size_t i = 0; i < id.size(); ++i) raw += (i ? "," : "") + std::to_string(id[i]);
      throw InputError("element has basis index (" + raw + ") foreign to algebra " + name());
    }
    if (!(c.field() == field())) throw InputError("element over wrong field for " + name());
  }
}

Element Algebra::mul(const Element& x, const Element& y) const {
  require_member(x);
  require_member(y);
  if (x.is_zero() || y.is_zero()) return zero();
  if (x.size() == 1 && y.size() == 1) {
    const auto& [a, c] = x.front();
    const auto& [b, d] = y.front();
    Element p = d_->mul(a, b);
    const Scalar cd = c * d;
    return cd.is_one() ? p : cd * p;
  }
  Accumulator<BasisId> acc(field());
  for (const auto& [a, c] : x) {
    for (const auto& [b, d] : y) acc.add(d_->mul(a, b), c * d);
  }
  return acc.finish();
}

std::optional<Element> Algebra::local_unit(int radius) const {
  if (d_->unit) return d_->unit;
  if (!d_->local_unit) return std::nullopt;
  {
    std::lock_guard lock(d_->local_unit_mutex);
    auto it = d_->local_units.find(radius);
    if (it != d_->local_units.end()) return it->second;
  }
  Element e = d_->local_unit(radius);
  std::lock_guard lock(d_->local_unit_mutex);
  return d_->local_units.emplace(radius, std::move(e)).first->second;
}

bool Algebra::has_local_units() const { return d_->unit.has_value() || bool(d_->local_unit); }

int Algebra::radius(const Element& x) const {
  int r = 0;
  for (const auto& [id, c] : x) r = std::max(r, domain().radius(id));
  return r;
}

std::string Algebra::format(const Element& x) const { return format_element(domain(), x); }

Element Algebra::parse(std::string_view text) const { return parse_element(domain(), field(), text); }

std::vector<Algebra> Algebra::factors() const {
  if (d_->factors.empty()) return {*this};
  return d_->factors;
}

bool Algebra::same_as(const Algebra& o) const {
  return d_ == o.d_ || (d_->name == o.d_->name && d_->field == o.d_->field &&
                        d_->domain.width() == o.d_->domain.width());
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  if (!(a.field() == b.field())) throw InputError("tensor of algebras over different fields");
  if (a.is_ground()) return b;
  if (b.is_ground()) return a;
  Algebra::Spec s;
  s.name = a.name() + "⊗" + b.name();
  s.field = a.field();
  s.domain = BasisDomain::tensor(a.domain(), b.domain());
  const std::size_t wa = a.domain().width();
  s.mul = [a, b, wa](const BasisId& x, const BasisId& y) {
    auto [x1, x2] = split_id(x, wa);
    auto [y1, y2] = split_id(y, wa);
    return tensor(a.mul_basis(x1, y1), b.mul_basis(x2, y2));
  };
  if (a.unit() && b.unit()) s.unit = tensor(*a.unit(), *b.unit());
  if (a.has_local_units() && b.has_local_units()) {
    s.local_unit = [a, b](int r) { return tensor(*a.local_unit(r), *b.local_unit(r)); };
  }
  Algebra out(std::move(s));
  auto fa = a.factors();
  auto fb = b.factors();
  out.d_->factors = fa;
  out.d_->factors.insert(out.d_->factors.end(), fb.begin(), fb.end());
  return out;
}

Algebra tensor_power(const Algebra& a, std::size_t n) {
  Algebra out = Algebra::ground(a.field());
  for (std::size_t i = 0; i < n; ++i) out = tensor_algebra(out, a);
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

void require_window(const Algebra& a, const Window& w) {
  if (w.ids.empty()) throw InputError("empty window for " + a.name());
  for (const auto& id : w.ids) {
    if (!a.domain().contains(id)) throw InputError("window index foreign to " + a.name());
  }
}

using PairKey = std::pair<BasisId, BasisId>;

SparseVector<PairKey> keyed(const BasisId& tag, const Element& v) {
  std::vector<SparseVector<PairKey>::Term> terms;
  terms.reserve(v.size());
  for (const auto& [id, c] : v) terms.emplace_back(PairKey{tag, id}, c);
  return SparseVector<PairKey>(v.field(), std::move(terms));
}

Element combination(const Field& f, const std::vector<BasisId>& ids, const Vector& coeffs) {
  Accumulator<BasisId> acc(f);
  for (const auto& [j, c] : coeffs) acc.add(ids[j], c);
  return acc.finish();
}

}  // namespace

Verdict check_associativity(const Algebra& a, const Window& window) {
  require_window(a, window);
  const auto& ids = window.ids;
  const std::size_t n = ids.size();
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const auto& x = ids[t / (n * n)];
    const auto& y = ids[(t / n) % n];
    const auto& z = ids[t % n];
    const Element ex = a.basis(x), ey = a.basis(y), ez = a.basis(z);
    const Element lhs = a.mul(a.mul(ex, ey), ez);
    const Element rhs = a.mul(ex, a.mul(ey, ez));
    if (lhs == rhs) return std::nullopt;
    return Verdict::fail(window.label, {ex, ey, ez},
                         "(xy)z = " + a.format(lhs) + " but x(yz) = " + a.format(rhs));
  };
  if (auto hit = first_hit(n * n * n, probe)) return hit->second;
  return Verdict::pass(window.exhaustive, window.label);
}

IdempotencyReport check_idempotent(const Algebra& a, const Window& window) {
  require_window(a, window);
  const auto& ids = window.ids;
  SpanSolver<BasisId> span(a.field());
  std::vector<std::pair<BasisId, BasisId>> columns;
  for (const auto& x : ids) {
    for (const auto& y : ids) {
      span.add(a.mul_basis(x, y));
      columns.emplace_back(x, y);
    }
  }
  IdempotencyReport report;
  for (const auto& e : ids) {
    auto coeffs = span.express(a.basis(e));
    if (!coeffs) {
      report.verdict = Verdict::fail(window.label, {a.basis(e)},
                                     a.domain().format(e) + " is not a sum of products of window elements");
      return report;
    }
    std::vector<FactorPair> terms;
    for (const auto& [j, c] : *coeffs) {
      terms.push_back({Element::single(columns[j].first, c), a.basis(columns[j].second)});
    }
    report.decompositions.emplace(e, std::move(terms));
  }
  report.verdict = Verdict::pass(window.exhaustive, window.label);
  return report;
}

Verdict check_nondegenerate(const Algebra& a, const Window& window) {
  require_window(a, window);
  if (a.unit()) return Verdict::pass(true, "unit");
  const auto& ids = window.ids;
  for (int side = 0; side < 2; ++side) {
    // side 0: a ↦ (a·b)_b ; side 1: a ↦ (b·a)_b
    SpanSolver<PairKey> span(a.field());
    for (const auto& x : ids) {
      Accumulator<PairKey> col(a.field());
      for (const auto& y : ids) {
        col.add(keyed(y, side == 0 ? a.mul_basis(x, y) : a.mul_basis(y, x)));
      }
      span.add(col.finish());
    }
    if (!span.dependencies().empty()) {
      const Element w = combination(a.field(), ids, span.dependencies().front());
      return Verdict::fail(window.label, {w},
                           side == 0 ? "x·b = 0 for every window b" : "b·x = 0 for every window b");
    }
  }
  return Verdict::pass(window.exhaustive, window.label);
}

std::optional<std::vector<Element>> local_units_witness(const Algebra& a,
                                                        const std::vector<Element>& probe,
                                                        const Window& window) {
  require_window(a, window);
  std::vector<Element> out;
  const BasisId left_tag{0}, right_tag{1};
  for (const auto& p : probe) {
    a.require_member(p);
    if (p.is_zero()) {
      out.push_back(a.zero());
      continue;
    }
    SpanSolver<PairKey> span(a.field());
    for (const auto& e : window.ids) {
      const Element be = a.basis(e);
      span.add(keyed(right_tag, a.mul(p, be)) + keyed(left_tag, a.mul(be, p)));
    }
    auto coeffs = span.express(keyed(right_tag, p) + keyed(left_tag, p));
    if (!coeffs) return std::nullopt;
    out.push_back(combination(a.field(), window.ids, *coeffs));
  }
  return out;
}

}  // namespace mulhopf
