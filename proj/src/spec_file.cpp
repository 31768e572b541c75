#include "mulhopf/spec_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace mulhopf {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t j = s.find_first_of(" \t", i);
    if (i < s.size()) out.push_back(s.substr(i, j == std::string_view::npos ? s.size() - i : j - i));
    i = j == std::string_view::npos ? s.size() : j;
  }
  return out;
}

struct Line {
  int number;
  std::string_view keyword;
  std::string_view rest;  // text after the keyword
};

int parse_count(const Line& l, std::string_view text, int lo) {
  int v = 0;
  text = trim(text);
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || v < lo) {
    throw SpecError(l.number, "expected an integer >= " + std::to_string(lo) + ", got '" + std::string(text) + "'");
  }
  return v;
}

// "<lhs> = <rhs>"
std::pair<std::string_view, std::string_view> split_eq(const Line& l) {
  const auto eq = l.rest.find('=');
  if (eq == std::string_view::npos) throw SpecError(l.number, "missing '=' in " + std::string(l.keyword) + " rule");
  return {trim(l.rest.substr(0, eq)), trim(l.rest.substr(eq + 1))};
}

BasisId symbol(const Line& l, const BasisDomain& d, std::string_view s) {
  auto id = d.parse_symbol(s);
  if (!id) throw SpecError(l.number, "undeclared basis symbol '" + std::string(s) + "'");
  return *id;
}

template <class F>
auto at_line(const Line& l, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(l.number, e.what());
  }
}

}  // namespace

SpecFile parse_spec(std::string_view text, std::string name) {
  std::vector<Line> lines;
  {
    int n = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++n;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      raw = trim(raw);
      if (raw.empty()) continue;
      const auto sp = raw.find_first_of(" \t");
      lines.push_back({n, raw.substr(0, sp), sp == std::string_view::npos ? std::string_view{} : trim(raw.substr(sp))});
    }
  }

  SpecFile out{GalleryEntry{name, Algebra::ground(Field::rationals()), {}, {}, {}, {}}, {}, {}};
  std::optional<Field> field;
  std::vector<std::string> symbols;
  std::optional<std::string> oracle;
  int first_rule = 0;
  for (const auto& l : lines) {
    if (l.keyword == "field") {
      if (field) throw SpecError(l.number, "field declared twice");
      auto w = words(l.rest);
      if (w.size() == 1 && w[0] == "Q") {
        field = Field::rationals();
      } else if (w.size() == 2 && w[0] == "Fp") {
        const int p = parse_count(l, w[1], 2);
        field = at_line(l, [&] { return Field::prime(p); });
      } else {
        throw SpecError(l.number, "expected 'field Q' or 'field Fp <p>'");
      }
    } else if (l.keyword == "basis") {
      if (oracle) throw SpecError(l.number, "basis and oracle are exclusive");
      for (auto w : words(l.rest)) {
        if (std::find(symbols.begin(), symbols.end(), w) != symbols.end()) {
          throw SpecError(l.number, "basis symbol '" + std::string(w) + "' declared twice");
        }
        symbols.emplace_back(w);
      }
      if (symbols.empty()) throw SpecError(l.number, "empty basis");
    } else if (l.keyword == "oracle") {
      if (oracle || !symbols.empty()) throw SpecError(l.number, "basis and oracle are exclusive");
      auto w = words(l.rest);
      if (w.empty() || w.size() > 2) throw SpecError(l.number, "expected 'oracle <name> [<param>]'");
      oracle = std::string(w[0]) + (w.size() == 2 ? "(" + std::string(w[1]) + ")" : "");
      if (!first_rule) first_rule = l.number;
    } else if (l.keyword == "window") {
      out.window = parse_count(l, l.rest, 0);
    } else if (l.keyword == "expansion") {
      out.expansion = parse_count(l, l.rest, 1);
    } else if (l.keyword == "mul" || l.keyword == "unit" || l.keyword == "delta" || l.keyword == "epsilon" ||
               l.keyword == "antipode") {
      if (oracle) throw SpecError(l.number, "oracle families are built in; '" + std::string(l.keyword) + "' rules are not allowed");
    } else {
      throw SpecError(l.number, "unknown keyword '" + std::string(l.keyword) + "'");
    }
  }
  const Field f = field.value_or(Field::rationals());
  if (oracle) {
    const int at = first_rule;
    out.bundle = at_line(Line{at, "oracle", {}}, [&] { return gallery(*oracle, f); });
    return out;
  }
  if (symbols.empty()) throw SpecError(lines.empty() ? 1 : lines.back().number, "no basis declared");

  const BasisDomain domain = BasisDomain::finite(name, symbols);
  const BasisDomain domain2 = BasisDomain::tensor(domain, domain);
  std::map<std::pair<BasisId, BasisId>, Element> mul;
  std::optional<std::pair<int, Element>> unit;
  std::map<BasisId, std::map<BasisId, Element>> delta;
  std::map<BasisId, Scalar> epsilon;
  std::map<BasisId, Element> antipode;
  bool has_delta = false, has_eps = false, has_s = false;
  for (const auto& l : lines) {
    if (l.keyword == "mul") {
      auto [lhs, rhs] = split_eq(l);
      auto w = words(lhs);
      if (w.size() != 2) throw SpecError(l.number, "expected 'mul <i> <j> = <element>'");
      const auto key = std::make_pair(symbol(l, domain, w[0]), symbol(l, domain, w[1]));
      auto value = at_line(l, [&] { return parse_element(domain, f, rhs); });
      if (!mul.emplace(key, std::move(value)).second) throw SpecError(l.number, "duplicate mul rule");
    } else if (l.keyword == "unit") {
      auto [lhs, rhs] = split_eq(l);
      if (!lhs.empty()) throw SpecError(l.number, "expected 'unit = <element>'");
      if (unit) throw SpecError(l.number, "unit declared twice");
      unit = std::make_pair(l.number, at_line(l, [&] { return parse_element(domain, f, rhs); }));
    } else if (l.keyword == "delta") {
      auto [lhs, rhs] = split_eq(l);
      const auto sp = lhs.find_first_of(" \t");
      if (sp == std::string_view::npos) throw SpecError(l.number, "expected 'delta <i> (<j>,<k>) = <element>'");
      const BasisId i = symbol(l, domain, trim(lhs.substr(0, sp)));
      const BasisId jk = symbol(l, domain2, trim(lhs.substr(sp)));
      auto value = at_line(l, [&] { return parse_element(domain2, f, rhs); });
      if (!delta[i].emplace(jk, std::move(value)).second) throw SpecError(l.number, "duplicate delta rule");
      has_delta = true;
    } else if (l.keyword == "epsilon") {
      auto [lhs, rhs] = split_eq(l);
      const BasisId i = symbol(l, domain, lhs);
      auto value = at_line(l, [&] { return Scalar::parse(f, rhs); });
      if (!epsilon.emplace(i, value).second) throw SpecError(l.number, "duplicate epsilon rule");
      has_eps = true;
    } else if (l.keyword == "antipode") {
      auto [lhs, rhs] = split_eq(l);
      const BasisId i = symbol(l, domain, lhs);
      auto value = at_line(l, [&] { return parse_element(domain, f, rhs); });
      if (!antipode.emplace(i, std::move(value)).second) throw SpecError(l.number, "duplicate antipode rule");
      has_s = true;
    }
  }

  Algebra::Spec s;
  s.name = name;
  s.field = f;
  s.domain = domain;
  s.mul = [mul, f](const BasisId& a, const BasisId& b) {
    auto it = mul.find({a, b});
    return it == mul.end() ? Element(f) : it->second;
  };
  Algebra a(s);
  if (unit) {
    for (const auto& id : domain.basis()) {
      const Element e = a.basis(id);
      if (a.mul(unit->second, e) != e || a.mul(e, unit->second) != e) {
        throw SpecError(unit->first, "declared unit does not act as the identity on " + domain.format(id));
      }
    }
    s.unit = unit->second;
    a = Algebra(s);
  }
  out.bundle.algebra = a;
  out.bundle.description = "finite algebra from a spec file";

  if (has_delta) {
    const Algebra a2 = tensor_algebra(a, a);
    std::map<BasisId, Multiplier> table;
    for (const auto& i : domain.basis()) {
      const auto& rows = delta[i];
      auto lambda = [rows, f](const BasisId& jk) {
        auto it = rows.find(jk);
        return it == rows.end() ? Element(f) : it->second;
      };
      int line = 0;
      for (const auto& l : lines) {
        if (l.keyword == "delta" && !line) line = l.number;
      }
      table.emplace(i, at_line(Line{line, "delta", {}}, [&] {
        return complete_from_left(a2, lambda, "Δ(" + domain.format(i) + ")");
      }));
    }
    out.bundle.delta = Extension(a, a2, [table](const BasisId& i) { return table.at(i); }, "Δ");
  }
  if (has_eps) {
    out.bundle.counit = Counit(a, [epsilon, f](const BasisId& i) {
      auto it = epsilon.find(i);
      return it == epsilon.end() ? Scalar::zero(f) : it->second;
    });
  }
  if (has_s) {
    out.bundle.antipode = ConvolutionElement(a, [a, antipode, f](const BasisId& i) {
      auto it = antipode.find(i);
      return iota(a, it == antipode.end() ? Element(f) : it->second);
    }, "S");
  }
  return out;
}

SpecFile load_spec(const std::string& source) {
  constexpr std::string_view prefix = "gallery:";
  if (source.starts_with(prefix)) return SpecFile{gallery(source.substr(prefix.size())), {}, {}};
  std::ifstream in(source);
  if (!in) throw InputError("cannot read spec file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = source;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_spec(buf.str(), stem);
}

}  // namespace mulhopf
