#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "mulhopf/scalar.hpp"

namespace mulhopf {

/// Finite formal sum Key -> Scalar in canonical form: terms sorted by key,
/// no repeated keys, no stored zeros. Equality is structural.
template <class Key>
class SparseVector {
 public:
  using Term = std::pair<Key, Scalar>;
  using const_iterator = typename std::vector<Term>::const_iterator;

  SparseVector() = default;
  explicit SparseVector(Field field) : field_(field) {}
  SparseVector(Field field, std::vector<Term> terms) : field_(field), terms_(std::move(terms)) {
    canonicalize();
  }

  static SparseVector unit(Field field, Key key) {
    SparseVector v(field);
    v.terms_.emplace_back(std::move(key), Scalar::one(field));
    return v;
  }
  static SparseVector single(Key key, Scalar c) {
    SparseVector v(c.field());
    if (!c.is_zero()) v.terms_.emplace_back(std::move(key), std::move(c));
    return v;
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Term& front() const { return terms_.front(); }
  const std::vector<Term>& terms() const { return terms_; }

  Scalar coeff(const Key& key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, const Key& k) { return t.first < k; });
    if (it != terms_.end() && !(key < it->first)) return it->second;
    return Scalar::zero(field_);
  }

  SparseVector operator-() const {
    SparseVector r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    return merge(a, b, Scalar::one(a.field_));
  }
  friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
    return merge(a, b, -Scalar::one(a.field_));
  }
  friend SparseVector operator*(const Scalar& c, const SparseVector& v) {
    SparseVector r(v.field_);
    if (c.is_zero()) return r;
    r.terms_.reserve(v.terms_.size());
    for (const auto& [k, x] : v.terms_) r.terms_.emplace_back(k, c * x);
    return r;
  }
  SparseVector& operator+=(const SparseVector& o) { return *this = *this + o; }
  SparseVector& operator-=(const SparseVector& o) { return *this = *this - o; }

  bool operator==(const SparseVector& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].first == o.terms_[i].first) || !(terms_[i].second == o.terms_[i].second)) {
        return false;
      }
    }
    return true;
  }

 private:
  static SparseVector merge(const SparseVector& a, const SparseVector& b, const Scalar& sign) {
    if (b.terms_.empty()) return a;
    if (a.terms_.empty()) return Scalar(b.field_, sign.is_one() ? 1 : -1) * b;
    SparseVector r(a.field_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, sign * j->second);
        ++j;
      } else {
        Scalar s = i->second + sign * j->second;
        if (!s.is_zero()) r.terms_.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    auto strictly = [](const Term& x, const Term& y) { return !(x.first < y.first); };
    if (std::adjacent_find(terms_.begin(), terms_.end(), strictly) == terms_.end() &&
        std::none_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_zero(); })) {
      return;
    }
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return t.second.is_zero(); });
    terms_ = std::move(out);
  }

  Field field_;
  std::vector<Term> terms_;
};

/// Mutable builder for sums of many terms; duplicates are merged on finish.
template <class Key>
class Accumulator {
 public:
  explicit Accumulator(Field field) : field_(field) {}

  void add(const Key& key, const Scalar& c) {
    if (c.is_zero()) return;
    terms_.emplace_back(key, c);
  }
  void add(const SparseVector<Key>& v, const Scalar& scale) {
    if (scale.is_zero()) return;
    if (scale.is_one()) return add(v);
    for (const auto& [k, c] : v) add(k, scale * c);
  }
  void add(const SparseVector<Key>& v) { terms_.insert(terms_.end(), v.begin(), v.end()); }

  SparseVector<Key> finish() const { return SparseVector<Key>(field_, terms_); }

 private:
  Field field_;
  std::vector<typename SparseVector<Key>::Term> terms_;
};

}  // namespace mulhopf
