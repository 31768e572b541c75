#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace mulhopf {

/// Basis index: a short tuple of integers. A factor of width w contributes w
/// entries; the index of a tensor product is the concatenation of the factor
/// indices. The ground field has the empty index.
class BasisId {
 public:
  static constexpr std::size_t capacity = 12;

  BasisId() = default;
  BasisId(std::initializer_list<std::int32_t> values) {
    if (values.size() > capacity) throw std::length_error("BasisId capacity exceeded");
    for (auto v : values) v_[size_++] = v;
  }

  std::size_t size() const { return size_; }
  std::int32_t operator[](std::size_t i) const { return v_[i]; }

  BasisId concat(const BasisId& o) const {
    if (size_ + o.size_ > capacity) throw std::length_error("BasisId capacity exceeded");
    BasisId r = *this;
    for (std::size_t i = 0; i < o.size_; ++i) r.v_[r.size_++] = o.v_[i];
    return r;
  }

  BasisId slice(std::size_t offset, std::size_t length) const {
    BasisId r;
    for (std::size_t i = 0; i < length; ++i) r.v_[i] = v_[offset + i];
    r.size_ = static_cast<std::uint8_t>(length);
    return r;
  }

  friend bool operator==(const BasisId& a, const BasisId& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i) {
      if (a.v_[i] != b.v_[i]) return false;
    }
    return true;
  }

  friend std::strong_ordering operator<=>(const BasisId& a, const BasisId& b) {
    const std::size_t n = a.size_ < b.size_ ? a.size_ : b.size_;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.v_[i] != b.v_[i]) return a.v_[i] <=> b.v_[i];
    }
    return a.size_ <=> b.size_;
  }

 private:
  std::array<std::int32_t, capacity> v_{};
  std::uint8_t size_ = 0;
};

}  // namespace mulhopf
