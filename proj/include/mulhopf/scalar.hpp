#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mulhopf {

enum class FieldKind : std::uint8_t { rational, prime };

/// The exact base field: either the rationals or a prime field F_p.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field{}; }
  /// Throws InputError unless p is prime.
  static Field prime(std::int64_t p);

  FieldKind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }
  std::string name() const;

  bool operator==(const Field&) const = default;

 private:
  constexpr Field(FieldKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

  FieldKind kind_ = FieldKind::rational;
  std::int64_t modulus_ = 0;
};

bool is_prime(std::int64_t n);

/// An exact field element. Rationals are normalized fractions (machine words
/// with a cpp_rational fallback), prime-field values residues in [0, p).
class Scalar {
 public:
  using rational = boost::multiprecision::cpp_rational;

  Scalar() = default;
  Scalar(Field field, std::int64_t value);
  Scalar(Field field, std::int64_t num, std::int64_t den);

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  /// Parses "3", "-2/5"; throws InputError.
  static Scalar parse(Field f, std::string_view text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws std::domain_error on zero.
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;

  std::string to_string() const;

 private:
  void require_same_field(const Scalar& o) const;
  rational as_rational() const;
  void assign(rational q);
  void assign(__int128 num, __int128 den);

  Field field_;
  // Rationals are r_/den_ in lowest terms while they fit in 64 bits, and q_ otherwise.
  std::int64_t r_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const rational> q_;
};

}  // namespace mulhopf
