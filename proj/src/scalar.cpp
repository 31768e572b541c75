#include "mulhopf/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "mulhopf/errors.hpp"

namespace mulhopf {

namespace {

std::int64_t reduce(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t result = 1 % p;
  base = reduce(base, p);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InputError("malformed integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw InputError("field modulus " + std::to_string(p) + " is not prime");
  }
  return Field(FieldKind::prime, p);
}

std::string Field::name() const {
  return kind_ == FieldKind::rational ? "Q" : "F" + std::to_string(modulus_);
}

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

Scalar::rational to_rational(i128 v) {
  using boost::multiprecision::cpp_int;
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  cpp_int r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return Scalar::rational(neg ? cpp_int(-r) : r);
}

}  // namespace

void Scalar::assign(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (fits(num) && fits(den)) {
    r_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    q_.reset();
  } else {
    assign(to_rational(num) / to_rational(den));
  }
}

void Scalar::assign(rational q) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = numerator(q), d = denominator(q);
  static const cpp_int lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
  if (n >= lo && n <= hi && d <= hi) {
    r_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    q_.reset();
  } else {
    q_ = std::make_shared<const rational>(std::move(q));
  }
}

Scalar::rational Scalar::as_rational() const { return q_ ? *q_ : rational(r_, den_); }

Scalar::Scalar(Field field, std::int64_t value) : field_(field) {
  if (field_.kind() == FieldKind::prime) r_ = reduce(value, field_.modulus());
  else r_ = value;
}

Scalar::Scalar(Field field, std::int64_t num, std::int64_t den) : field_(field) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (field_.kind() == FieldKind::rational) {
    assign(i128(num), i128(den));
  } else {
    const auto p = field_.modulus();
    const auto d = reduce(den, p);
    if (d == 0) throw std::domain_error("denominator vanishes in " + field_.name());
    r_ = mul_mod(reduce(num, p), pow_mod(d, p - 2, p), p);
  }
}

Scalar Scalar::parse(Field f, std::string_view text) {
  if (text.empty()) throw InputError("empty scalar");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(f, parse_int(text));
  const auto num = parse_int(text.substr(0, slash));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Scalar(f, num, den);
}

bool Scalar::is_zero() const { return !q_ && r_ == 0; }

bool Scalar::is_one() const { return !q_ && r_ == 1 && den_ == 1; }

void Scalar::require_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw InputError("scalar field mismatch: " + field_.name() + " vs " + o.field_.name());
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.kind() == FieldKind::prime) {
    r.r_ = r_ == 0 ? 0 : field_.modulus() - r_;
  } else if (q_) {
    r.assign(rational(-*q_));
  } else {
    r.assign(-i128(r_), i128(den_));
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (field_.kind() == FieldKind::prime) {
    r_ = reduce(r_ + o.r_, field_.modulus());
  } else if (o.is_zero()) {
  } else if (q_ || o.q_) {
    assign(as_rational() + o.as_rational());
  } else if (den_ == 1 && o.den_ == 1) {
    std::int64_t sum = 0;
    if (__builtin_add_overflow(r_, o.r_, &sum)) assign(i128(r_) + o.r_, 1);
    else r_ = sum;
  } else if (std::max({abs128(r_), abs128(o.r_), i128(den_), i128(o.den_)}) >> 62) {
    assign(as_rational() + o.as_rational());
  } else {
    assign(i128(r_) * o.den_ + i128(o.r_) * den_, i128(den_) * o.den_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (field_.kind() == FieldKind::prime) {
    r_ = mul_mod(r_, o.r_, field_.modulus());
  } else if (o.is_one()) {
  } else if (is_one()) {
    *this = o;
  } else if (q_ || o.q_) {
    assign(as_rational() * o.as_rational());
  } else {
    assign(i128(r_) * o.r_, i128(den_) * o.den_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar r = *this;
  if (field_.kind() == FieldKind::prime) {
    r.r_ = pow_mod(r_, field_.modulus() - 2, field_.modulus());
  } else if (q_) {
    r.assign(rational(1 / *q_));
  } else {
    r.assign(i128(den_), i128(r_));
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  if (field_.kind() == FieldKind::prime) return r_ == o.r_;
  if (bool(q_) != bool(o.q_)) return false;
  return q_ ? *q_ == *o.q_ : r_ == o.r_ && den_ == o.den_;
}

std::string Scalar::to_string() const {
  if (field_.kind() == FieldKind::prime) return std::to_string(r_);
  if (q_) return q_->str();
  return den_ == 1 ? std::to_string(r_) : std::to_string(r_) + "/" + std::to_string(den_);
}

}  // namespace mulhopf
