#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lrmr {

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in 64 bits are kept
/// inline; anything larger transparently promotes to an arbitrary-precision
/// representation. Local-ratio chains (e.g. repeated division by b(v), or
/// the (1+eps)^k thresholds of the bucketed set cover) therefore never lose
/// exactness and never overflow.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;
  __extension__ using Wide = __int128;

  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const Big& value);

  /// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.25".
  static Rational parse(std::string_view text);

  bool is_small() const noexcept { return big_ == nullptr; }
  bool is_integer() const;
  int sign() const;

  Big to_big() const;
  double to_double() const;

  /// Canonical text: "p" when the denominator is 1, else "p/q".
  std::string str() const;
  /// Decimal rendering rounded half away from zero to `places` digits.
  std::string decimal(int places = 6) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void assign_big(const Big& value);
  void assign_wide(Wide num, Wide den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

/// Harmonic number H_k = 1 + 1/2 + ... + 1/k, exactly.
Rational harmonic(std::size_t k);

}  // namespace lrmr
