#include "lrmr/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <utility>

#include "lrmr/errors.hpp"

namespace lrmr {

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 magnitude(i128 x) { return x < 0 ? u128(0) - u128(x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

bool fits64(i128 x) { return x >= kMin64 && x <= kMax64; }

BigInt to_bigint(i128 x) {
  const u128 mag = magnitude(x);
  BigInt r = static_cast<std::uint64_t>(mag >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(mag);
  return x < 0 ? BigInt(-r) : r;
}

bool bigint_fits64(const BigInt& x) {
  return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  assign_wide(num, den);
}

Rational::Rational(const Big& value) { assign_big(value); }

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const u128 g = gcd128(magnitude(num), u128(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (num == 0) den = 1;
  if (fits64(num) && fits64(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    auto big = std::make_shared<Big>(to_bigint(num), to_bigint(den));
    num_ = 0;
    den_ = 1;
    big_ = std::move(big);
  }
}

void Rational::assign_big(const Big& value) {
  const BigInt& n = boost::multiprecision::numerator(value);
  const BigInt& d = boost::multiprecision::denominator(value);
  if (bigint_fits64(n) && bigint_fits64(d)) {
    num_ = n.convert_to<std::int64_t>();
    den_ = d.convert_to<std::int64_t>();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<Big>(value);
  }
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  return Big(BigInt(num_), BigInt(den_));
}

bool Rational::is_integer() const {
  if (big_) return boost::multiprecision::denominator(*big_) == 1;
  return den_ == 1;
}

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

double Rational::to_double() const {
  if (big_) return big_->convert_to<double>();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) {
    const BigInt& n = boost::multiprecision::numerator(*big_);
    const BigInt& d = boost::multiprecision::denominator(*big_);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int places) const {
  if (places < 0) places = 0;
  const Big v = to_big();
  BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt scaled = (num * scale * 2 + den) / (den * 2);
  std::string digits = scaled.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && scaled != 0) digits.insert(0, "-");
  return digits;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational { throw InvalidInput("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) return fail();

  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) fail();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) fail();
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
    }
    std::int64_t small = 0;
    auto [ptr, ec] = std::from_chars(s.data() + (s[0] == '+' ? 1 : 0), s.data() + s.size(), small);
    if (ec == std::errc() && ptr == s.data() + s.size()) return BigInt(small);
    std::string digits(s.substr(start));
    BigInt r(digits);
    return s[0] == '-' ? BigInt(-r) : r;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt n = parse_int(text.substr(0, slash));
    const BigInt d = parse_int(text.substr(slash + 1));
    if (d == 0) throw InvalidInput("rational with zero denominator");
    return Rational(Big(n, d));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) fail();
    BigInt w = whole.empty() ? BigInt(0) : parse_int(whole);
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) fail();
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt n = w * scale + f;
    if (negative) n = -n;
    return Rational(Big(n, scale));
  }
  return Rational(Big(parse_int(text)));
}

Rational Rational::operator-() const {
  Rational r = *this;
  if (big_) {
    r.assign_big(-*big_);
  } else if (num_ == std::numeric_limits<std::int64_t>::min()) {
    r.assign_wide(-static_cast<i128>(num_), den_);
  } else {
    r.num_ = -num_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      assign_wide(static_cast<i128>(num_) + rhs.num_, 1);
      return *this;
    }
    const i128 g = static_cast<i128>(gcd128(u128(den_), u128(rhs.den_)));
    const i128 n = static_cast<i128>(num_) * (rhs.den_ / g) + static_cast<i128>(rhs.num_) * (den_ / g);
    const i128 d = static_cast<i128>(den_ / g) * rhs.den_;
    assign_wide(n, d);
    return *this;
  }
  assign_big(to_big() + rhs.to_big());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      assign_wide(static_cast<i128>(num_) - rhs.num_, 1);
      return *this;
    }
    const i128 g = static_cast<i128>(gcd128(u128(den_), u128(rhs.den_)));
    const i128 n = static_cast<i128>(num_) * (rhs.den_ / g) - static_cast<i128>(rhs.num_) * (den_ / g);
    const i128 d = static_cast<i128>(den_ / g) * rhs.den_;
    assign_wide(n, d);
    return *this;
  }
  assign_big(to_big() - rhs.to_big());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_big() * rhs.to_big());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw InvalidInput("rational division by zero");
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
    return *this;
  }
  assign_big(to_big() / rhs.to_big());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  // Both sides are always fully reduced, and promotion only happens when a
  // component leaves the 64-bit range, so representations are canonical.
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const auto x = a.to_big();
  const auto y = b.to_big();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational harmonic(std::size_t k) {
  Rational h = 0;
  for (std::size_t i = 1; i <= k; ++i) h += Rational(1, static_cast<std::int64_t>(i));
  return h;
}

}  // namespace lrmr
