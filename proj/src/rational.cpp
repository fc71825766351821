#include "placer/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace placer {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

std::int64_t narrow(__int128 v) {
  if (v > kInt64Max || v < -kInt64Max) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

__int128 digits_to_i128(std::string_view s) {
  if (s.size() > 18) throw std::overflow_error("number literal too long");
  __int128 v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

__int128 pow10_i128(std::size_t k) {
  __int128 v = 1;
  for (std::size_t i = 0; i < k; ++i) v *= 10;
  return v;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  *this = make(numerator, denominator);
}

Rational Rational::make(__int128 numerator, __int128 denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  if (numerator == 0) return Rational{};
  __int128 g = gcd128(numerator, denominator);
  Rational r;
  r.num_ = narrow(numerator / g);
  r.den_ = narrow(denominator / g);
  return r;
}

Rational Rational::parse(std::string_view text) {
  // trim outer whitespace
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number literal");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("sign without digits");

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction literal");
    }
    __int128 n = digits_to_i128(num);
    __int128 d = digits_to_i128(den);
    if (d == 0) throw std::invalid_argument("fraction with zero denominator");
    return make(negative ? -n : n, d);
  }

  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(text)) throw std::invalid_argument("malformed integer literal");
    __int128 n = digits_to_i128(text);
    return make(negative ? -n : n, 1);
  }

  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (!all_digits(frac) || (!whole.empty() && !all_digits(whole))) {
    throw std::invalid_argument("malformed decimal literal");
  }
  __int128 scale = pow10_i128(frac.size());
  __int128 n = (whole.empty() ? 0 : digits_to_i128(whole)) * scale +
               digits_to_i128(frac);
  return make(negative ? -n : n, scale);
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
  try {
    return parse(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite number");
  }
  if (value == 0.0) return Rational{};
  int exp = 0;
  double mant = std::frexp(value, &exp);        // value = mant * 2^exp
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;                                    // value = scaled * 2^exp
  while (scaled % 2 == 0 && exp < 0) {
    scaled /= 2;
    ++exp;
  }
  if (exp >= 0) {
    if (exp > 62) throw std::overflow_error("double too large for rational");
    return make(static_cast<__int128>(scaled) << exp, 1);
  }
  if (exp < -126) throw std::overflow_error("double too small for rational");
  __int128 den = static_cast<__int128>(1) << -exp;
  return make(scaled, den);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  // Decimal form when the denominator is 2^a * 5^b with few enough digits.
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  int k = twos > fives ? twos : fives;
  if (d == 1 && k <= 18) {
    __int128 scaled = static_cast<__int128>(num_ < 0 ? -num_ : num_) *
                      pow10_i128(static_cast<std::size_t>(k)) / den_;
    std::string digits;
    for (__int128 v = scaled; v > 0; v /= 10) {
      digits.insert(digits.begin(), static_cast<char>('0' + (int)(v % 10)));
    }
    while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - k) + "." +
                      digits.substr(digits.size() - k);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return (num_ < 0 ? "-" : "") + out;
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.den_ +
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.den_ -
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.num_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::invalid_argument("division by zero rational");
  return Rational::make(static_cast<__int128>(a.num_) * b.den_,
                        static_cast<__int128>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace placer
