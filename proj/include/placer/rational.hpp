#ifndef PLACER_RATIONAL_HPP
#define PLACER_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace placer {

/// Exact rational arithmetic on 64-bit numerator/denominator.
///
/// Object lengths and cache capacities are kept exact so that the
/// floor operations of the length-scaling solver never suffer binary
/// rounding (a capacity of "1" divided by a scale of "1/10" must floor
/// to exactly 10, not 9). Values are always stored in lowest terms with
/// a positive denominator; intermediate products use 128-bit integers
/// and any result outside the 64-bit range throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// Parses "42", "-0.125" or "8/90". Throws std::invalid_argument on
  /// malformed input, std::overflow_error when out of range.
  static Rational parse(std::string_view text);
  static std::optional<Rational> try_parse(std::string_view text);

  /// The exact value of a finite double (every finite double is a
  /// dyadic rational). Throws when the exponent is out of range.
  static Rational from_double(double value);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  /// Largest integer <= value (exact, correct for negatives).
  std::int64_t floor() const;

  double to_double() const;

  /// Canonical text form: integers as "5", exact decimals as "0.25",
  /// everything else as a lowest-terms fraction "4/45".
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  static Rational make(__int128 numerator, __int128 denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

}  // namespace placer

#endif  // PLACER_RATIONAL_HPP
