#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pbtm {

/// Exact rational over int64. Item weights, support thresholds and
/// confidence values are kept in this form so that threshold checks
/// ("ws >= wmnspt * total_tx") are reproducible instead of wobbling at
/// equality the way floating point does. Intermediates run through
/// __int128 and results are re-normalized; anything that would leave
/// int64 range throws Error(Errc::Overflow).
class Rational {
public:
  constexpr Rational() = default;
  Rational(int64_t value) : num_(value), den_(1) {}  // NOLINT: integers embed
  Rational(int64_t num, int64_t den);

  /// Accepts "3", "-7", "0.25", "-1.5", and "n/d" forms.
  static Rational parse(std::string_view text);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Exact decimal ("0.8") when the denominator divides a power of ten,
  /// otherwise "num/den".
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  std::strong_ordering operator<=>(const Rational& other) const;
  bool operator==(const Rational& other) const = default;

private:
  int64_t num_ = 0;
  int64_t den_ = 1;  // always > 0, gcd(num_, den_) == 1
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace pbtm
