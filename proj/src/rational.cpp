#include "pbtm/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>

#include "pbtm/error.hpp"

namespace pbtm {

namespace {

using int128 = __int128;

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr int128 kMin64 = INT64_MIN;
constexpr int128 kMax64 = INT64_MAX;

int64_t narrow(int128 v) {
  if (v < kMin64 || v > kMax64) raise(Errc::Overflow, "rational out of int64 range");
  return static_cast<int64_t>(v);
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) raise(Errc::Overflow, "rational with zero denominator");
  int128 n = num;
  int128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&]() -> Rational {
    raise(Errc::InputError, "not a rational: '" + std::string(text) + "'");
  };
  if (text.empty()) return bad();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    int64_t n = 0;
    int64_t d = 0;
    auto ns = text.substr(0, slash);
    auto ds = text.substr(slash + 1);
    auto r1 = std::from_chars(ns.data(), ns.data() + ns.size(), n);
    auto r2 = std::from_chars(ds.data(), ds.data() + ds.size(), d);
    if (r1.ec != std::errc() || r1.ptr != ns.data() + ns.size()) return bad();
    if (r2.ec != std::errc() || r2.ptr != ds.data() + ds.size()) return bad();
    if (d == 0) return bad();
    return Rational(n, d);
  }

  bool negative = false;
  std::string_view rest = text;
  if (rest.front() == '+' || rest.front() == '-') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
    if (rest.empty()) return bad();
  }

  auto dot = rest.find('.');
  std::string_view whole = dot == std::string_view::npos ? rest : rest.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
  if (whole.empty() && frac.empty()) return bad();

  int128 n = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') return bad();
    n = n * 10 + (c - '0');
    if (n > kMax64) return bad();
  }
  int128 d = 1;
  for (char c : frac) {
    if (c < '0' || c > '9') return bad();
    n = n * 10 + (c - '0');
    d *= 10;
    if (n > kMax64 || d > kMax64) return bad();
  }
  if (negative) n = -n;
  return Rational(narrow(n), narrow(d));
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-static_cast<int128>(num_));
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& other) {
  int128 n = static_cast<int128>(num_) * other.den_ + static_cast<int128>(other.num_) * den_;
  int128 d = static_cast<int128>(den_) * other.den_;
  int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
  return *this;
}

Rational& Rational::operator-=(const Rational& other) { return *this += -other; }

Rational& Rational::operator*=(const Rational& other) {
  int128 n = static_cast<int128>(num_) * other.num_;
  int128 d = static_cast<int128>(den_) * other.den_;
  int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) raise(Errc::Overflow, "rational division by zero");
  Rational inv;
  if (other.num_ < 0) {
    inv.num_ = narrow(-static_cast<int128>(other.den_));
    inv.den_ = narrow(-static_cast<int128>(other.num_));
  } else {
    inv.num_ = other.den_;
    inv.den_ = other.num_;
  }
  return *this *= inv;
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  int128 lhs = static_cast<int128>(num_) * other.den_;
  int128 rhs = static_cast<int128>(other.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  // Try to scale den_ to a power of ten: den = 2^a * 5^b.
  int64_t d = den_;
  int a = 0;
  int b = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++a;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++b;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  if (den_ == 1) return std::to_string(num_);

  int digits = a > b ? a : b;
  int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  int128 scaled = abs128(static_cast<int128>(num_) * (scale / den_));
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    frac.push_back(static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  std::string out;
  if (num_ < 0) out.push_back('-');
  int128 whole = scaled;
  std::string whole_str;
  if (whole == 0) {
    whole_str = "0";
  } else {
    while (whole > 0) {
      whole_str.push_back(static_cast<char>('0' + static_cast<int>(whole % 10)));
      whole /= 10;
    }
    std::reverse(whole_str.begin(), whole_str.end());
  }
  out += whole_str;
  out.push_back('.');
  std::reverse(frac.begin(), frac.end());
  out += frac;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownItem: return "UnknownItem";
    case Errc::ZeroWeight: return "ZeroWeight";
    case Errc::UniverseTooLarge: return "UniverseTooLarge";
    case Errc::UndefinedConfidence: return "UndefinedConfidence";
    case Errc::EmptyTraining: return "EmptyTraining";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::ZeroEvidence: return "ZeroEvidence";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::InfeasibleConfig: return "InfeasibleConfig";
    case Errc::InputError: return "InputError";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace pbtm
