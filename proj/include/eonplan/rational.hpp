// Exact rational arithmetic for traffic rates and protection fractions.
// Boundary decisions (slot counts, SLA satisfaction) must not depend on
// floating-point rounding, so rates are carried as int64 fractions of Mbps.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eonplan {

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0, gcd(num, den) == 1

  Frac() = default;
  Frac(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
  explicit Frac(std::int64_t n) : num(n), den(1) {}

  void normalize() {
    if (den == 0) throw std::invalid_argument("Frac: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
  friend bool operator<(const Frac& a, const Frac& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }

  friend Frac operator+(const Frac& a, const Frac& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return from_wide(n, d);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return from_wide(n, d);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return from_wide(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }

  static Frac from_wide(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Frac: value out of 64-bit range");
    Frac f;
    f.num = static_cast<std::int64_t>(n);
    f.den = static_cast<std::int64_t>(d);
    return f;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
};

// ceil(f / divisor) for positive f and divisor; exact.
inline std::int64_t ceil_div(const Frac& f, std::int64_t divisor) {
  if (divisor <= 0) throw std::invalid_argument("ceil_div: divisor must be positive");
  if (f.num < 0) throw std::invalid_argument("ceil_div: negative value");
  const __int128 d = static_cast<__int128>(f.den) * divisor;
  return static_cast<std::int64_t>((static_cast<__int128>(f.num) + d - 1) / d);
}

// Accepts "3", "0.75", "131.25", or "17/28".  Exact: decimal digits become a
// power-of-ten denominator, slash form is taken verbatim.
inline Frac parse_frac(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_frac: empty string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    if (a.empty() || b.empty()) throw std::invalid_argument("parse_frac: malformed fraction '" + text + "'");
    return Frac(std::stoll(a), std::stoll(b));
  }
  const auto dot = text.find('.');
  bool neg = false;
  std::size_t pos = 0;
  if (text[0] == '-') { neg = true; pos = 1; }
  std::int64_t num = 0, den = 1;
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (i == dot) continue;
    const char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("parse_frac: malformed number '" + text + "'");
    if (num > (INT64_MAX - 9) / 10) throw std::overflow_error("parse_frac: too many digits in '" + text + "'");
    num = num * 10 + (c - '0');
    if (dot != std::string::npos && i > dot) {
      if (den > INT64_MAX / 10) throw std::overflow_error("parse_frac: too many decimals in '" + text + "'");
      den *= 10;
    }
  }
  return Frac(neg ? -num : num, den);
}

// Shortest exact text form: integer, terminating decimal, or "num/den".
inline std::string format_frac(const Frac& f) {
  if (f.den == 1) return std::to_string(f.num);
  // decimal expansion terminates iff den = 2^a * 5^b
  std::int64_t d = f.den;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  if (d == 1) {
    __int128 num = f.num < 0 ? -f.num : f.num;
    __int128 den = f.den;
    std::string digits;
    __int128 whole = num / den, rem = num % den;
    while (rem != 0) {
      rem *= 10;
      digits += static_cast<char>('0' + static_cast<int>(rem / den));
      rem %= den;
    }
    std::string out = (f.num < 0 ? "-" : "") + std::to_string(static_cast<std::int64_t>(whole));
    if (!digits.empty()) out += "." + digits;
    return out;
  }
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

}  // namespace eonplan
