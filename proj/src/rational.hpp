#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace commsched {

// Exact signed rational on int64 numerator/denominator, always normalized
// (gcd reduced, denominator positive). Intermediates go through __int128 so
// microsecond-scale makespans never overflow.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  static Rational from_int(std::int64_t n) { return Rational(n, 1); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den <
           static_cast<__int128>(o.num) * den;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  Rational operator+(const Rational& o) const {
    return make(static_cast<__int128>(num) * o.den +
                    static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rational operator-(const Rational& o) const {
    return make(static_cast<__int128>(num) * o.den -
                    static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rational operator*(const Rational& o) const {
    return make(static_cast<__int128>(num) * o.num,
                static_cast<__int128>(den) * o.den);
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("rational division by zero");
    return make(static_cast<__int128>(num) * o.den,
                static_cast<__int128>(den) * o.num);
  }

  double as_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  // Fixed-point decimal rendering, round half away from zero.
  std::string decimal(int places = 6) const {
    __int128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    __int128 scaled = static_cast<__int128>(num) * scale;
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    __int128 q = scaled / den;
    const __int128 r = scaled % den;
    if (2 * r >= den) ++q;
    std::string digits;
    if (q == 0) digits = "0";
    while (q > 0) {
      digits.insert(digits.begin(), static_cast<char>('0' + int(q % 10)));
      q /= 10;
    }
    while (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(digits.begin(), '0');
    if (places > 0) digits.insert(digits.size() - places, ".");
    if (negative) digits.insert(digits.begin(), '-');
    return digits;
  }

  // Accepts "3", "2/3" and decimal forms like "0.5".
  static Rational parse(const std::string& text) {
    const auto bad = [&]() {
      return std::invalid_argument("not a rational: " + text);
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      return Rational(parse_int(text.substr(0, slash)),
                      parse_int(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_int(text), 1);
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) throw bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::int64_t w =
        whole.empty() || whole == "-" ? 0 : parse_int(whole);
    const std::int64_t f = parse_int(frac);
    if (f < 0) throw bad();
    const std::int64_t n =
        negative ? w * scale - f : w * scale + f;
    return Rational(n, scale);
  }

private:
  static std::int64_t parse_int(const std::string& text) {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(text, &used);
    if (used != text.size())
      throw std::invalid_argument("not an integer: " + text);
    return v;
  }

  static Rational make(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(n == 0 ? 1 : d);
    return r;
  }
};

}  // namespace commsched
