#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hopfdiag {

// Exact rational arithmetic on 64-bit words. Model structure constants are
// tiny integers and stay tiny under the evaluation workloads, so 64 bits
// leave generous headroom; any overflow throws instead of wrapping.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(p);
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(s);
  }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    if (num == 0) { den = 1; return; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
  }

  bool is_zero() const { return num == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(checked_add(checked_mul(a.num, b.den), -checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  Rat abs() const { return num < 0 ? Rat(-num, den) : *this; }
  // Exact comparison by cross-multiplication.
  bool less(const Rat& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace hopfdiag
