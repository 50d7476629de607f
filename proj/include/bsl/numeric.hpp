#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bsl {

// All geometric computation runs on variable-precision binary floats (MPFR).
// Precision is a process-wide setting fixed at startup; the tolerance tau used
// by every geometric predicate is derived from it as 2^-(bits/2).
using Real =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

namespace precision {

inline unsigned& bits_ref() {
  static unsigned bits = 256;
  return bits;
}

inline int& tolerance_exp_ref() {
  static int e = 0;  // 0 means "bits/2"
  return e;
}

inline void set_bits(unsigned bits) {
  bits_ref() = bits;
  unsigned digits10 = static_cast<unsigned>(bits * 0.30103) + 4;
  Real::default_precision(digits10);
}

inline unsigned bits() { return bits_ref(); }

// Override the tolerance exponent (tau = 2^-e); 0 restores the default bits/2.
inline void set_tolerance_exp(int e) { tolerance_exp_ref() = e; }

inline Real tau() {
  int e = tolerance_exp_ref();
  if (e == 0) e = static_cast<int>(bits_ref() / 2);
  return ldexp(Real(1), -e);
}

// Temporarily raises working precision (used by ambiguity retries).
class Scoped {
 public:
  explicit Scoped(unsigned bits) : saved_(bits_ref()) { set_bits(bits); }
  ~Scoped() { set_bits(saved_); }
  Scoped(const Scoped&) = delete;
  Scoped& operator=(const Scoped&) = delete;

 private:
  unsigned saved_;
};

}  // namespace precision

inline bool near(const Real& a, const Real& b, const Real& tol) {
  return abs(a - b) <= tol;
}

inline bool near(const Real& a, const Real& b) {
  return near(a, b, precision::tau());
}

inline Real pi_value() {
  static thread_local Real cached = 0;
  static thread_local unsigned cached_bits = 0;
  if (cached_bits != precision::bits()) {
    cached = 4 * atan(Real(1));
    cached_bits = precision::bits();
  }
  return cached;
}

// Complex scalar over Real.  std::complex is only specified for builtin
// floating types, so the handful of operations needed here are spelled out.
struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator-() const { return {-re, -im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator/(const Complex& o) const {
    Real n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

  friend Complex conj(const Complex& z) { return {z.re, -z.im}; }
  friend Real abs2(const Complex& z) { return z.re * z.re + z.im * z.im; }
  friend Real abs(const Complex& z) { return sqrt(abs2(z)); }
  friend Real arg(const Complex& z) { return atan2(z.im, z.re); }
};

inline Complex unit_at(const Real& angle) { return {cos(angle), sin(angle)}; }

inline Complex operator*(const Real& s, const Complex& z) { return {s * z.re, s * z.im}; }

inline bool near(const Complex& a, const Complex& b, const Real& tol) {
  return abs(a - b) <= tol;
}

inline bool near(const Complex& a, const Complex& b) {
  return near(a, b, precision::tau());
}

inline std::string to_decimal(const Real& x, unsigned digits10 = 0) {
  if (digits10 == 0) digits10 = Real::default_precision();
  return x.str(digits10);
}

}  // namespace bsl
