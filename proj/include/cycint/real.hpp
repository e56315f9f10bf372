#pragma once

// Thin RAII layer over GMP integers and MPFR floats.
//
// Every Real carries its own bit precision. Values created without an
// explicit precision take the calling thread's working precision, which is
// set with PrecisionScope. Binary operators produce a result at the larger
// of the two operand precisions.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace cycint {

using Int = mpz_class;

/// Bits used when no PrecisionScope is active.
inline constexpr long kDefaultPrecisionBits = 128;

long working_precision();

/// Sets the thread's working precision for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

class Real {
 public:
  Real();
  Real(double v);  // NOLINT(google-explicit-constructor)
  Real(long v);    // NOLINT(google-explicit-constructor)
  Real(int v) : Real(static_cast<long>(v)) {}  // NOLINT
  explicit Real(const Int& v);
  /// Exact ratio num/den rounded once.
  Real(const Int& num, const Int& den);
  /// Parses a decimal string.
  explicit Real(const std::string& s);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  /// Zero at `bits` precision.
  static Real with_precision(long bits);
  /// Copy of x re-rounded to `bits`.
  static Real rounded(const Real& x, long bits);

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Decimal string with `digits` significant digits (0 = enough for the precision).
  std::string str(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  struct Uninit {};
  Real(Uninit, long bits);

  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tanh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real floor(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// Nearest integer, ties away from zero.
Int round_to_int(const Real& x);
Int floor_to_int(const Real& x);

Real pi(long bits = working_precision());
/// 2^e at the working precision.
Real ldexp_one(long e);

/// Integer square root: largest r with r*r <= n (n >= 0).
Int isqrt(const Int& n);
bool is_square(const Int& n);
/// Floor division rounding toward -infinity.
Int floor_div(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
std::string to_string(const Int& n);
Int parse_int(const std::string& s);

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(0L) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& s);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re, -im); }
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
/// e^{i theta}
Complex cis(const Real& theta);
/// e^{z}
Complex exp(const Complex& z);
Complex reciprocal(const Complex& z);

}  // namespace cycint
