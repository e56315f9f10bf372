#pragma once

// Exact arithmetic for real quadratic irrationals (P + sqrt(D)) / Q and
// integral binary quadratic forms of positive discriminant.

#include <stdexcept>
#include <string>
#include <utility>

#include "cycint/real.hpp"

namespace cycint {

/// Raised when an input lies outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (P + sqrt(D)) / Q with Q | (D - P^2) and gcd(P, Q, (D - P^2)/Q) = 1.
///
/// The second condition makes the representation minimal, so two equal reals
/// have identical fields. Q may be negative.
class QuadIrr {
 public:
  /// Canonicalizes (P + sqrt(D)) / Q, rescaling by a square factor if needed.
  QuadIrr(Int P, Int Q, Int D);

  /// (p + s*sqrt(D)) / den for integers p, s != 0, den != 0.
  static QuadIrr from_parts(const Int& p, const Int& s, const Int& den, const Int& D);

  const Int& P() const { return P_; }
  const Int& Q() const { return Q_; }
  const Int& D() const { return D_; }

  QuadIrr conjugate() const;
  /// Exact floor.
  Int floor() const;
  Int ceil() const { return floor() + 1; }
  /// Exact comparison against an integer: -1, 0 never, or +1.
  int compare(const Int& n) const;

  /// Value rounded to `bits` (computed with guard bits, cancellation-free).
  Real to_real(long bits = working_precision()) const;
  double to_double() const { return to_real(64).to_double(); }

  /// "(P+sqrt(D))/Q"
  std::string str() const;
  /// Accepts "(P+sqrt(D))/Q", "(P-sqrt(D))/Q", "sqrt(D)", "P+sqrt(D)" and similar.
  static QuadIrr parse(const std::string& text);

  friend bool operator==(const QuadIrr& a, const QuadIrr& b) {
    return a.P_ == b.P_ && a.Q_ == b.Q_ && a.D_ == b.D_;
  }
  friend bool operator<(const QuadIrr& a, const QuadIrr& b);

 private:
  struct Trusted {};
  QuadIrr(Trusted, Int P, Int Q, Int D) : P_(std::move(P)), Q_(std::move(Q)), D_(std::move(D)) {}

  Int P_;
  Int Q_;
  Int D_;

  friend QuadIrr galois_conjugate(const QuadIrr& x);
};

QuadIrr galois_conjugate(const QuadIrr& x);
Real to_float(const QuadIrr& x, long bits);

/// Primitive form a x^2 + b x y + c y^2 with positive non-square discriminant.
class QForm {
 public:
  QForm(Int a, Int b, Int c);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  Int disc() const { return b_ * b_ - 4 * a_ * c_; }

  QForm negated() const { return QForm(-a_, -b_, -c_); }
  /// Value a x^2 + b x + c at a complex point.
  Complex eval(const Complex& z) const;

  std::string str() const;

  friend bool operator==(const QForm& f, const QForm& g) {
    return f.a_ == g.a_ && f.b_ == g.b_ && f.c_ == g.c_;
  }
  friend bool operator<(const QForm& f, const QForm& g);

 private:
  Int a_;
  Int b_;
  Int c_;
};

/// Integer 2x2 matrix of determinant 1 acting by fractional linear maps.
struct Mobius {
  Int m11{1}, m12{0}, m21{0}, m22{1};

  Mobius() = default;
  Mobius(Int a, Int b, Int c, Int d);

  static Mobius identity() { return {}; }
  static Mobius T() { return {1, 1, 0, 1}; }
  static Mobius T_inv() { return {1, -1, 0, 1}; }
  static Mobius S() { return {0, 1, -1, 0}; }
  /// V^{-1} = T^{-1} S T^{-1}: z -> z / (1 - z).
  static Mobius V_inv() { return {1, 0, -1, 1}; }
  /// Digit map y -> a - 1/y.
  static Mobius digit(const Int& a) { return {a, -1, 1, 0}; }

  Int det() const { return m11 * m22 - m12 * m21; }
  Int trace() const { return m11 + m22; }
  Mobius inverse() const { return {m22, -m12, -m21, m11}; }

  friend Mobius operator*(const Mobius& x, const Mobius& y);
  friend bool operator==(const Mobius& x, const Mobius& y) {
    return x.m11 == y.m11 && x.m12 == y.m12 && x.m21 == y.m21 && x.m22 == y.m22;
  }

  std::string str() const;
};

QuadIrr apply_mobius(const Mobius& m, const QuadIrr& x);
Complex apply_mobius(const Mobius& m, const Complex& z);
/// Form composed with the linear substitution (x, y) -> (m11 x + m12 y, m21 x + m22 y).
QForm compose(const QForm& f, const Mobius& m);

/// w = (-b + sqrt(D)) / (2a) and its conjugate.
std::pair<QuadIrr, QuadIrr> roots_of_form(const QForm& f);
/// The primitive form [a, b, c] with x = (-b + sqrt(disc)) / (2a).
QForm form_of(const QuadIrr& x);

}  // namespace cycint
