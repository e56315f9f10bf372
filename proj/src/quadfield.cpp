#include "cycint/quadfield.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace cycint {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

void check_irrational(const Int& D) {
  if (D <= 0) throw DomainError("discriminant must be positive, got " + to_string(D));
  if (is_square(D)) throw DomainError("discriminant " + to_string(D) + " is a perfect square");
}

}  // namespace

QuadIrr::QuadIrr(Int P, Int Q, Int D) : P_(std::move(P)), Q_(std::move(Q)), D_(std::move(D)) {
  check_irrational(D_);
  if (Q_ == 0) throw DomainError("zero denominator");
  if (Int(D_ - P_ * P_) % Q_ != 0) {
    const Int q = abs_int(Q_);
    P_ *= q;
    D_ *= q * q;
    Q_ *= q;
  }
  for (;;) {
    const Int g = gcd(gcd(P_, Q_), Int((D_ - P_ * P_) / Q_));
    if (g == 1) break;
    P_ /= g;
    Q_ /= g;
    D_ /= g * g;
  }
}

QuadIrr QuadIrr::from_parts(const Int& p, const Int& s, const Int& den, const Int& D) {
  if (s == 0) throw DomainError("rational value has no quadratic representation");
  if (den == 0) throw DomainError("zero denominator");
  if (s < 0) return QuadIrr(-p, -den, s * s * D);
  return QuadIrr(p, den, s * s * D);
}

QuadIrr QuadIrr::conjugate() const { return QuadIrr(Trusted{}, -P_, -Q_, D_); }

QuadIrr galois_conjugate(const QuadIrr& x) { return x.conjugate(); }

Int QuadIrr::floor() const {
  // sqrt(D) is irrational, so only the integer part of the root matters.
  const Int s = isqrt(D_);
  if (Q_ > 0) return floor_div(P_ + s, Q_);
  return floor_div(-P_ - s - 1, -Q_);
}

int QuadIrr::compare(const Int& n) const { return floor() < n ? -1 : 1; }

Real QuadIrr::to_real(long bits) const {
  PrecisionScope scope(bits + 32);
  const Real root = sqrt(Real(D_));
  Real num;
  if (P_ >= 0) {
    num = Real(P_) + root;
  } else {
    num = Real(Int(D_ - P_ * P_)) / (root - Real(P_));
  }
  return Real::rounded(num / Real(Q_), bits);
}

Real to_float(const QuadIrr& x, long bits) { return x.to_real(bits); }

std::string QuadIrr::str() const {
  std::ostringstream os;
  os << '(' << to_string(P_) << "+sqrt(" << to_string(D_) << "))/" << to_string(Q_);
  return os.str();
}

QuadIrr QuadIrr::parse(const std::string& text) {
  static const std::regex re(
      R"(^\s*\(?\s*([+-]?\s*\d+)?\s*([+-])?\s*sqrt\s*\(\s*(\d+)\s*\)\s*\)?\s*(?:/\s*([+-]?\s*\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw DomainError("cannot parse quadratic irrational: " + text);
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    return s;
  };
  const Int p = m[1].matched ? parse_int(strip(m[1].str())) : Int(0);
  if (m[1].matched && !m[2].matched) throw DomainError("missing sign before sqrt: " + text);
  const Int s = (m[2].matched && m[2].str() == "-") ? Int(-1) : Int(1);
  const Int D = parse_int(m[3].str());
  const Int q = m[4].matched ? parse_int(strip(m[4].str())) : Int(1);
  return from_parts(p, s, q, D);
}

bool operator<(const QuadIrr& a, const QuadIrr& b) {
  if (a.D_ != b.D_) return a.D_ < b.D_;
  if (a.Q_ != b.Q_) return a.Q_ < b.Q_;
  return a.P_ < b.P_;
}

QForm::QForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  check_irrational(disc());
  if (gcd(gcd(a_, b_), c_) != 1) throw DomainError("form " + str() + " is not primitive");
}

Complex QForm::eval(const Complex& z) const {
  Complex v = z * Real(a_);
  v.re += Real(b_);
  v *= z;
  v.re += Real(c_);
  return v;
}

std::string QForm::str() const {
  return "[" + to_string(a_) + ", " + to_string(b_) + ", " + to_string(c_) + "]";
}

bool operator<(const QForm& f, const QForm& g) {
  if (f.a_ != g.a_) return f.a_ < g.a_;
  if (f.b_ != g.b_) return f.b_ < g.b_;
  return f.c_ < g.c_;
}

Mobius::Mobius(Int a, Int b, Int c, Int d)
    : m11(std::move(a)), m12(std::move(b)), m21(std::move(c)), m22(std::move(d)) {
  if (det() != 1) throw DomainError("matrix " + str() + " does not have determinant 1");
}

Mobius operator*(const Mobius& x, const Mobius& y) {
  return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
          x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
}

std::string Mobius::str() const {
  return "[[" + to_string(m11) + ", " + to_string(m12) + "], [" + to_string(m21) + ", " +
         to_string(m22) + "]]";
}

QuadIrr apply_mobius(const Mobius& m, const QuadIrr& x) {
  const Int A = m.m11 * x.P() + m.m12 * x.Q();
  const Int C = m.m21 * x.P() + m.m22 * x.Q();
  const Int& B = m.m11;
  const Int& E = m.m21;
  // (A + B sqrt D)/(C + E sqrt D) with BC - AE = Q det(m) = Q.
  return QuadIrr::from_parts(A * C - B * E * x.D(), x.Q(), C * C - E * E * x.D(), x.D());
}

Complex apply_mobius(const Mobius& m, const Complex& z) {
  Complex num = z * Real(m.m11);
  num.re += Real(m.m12);
  Complex den = z * Real(m.m21);
  den.re += Real(m.m22);
  return num / den;
}

QForm compose(const QForm& f, const Mobius& m) {
  const Int& a = f.a();
  const Int& b = f.b();
  const Int& c = f.c();
  return QForm(a * m.m11 * m.m11 + b * m.m11 * m.m21 + c * m.m21 * m.m21,
               2 * a * m.m11 * m.m12 + b * (m.m11 * m.m22 + m.m12 * m.m21) + 2 * c * m.m21 * m.m22,
               a * m.m12 * m.m12 + b * m.m12 * m.m22 + c * m.m22 * m.m22);
}

std::pair<QuadIrr, QuadIrr> roots_of_form(const QForm& f) {
  const Int D = f.disc();
  return {QuadIrr::from_parts(-f.b(), 1, 2 * f.a(), D), QuadIrr::from_parts(-f.b(), -1, 2 * f.a(), D)};
}

QForm form_of(const QuadIrr& x) {
  Int a = x.Q();
  Int b = -2 * x.P();
  Int c = (x.P() * x.P() - x.D()) / x.Q();
  const Int g = gcd(gcd(a, b), c);
  return QForm(a / g, b / g, c / g);
}

}  // namespace cycint
