#include "cycint/modfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "cycint/quadfield.hpp"

namespace cycint {

namespace {

std::vector<Int> multiply(const std::vector<Int>& x, const std::vector<Int>& y, std::size_t len) {
  std::vector<Int> out(len, 0);
  for (std::size_t i = 0; i < std::min(len, x.size()); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t k = 0; i + k < len && k < y.size(); ++k) out[i + k] += x[i] * y[k];
  }
  return out;
}

Int sigma3(long n) {
  Int s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    const long e = n / d;
    s += Int(d) * d * d;
    if (e != d) s += Int(e) * e * e;
  }
  return s;
}

}  // namespace

FourierSeries::FourierSeries(int pole_order, std::vector<Real> coeffs, TailModel tail, std::string name)
    : pole_order_(pole_order), coeffs_(std::move(coeffs)), tail_(tail), name_(std::move(name)) {
  if (pole_order_ < 0) throw DomainError("pole order must be non-negative");
  if (static_cast<int>(coeffs_.size()) <= pole_order_) throw DomainError("series needs c(0)");
  if (tail_.A < 0.0) throw DomainError("tail constant A must be non-negative");
  for (Real& c : coeffs_) c = Real::rounded(c, kCoefficientBits);
}

FourierSeries FourierSeries::constant(const Real& c) {
  FourierSeries f(0, {c}, TailModel{0.0, 0.0}, "constant");
  return f;
}

const Real& FourierSeries::coeff(int n) const {
  if (n < -pole_order_ || n > n_trunc()) throw std::out_of_range("coefficient index out of range");
  return coeffs_[static_cast<std::size_t>(n + pole_order_)];
}

FourierSeries FourierSeries::add_constant(const Real& c) const {
  FourierSeries g = *this;
  Real& c0 = g.coeffs_[static_cast<std::size_t>(pole_order_)];
  PrecisionScope scope(kCoefficientBits);
  c0 += c;
  g.exact_.clear();
  return g;
}

Real FourierSeries::tail_bound(const Real& y, long bits) const {
  PrecisionScope scope(bits);
  if (tail_.A == 0.0) return Real(0L);
  // Terms t_n = A exp(B sqrt n - 2 pi y n) are summed in log space until the
  // ratio bound makes the remainder geometric.
  const double two_pi_y = 2.0 * M_PI * y.to_double();
  const double logA = std::log(tail_.A);
  auto log_term = [&](double n) { return logA + tail_.B * std::sqrt(n) - two_pi_y * n; };
  double n = n_trunc() + 1.0;
  double acc = -std::numeric_limits<double>::infinity();
  auto log_add = [](double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
  };
  for (int guard = 0; guard < 1'000'000; ++guard, n += 1.0) {
    const double lt = log_term(n);
    acc = log_add(acc, lt);
    const double log_ratio = tail_.B * (std::sqrt(n + 1.0) - std::sqrt(n)) - two_pi_y;
    if (log_ratio < -0.1 && lt < acc - 60.0) {
      // remainder <= t_{n+1} / (1 - r) with r the (decreasing) ratio bound
      const double r = std::exp(log_ratio);
      acc = log_add(acc, lt + log_ratio - std::log1p(-r));
      // widen by a relative 1e-12 to cover the double-precision summation
      return exp(Real(acc + 1e-12));
    }
  }
  throw DomainError("tail model does not converge at this height");
}

FourierSeries j_series(int n_trunc) {
  if (n_trunc < 1) throw DomainError("j_series needs n_trunc >= 1");
  const std::size_t len = static_cast<std::size_t>(n_trunc) + 2;  // q^0 .. q^{n_trunc+1}
  std::vector<Int> e4(len, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n < len; ++n) e4[n] = 240 * sigma3(static_cast<long>(n));
  std::vector<Int> e4_cubed = multiply(multiply(e4, e4, len), e4, len);

  // prod (1 - q^n)^24
  std::vector<Int> prod(len, 0);
  prod[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t k = len - 1; k >= n; --k) {
        prod[k] -= prod[k - n];
        if (k == n) break;
      }
    }
  }
  std::vector<Int> inv(len, 0);
  inv[0] = 1;
  for (std::size_t k = 1; k < len; ++k) {
    Int s = 0;
    for (std::size_t i = 1; i <= k; ++i) s += prod[i] * inv[k - i];
    inv[k] = -s;
  }
  std::vector<Int> exact = multiply(e4_cubed, inv, len);

  std::vector<Real> coeffs;
  coeffs.reserve(len);
  {
    PrecisionScope scope(kCoefficientBits);
    for (const Int& c : exact) coeffs.emplace_back(c);
  }
  FourierSeries f(1, std::move(coeffs), TailModel{1.0, 4.0 * M_PI}, "j");
  f.exact_ = std::move(exact);
  return f;
}

Real constant_term(const FourierSeries& f) { return f.coeff(0); }

SeriesEvaluator::SeriesEvaluator(const FourierSeries& f, long bits)
    : series_(f), bits_(bits), min_height_(Real::with_precision(bits)) {
  PrecisionScope scope(bits);
  coeffs_.reserve(static_cast<std::size_t>(f.n_trunc() + f.pole_order() + 1));
  for (int n = -f.pole_order(); n <= f.n_trunc(); ++n) coeffs_.push_back(Real::rounded(f.coeff(n), bits));
  // sqrt(3)/2 less a few ulps, so points reduced onto the boundary pass.
  min_height_ = sqrt(Real(3L)) / Real(2L) - ldexp_one(-(bits / 2));
}

SeriesValue SeriesEvaluator::operator()(const Complex& z) const {
  PrecisionScope scope(bits_);
  if (z.im < min_height_) {
    throw DomainError("series evaluation needs Im z >= sqrt(3)/2, got " + z.im.str(12));
  }
  const Real two_pi = Real(2L) * pi(bits_);
  const Complex q = exp(Complex(-two_pi * z.im, two_pi * z.re));
  const int m = series_.pole_order();
  const int N = series_.n_trunc();
  Complex acc(coeffs_.back(), Real(0L));
  for (int n = N - 1; n >= 0; --n) {
    acc *= q;
    acc.re += coeffs_[static_cast<std::size_t>(n + m)];
  }
  if (m > 0) {
    const Complex qinv = reciprocal(q);
    Complex neg(coeffs_[0], Real(0L));
    for (int n = -m + 1; n <= -1; ++n) {
      neg *= qinv;
      neg.re += coeffs_[static_cast<std::size_t>(n + m)];
    }
    neg *= qinv;
    acc += neg;
  }
  Real err = series_.tail_bound(z.im, bits_);
  // rounding in the Horner sums
  err += abs(acc) * ldexp_one(-(bits_ - 12));
  return SeriesValue{std::move(acc), std::move(err)};
}

SeriesValue SeriesEvaluator::anywhere(const Complex& z) const {
  PrecisionScope scope(bits_);
  return (*this)(reduce_to_fundamental_domain(z));
}

SeriesValue eval(const FourierSeries& f, const Complex& z, long bits) {
  return SeriesEvaluator(f, bits)(z);
}

Complex reduce_to_fundamental_domain(Complex z) {
  if (z.im.sign() <= 0) throw DomainError("point is not in the upper half-plane");
  const Real half(0.5);
  const Real one(1L);
  for (int guard = 0; guard < 1'000'000; ++guard) {
    // translate into |Re z| <= 1/2
    Real shift = floor(z.re + half);
    if (!shift.is_zero()) z.re -= shift;
    const Real n = norm(z);
    if (n >= one) return z;
    // z -> -1/z
    z = Complex(-z.re / n, z.im / n);
  }
  throw DomainError("fundamental domain reduction did not terminate");
}

}  // namespace cycint
