#pragma once

// Weakly holomorphic modular functions as truncated q-expansions
// sum_{n >= -m} c(n) q^n with a declared coefficient growth model
// |c(n)| <= A exp(B sqrt(n)) used to bound the truncation tail.

#include <string>
#include <vector>

#include "cycint/real.hpp"

namespace cycint {

/// Bits used to store coefficients; evaluation rounds them down once.
inline constexpr long kCoefficientBits = 2048;

struct TailModel {
  double A = 0.0;
  double B = 0.0;
};

class FourierSeries {
 public:
  /// coeffs[i] is c(i - pole_order).
  FourierSeries(int pole_order, std::vector<Real> coeffs, TailModel tail, std::string name = "");

  static FourierSeries constant(const Real& c);

  int pole_order() const { return pole_order_; }
  /// Largest index n with a stored coefficient.
  int n_trunc() const { return static_cast<int>(coeffs_.size()) - 1 - pole_order_; }
  const TailModel& tail() const { return tail_; }
  const std::string& name() const { return name_; }

  /// c(n) for -pole_order <= n <= n_trunc.
  const Real& coeff(int n) const;
  /// Exact integer coefficients when the series was built from integers.
  const std::vector<Int>& exact() const { return exact_; }

  FourierSeries add_constant(const Real& c) const;

  /// Upper bound on sum_{n > n_trunc} A e^{B sqrt n} |q|^n at Im z = y.
  Real tail_bound(const Real& y, long bits) const;

 private:
  friend FourierSeries j_series(int n_trunc);

  int pole_order_;
  std::vector<Real> coeffs_;
  std::vector<Int> exact_;
  TailModel tail_;
  std::string name_;
};

/// j = E4^3 / Delta with exact integer coefficients c(-1), ..., c(n_trunc).
FourierSeries j_series(int n_trunc = 64);

Real constant_term(const FourierSeries& f);

struct SeriesValue {
  Complex value;
  Real err;
};

/// Coefficients pre-rounded to one precision for repeated evaluation.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const FourierSeries& f, long bits);

  /// Requires Im z >= sqrt(3)/2.
  SeriesValue operator()(const Complex& z) const;
  /// Reduces z into the standard fundamental domain first.
  SeriesValue anywhere(const Complex& z) const;

  long bits() const { return bits_; }
  const FourierSeries& series() const { return series_; }

 private:
  FourierSeries series_;
  long bits_;
  std::vector<Real> coeffs_;
  Real min_height_;
};

/// Convenience wrapper around SeriesEvaluator for a single point.
SeriesValue eval(const FourierSeries& f, const Complex& z, long bits);

/// gamma z in {|Re| <= 1/2, |z| >= 1} for some gamma in SL2(Z).
Complex reduce_to_fundamental_domain(Complex z);

}  // namespace cycint
