#pragma once

// Globally adaptive Gauss-Legendre quadrature at arbitrary precision.
//
// Each subinterval is integrated with the n- and 2n-point rules; the 2n-point
// value is kept and |G_2n - G_n| is charged as its error. The interval with
// the largest charged error is bisected until the total is below tolerance
// or the evaluation budget runs out.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cycint/real.hpp"

namespace cycint {

struct GaussRule {
  std::vector<Real> nodes;    // on [-1, 1]
  std::vector<Real> weights;
};

/// n-point Gauss-Legendre rule, cached per (n, bits).
const GaussRule& gauss_legendre(int n, long bits);

struct QuadratureOptions {
  int order = 16;                      // n; the companion rule uses 2n points
  std::size_t max_evaluations = 2'000'000;
};

struct QuadratureResult {
  Complex value;
  Real err;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

/// Raised when the evaluation budget is spent before reaching tolerance.
class ToleranceUnreachable : public std::runtime_error {
 public:
  ToleranceUnreachable(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

using Integrand = std::function<Complex(const Real&)>;

/// Integral of g over [a, b] with |value - true| <= err <= tol.
/// Throws ToleranceUnreachable (carrying the best estimate) on budget exhaustion.
QuadratureResult quadrature(const Integrand& g, const Real& a, const Real& b, const Real& tol,
                            long bits, const QuadratureOptions& opts = {});

}  // namespace cycint
