#pragma once

// Cycle integrals f(w) of modular functions over closed geodesics, computed
// two independent ways:
//
//   kernel  - integral of f(z) K(z, w) dz over the fixed arc from
//             e^{i pi/3} to e^{2 pi i/3}, where K sums 1/(z - w_i) - 1/(z - conj w_i)
//             over the orbit of the purely periodic representative;
//   direct  - integral of sqrt(D) f(z) / Q_w(z, 1) dz along one period of the
//             geodesic semicircle joining w and its conjugate.
//
// Both are normalized by the geodesic length 2 log eps.

#include <cstddef>
#include <string>
#include <vector>

#include "cycint/minuscf.hpp"
#include "cycint/modfun.hpp"
#include "cycint/quadfield.hpp"
#include "cycint/quadrature.hpp"

namespace cycint {

/// Largest orbit size accepted for kernel evaluation.
inline constexpr long kKernelTermBudget = 10'000'000;

/// K(z) = sum_i 1/(z - w_i) - 1/(z - conj w_i) over the orbit of a period.
class Kernel {
 public:
  Kernel(const Digits& period, long bits);

  Complex operator()(const Complex& z) const;
  Complex on_arc(const Real& theta) const;

  const Digits& period() const { return period_; }
  std::size_t terms() const { return points_.size(); }
  long bits() const { return bits_; }
  /// Smallest distance from the arc to any orbit point (sampled on a grid).
  Real min_distance_to_arc(int samples = 512) const;

 private:
  Digits period_;
  long bits_;
  std::vector<Real> points_;
  std::vector<Real> conj_points_;
};

enum class Method { kernel, direct };
std::string to_string(Method m);

struct CycleValue {
  Complex raw;
  Complex normalized;
  Real two_log_eps;
  /// Bound on |raw - true| (quadrature plus series truncation).
  Real quad_err;
  Method method = Method::kernel;
  Int D;
  std::size_t evaluations = 0;
};

struct ValueOptions {
  long bits = working_precision();
  QuadratureOptions quad;
};

CycleValue value_kernel(const FourierSeries& f, const Digits& period, const Real& tol,
                        const ValueOptions& opts = {});

/// Direct geodesic integral for the form's first root w = (-b + sqrt D)/(2a).
CycleValue value_direct(const FourierSeries& f, const QForm& form, const Real& tol,
                        const ValueOptions& opts = {});

/// Value at any quadratic irrational via its purely periodic tail.
CycleValue value_at(const FourierSeries& f, const QuadIrr& x, const Real& tol,
                    const ValueOptions& opts = {});

/// max over the grid of |K_N(e^{i(pi - theta)}) - conj K_N(e^{i theta})|.
Real kernel_symmetry_check(long N, double grid_step, long bits = working_precision());

/// Integral of f(e^{i theta}) sin(theta) over [pi/3, 2pi/3]; equals c(0) for
/// f real on the arc.
struct ArcIntegral {
  Complex value;
  Real err;
};
ArcIntegral arc_sine_integral(const FourierSeries& f, const Real& tol, long bits = working_precision());

struct LimitRow {
  long N;
  Complex normalized;
  Real gap;  // |Re normalized - c(0)|
  Real err;
};

struct LimitScan {
  std::vector<LimitRow> rows;
  ArcIntegral arc;
  Real arc_gap;  // |arc - c(0)|
};

LimitScan limit_scan(const FourierSeries& f, const std::vector<long>& Ns, const Real& tol,
                     int workers = 1, const ValueOptions& opts = {});

}  // namespace cycint
