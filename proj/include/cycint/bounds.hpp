#pragma once

// Explicit bounds on the difference of two kernel blocks on the arc
// e^{i theta}, theta in [pi/3, 2pi/3], and the numerical sweeps that back them.
//
// For purely periodic w = (a_1..a_n) and v = (b_1..b_m) with m | n (v's digits
// are cycled to length n) and a fixed position r,
//
//   S(z, r) = sum_{k<a_r} [1/(z - w_{r,k}) - 1/(z - w~_{r,k})]
//           - sum_{k<b_r} [1/(z - v_{r,k}) - 1/(z - v~_{r,k})].
//
// Everything here is double precision: the quantities are O(1) to O(100)
// and the claims being checked have margins far above rounding.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cycint/cyclevalue.hpp"
#include "cycint/minuscf.hpp"

namespace cycint {

inline constexpr double kC2Statement = -3.925;
inline constexpr double kC2Proof = -3.926;
inline constexpr double kImLower = -13.02;
inline constexpr double kImLowerProof = -13.015;
inline constexpr double kImUpper = 15.0;

/// (x - y) F = Re(1/(e^{i theta} - x) - 1/(e^{i theta} - y)), continuous at x = y.
double F(double x, double y, double theta);
/// (x - y) G = Im(1/(e^{i theta} - x) - 1/(e^{i theta} - y)).
double G(double x, double y, double theta);

/// Lower and upper closed-form bounds for F when x >= 2, y <= -2.
double F_lower_iv(double x, double y);
double F_upper_iv(double x, double y);

struct BoundConstants {
  std::size_t r = 1;
  Int a;
  Int b;
  int k0 = 0;
  int k1 = 0;
  double C1 = 0.0;
  /// C1 with +4/s + 3/s^2 in place of -4/s - 3/s^2 (s = a_r - 3 + k1), which is
  /// what the harmonic-sum estimate behind C1 actually yields.
  double C1_corrected = 0.0;
  double C2 = 0.0;        // with the leading constant -3.925
  double C2_proof = 0.0;  // with -3.926
};

BoundConstants bound_constants(const Int& a, const Int& b, std::size_t r = 1);

struct SSplit {
  std::complex<double> S1, S2, S3, S;
};

/// r is 1-based. Throws DomainError if a_r > b_r or m does not divide n.
SSplit S_split(const Digits& w, const Digits& v, std::size_t r, double theta);
/// The unsplit double sum, used as the consistency oracle.
std::complex<double> S_direct(const Digits& w, const Digits& v, std::size_t r, double theta);

struct Violation {
  std::string check;
  std::size_t instance = 0;
  std::size_t r = 0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double value = 0.0;
  double bound = 0.0;
};

struct SweepReport {
  std::string suite;
  std::size_t instances = 0;
  std::vector<Violation> violations;  // capped at kMaxReportedViolations entries
  std::size_t violation_count = 0;
  std::map<std::string, double> extremes;

  void add(Violation v);
  bool ok() const { return violation_count == 0; }
};

inline constexpr std::size_t kMaxReportedViolations = 50;

struct SweepOptions {
  double grid = 1e-2;          // x, y and theta spacing for the bound sweeps
  double theta_step = 1e-3;    // finite differences for monotonicity
  double region_step = 0.5;    // x, y spacing on the unbounded regions
  double region_max = 60.0;    // truncation of the unbounded regions
  double slack = 1e-12;        // closed bounds that are attained exactly
  int workers = 1;
};

SweepReport sweep_lemma_F(const SweepOptions& opts = {});
SweepReport sweep_lemma_G(const SweepOptions& opts = {});

/// The bounds C2 < Re S < C1 and -13.02 < Im S < 15 for all r and grid
/// angles, plus the split/direct consistency (1e-12).
SweepReport verify_theorem_S(const Digits& w, const Digits& v, double theta_step = 1e-2,
                             std::size_t instance = 0);

/// Random pairs with a_r <= b_r drawn from `seed`; merges the per-pair reports.
struct PairSpec {
  int count = 50;
  int max_len = 3;
  long max_digit = 10;
  long max_gap = 60;
  std::uint64_t seed = 1;
};
SweepReport verify_theorem_S_random(const PairSpec& spec, double theta_step = 1e-2, int workers = 1);

struct Envelope {
  double log_M = 0.0;
  Int a;
  Int b;  // ceil(M a)
  double C1 = 0.0;
  double C2 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  /// -(1/2) 13.02 + min(C2, sqrt3/2 C2): not a valid lower bound, kept for comparison.
  double K2_unsafe = 0.0;
};

/// Envelope for cos(theta) Im S + sin(theta) Re S when b_r >= M a_r.
/// M is passed through its logarithm so that e^55 and beyond stay exact enough.
Envelope envelope(double log_M, const Int& a);

SweepReport sweep_envelope(double log_M, long a_min = 2, long a_max = 100);

struct ComparisonReport {
  Digits w;
  Digits v;
  double min_ratio = 0.0;  // min over r of b_r / a_r
  bool empirical = true;   // ratio below e^55, where the ordering is not guaranteed
  Real value_w;            // Re f^nor(w)
  Real value_v;            // Re f^nor(v)
  bool ordered = false;    // value_w < value_v
  Real mu;                 // Re f(v) - Re f(w), v's period cycled to w's length
  Real lambda;             // log eps_v - log eps_w, same convention
  /// Integral over the arc of sum_r (cos Im S + sin Re S); equals 2 lambda.
  Real bracket_integral;
  Real condition_value;    // Re f^nor at the golden ratio
  bool condition_holds = false;  // condition_value < c(0)
  /// (pi/3) sum K2 < 2 lambda < (pi/3) sum K1 with constants at the actual
  /// digits; false when some a_r > b_r.
  bool lambda_in_envelope = false;
};

ComparisonReport comparison_check(const FourierSeries& f, const Digits& w, const Digits& v, const Real& tol,
                                  const ValueOptions& opts = {});

}  // namespace cycint
