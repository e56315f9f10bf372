#include "cycint/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cycint/parallel.hpp"
#include "cycint/unit.hpp"

namespace cycint {

namespace {

using cd = std::complex<double>;

const double kSqrt3Half = std::sqrt(3.0) / 2.0;

std::vector<double> grid_points(double lo, double hi, double step) {
  const long count = std::max(1L, std::lround(std::ceil((hi - lo) / step - 1e-9)));
  std::vector<double> pts(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / count;
  return pts;
}

std::vector<double> arc_grid(double step) { return grid_points(M_PI / 3.0, 2.0 * M_PI / 3.0, step); }

void merge_into(SweepReport& into, const SweepReport& from) {
  into.instances += from.instances;
  for (const auto& v : from.violations) {
    if (into.violations.size() < kMaxReportedViolations) into.violations.push_back(v);
  }
  into.violation_count += from.violation_count;
  for (const auto& [key, value] : from.extremes) {
    auto it = into.extremes.find(key);
    if (it == into.extremes.end()) {
      into.extremes[key] = value;
    } else if (key.rfind("max", 0) == 0) {
      it->second = std::max(it->second, value);
    } else {
      it->second = std::min(it->second, value);
    }
  }
}

void track_min(SweepReport& rep, const std::string& key, double v) {
  auto [it, fresh] = rep.extremes.emplace(key, v);
  if (!fresh) it->second = std::min(it->second, v);
}

void track_max(SweepReport& rep, const std::string& key, double v) {
  auto [it, fresh] = rep.extremes.emplace(key, v);
  if (!fresh) it->second = std::max(it->second, v);
}

/// Runs body(x, report) over the x values in parallel and merges.
template <typename Body>
void sweep_rows(SweepReport& total, const std::vector<double>& xs, int workers, Body body) {
  std::vector<SweepReport> parts(xs.size());
  parallel_for(xs.size(), workers, [&](std::size_t i) { body(xs[i], parts[i]); });
  for (const auto& p : parts) merge_into(total, p);
}

/// Checks lo < f(x, y, theta) < hi on a grid; non-strict when `closed`.
template <typename Fn>
void bound_sweep(SweepReport& rep, const std::string& name, Fn fn, const std::vector<double>& xs,
                 const std::vector<double>& ys, const std::vector<double>& thetas, double lo, double hi,
                 bool closed, int workers) {
  sweep_rows(rep, xs, workers, [&](double x, SweepReport& part) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (double y : ys) {
      for (double t : thetas) {
        const double v = fn(x, y, t);
        ++part.instances;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        const bool low_ok = closed ? v >= lo : v > lo;
        const bool high_ok = closed ? v <= hi : v < hi;
        if (!low_ok) part.add({name + " lower", 0, 0, x, y, t, v, lo});
        if (!high_ok) part.add({name + " upper", 0, 0, x, y, t, v, hi});
      }
    }
    track_min(part, "min " + name, mn);
    track_max(part, "max " + name, mx);
  });
}

/// Checks that theta -> fn(x, y, theta) is strictly monotone on the fine grid.
template <typename Fn>
void monotone_sweep(SweepReport& rep, const std::string& name, Fn fn, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::vector<double>& thetas, bool increasing,
                    int workers) {
  sweep_rows(rep, xs, workers, [&](double x, SweepReport& part) {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -dmin;
    for (double y : ys) {
      double prev = fn(x, y, thetas[0]);
      for (std::size_t i = 1; i < thetas.size(); ++i) {
        const double cur = fn(x, y, thetas[i]);
        const double slope = (cur - prev) / (thetas[i] - thetas[i - 1]);
        ++part.instances;
        dmin = std::min(dmin, slope);
        dmax = std::max(dmax, slope);
        const bool ok = increasing ? cur > prev : cur < prev;
        if (!ok) part.add({name, 0, 0, x, y, thetas[i], slope, 0.0});
        prev = cur;
      }
    }
    track_min(part, "min slope " + name, dmin);
    track_max(part, "max slope " + name, dmax);
  });
}

std::vector<double> two_sided(double lo, double hi, double step) {
  std::vector<double> pos = grid_points(lo, hi, step);
  std::vector<double> out;
  out.reserve(2 * pos.size());
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

std::vector<double> negated(std::vector<double> v) {
  for (double& x : v) x = -x;
  std::reverse(v.begin(), v.end());
  return v;
}

struct BlockPoints {
  double w0;       // w_{r,0} in (-1, 0); w_{r,k} = k + w0
  double w0_conj;  // w~_{r,k} = k + w0_conj
  long a;
};

BlockPoints block_points(const Digits& period, std::size_t r) {
  const std::size_t n = period.size();
  const QuadIrr u = from_period(rotate(period, r % n));
  const QuadIrr w0 = apply_mobius(Mobius::S(), u);  // -1/u
  return {w0.to_double(), w0.conjugate().to_double(), period[(r - 1) % n].get_si()};
}

void check_pair_shapes(const Digits& w, const Digits& v) {
  validate_period(w);
  validate_period(v);
  if (w.size() % v.size() != 0) throw DomainError("the length of v's period must divide the length of w's");
}

}  // namespace

void SweepReport::add(Violation v) {
  ++violation_count;
  if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(v));
}

double F(double x, double y, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return (c * c - (x + y) * c + x * y - s * s) / (((c - x) * (c - x) + s * s) * ((c - y) * (c - y) + s * s));
}

double G(double x, double y, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return s * (x + y - 2.0 * c) / (((c - x) * (c - x) + s * s) * ((c - y) * (c - y) + s * s));
}

double F_lower_iv(double x, double y) {
  const double num = std::min(x * y - std::abs(x + y) / 2.0 - 0.5, x * y - 1.0);
  return num / (((x - 0.5) * (x - 0.5) + 0.75) * ((y + 0.5) * (y + 0.5) + 0.75));
}

double F_upper_iv(double x, double y) {
  const double num = x * y + std::abs(x + y) / 2.0 - 0.5;
  return num / (((x + 0.5) * (x + 0.5) + 0.75) * ((y - 0.5) * (y - 0.5) + 0.75));
}

BoundConstants bound_constants(const Int& a, const Int& b, std::size_t r) {
  if (a < 2) throw DomainError("digit a_r must be at least 2");
  if (b < a) throw DomainError("bounds need a_r <= b_r");
  BoundConstants k;
  k.r = r;
  k.a = a;
  k.b = b;
  k.k0 = a == 2 ? 1 : 0;
  k.k1 = a == 2 ? 2 : (a == 3 ? 1 : 0);
  const double ad = a.get_d();
  const double bd = b.get_d();
  const double s1 = ad - 3.0 + k.k1;
  k.C1 = 12.6 + 7.0 / 3.0 * (std::log((bd - 3.0 + k.k1) / s1) - 4.0 / s1 - 3.0 / (s1 * s1));
  k.C1_corrected = 12.6 + 7.0 / 3.0 * (std::log((bd - 3.0 + k.k1) / s1) + 4.0 / s1 + 3.0 / (s1 * s1));
  const double s0 = ad + 2.0 + k.k0;
  const double growth =
      (1.0 - 2.0 / ad + 1.0 / (2.0 * ad * ad)) * (2.0 * std::log((bd + 1.0 + k.k0) / s0) - 5.0 / s0);
  k.C2 = kC2Statement + growth;
  k.C2_proof = kC2Proof + growth;
  return k;
}

SSplit S_split(const Digits& w, const Digits& v, std::size_t r, double theta) {
  check_pair_shapes(w, v);
  if (r < 1 || r > w.size()) throw DomainError("position r out of range");
  const BlockPoints pw = block_points(w, r);
  const BlockPoints pv = block_points(v, r);
  if (pw.a > pv.a) throw DomainError("S split needs a_r <= b_r");
  const cd z = std::polar(1.0, theta);
  const long a = pw.a;
  const long b = pv.a;
  auto inv = [&](double p) { return 1.0 / (z - p); };
  SSplit s{};
  for (long k = 1; k <= a - 1; ++k) {
    s.S1 += inv(k + pw.w0) - inv(k + pv.w0);
    s.S2 += inv(k + pw.w0_conj) - inv(static_cast<double>(b - a + k) + pv.w0_conj);
  }
  for (long k = a; k <= b - 1; ++k) s.S3 += inv(k + pv.w0) - inv(static_cast<double>(b - k) + pv.w0_conj);
  s.S = s.S1 - s.S2 - s.S3;
  return s;
}

std::complex<double> S_direct(const Digits& w, const Digits& v, std::size_t r, double theta) {
  check_pair_shapes(w, v);
  if (r < 1 || r > w.size()) throw DomainError("position r out of range");
  const BlockPoints pw = block_points(w, r);
  const BlockPoints pv = block_points(v, r);
  const cd z = std::polar(1.0, theta);
  cd s;
  for (long k = 1; k <= pw.a - 1; ++k) s += 1.0 / (z - (k + pw.w0)) - 1.0 / (z - (k + pw.w0_conj));
  for (long k = 1; k <= pv.a - 1; ++k) s -= 1.0 / (z - (k + pv.w0)) - 1.0 / (z - (k + pv.w0_conj));
  return s;
}

SweepReport sweep_lemma_F(const SweepOptions& o) {
  SweepReport rep;
  rep.suite = "lemmaF";
  const auto thetas = arc_grid(o.grid);
  const auto fine = arc_grid(o.theta_step);
  const auto unit = grid_points(-1.0, 1.0, o.grid);
  const auto ring = two_sided(1.0, 2.0, o.grid);
  const auto far = grid_points(2.0, o.region_max, o.region_step);
  const auto far_neg = negated(far);
  bound_sweep(rep, "F on |x|,|y|<=1", F, unit, unit, thetas, -1.4, 0.2, false, o.workers);
  // F = -1/2 identically at (x, y) = (-1, 1), so the lower bound is closed.
  bound_sweep(rep, "F on 1<=|x|,|y|<=2", F, ring, ring, thetas, -0.5 - o.slack, 0.2, true, o.workers);
  monotone_sweep(rep, "F decreasing for x,y>=2", F, far, far, fine, false, o.workers);
  monotone_sweep(rep, "F increasing for x,y<=-2", F, far_neg, far_neg, fine, true, o.workers);
  // Two-sided closed-form bounds for x >= 2, y <= -2.
  sweep_rows(rep, far, o.workers, [&](double x, SweepReport& part) {
    for (double y : far_neg) {
      const double lo = F_lower_iv(x, y);
      const double hi = F_upper_iv(x, y);
      for (double t : thetas) {
        const double v = F(x, y, t);
        ++part.instances;
        if (!(v > lo)) part.add({"F two-sided lower, x>=2, y<=-2", 0, 0, x, y, t, v, lo});
        if (!(v < hi)) part.add({"F two-sided upper, x>=2, y<=-2", 0, 0, x, y, t, v, hi});
      }
    }
  });
  return rep;
}

SweepReport sweep_lemma_G(const SweepOptions& o) {
  SweepReport rep;
  rep.suite = "lemmaG";
  const auto thetas = arc_grid(o.grid);
  const auto fine = arc_grid(o.theta_step);
  const auto unit = grid_points(-1.0, 1.0, o.grid);
  const auto far = grid_points(2.0, o.region_max, o.region_step);
  const auto far_neg = negated(far);
  bound_sweep(rep, "G on |x|,|y|<=1", G, unit, unit, thetas, -kSqrt3Half - o.slack, kSqrt3Half + o.slack, true,
              o.workers);
  monotone_sweep(rep, "G decreasing for x,y>=2", G, far, far, fine, false, o.workers);
  monotone_sweep(rep, "G decreasing for x,y<=-2", G, far_neg, far_neg, fine, false, o.workers);
  monotone_sweep(rep, "G increasing for x>=2, y<=-2", G, far, far_neg, fine, true, o.workers);
  rep.extremes["G(0,0,pi/3)"] = G(0.0, 0.0, M_PI / 3.0);
  rep.extremes["G(0,0,2pi/3)"] = G(0.0, 0.0, 2.0 * M_PI / 3.0);
  return rep;
}

SweepReport verify_theorem_S(const Digits& w, const Digits& v, double theta_step, std::size_t instance) {
  check_pair_shapes(w, v);
  SweepReport rep;
  rep.suite = "theoremS";
  const auto thetas = arc_grid(theta_step);
  for (std::size_t r = 1; r <= w.size(); ++r) {
    const BoundConstants k = bound_constants(w[r - 1], v[(r - 1) % v.size()], r);
    for (double t : thetas) {
      const SSplit s = S_split(w, v, r, t);
      const cd direct = S_direct(w, v, r, t);
      ++rep.instances;
      const double re = s.S.real();
      const double im = s.S.imag();
      const double defect = std::abs(s.S - direct);
      track_max(rep, "max split defect", defect);
      track_min(rep, "min Re S - C2", re - k.C2);
      track_min(rep, "min Re S - C2 (proof constant)", re - k.C2_proof);
      track_min(rep, "min C1 - Re S", k.C1 - re);
      track_min(rep, "min C1 (corrected) - Re S", k.C1_corrected - re);
      track_min(rep, "min Im S + 13.02", im - kImLower);
      track_min(rep, "min Im S + 13.015", im - kImLowerProof);
      track_min(rep, "min 15 - Im S", kImUpper - im);
      if (!(re > k.C2)) rep.add({"Re S > C2", instance, r, 0, 0, t, re, k.C2});
      if (!(re < k.C1)) rep.add({"Re S < C1", instance, r, 0, 0, t, re, k.C1});
      if (!(im > kImLower)) rep.add({"Im S > -13.02", instance, r, 0, 0, t, im, kImLower});
      if (!(im < kImUpper)) rep.add({"Im S < 15", instance, r, 0, 0, t, im, kImUpper});
      if (!(defect <= 1e-12)) rep.add({"split equals direct sum", instance, r, 0, 0, t, defect, 1e-12});
    }
  }
  return rep;
}

SweepReport verify_theorem_S_random(const PairSpec& spec, double theta_step, int workers) {
  std::mt19937_64 rng(spec.seed);
  std::vector<std::pair<Digits, Digits>> pairs;
  for (int i = 0; i < spec.count; ++i) {
    const int n = std::uniform_int_distribution<int>(1, spec.max_len)(rng);
    std::vector<int> divisors;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) divisors.push_back(d);
    }
    const int m = divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)];
    Digits w(static_cast<std::size_t>(n));
    for (auto& a : w) a = std::uniform_int_distribution<long>(2, spec.max_digit)(rng);
    if (std::all_of(w.begin(), w.end(), [](const Int& a) { return a == 2; })) w[0] = 3;
    Digits v(static_cast<std::size_t>(m), Int(2));
    for (int r = 0; r < n; ++r) {
      if (w[static_cast<std::size_t>(r)] > v[static_cast<std::size_t>(r % m)]) {
        v[static_cast<std::size_t>(r % m)] = w[static_cast<std::size_t>(r)];
      }
    }
    for (auto& b : v) b += std::uniform_int_distribution<long>(0, spec.max_gap)(rng);
    pairs.emplace_back(std::move(w), std::move(v));
  }
  std::vector<SweepReport> parts(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    parts[i] = verify_theorem_S(pairs[i].first, pairs[i].second, theta_step, i);
  });
  SweepReport rep;
  rep.suite = "theoremS";
  for (const auto& p : parts) merge_into(rep, p);
  return rep;
}

Envelope envelope(double log_M, const Int& a) {
  if (log_M < 0.0) throw DomainError("envelope needs M >= 1");
  if (a < 2) throw DomainError("envelope needs a_r >= 2");
  Envelope e;
  e.log_M = log_M;
  e.a = a;
  {
    PrecisionScope scope(256);
    const Real Ma = exp(Real(log_M)) * Real(a);
    e.b = floor_to_int(Ma);
    if (Real(e.b) < Ma) e.b += 1;
  }
  if (e.b < a) e.b = a;
  const BoundConstants k = bound_constants(a, e.b);
  e.C1 = k.C1;
  e.C2 = k.C2;
  // cos(theta) in [-1/2, 1/2] and sin(theta) in [sqrt3/2, 1] on the arc.
  const double cos_im_max = 0.5 * std::max(kImUpper, -kImLower);
  e.K1 = cos_im_max + std::max(k.C1, kSqrt3Half * k.C1);
  e.K2 = -cos_im_max + std::min(k.C2, kSqrt3Half * k.C2);
  e.K2_unsafe = -0.5 * -kImLower + std::min(k.C2, kSqrt3Half * k.C2);
  return e;
}

SweepReport sweep_envelope(double log_M, long a_min, long a_max) {
  SweepReport rep;
  rep.suite = "envelope";
  for (long a = a_min; a <= a_max; ++a) {
    const Envelope e = envelope(log_M, Int(a));
    ++rep.instances;
    track_min(rep, "min K1", e.K1);
    track_min(rep, "min K2", e.K2);
    track_min(rep, "min K2 with -13.02/2", e.K2_unsafe);
    if (!(e.K1 > 0.0)) rep.add({"K1 > 0", 0, static_cast<std::size_t>(a), 0, 0, 0, e.K1, 0.0});
    if (!(e.K2 > 0.0)) rep.add({"K2 > 0", 0, static_cast<std::size_t>(a), 0, 0, 0, e.K2, 0.0});
  }
  return rep;
}

ComparisonReport comparison_check(const FourierSeries& f, const Digits& w, const Digits& v, const Real& tol,
                                  const ValueOptions& opts) {
  check_pair_shapes(w, v);
  ComparisonReport rep;
  rep.w = w;
  rep.v = v;
  const std::size_t n = w.size();
  const std::size_t m = v.size();
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < n; ++r) {
    rep.min_ratio = std::min(rep.min_ratio, v[r % m].get_d() / w[r].get_d());
  }
  rep.empirical = !(std::log(rep.min_ratio) >= 55.0);

  PrecisionScope scope(opts.bits);
  const CycleValue fw = value_kernel(f, w, tol, opts);
  const CycleValue fv = value_kernel(f, v, tol, opts);
  rep.value_w = fw.normalized.re;
  rep.value_v = fv.normalized.re;
  rep.ordered = rep.value_w < rep.value_v;
  const Real reps(static_cast<long>(n / m));
  rep.mu = reps * fv.raw.re - fw.raw.re;
  rep.lambda = (reps * fv.two_log_eps - fw.two_log_eps) / Real(2L);

  const Integrand bracket = [&](const Real& theta) {
    const double t = theta.to_double();
    double sum = 0.0;
    for (std::size_t r = 1; r <= n; ++r) {
      const cd s = S_direct(w, v, r, t);
      sum += std::cos(t) * s.imag() + std::sin(t) * s.real();
    }
    return Complex(Real(sum), Real(0L));
  };
  const Real lo = pi(opts.bits) / Real(3L);
  rep.bracket_integral = quadrature(bracket, lo, lo * Real(2L), Real(1e-9), opts.bits).value.re;

  const CycleValue golden = value_kernel(f, Digits{Int(3)}, tol, opts);
  rep.condition_value = golden.normalized.re;
  rep.condition_holds = rep.condition_value < constant_term(f);

  // (pi/3) sum_r K2(r) < 2 lambda < (pi/3) sum_r K1(r), with the constants at the actual digits.
  bool dominated = true;
  for (std::size_t r = 0; r < n; ++r) dominated = dominated && w[r] <= v[r % m];
  if (dominated) {
    double k1 = 0.0;
    double k2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const BoundConstants k = bound_constants(w[r], v[r % m], r + 1);
      k1 += 7.5 + std::max(k.C1, kSqrt3Half * k.C1);
      k2 += -7.5 + std::min(k.C2, kSqrt3Half * k.C2);
    }
    const double twice_lambda = 2.0 * rep.lambda.to_double();
    rep.lambda_in_envelope = M_PI / 3.0 * k2 < twice_lambda && twice_lambda < M_PI / 3.0 * k1;
  }
  return rep;
}

}  // namespace cycint
