#include "cycint/cyclevalue.hpp"

#include <algorithm>
#include <cmath>

#include "cycint/parallel.hpp"
#include "cycint/unit.hpp"

namespace cycint {

namespace {

Real third_pi(long bits) { return pi(bits) / Real(3L); }

Complex normalize(const Complex& raw, const Real& length) {
  return Complex(raw.re / length, raw.im / length);
}

/// Highest point of the geodesic segment after reduction into the
/// fundamental domain, by sampling.
double sampled_max_height(const Real& centre, const Real& radius_signed, const Real& radius,
                          const Real& half_length, long bits) {
  PrecisionScope scope(bits);
  const double L = half_length.to_double();
  const int samples = std::max(512, static_cast<int>(std::ceil(2.0 * L / 0.05)));
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const Real s(-L + 2.0 * L * i / samples);
    const Real e = exp(s);
    const Real sh = (e - Real(1L) / e) / Real(2L);
    const Real ch = (e + Real(1L) / e) / Real(2L);
    Complex z(centre - radius_signed * sh / ch, radius / ch);
    best = std::max(best, reduce_to_fundamental_domain(std::move(z)).im.to_double());
  }
  return best;
}

}  // namespace

std::string to_string(Method m) { return m == Method::kernel ? "kernel" : "direct"; }

Kernel::Kernel(const Digits& period, long bits) : period_(period), bits_(bits) {
  validate_period(period);
  const Int L = orbit_size(period);
  if (L > kKernelTermBudget) {
    throw DomainError("kernel would need " + cycint::to_string(L) + " terms, above the budget of " +
                      std::to_string(kKernelTermBudget));
  }
  const std::size_t n = period.size();
  points_.reserve(L.get_ui());
  conj_points_.reserve(L.get_ui());
  for (std::size_t r = 0; r < n; ++r) {
    const QuadIrr u = from_period(rotate(period, r + 1));
    for (Int k = 1; k < period[r]; ++k) {
      const QuadIrr w = apply_mobius(Mobius::digit(k), u);
      points_.push_back(w.to_real(bits));
      conj_points_.push_back(w.conjugate().to_real(bits));
    }
  }
}

Complex Kernel::operator()(const Complex& z) const {
  // 1/(z - p) = ((x - p) - i y) / ((x - p)^2 + y^2)
  mpfr_t dx, d, y2, re, inv_sum;
  mpfr_inits2(bits_, dx, d, y2, re, inv_sum, static_cast<mpfr_ptr>(nullptr));
  mpfr_sqr(y2, z.im.get(), MPFR_RNDN);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(inv_sum, 1);
  auto accumulate = [&](const std::vector<Real>& pts, bool add) {
    for (const Real& p : pts) {
      mpfr_sub(dx, z.re.get(), p.get(), MPFR_RNDN);
      mpfr_sqr(d, dx, MPFR_RNDN);
      mpfr_add(d, d, y2, MPFR_RNDN);
      mpfr_ui_div(d, 1, d, MPFR_RNDN);
      mpfr_mul(dx, dx, d, MPFR_RNDN);
      if (add) {
        mpfr_add(re, re, dx, MPFR_RNDN);
        mpfr_add(inv_sum, inv_sum, d, MPFR_RNDN);
      } else {
        mpfr_sub(re, re, dx, MPFR_RNDN);
        mpfr_sub(inv_sum, inv_sum, d, MPFR_RNDN);
      }
    }
  };
  accumulate(points_, true);
  accumulate(conj_points_, false);
  Complex out(Real::with_precision(bits_), Real::with_precision(bits_));
  mpfr_set(out.re.get(), re, MPFR_RNDN);
  mpfr_mul(out.im.get(), inv_sum, z.im.get(), MPFR_RNDN);
  mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
  mpfr_clears(dx, d, y2, re, inv_sum, static_cast<mpfr_ptr>(nullptr));
  return out;
}

Complex Kernel::on_arc(const Real& theta) const { return (*this)(cis(theta)); }

Real Kernel::min_distance_to_arc(int samples) const {
  PrecisionScope scope(bits_);
  const Real lo = third_pi(bits_);
  Real best(1e300);
  for (int i = 0; i <= samples; ++i) {
    const Complex z = cis(lo + lo * Real(static_cast<long>(i)) / Real(static_cast<long>(samples)));
    for (const auto* pts : {&points_, &conj_points_}) {
      for (const Real& p : *pts) {
        const Real dist = abs(Complex(z.re - p, z.im));
        if (dist < best) best = dist;
      }
    }
  }
  return best;
}

CycleValue value_kernel(const FourierSeries& f, const Digits& word, const Real& tol,
                        const ValueOptions& opts) {
  // A repeated word traces the same closed geodesic several times.
  const Digits period = primitive_period(word);
  const long bits = opts.bits;
  PrecisionScope scope(bits);
  const Kernel K(period, bits);
  const SeriesEvaluator fe(f, bits);
  Real max_series_err(0L);
  Real max_kernel(0L);
  const Integrand integrand = [&](const Real& theta) {
    const Complex z = cis(theta);
    SeriesValue fv = fe(z);
    const Complex k = K(z);
    if (fv.err > max_series_err) max_series_err = fv.err;
    const Real ak = abs(k);
    if (ak > max_kernel) max_kernel = ak;
    const Complex dz(-z.im, z.re);  // d(e^{i theta}) / d theta
    return fv.value * k * dz;
  };
  const Real lo = third_pi(bits);
  const Real hi = lo * Real(2L);
  const QuadratureResult q = quadrature(integrand, lo, hi, tol / Real(2L), bits, opts.quad);

  CycleValue v;
  v.method = Method::kernel;
  v.D = form_of(from_period(period)).disc();
  v.two_log_eps = geodesic_length(v.D, bits);
  v.raw = q.value;
  // Series truncation error times a (doubled) sampled bound on |K| and the arc length.
  v.quad_err = q.err + Real(2L) * max_series_err * max_kernel * lo;
  v.normalized = normalize(v.raw, v.two_log_eps);
  v.evaluations = q.evaluations;
  if (v.quad_err > tol) {
    throw ToleranceUnreachable("kernel value error " + v.quad_err.str(6) + " exceeds tolerance", q);
  }
  return v;
}

CycleValue value_direct(const FourierSeries& f, const QForm& form, const Real& tol,
                        const ValueOptions& opts) {
  const long bits = opts.bits;
  const Int D = form.disc();
  const PellSolution& pell = pell_cached(D);
  const auto [w, wc] = roots_of_form(form);

  // Sizes that decide the working precision.
  const double log_eps = pell.eps_log(64).to_double();
  const double wd = w.to_double();
  const double wcd = wc.to_double();
  const double radius_d = std::abs(wd - wcd) / 2.0;
  const double centre_d = (wd + wcd) / 2.0;
  const double spread_bits = std::log2((std::abs(centre_d) + radius_d) / radius_d) + log_eps / std::log(2.0) + 2.0;
  const long sample_bits = 64 + static_cast<long>(std::ceil(spread_bits));

  Real half_length;
  Real centre;
  Real radius_signed;
  Real radius;
  auto set_geometry = [&](long b) {
    PrecisionScope s(b);
    const Real wf = w.to_real(b);
    const Real wcf = wc.to_real(b);
    half_length = pell.eps_log(b);
    centre = (wf + wcf) / Real(2L);
    radius_signed = (wf - wcf) / Real(2L);
    radius = abs(radius_signed);
  };
  set_geometry(sample_bits);
  const double y_max = sampled_max_height(centre, radius_signed, radius, half_length, sample_bits);
  const long extra = static_cast<long>(std::ceil(2.0 * M_PI * (1.05 * y_max + 1.0) / std::log(2.0))) +
                     2 * static_cast<long>(std::ceil(spread_bits)) + 32;
  const long work_bits = bits + extra;

  PrecisionScope scope(work_bits);
  set_geometry(work_bits);
  const SeriesEvaluator fe(f, work_bits);
  const Real a(form.a());
  const Real b(form.b());
  const Real c(form.c());
  const Real sqrt_D = sqrt(Real(D));
  Real max_series_err(0L);
  Real max_factor(0L);
  const Integrand integrand = [&](const Real& s) {
    const Real e = exp(s);
    const Real ei = Real(1L) / e;
    const Real sh = (e - ei) / Real(2L);
    const Real ch = (e + ei) / Real(2L);
    const Real ch2 = ch * ch;
    // z(s) runs from w (s -> -inf) to conj w (s -> +inf) at unit hyperbolic speed.
    const Complex z(centre - radius_signed * sh / ch, radius / ch);
    const Complex dz(-radius_signed / ch2, -radius * sh / ch2);
    Complex Qz = z * a;
    Qz.re += b;
    Qz *= z;
    Qz.re += c;
    Complex factor = dz / Qz;
    factor *= sqrt_D;
    SeriesValue fv = fe.anywhere(z);
    if (fv.err > max_series_err) max_series_err = fv.err;
    const Real af = abs(factor);
    if (af > max_factor) max_factor = af;
    return fv.value * factor;
  };
  const QuadratureResult q = quadrature(integrand, -half_length, half_length, tol / Real(2L), work_bits, opts.quad);

  CycleValue v;
  v.method = Method::direct;
  v.D = D;
  {
    PrecisionScope out(bits);
    v.two_log_eps = Real::rounded(Real(2L) * half_length, bits);
    v.raw = Complex(Real::rounded(q.value.re, bits), Real::rounded(q.value.im, bits));
    v.quad_err = Real::rounded(q.err + Real(2L) * max_series_err * max_factor * Real(2L) * half_length, bits);
    v.normalized = normalize(v.raw, v.two_log_eps);
  }
  v.evaluations = q.evaluations;
  if (v.quad_err > tol) {
    throw ToleranceUnreachable("direct value error " + v.quad_err.str(6) + " exceeds tolerance", q);
  }
  return v;
}

CycleValue value_at(const FourierSeries& f, const QuadIrr& x, const Real& tol, const ValueOptions& opts) {
  return value_kernel(f, expand(x).period, tol, opts);
}

Real kernel_symmetry_check(long N, double grid_step, long bits) {
  if (N < 3) throw DomainError("kernel symmetry check needs N >= 3");
  if (!(grid_step > 0.0)) throw DomainError("grid step must be positive");
  PrecisionScope scope(bits);
  const Kernel K(Digits{Int(N)}, bits);
  const Real lo = third_pi(bits);
  const Real hi = lo * Real(2L);
  const Real p = pi(bits);
  const Real step(grid_step);
  Real worst(0L);
  for (Real theta = lo; theta <= hi; theta += step) {
    const Complex left = K.on_arc(p - theta);
    const Complex right = conj(K.on_arc(theta));
    const Real defect = abs(left - right);
    if (defect > worst) worst = defect;
  }
  return worst;
}

ArcIntegral arc_sine_integral(const FourierSeries& f, const Real& tol, long bits) {
  PrecisionScope scope(bits);
  const SeriesEvaluator fe(f, bits);
  Real max_series_err(0L);
  const Integrand integrand = [&](const Real& theta) {
    const Complex z = cis(theta);
    SeriesValue fv = fe(z);
    if (fv.err > max_series_err) max_series_err = fv.err;
    return fv.value * z.im;
  };
  const Real lo = third_pi(bits);
  const QuadratureResult q = quadrature(integrand, lo, lo * Real(2L), tol / Real(2L), bits);
  return ArcIntegral{q.value, q.err + Real(2L) * max_series_err * lo};
}

LimitScan limit_scan(const FourierSeries& f, const std::vector<long>& Ns, const Real& tol, int workers,
                     const ValueOptions& opts) {
  for (long N : Ns) {
    if (N <= 2) throw DomainError("limit scan needs N > 2");
  }
  LimitScan scan;
  scan.rows.resize(Ns.size());
  const Real c0 = Real::rounded(constant_term(f), opts.bits);
  parallel_for(Ns.size(), workers, [&](std::size_t i) {
    PrecisionScope scope(opts.bits);
    const CycleValue v = value_kernel(f, Digits{Int(Ns[i])}, tol, opts);
    scan.rows[i] = LimitRow{Ns[i], v.normalized, abs(v.normalized.re - c0), v.quad_err / v.two_log_eps};
  });
  PrecisionScope scope(opts.bits);
  scan.arc = arc_sine_integral(f, tol, opts.bits);
  scan.arc_gap = abs(scan.arc.value.re - c0);
  return scan;
}

}  // namespace cycint
