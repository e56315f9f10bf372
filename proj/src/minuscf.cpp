#include "cycint/minuscf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace cycint {

namespace {

constexpr std::size_t kMaxExpansionSteps = 50'000'000;

}  // namespace

MinusCF expand(const QuadIrr& x) {
  const Int& D = x.D();
  const Int s = isqrt(D);
  Int P = x.P();
  Int Q = x.Q();
  std::map<std::pair<Int, Int>, std::size_t> seen;
  Digits digits;
  for (std::size_t step = 0; step < kMaxExpansionSteps; ++step) {
    auto [it, fresh] = seen.emplace(std::make_pair(P, Q), digits.size());
    if (!fresh) {
      const std::size_t start = it->second;
      MinusCF cf;
      cf.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
      cf.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
      return cf;
    }
    // a = ceil((P + sqrt D)/Q); x' = 1/(a - x) = (P' + sqrt D)/Q'.
    const Int fl = Q > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
    const Int a = fl + 1;
    digits.push_back(a);
    const Int P_next = a * Q - P;
    const Int Q_next = (P_next * P_next - D) / Q;
    P = P_next;
    Q = Q_next;
  }
  throw DomainError("expansion did not become periodic within the step budget");
}

void validate_period(const Digits& period) {
  if (period.empty()) throw DomainError("empty period");
  bool all_two = true;
  for (const Int& a : period) {
    if (a < 2) throw DomainError("period digit " + to_string(a) + " is below 2");
    if (a != 2) all_two = false;
  }
  if (all_two) throw DomainError("an all-2 period has a rational fixed point");
}

Mobius period_matrix(const Digits& period) {
  Mobius m;
  for (const Int& a : period) m = m * Mobius::digit(a);
  return m;
}

bool is_purely_periodic(const QuadIrr& x) {
  if (x.compare(1) < 0) return false;
  const QuadIrr c = x.conjugate();
  return c.floor() == 0;
}

QuadIrr from_period(const Digits& period) {
  validate_period(period);
  const Mobius m = period_matrix(period);
  // Fixed points solve m21 w^2 + (m22 - m11) w - m12 = 0.
  const Int disc = m.trace() * m.trace() - 4;
  for (int sgn : {1, -1}) {
    const QuadIrr w = QuadIrr::from_parts(m.m11 - m.m22, sgn, 2 * m.m21, disc);
    if (is_purely_periodic(w)) return w;
  }
  throw DomainError("period has no purely periodic fixed point");
}

Digits rotate(const Digits& period, std::size_t shift) {
  Digits out(period.size());
  const std::size_t n = period.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = period[(i + shift) % n];
  return out;
}

Digits canonical_rotation(const Digits& period) {
  Digits best = period;
  for (std::size_t i = 1; i < period.size(); ++i) {
    Digits r = rotate(period, i);
    if (r < best) best = std::move(r);
  }
  return best;
}

Digits primitive_period(const Digits& period) {
  const std::size_t n = period.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len == 0 && rotate(period, len) == period) return Digits(period.begin(), period.begin() + len);
  }
  return period;
}

HyperbolicWord hyperbolic_word(const QuadIrr& w) {
  if (!is_purely_periodic(w)) throw DomainError(w.str() + " is not purely periodic");
  HyperbolicWord out;
  const QuadIrr w0 = apply_mobius(Mobius::T_inv(), w);
  QuadIrr cur = w0;
  for (std::size_t step = 0; step < kMaxExpansionSteps; ++step) {
    out.orbit.push_back(cur);
    const bool shift = cur.compare(1) > 0;
    const Mobius A = shift ? Mobius::T_inv() : Mobius::V_inv();
    out.word.push_back(shift ? Letter::T_inv : Letter::V_inv);
    out.product = A * out.product;
    cur = apply_mobius(A, cur);
    if (cur == w0) return out;
  }
  throw DomainError("hyperbolic word did not close within the step budget");
}

Int orbit_size(const Digits& period) {
  Int L = 0;
  for (const Int& a : period) L += a - 1;
  return L;
}

OrbitTable orbit_table(const Digits& period) {
  validate_period(period);
  OrbitTable table;
  table.period = period;
  const std::size_t n = period.size();
  for (std::size_t r = 0; r < n; ++r) {
    const QuadIrr u = from_period(rotate(period, r + 1));
    for (Int k = 1; k < period[r]; ++k) {
      const QuadIrr w = apply_mobius(Mobius::digit(k), u);
      const QuadIrr wc = w.conjugate();
      if (w.floor() != k - 1 || wc.floor() != k - period[r]) {
        throw DomainError("orbit point " + w.str() + " outside its interval");
      }
      table.points.push_back(OrbitPoint{r + 1, k, w, wc});
    }
  }
  return table;
}

Real nu_estimate(const QuadIrr& x, long q_max, long bits) {
  if (q_max < 10) throw DomainError("nu_estimate needs q_max >= 10");
  const long guard = static_cast<long>(std::ceil(std::log2(static_cast<double>(q_max)))) + 16;
  PrecisionScope scope(bits + guard);
  const Real xv = x.to_real(bits + guard);
  Real best;
  bool first = true;
  Real qx;
  Real dist;
  for (long q = 10; q <= q_max; ++q) {
    mpfr_mul_si(qx.get(), xv.get(), q, MPFR_RNDN);
    mpfr_frac(dist.get(), qx.get(), MPFR_RNDN);
    mpfr_abs(dist.get(), dist.get(), MPFR_RNDN);
    if (mpfr_cmp_d(dist.get(), 0.5) > 0) mpfr_ui_sub(dist.get(), 1, dist.get(), MPFR_RNDN);
    mpfr_mul_si(dist.get(), dist.get(), q, MPFR_RNDN);
    if (first || dist < best) {
      best = dist;
      first = false;
    }
  }
  return Real::rounded(best, bits);
}

Real nu_digit_bound(const MinusCF& cf) {
  Int top = 0;
  for (std::size_t i = 1; i < cf.preperiod.size(); ++i) top = std::max(top, cf.preperiod[i]);
  for (const Int& a : cf.period) top = std::max(top, a);
  return Real(Int(1), top);
}

}  // namespace cycint
