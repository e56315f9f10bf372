#include "cycint/unit.hpp"

#include "cycint/minuscf.hpp"

namespace cycint {

Real PellSolution::eps(long bits) const {
  PrecisionScope scope(bits + 16);
  const Real e = (Real(t) + Real(u) * sqrt(Real(D))) / Real(2L);
  return Real::rounded(e, bits);
}

Real PellSolution::eps_log(long bits) const {
  PrecisionScope scope(bits + 16);
  return Real::rounded(log(eps(bits + 16)), bits);
}

PellSolution pell_fundamental(const Int& D) {
  if (D <= 0 || is_square(D)) throw DomainError("Pell equation needs a positive non-square D");
  // For D = 2, 3 mod 4 every solution has t, u even; work with 4D instead.
  const Int r = Int(D % 4);
  const bool lifted = !(r == 0 || r == 1);
  const Int disc = lifted ? Int(4 * D) : D;
  const Int b = disc % 2;
  const QForm principal(1, b, (b * b - disc) / 4);
  const QuadIrr w = roots_of_form(principal).first;
  const MinusCF cf = expand(w);
  const QuadIrr reduced = from_period(cf.period);
  const Mobius m = period_matrix(cf.period);
  const QForm f = form_of(reduced);
  Int t = abs(m.trace());
  Int u = abs(m.m21) / abs(f.a());
  if (t * t - disc * u * u != 4) throw DomainError("Pell solution check failed for D = " + to_string(D));
  if (lifted) u *= 2;
  return PellSolution{t, u, D};
}

const PellSolution& pell_cached(const Int& D) {
  static std::mutex mutex;
  static std::map<Int, PellSolution> memo;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = memo.find(D); it != memo.end()) return it->second;
  }
  PellSolution s = pell_fundamental(D);
  std::lock_guard<std::mutex> lock(mutex);
  return memo.emplace(D, std::move(s)).first->second;
}

Mobius automorph(const QForm& f, const PellSolution& s) {
  if (f.disc() != s.D) throw DomainError("Pell solution belongs to a different discriminant");
  const Int lhs = s.t - f.b() * s.u;
  const Int rhs = s.t + f.b() * s.u;
  if (lhs % 2 != 0 || rhs % 2 != 0) throw DomainError("automorph entries are not integral");
  return Mobius(lhs / 2, -f.c() * s.u, f.a() * s.u, rhs / 2);
}

Real geodesic_length(const Int& D, long bits) {
  const PellSolution& s = pell_cached(D);
  PrecisionScope scope(bits + 8);
  return Real::rounded(Real(2L) * s.eps_log(bits + 8), bits);
}

}  // namespace cycint
