#include <cmath>

#include "cycint/unit.hpp"
#include "doctest.h"

using namespace cycint;

namespace {

bool is_disc(long D) {
  const long r = static_cast<long>(std::sqrt(static_cast<double>(D)));
  for (long s = std::max(0L, r - 1); s <= r + 1; ++s) {
    if (s * s == D) return false;
  }
  return D % 4 == 0 || D % 4 == 1;
}

// Smallest x^2 - d y^2 = 1 with y > 0 from the convergents of the regular
// continued fraction of sqrt d.
std::pair<Int, Int> regular_cf_pell(long d) {
  const long a0 = static_cast<long>(std::floor(std::sqrt(static_cast<double>(d))));
  long m = 0, q = 1, a = a0;
  Int p_prev = 1, p = a0, r_prev = 0, r = 1;
  for (;;) {
    if (p * p - Int(d) * r * r == 1) return {p, r};
    m = a * q - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    const Int p_next = a * p + p_prev;
    const Int r_next = a * r + r_prev;
    p_prev = p;
    p = p_next;
    r_prev = r;
    r = r_next;
  }
}

}  // namespace

TEST_CASE("fundamental solutions for small discriminants") {
  const PellSolution s5 = pell_fundamental(5);
  CHECK(s5.t == 3);
  CHECK(s5.u == 1);
  const PellSolution s12 = pell_fundamental(12);
  CHECK(s12.t == 4);
  CHECK(s12.u == 1);
  PrecisionScope scope(128);
  CHECK(std::abs(geodesic_length(5).to_double() - 2 * std::log((3 + std::sqrt(5.0)) / 2)) < 1e-15);
  CHECK_THROWS_AS(pell_fundamental(16), DomainError);
}

TEST_CASE("Pell solutions against a brute force scan") {
  for (long D = 5; D <= 2000; ++D) {
    if (!is_disc(D)) continue;
    const PellSolution s = pell_fundamental(D);
    CHECK(s.t * s.t - Int(D) * s.u * s.u == 4);
    long found = 0;
    for (long u = 1; u <= 20000 && !found; ++u) {
      if (is_square(Int(D) * u * u + 4)) found = u;
    }
    if (found) {
      CHECK(s.u == found);
    } else {
      CHECK(s.u > 20000);
    }
  }
}

TEST_CASE("Pell solutions against the regular continued fraction") {
  // With eta = (t + u sqrt D)/2, the smallest power with even coordinates is
  // the fundamental unit of norm one in Z[sqrt d], where D = d or D = 4d.
  for (long D = 5; D <= 2000; ++D) {
    if (!is_disc(D)) continue;
    const PellSolution s = pell_fundamental(D);
    const bool four = D % 4 == 0;
    const long d = four ? D / 4 : D;
    const auto [x, y] = regular_cf_pell(d);
    // eta^k = (t_k + u_k sqrt D)/2, with t_{k+1} = t t_k - t_{k-1}
    Int t_prev = 2, u_prev = 0, tk = s.t, uk = s.u;
    for (int k = 1; k <= 6; ++k) {
      const bool even = tk % 2 == 0 && uk % 2 == 0;
      if (four || even) {
        const Int X = tk / 2;
        const Int Y = four ? uk : uk / 2;
        CHECK(X == x);
        CHECK(Y == y);
        break;
      }
      const Int tn = s.t * tk - t_prev;
      const Int un = s.t * uk - u_prev;
      t_prev = tk;
      u_prev = uk;
      tk = tn;
      uk = un;
    }
  }
}

TEST_CASE("the automorph fixes both roots") {
  for (const QForm& f : {QForm(1, -1, -1), QForm(3, 7, -5), QForm(-6, 6, 1), QForm(2, 9, -10)}) {
    const PellSolution s = pell_fundamental(f.disc());
    const Mobius m = automorph(f, s);
    CHECK(m.det() == 1);
    CHECK(m.trace() == s.t);
    const auto [w, w2] = roots_of_form(f);
    CHECK(apply_mobius(m, w) == w);
    CHECK(apply_mobius(m, w2) == w2);
  }
}

TEST_CASE("cached solutions match") {
  for (long D : {5L, 13L, 61L, 1621L}) {
    const PellSolution& c = pell_cached(D);
    const PellSolution s = pell_fundamental(D);
    CHECK(c.t == s.t);
    CHECK(c.u == s.u);
  }
}
