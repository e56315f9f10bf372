#include <cmath>
#include <complex>

#include "cycint/bounds.hpp"
#include "doctest.h"

using namespace cycint;

namespace {

const double kPi = std::acos(-1.0);

std::complex<double> block(const Digits& period, std::size_t r, double theta) {
  // sum over k < a_r of 1/(z - w_{r,k}) - 1/(z - conj w_{r,k}) for the
  // rotation of `period` that starts at position r
  const OrbitTable t = orbit_table(period);
  const std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> s = 0.0;
  for (const auto& p : t.points) {
    if (p.r != r) continue;
    s += 1.0 / (z - p.w.to_double()) - 1.0 / (z - p.w_conj.to_double());
  }
  return s;
}

}  // namespace

TEST_CASE("F and G are the real and imaginary parts of a difference of poles") {
  for (double x : {-7.0, -2.5, 0.3, 2.0, 11.0}) {
    for (double y : {-9.0, -1.5, 0.7, 3.0, 40.0}) {
      if (x == y) continue;
      for (double th = kPi / 3; th <= 2 * kPi / 3; th += 0.1) {
        const std::complex<double> z = std::polar(1.0, th);
        const std::complex<double> d = 1.0 / (z - x) - 1.0 / (z - y);
        CHECK(std::abs((x - y) * F(x, y, th) - d.real()) < 1e-12);
        CHECK(std::abs((x - y) * G(x, y, th) - d.imag()) < 1e-12);
      }
    }
  }
}

TEST_CASE("the lower bound on F is attained at the corners") {
  for (double th = kPi / 3; th <= 2 * kPi / 3; th += 0.05) {
    CHECK(F(-1.0, 1.0, th) == doctest::Approx(-0.5).epsilon(1e-12));
  }
}

TEST_CASE("G is not monotone in theta for moderately large x, y") {
  // documented counterexample: the slope at pi/3 is positive
  const double h = 1e-4;
  const double t = kPi / 3;
  CHECK(G(30, 30, t + h) > G(30, 30, t));
  CHECK(G(4, 12, t + h) > G(4, 12, t));
  // while for small arguments it is decreasing
  CHECK(G(2, 2, t + h) < G(2, 2, t));
}

TEST_CASE("the three pieces of the split recombine to S") {
  const Digits w{3, 5, 2};
  const Digits v{7, 9, 4};
  for (std::size_t r = 1; r <= 3; ++r) {
    for (double th = kPi / 3; th <= 2 * kPi / 3; th += 0.2) {
      const SSplit sp = S_split(w, v, r, th);
      CHECK(std::abs(sp.S1 - sp.S2 - sp.S3 - sp.S) < 1e-12);
      CHECK(std::abs(sp.S - S_direct(w, v, r, th)) < 1e-12);
    }
  }
}

TEST_CASE("S direct against an orbit-table oracle") {
  const Digits w{4, 3};
  const Digits v{6, 5};
  for (std::size_t r = 1; r <= 2; ++r) {
    const double th = 1.3;
    const std::complex<double> oracle = block(w, r, th) - block(v, r, th);
    CHECK(std::abs(S_direct(w, v, r, th) - oracle) < 1e-10);
  }
}

TEST_CASE("bound constants") {
  const BoundConstants big = bound_constants(10, 10);
  CHECK(big.C2 < 0.0);
  CHECK(big.C1 > 0.0);
  CHECK(big.C2_proof < big.C2);
  // documented: for small digits the stated upper constant is negative even
  // though S vanishes when the two periods coincide
  CHECK(bound_constants(3, 3).C1 < 0.0);
  CHECK(bound_constants(3, 3).C1_corrected > 0.0);
  CHECK_THROWS_AS(bound_constants(5, 4), DomainError);
}

TEST_CASE("S bounds hold for a comfortable pair") {
  const SweepReport rep = verify_theorem_S(Digits{8, 6}, Digits{30, 60}, 1e-2);
  CHECK(rep.ok());
  CHECK(rep.extremes.at("max split defect") < 1e-12);
}

TEST_CASE("envelope at M = e^55") {
  const SweepReport rep = sweep_envelope(55.0, 2, 100);
  CHECK(rep.ok());
  CHECK(rep.extremes.at("min K2") == doctest::Approx(0.702).epsilon(1e-3));
  const Envelope e = envelope(55.0, 2);
  CHECK(e.K2 > 0.0);
  CHECK(e.K2_unsafe > e.K2);
}

TEST_CASE("comparison harness") {
  PrecisionScope scope(128);
  ValueOptions vo;
  vo.bits = 128;
  const ComparisonReport c = comparison_check(j_series(), Digits{3}, Digits{300}, Real(std::string("1e-10")), vo);
  CHECK(c.ordered);
  CHECK(c.empirical);
  CHECK(c.condition_holds);
  CHECK(std::abs(c.bracket_integral.to_double() - 2 * c.lambda.to_double()) < 1e-8);
}
