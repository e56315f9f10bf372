#include <cmath>

#include "cycint/cyclevalue.hpp"
#include "cycint/unit.hpp"
#include "doctest.h"

using namespace cycint;

namespace {

Real R(const char* s) { return Real(std::string(s)); }

ValueOptions opts128() {
  ValueOptions vo;
  vo.bits = 128;
  return vo;
}

}  // namespace

TEST_CASE("f = 1 normalizes to one") {
  PrecisionScope scope(128);
  const FourierSeries one = FourierSeries::constant(Real(1L));
  for (const Digits& p : {Digits{3}, Digits{7}, Digits{2, 5}, Digits{4, 4, 2, 9}}) {
    const CycleValue v = value_kernel(one, p, R("1e-20"), opts128());
    CHECK(abs(v.normalized - Complex(Real(1L), Real(0L))) < R("1e-18"));
    CHECK(abs(v.raw.re - v.two_log_eps) < R("1e-18"));
    const CycleValue d = value_direct(one, form_of(from_period(p)), R("1e-20"), opts128());
    CHECK(abs(d.normalized - Complex(Real(1L), Real(0L))) < R("1e-18"));
  }
}

TEST_CASE("golden ratio value") {
  PrecisionScope scope(128);
  const FourierSeries j = j_series();
  const CycleValue v = value_at(j, QuadIrr::parse("(1+sqrt(5))/2"), R("1e-15"), opts128());
  CHECK(std::abs(v.normalized.re.to_double() - 706.32481354081258) < 1e-11);
  CHECK(abs(v.normalized.im) < R("1e-15"));
  CHECK(v.D == 5);
  const CycleValue d = value_direct(j, QForm(1, -1, -1), R("1e-15"), opts128());
  CHECK(abs(v.normalized - d.normalized) < R("1e-14"));
}

TEST_CASE("kernel and direct evaluators agree on assorted periods") {
  PrecisionScope scope(128);
  const FourierSeries j = j_series();
  for (const Digits& p : {Digits{4}, Digits{3, 2}, Digits{5, 2, 3}, Digits{2, 2, 6}, Digits{9, 4}}) {
    const CycleValue k = value_kernel(j, p, R("1e-14"), opts128());
    const CycleValue d = value_direct(j, form_of(from_period(p)), R("1e-14"), opts128());
    CHECK(abs(k.normalized - d.normalized) < R("1e-13"));
    CHECK(k.quad_err <= R("1e-14"));
    CHECK(k.normalized.re < Real(744L));
  }
}

TEST_CASE("values depend only on the geodesic") {
  PrecisionScope scope(128);
  const FourierSeries j = j_series();
  const QuadIrr x = QuadIrr::parse("(5+sqrt(21))/2");
  const CycleValue base = value_at(j, x, R("1e-14"), opts128());
  for (const Mobius& m : {Mobius::T(), Mobius::S(), Mobius(2, 3, 5, 8), Mobius(-1, 4, 1, -5)}) {
    const CycleValue moved = value_at(j, apply_mobius(m, x), R("1e-14"), opts128());
    CHECK(abs(moved.normalized - base.normalized) < R("1e-13"));
  }
  // rotations of the period and repeated periods describe the same geodesic
  const CycleValue r0 = value_kernel(j, Digits{6, 2, 3}, R("1e-14"), opts128());
  const CycleValue r1 = value_kernel(j, Digits{2, 3, 6}, R("1e-14"), opts128());
  const CycleValue r2 = value_kernel(j, Digits{6, 2, 3, 6, 2, 3}, R("1e-14"), opts128());
  CHECK(abs(r0.normalized - r1.normalized) < R("1e-13"));
  CHECK(abs(r0.normalized - r2.normalized) < R("1e-13"));
  CHECK(abs(r0.raw - r2.raw) < R("1e-13"));
}

TEST_CASE("the kernel is conjugate-symmetric across the imaginary axis") {
  for (long N : {3L, 7L, 20L}) CHECK(kernel_symmetry_check(N, 1e-2, 128) < R("1e-30"));
}

TEST_CASE("arc integral recovers the constant term") {
  PrecisionScope scope(128);
  const ArcIntegral arc = arc_sine_integral(j_series(), R("1e-25"), 128);
  CHECK(abs(arc.value - Complex(Real(744L), Real(0L))) < R("1e-24"));
  const ArcIntegral unit = arc_sine_integral(FourierSeries::constant(Real(1L)), R("1e-25"), 128);
  CHECK(abs(unit.value.re - Real(1L)) < R("1e-24"));
}

TEST_CASE("values climb toward the constant term along (N)") {
  PrecisionScope scope(128);
  const LimitScan s = limit_scan(j_series(), {10, 100, 1000}, R("1e-12"), 1, opts128());
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[0].gap > s.rows[1].gap);
  CHECK(s.rows[1].gap > s.rows[2].gap);
  CHECK(s.arc_gap < R("1e-10"));
}

TEST_CASE("domain errors") {
  PrecisionScope scope(128);
  const FourierSeries j = j_series();
  CHECK_THROWS_AS(value_kernel(j, Digits{2, 2}, R("1e-10"), opts128()), DomainError);
  CHECK_THROWS_AS(value_kernel(j, Digits{Int(100'000'000)}, R("1e-10"), opts128()), DomainError);
  ValueOptions tight = opts128();
  tight.quad.max_evaluations = 5000;
  CHECK_THROWS_AS(value_kernel(j, Digits{3}, R("1e-60"), tight), ToleranceUnreachable);
}
