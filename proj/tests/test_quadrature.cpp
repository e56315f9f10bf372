#include "cycint/quadrature.hpp"
#include "doctest.h"

using namespace cycint;

namespace {
Real R(const char* s) { return Real(std::string(s)); }
}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  PrecisionScope scope(128);
  const GaussRule& g = gauss_legendre(8, 128);
  REQUIRE(g.nodes.size() == 8);
  for (int k = 0; k <= 15; ++k) {
    Real sum(0L);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      Real p(1L);
      for (int e = 0; e < k; ++e) p *= g.nodes[i];
      sum += g.weights[i] * p;
    }
    const Real exact = k % 2 ? Real(0L) : Real(2L) / Real(static_cast<long>(k + 1));
    CHECK(abs(sum - exact) < R("1e-35"));
  }
}

TEST_CASE("smooth complex integrands") {
  PrecisionScope scope(128);
  const Integrand g = [](const Real& t) { return exp(Complex(Real(0L), t)); };
  // integral of e^{it} over [0, pi] is 2i
  const QuadratureResult r = quadrature(g, Real(0L), pi(128), R("1e-30"), 128);
  CHECK(r.converged);
  CHECK(abs(r.value - Complex(Real(0L), Real(2L))) < R("1e-30"));
  CHECK(r.err <= R("1e-30"));
}

TEST_CASE("sharp peaks need bisection") {
  PrecisionScope scope(128);
  const Real eps = R("1e-3");
  const Integrand g = [&](const Real& t) { return Complex(eps / (t * t + eps * eps), Real(0L)); };
  // integral over [-1, 1] is 2 atan(1/eps)
  const QuadratureResult r = quadrature(g, Real(-1L), Real(1L), R("1e-25"), 128);
  const Real exact = Real(2L) * atan2(Real(1L), eps);
  CHECK(abs(r.value.re - exact) < R("1e-25"));
  CHECK(r.intervals > 1);
}

TEST_CASE("budget exhaustion reports the best estimate") {
  PrecisionScope scope(128);
  const Integrand g = [](const Real& t) { return Complex(sqrt(abs(t)), Real(0L)); };
  QuadratureOptions opts;
  opts.max_evaluations = 2000;
  try {
    quadrature(g, Real(-1L), Real(1L), R("1e-35"), 128, opts);
    FAIL("expected ToleranceUnreachable");
  } catch (const ToleranceUnreachable& e) {
    CHECK(abs(e.best().value.re - Real(4L) / Real(3L)) < R("1e-6"));
    CHECK_FALSE(e.best().converged);
  }
}
