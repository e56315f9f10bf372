#include <cmath>

#include "cycint/modfun.hpp"
#include "doctest.h"

using namespace cycint;

namespace {

// j = E4^3 / Delta with Delta = q prod (1 - q^n)^24, expanded naively.
std::vector<Int> j_oracle(std::size_t len) {
  std::vector<Int> prod(len, 0);
  prod[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = len - 1; i >= n; --i) prod[i] -= prod[i - n];
    }
  }
  std::vector<Int> e4(len, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    Int s = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (n % k == 0) s += Int(static_cast<unsigned long>(k * k * k));
    }
    e4[n] = 240 * s;
  }
  std::vector<Int> cube(len, 0), sq(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t k = 0; i + k < len; ++k) sq[i + k] += e4[i] * e4[k];
  }
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t k = 0; i + k < len; ++k) cube[i + k] += sq[i] * e4[k];
  }
  std::vector<Int> out(len, 0);
  for (std::size_t n = 0; n < len; ++n) {
    Int acc = cube[n];
    for (std::size_t k = 1; k <= n; ++k) acc -= prod[k] * out[n - k];
    out[n] = acc;
  }
  return out;
}

Real R(const char* s) { return Real(std::string(s)); }

}  // namespace

TEST_CASE("j coefficients") {
  const FourierSeries j = j_series(40);
  const std::vector<Int> oracle = j_oracle(42);
  REQUIRE(j.exact().size() == 42);
  for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(j.exact()[i] == oracle[i]);
  CHECK(j.exact()[1] == 744);
  CHECK(j.exact()[2] == 196884);
  CHECK(j.exact()[3] == 21493760);
  CHECK(j.pole_order() == 1);
  CHECK(constant_term(j) == Real(744L));
}

TEST_CASE("special values of j") {
  PrecisionScope scope(128);
  const FourierSeries j = j_series();
  const SeriesValue at_i = eval(j, Complex(Real(0L), Real(1L)), 128);
  CHECK(abs(at_i.value - Complex(Real(1728L), Real(0L))) < R("1e-25"));
  CHECK(at_i.err < R("1e-25"));
  const Complex rho(Real(0.5), sqrt(Real(3L)) / Real(2L));
  CHECK(abs(eval(j, rho, 128).value) < R("1e-25"));
  // j(sqrt(-2)) = 8000
  CHECK(abs(eval(j, Complex(Real(0L), sqrt(Real(2L))), 128).value - Complex(Real(8000L), Real(0L))) <
        R("1e-24"));
}

TEST_CASE("modular invariance through the fundamental domain") {
  PrecisionScope scope(160);
  const SeriesEvaluator f(j_series(), 160);
  const Complex z(Real(0.2), Real(0.9));
  const Complex inv = Complex(Real(-1L), Real(0L)) * reciprocal(z);  // -1/z
  const SeriesValue a = f.anywhere(z);
  const SeriesValue b = f.anywhere(inv);
  CHECK(abs(a.value - b.value) < R("1e-25") * abs(a.value));
  const Complex r = reduce_to_fundamental_domain(Complex(Real(3.3), Real(0.05)));
  CHECK(r.im >= sqrt(Real(3L)) / Real(2L) - R("1e-30"));
  CHECK(abs(r.re) <= Real(0.5));
}

TEST_CASE("tail bound covers the truncation") {
  PrecisionScope scope(256);
  const FourierSeries small = j_series(12);
  const FourierSeries big = j_series(120);
  const Complex z(Real(0.1), Real(0.9));
  const SeriesValue a = eval(small, z, 256);
  const SeriesValue b = eval(big, z, 256);
  CHECK(abs(a.value - b.value) <= a.err + b.err);
  CHECK(a.err > R("1e-20"));
}

TEST_CASE("constants and shifted series") {
  PrecisionScope scope(128);
  const FourierSeries one = FourierSeries::constant(Real(1L));
  CHECK(abs(eval(one, Complex(Real(0.3), Real(1.1)), 128).value - Complex(Real(1L), Real(0L))) < R("1e-35"));
  const FourierSeries j0 = j_series().add_constant(Real(-744L));
  CHECK(constant_term(j0) == Real(0L));
}
