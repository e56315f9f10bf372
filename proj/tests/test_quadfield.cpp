#include <cmath>

#include "cycint/quadfield.hpp"
#include "doctest.h"

using namespace cycint;

TEST_CASE("real arithmetic honours the working precision") {
  PrecisionScope scope(200);
  const Real two(2L);
  const Real r = sqrt(two);
  CHECK(r.precision() == 200);
  CHECK(abs(r * r - two) < Real(std::string("1e-58")));
  {
    PrecisionScope inner(64);
    CHECK(working_precision() == 64);
  }
  CHECK(working_precision() == 200);
  CHECK(abs(pi(200) - Real(std::string("3.14159265358979323846264338327950288419716939937510582097494"))) <
        Real(std::string("1e-58")));
}

TEST_CASE("integer helpers") {
  CHECK(isqrt(Int(99)) == 9);
  CHECK(isqrt(Int(100)) == 10);
  CHECK(is_square(Int(144)));
  CHECK_FALSE(is_square(Int(145)));
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(parse_int("-123456789012345678901234567890") + 1 == parse_int("-123456789012345678901234567889"));
}

TEST_CASE("quadratic irrationals are stored in a unique reduced shape") {
  const QuadIrr golden = QuadIrr::parse("(1+sqrt(5))/2");
  CHECK(QuadIrr::from_parts(2, 2, 4, 5) == golden);
  CHECK(QuadIrr::parse("(2+sqrt(20))/4") == golden);
  CHECK(QuadIrr::parse(golden.str()) == golden);
  CHECK(golden.floor() == 1);
  CHECK(golden.conjugate().floor() == -1);
  CHECK(golden.compare(Int(1)) > 0);
  CHECK(golden.compare(Int(2)) < 0);
  CHECK(std::abs(golden.to_double() - (1 + std::sqrt(5.0)) / 2) < 1e-15);
  CHECK(std::abs(golden.conjugate().to_double() - (1 - std::sqrt(5.0)) / 2) < 1e-15);
  CHECK(QuadIrr::parse("sqrt(2)").floor() == 1);
  CHECK(QuadIrr::parse("(-3-sqrt(13))/2").floor() == -4);
  CHECK_THROWS_AS(QuadIrr::parse("(1+sqrt(4))/2"), DomainError);
  CHECK_THROWS_AS(QuadIrr::parse("nonsense"), DomainError);
}

TEST_CASE("exact floors agree with high precision floats on many irrationals") {
  for (long D = 2; D < 300; ++D) {
    if (is_square(Int(D))) continue;
    for (long P = -20; P <= 20; P += 3) {
      for (long Q : {-7L, -3L, -1L, 1L, 2L, 5L, 11L}) {
        const QuadIrr x{Int(P), Int(Q), Int(D)};
        const double value = (P + std::sqrt(static_cast<double>(D))) / Q;
        // whenever the double is not too close to an integer, the floors agree
        if (std::abs(value - std::round(value)) > 1e-9) {
          CHECK(x.floor() == static_cast<long>(std::floor(value)));
        }
        CHECK(std::abs(x.to_double() - value) <= 1e-12 * std::max(1.0, std::abs(value)));
      }
    }
  }
}

TEST_CASE("Mobius maps") {
  CHECK(Mobius::V_inv() == Mobius::T_inv() * Mobius::S() * Mobius::T_inv());
  const Mobius m(2, 3, 5, 8);
  CHECK(m.det() == 1);
  CHECK(m * m.inverse() == Mobius::identity());
  const QuadIrr x = QuadIrr::parse("(3+sqrt(7))/2");
  const QuadIrr y = apply_mobius(m, x);
  const double xv = x.to_double();
  CHECK(std::abs(y.to_double() - (2 * xv + 3) / (5 * xv + 8)) < 1e-14);
  CHECK(apply_mobius(m.inverse(), y) == x);
  PrecisionScope scope(128);
  const Complex z(Real(0.25), Real(1.5));
  const Complex w = apply_mobius(m, z);
  const Complex back = apply_mobius(m.inverse(), w);
  CHECK(abs(back - z) < Real(std::string("1e-35")));
}

TEST_CASE("forms and their roots") {
  const QForm f(1, -1, -1);  // x^2 - x - 1
  CHECK(f.disc() == 5);
  const auto [w, w2] = roots_of_form(f);
  CHECK(w == QuadIrr::parse("(1+sqrt(5))/2"));
  CHECK(w2 == w.conjugate());
  CHECK(form_of(w) == f);
  CHECK_THROWS_AS(QForm(2, 4, 2), DomainError);
  CHECK_THROWS_AS(QForm(1, 0, -4), DomainError);  // square discriminant

  // substituting by g moves the roots by g^{-1} and keeps the discriminant
  const QForm g = QForm(3, 7, -5);
  const Mobius m(2, 1, 1, 1);
  const QForm h = compose(g, m);
  CHECK(h.disc() == g.disc());
  const QuadIrr r = roots_of_form(h).first;
  const QuadIrr image = apply_mobius(m, r);
  CHECK((image == roots_of_form(g).first || image == roots_of_form(g).second));
}
