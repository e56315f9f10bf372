#include <cmath>
#include <random>
#include <set>

#include "cycint/traces.hpp"
#include "cycint/unit.hpp"
#include "doctest.h"

using namespace cycint;

namespace {
Real R(const char* s) { return Real(std::string(s)); }
}  // namespace

TEST_CASE("discriminants") {
  CHECK(is_discriminant(5));
  CHECK(is_discriminant(12));
  CHECK_FALSE(is_discriminant(9));
  CHECK_FALSE(is_discriminant(7));
  CHECK(is_fundamental_discriminant(8));
  CHECK_FALSE(is_fundamental_discriminant(20));
  CHECK_FALSE(is_fundamental_discriminant(45));
  const std::vector<long> expected{5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44};
  CHECK(fundamental_discriminants(44) == expected);
}

TEST_CASE("class numbers against known values") {
  // wide class numbers h and narrow class numbers h_plus of real quadratic orders
  struct Known {
    long D;
    std::size_t h;
    std::size_t h_plus;
  };
  for (const Known& k : {Known{5, 1, 1}, Known{8, 1, 1}, Known{12, 1, 2}, Known{13, 1, 1}, Known{21, 1, 2},
                         Known{40, 2, 2}, Known{60, 2, 4}, Known{65, 2, 2}, Known{85, 2, 2}, Known{104, 2, 2},
                         Known{136, 2, 4}, Known{145, 4, 4}, Known{229, 3, 3}, Known{316, 3, 6},
                         Known{328, 4, 4}}) {
    CAPTURE(k.D);
    const ClassList cl = class_list(k.D);
    CHECK(cl.h == k.h);
    CHECK(cl.h_plus == k.h_plus);
    CHECK(cl.representatives.size() == cl.h);
    CHECK(cl.cycles.size() == cl.h_plus);
  }
}

TEST_CASE("narrow and wide class numbers differ by the sign of the unit norm") {
  for (long D = 5; D <= 1500; ++D) {
    if (!is_discriminant(D)) continue;
    CAPTURE(D);
    const ClassList cl = class_list(D);
    const PellSolution s = pell_fundamental(D);
    // a unit of norm -1 squares to (t + u sqrt D)/2 iff t - 2 and (t + 2)/D are squares
    const bool minus = is_square(s.t - 2) && (s.t + 2) % D == 0 && is_square((s.t + 2) / D);
    CHECK(cl.h_plus == (minus ? 1 : 2) * cl.h);
  }
}

TEST_CASE("reduction cycles partition the reduced forms") {
  for (long D : {60L, 229L, 1001L, 1996L}) {
    const ClassList cl = class_list(D);
    std::set<std::string> seen;
    for (const auto& cycle : cl.cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        CHECK(is_reduced(cycle[i]));
        CHECK(cycle[i].disc() == D);
        CHECK(rho(cycle[i]) == cycle[(i + 1) % cycle.size()]);
        CHECK(seen.insert(cycle[i].str()).second);
      }
    }
    // every reduced form of discriminant D appears
    std::size_t reduced = 0;
    const long r = static_cast<long>(std::sqrt(static_cast<double>(D)));
    for (long a = -r; a <= r; ++a) {
      for (long b = 1; b <= r; ++b) {
        if (a == 0 || (b * b - D) % (4 * a) != 0) continue;
        const long c = (b * b - D) / (4 * a);
        if (std::gcd(std::gcd(std::labs(a), b), std::labs(c)) != 1) continue;
        if (is_reduced(QForm(a, b, c))) ++reduced;
      }
    }
    CHECK(seen.size() == reduced);
  }
}

TEST_CASE("reduction lands in the cycle of the class") {
  std::mt19937_64 rng(3);
  for (long D : {40L, 145L, 316L}) {
    const ClassList cl = class_list(D);
    for (const auto& cycle : cl.cycles) {
      const std::set<std::string> members = [&] {
        std::set<std::string> s;
        for (const auto& q : cycle) s.insert(q.str());
        return s;
      }();
      for (int trial = 0; trial < 10; ++trial) {
        // random SL2(Z) word in T and S
        Mobius m;
        for (int i = 0; i < 8; ++i) {
          m = m * (std::uniform_int_distribution<int>(0, 1)(rng) ? Mobius::T() : Mobius::S());
          if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) m = m * Mobius::T_inv();
        }
        const QForm moved = compose(cycle.front(), m);
        CHECK(members.count(reduce(moved).str()) == 1);
      }
    }
  }
}

TEST_CASE("traces") {
  PrecisionScope scope(128);
  ValueOptions vo;
  vo.bits = 128;
  const TraceResult one = trace(FourierSeries::constant(Real(1L)), 145, R("1e-14"), vo);
  CHECK(abs(one.ratio - Complex(Real(1L), Real(0L))) < R("1e-13"));
  CHECK(one.h == 4);
  const TraceResult t5 = trace(j_series(), 5, R("1e-12"), vo);
  CHECK(std::abs(t5.ratio.re.to_double() - 706.32481354081258) < 1e-10);
  const TraceResult k = trace(j_series(), 60, R("1e-10"), vo, 1, Method::kernel);
  const TraceResult d = trace(j_series(), 60, R("1e-10"), vo, 1, Method::direct);
  CHECK(abs(k.ratio - d.ratio) < R("1e-9"));
}

TEST_CASE("ratio scan summary") {
  PrecisionScope scope(128);
  ValueOptions vo;
  vo.bits = 128;
  const RatioScan s = ratio_scan(j_series(), fundamental_discriminants(200), R("1e-8"), vo);
  CHECK(s.rows.size() == fundamental_discriminants(200).size());
  CHECK(s.min_re > 700.0);
  CHECK(s.max_re < 744.0);
}

TEST_CASE("class number one scan along N^2 - 4") {
  PrecisionScope scope(128);
  ValueOptions vo;
  vo.bits = 128;
  const auto rows = class_number_one_scan(j_series(), 12, R("1e-10"), vo);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].N == 3);
  CHECK(rows[0].D == 5);
  CHECK(rows[0].h == 1);
  CHECK(rows[5].D == 60);
  CHECK(rows[5].h == 2);
}
