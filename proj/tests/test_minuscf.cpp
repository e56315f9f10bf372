#include <cmath>
#include <random>

#include "cycint/minuscf.hpp"
#include "doctest.h"

using namespace cycint;

namespace {

// Ceiling-rule digits computed with long double floats; only the first few
// digits are trusted.
std::vector<long> float_digits(long double x, int count) {
  std::vector<long> out;
  for (int i = 0; i < count; ++i) {
    const long a = static_cast<long>(std::ceil(x));
    out.push_back(a);
    x = 1.0L / (a - x);
  }
  return out;
}

std::vector<long> unrolled(const MinusCF& cf, int count) {
  std::vector<long> out;
  for (const auto& a : cf.preperiod) out.push_back(a.get_si());
  while (static_cast<int>(out.size()) < count) {
    for (const auto& a : cf.period) out.push_back(a.get_si());
  }
  out.resize(static_cast<std::size_t>(count));
  return out;
}

}  // namespace

TEST_CASE("golden ratio expansion") {
  const MinusCF cf = expand(QuadIrr::parse("(1+sqrt(5))/2"));
  CHECK(cf.preperiod == Digits{2});
  CHECK(cf.period == Digits{3});
  CHECK(from_period(Digits{3}) == QuadIrr::parse("(3+sqrt(5))/2"));
}

TEST_CASE("exact digits match a float ceiling expansion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const long D = std::uniform_int_distribution<long>(2, 500)(rng);
    if (is_square(Int(D))) continue;
    const long P = std::uniform_int_distribution<long>(-30, 30)(rng);
    const long Q = std::uniform_int_distribution<long>(1, 20)(rng) * (trial % 2 ? 1 : -1);
    const QuadIrr x{Int(P), Int(Q), Int(D)};
    const MinusCF cf = expand(x);
    const long double xv = (P + std::sqrt(static_cast<long double>(D))) / Q;
    CHECK(unrolled(cf, 6) == float_digits(xv, 6));
    CHECK(is_purely_periodic(from_period(cf.period)));
  }
}

TEST_CASE("periods round-trip and the period matrix fixes the point") {
  for (const Digits& p : {Digits{3}, Digits{5, 2}, Digits{2, 2, 4}, Digits{10, 3, 7, 2}, Digits{100}}) {
    const QuadIrr w = from_period(p);
    const MinusCF cf = expand(w);
    CHECK(cf.preperiod.empty());
    CHECK(cf.period == p);
    CHECK(apply_mobius(period_matrix(p), w) == w);
    CHECK(orbit_size(p) == static_cast<long>(orbit_table(p).size()));
  }
}

TEST_CASE("invalid periods") {
  CHECK_THROWS_AS(validate_period(Digits{2, 2}), DomainError);
  CHECK_THROWS_AS(validate_period(Digits{3, 1}), DomainError);
  CHECK_THROWS_AS(validate_period(Digits{}), DomainError);
  CHECK_NOTHROW(validate_period(Digits{2, 3}));
}

TEST_CASE("rotations") {
  CHECK(rotate(Digits{1, 2, 3}, 1) == Digits{2, 3, 1});
  CHECK(canonical_rotation(Digits{5, 2, 4}) == Digits{2, 4, 5});
  CHECK(primitive_period(Digits{8, 8}) == Digits{8});
  CHECK(primitive_period(Digits{3, 2, 3, 2, 3, 2}) == Digits{3, 2});
  CHECK(primitive_period(Digits{3, 2, 3}) == Digits{3, 2, 3});
}

TEST_CASE("orbit points lie in their unit intervals") {
  const OrbitTable t = orbit_table(Digits{4, 2, 5});
  CHECK(t.size() == 3 + 1 + 4);
  for (const auto& pt : t.points) {
    const Int a = t.period[pt.r - 1];
    CHECK(pt.w.compare(pt.k - 1) > 0);
    CHECK(pt.w.compare(pt.k) < 0);
    CHECK(pt.w_conj.compare(pt.k - a) > 0);
    CHECK(pt.w_conj.compare(pt.k - a + 1) < 0);
  }
}

TEST_CASE("hyperbolic word closes on the orbit") {
  const HyperbolicWord hw = hyperbolic_word(from_period(Digits{4, 3}));
  CHECK(hw.cycle_length() == hw.orbit.size());
  CHECK(abs(hw.product.trace()) > 2);
  CHECK(apply_mobius(hw.product, hw.orbit.front()) == hw.orbit.front());
}

TEST_CASE("approximation constant of the golden ratio") {
  const Real nu = nu_estimate(QuadIrr::parse("(1+sqrt(5))/2"), 2000, 128);
  CHECK(std::abs(nu.to_double() - 1 / std::sqrt(5.0)) < 1e-3);
  const Real nu_small = nu_estimate(QuadIrr::parse("(1+sqrt(5))/2"), 200, 128);
  CHECK(nu <= nu_small);
}
