#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cycint/config.hpp"
#include "cycint/cyclevalue.hpp"
#include "doctest.h"

using namespace cycint;

TEST_CASE("run configuration validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.precision_bits = 32;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.precision_bits = 128;
  cfg.tol = "-1";
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.tol = "abc";
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.tol = "1e-12";
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("functions by name and from JSON") {
  CHECK(load_function("j", 30).n_trunc() == 30);
  CHECK(load_function("1", 30).pole_order() == 0);
  CHECK_THROWS_AS(load_function("no-such-function", 30), DomainError);

  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "cycint_test_function.json";
  {
    // j - 744 through 30 coefficients with j's growth model for the tail
    const FourierSeries j = j_series(30);
    std::ofstream out(path);
    out << R"({"name": "j0", "pole_order": 1, "coefficients": [)";
    for (std::size_t i = 0; i < j.exact().size(); ++i) {
      out << (i ? ", " : "") << '"' << (i == 1 ? std::string("0") : to_string(j.exact()[i])) << '"';
    }
    out << R"(], "tail": {"A": 1, "B": 12.566370614359172}})";
  }
  const FourierSeries f = load_function(path.string(), 30);
  CHECK(f.name() == "j0");
  PrecisionScope scope(128);
  ValueOptions vo;
  vo.bits = 128;
  const Real tol(std::string("1e-12"));
  const CycleValue a = value_kernel(f, Digits{3}, tol, vo);
  const CycleValue b = value_kernel(j_series(), Digits{3}, tol, vo);
  CHECK(std::abs(a.normalized.re.to_double() - (b.normalized.re.to_double() - 744.0)) < 1e-9);

  const auto bad = dir / "cycint_test_bad.json";
  {
    std::ofstream out(bad);
    out << R"({"pole_order": 1})";
  }
  CHECK_THROWS_AS(load_function(bad.string(), 30), DomainError);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}
