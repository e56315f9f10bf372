#include "cycint/config.hpp"

#include <fstream>

#include "cycint/quadfield.hpp"
#include "json.hpp"

namespace cycint {

void RunConfig::validate() const {
  if (precision_bits < 64) throw DomainError("precision must be at least 64 bits");
  if (!(tolerance() > Real(0L))) throw DomainError("tolerance must be positive");
  if (n_trunc < 1) throw DomainError("series truncation must be at least 1");
  if (workers < 1) throw DomainError("workers must be at least 1");
}

Real RunConfig::tolerance() const {
  try {
    return Real(tol);
  } catch (const std::exception&) {
    throw DomainError("cannot parse tolerance '" + tol + "'");
  }
}

FourierSeries load_function(const std::string& spec, int n_trunc) {
  if (spec == "j") return j_series(n_trunc);
  if (spec == "1") return FourierSeries::constant(Real(1L));
  std::ifstream in(spec);
  if (!in) throw DomainError("unknown function '" + spec + "' (expected j, 1 or a JSON file)");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("cannot parse function file " + spec + ": " + e.what());
  }
  try {
    const int m = j.value("pole_order", 0);
    const auto& list = j.contains("coefficients") ? j.at("coefficients") : j.at("coeffs");
    std::vector<Real> coeffs;
    PrecisionScope scope(kCoefficientBits);
    for (const auto& c : list) {
      if (c.is_string()) {
        coeffs.emplace_back(c.get<std::string>());
      } else if (c.is_number_integer()) {
        coeffs.emplace_back(c.dump());  // exact, even beyond double range
      } else {
        coeffs.emplace_back(c.get<double>());
      }
    }
    TailModel tail;
    if (j.contains("tail")) tail = TailModel{j["tail"].value("A", 0.0), j["tail"].value("B", 0.0)};
    return FourierSeries(m, std::move(coeffs), tail, j.value("name", spec));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed function file " + spec + ": " + e.what());
  }
}

}  // namespace cycint
