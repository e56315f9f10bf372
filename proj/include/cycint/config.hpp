#pragma once

// Run configuration shared by the command line and the acceptance suite, and
// loading of modular functions by name or from a JSON description.

#include <cstdint>
#include <string>

#include "cycint/modfun.hpp"

namespace cycint {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { json, csv };

struct RunConfig {
  long precision_bits = working_precision();  // CYCINT_PRECISION or 128
  std::string tol = "1e-12";
  int n_trunc = 64;
  int workers = 1;
  OutputFormat output = OutputFormat::json;
  std::uint64_t seed = 20240615;

  /// Throws DomainError when a field is out of range.
  void validate() const;
  Real tolerance() const;
};

/// "j", "1", or a path to a JSON file:
///   {"name": "...", "pole_order": m, "coefficients": [c(-m), ..., c(N)],
///    "tail": {"A": a, "B": b}}
/// Coefficients may be numbers or decimal strings. The tail model bounds
/// |c(n)| <= A exp(B sqrt n) beyond the last coefficient; omit it only for
/// finite q-polynomials.
FourierSeries load_function(const std::string& spec, int n_trunc);

}  // namespace cycint
