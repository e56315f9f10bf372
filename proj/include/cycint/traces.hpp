#pragma once

// Classes of primitive indefinite binary quadratic forms of a discriminant,
// class numbers and traces Tr_D f = sum over classes of f(w_Q).
//
// A form [a, b, c] of discriminant D is reduced when |sqrt D - 2|a|| < b < sqrt D.
// The reduced forms split into cycles under the reduction step rho, and the
// cycles are exactly the proper (determinant one) equivalence classes, whose
// count is h_plus. The class number h counts classes after identifying
// [a, b, c] with [-a, b, -c]; it agrees with h_plus when the fundamental unit
// has norm -1 and is half of it otherwise.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "cycint/cyclevalue.hpp"
#include "cycint/quadfield.hpp"

namespace cycint {

/// D > 0, D = 0 or 1 mod 4, not a square.
bool is_discriminant(const Int& D);
bool is_fundamental_discriminant(const Int& D);
std::vector<long> fundamental_discriminants(long D_max, long D_min = 5);

bool is_reduced(const QForm& f);
/// One reduction step; maps reduced forms to reduced forms.
QForm rho(const QForm& f);
/// A reduced form properly equivalent to f.
QForm reduce(const QForm& f);

struct ClassList {
  Int D;
  /// One reduced form per wide class; sorted.
  std::vector<QForm> representatives;
  /// The rho-cycles of reduced forms (one per proper class), each starting at its smallest form.
  std::vector<std::vector<QForm>> cycles;
  std::size_t h = 0;
  std::size_t h_plus = 0;
};

ClassList class_list(const Int& D);

/// When set, class lists and Pell solutions are cached as D.json files there.
void set_memo_directory(std::optional<std::filesystem::path> dir);

struct TraceResult {
  Int D;
  std::size_t h = 0;
  Complex tr_f;
  Real tr_1;  // h * 2 log eps
  Complex ratio;
  Real err;   // bound on |ratio - true ratio|
  std::vector<CycleValue> values;  // per representative
};

/// tol bounds the error of the ratio. The kernel method evaluates each class
/// through the minus continued fraction period of its root; the direct method
/// integrates along the geodesic and is far slower once log eps is large.
TraceResult trace(const FourierSeries& f, const Int& D, const Real& tol, const ValueOptions& opts = {},
                  int workers = 1, Method method = Method::kernel);

struct RatioRow {
  Int D;
  std::size_t h = 0;
  Complex ratio;
  Real err;
};

struct RatioScan {
  std::vector<RatioRow> rows;  // ordered by D
  double mean_bottom = 0.0;    // mean Re ratio over the smallest decile of D
  double mean_top = 0.0;       // ... and over the largest decile
  double gap_bottom = 0.0;     // |mean_bottom - 720|
  double gap_top = 0.0;
  bool top_closer = false;
  double min_re = 0.0;
  double max_re = 0.0;
};

RatioScan ratio_scan(const FourierSeries& f, const std::vector<long>& Ds, const Real& tol,
                     const ValueOptions& opts = {}, int workers = 1, Method method = Method::kernel);

struct ClassNumberRow {
  long N = 0;
  Int D;  // N^2 - 4
  std::size_t h = 0;
  std::size_t h_plus = 0;
  Complex jnor;  // normalized j at the period (N)
  Real gap720;   // |Re jnor - 720|
};

std::vector<ClassNumberRow> class_number_one_scan(const FourierSeries& f, long N_max, const Real& tol,
                                                  const ValueOptions& opts = {}, int workers = 1);

}  // namespace cycint
