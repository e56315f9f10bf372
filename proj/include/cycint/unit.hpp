#pragma once

// Pell equation t^2 - D u^2 = 4, the fundamental unit of positive norm and
// the automorph of a form.

#include <map>
#include <mutex>

#include "cycint/quadfield.hpp"

namespace cycint {

struct PellSolution {
  Int t;
  Int u;
  Int D;

  /// log((t + u sqrt D) / 2)
  Real eps_log(long bits = working_precision()) const;
  Real eps(long bits = working_precision()) const;
};

/// Smallest positive solution of t^2 - D u^2 = 4.
PellSolution pell_fundamental(const Int& D);

/// Same, cached per discriminant. Safe to call from several threads.
const PellSolution& pell_cached(const Int& D);

/// [[(t - bu)/2, -cu], [au, (t + bu)/2]]; fixes both roots of f.
Mobius automorph(const QForm& f, const PellSolution& s);

/// 2 log eps for discriminant D.
Real geodesic_length(const Int& D, long bits = working_precision());

}  // namespace cycint
