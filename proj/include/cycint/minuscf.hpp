#pragma once

// Minus continued fractions a0 - 1/(a1 - 1/(a2 - ...)) of quadratic
// irrationals, the hyperbolic word T^-1 / V^-1 of a purely periodic point and
// the orbit points feeding the arc kernel.

#include <cstddef>
#include <vector>

#include "cycint/quadfield.hpp"

namespace cycint {

using Digits = std::vector<Int>;

struct MinusCF {
  Digits preperiod;
  Digits period;
};

/// Exact expansion; the period starts where the first repeated state begins.
MinusCF expand(const QuadIrr& x);

/// Throws DomainError unless every digit is >= 2 and not all digits equal 2.
void validate_period(const Digits& period);

/// Product of the digit maps y -> a - 1/y over one period.
Mobius period_matrix(const Digits& period);

/// The purely periodic w > 1 (with 0 < conj(w) < 1) whose expansion is `period`.
QuadIrr from_period(const Digits& period);

/// True when x > 1 and 0 < conj(x) < 1.
bool is_purely_periodic(const QuadIrr& x);

Digits rotate(const Digits& period, std::size_t shift);
/// Rotation starting at the lexicographically smallest position.
Digits canonical_rotation(const Digits& period);
/// The shortest word whose repetition gives `period`, e.g. (8, 8) -> (8).
Digits primitive_period(const Digits& period);

enum class Letter { T_inv, V_inv };

struct HyperbolicWord {
  std::vector<Letter> word;
  /// Orbit w_0 = w - 1, w_1, ..., w_{l-1}.
  std::vector<QuadIrr> orbit;
  /// A_l ... A_1; fixes w - 1.
  Mobius product;
  std::size_t cycle_length() const { return word.size(); }
};

/// Iterates w_{i+1} = T^-1 w_i (w_i >= 1) or V^-1 w_i (w_i < 1) from w - 1
/// until the orbit closes.
HyperbolicWord hyperbolic_word(const QuadIrr& w);

struct OrbitPoint {
  std::size_t r;  // 1-based position in the period
  Int k;          // 1 <= k <= a_r - 1
  QuadIrr w;      // in (k - 1, k)
  QuadIrr w_conj; // in (k - a_r, k - a_r + 1)
};

struct OrbitTable {
  Digits period;
  std::vector<OrbitPoint> points;
  /// L = sum over the period of (a_r - 1).
  std::size_t size() const { return points.size(); }
};

/// Number of orbit points, sum (a_r - 1), without building them.
Int orbit_size(const Digits& period);

OrbitTable orbit_table(const Digits& period);

/// min over 10 <= q <= q_max of q * ||q x||; non-increasing in q_max.
Real nu_estimate(const QuadIrr& x, long q_max, long bits = working_precision());

/// 1 / max digit over the expansion after a0; reported alongside nu_estimate.
Real nu_digit_bound(const MinusCF& cf);

}  // namespace cycint
