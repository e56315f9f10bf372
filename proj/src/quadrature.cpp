#include "cycint/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <utility>

namespace cycint {

namespace {

GaussRule compute_rule(int n, long bits) {
  PrecisionScope scope(bits + 32);
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const Real tiny = ldexp_one(-(bits + 24));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
    Real dp;
    for (int iter = 0; iter < 200; ++iter) {
      // P_n(x) and P_n'(x) by the three-term recurrence
      Real p0(1L);
      Real p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = (Real(static_cast<long>(2 * k - 1)) * x * p1 - Real(static_cast<long>(k - 1)) * p0) /
                  Real(static_cast<long>(k));
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = Real(static_cast<long>(n)) * (x * p1 - p0) / (x * x - Real(1L));
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) < tiny) break;
    }
    const Real w = Real(2L) / ((Real(1L) - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = Real::rounded(-x, bits);
    rule.nodes[hi] = Real::rounded(x, bits);
    rule.weights[lo] = Real::rounded(w, bits);
    rule.weights[hi] = Real::rounded(w, bits);
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = Real::with_precision(bits);
  return rule;
}

struct Piece {
  Real a;
  Real b;
  Complex value;
  Real err;
  double key;
};

struct ByError {
  bool operator()(const std::shared_ptr<Piece>& x, const std::shared_ptr<Piece>& y) const {
    return x->key < y->key;
  }
};

}  // namespace

const GaussRule& gauss_legendre(int n, long bits) {
  static std::mutex mutex;
  static std::map<std::pair<int, long>, std::unique_ptr<GaussRule>> cache;
  const auto key = std::make_pair(n, bits);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto rule = std::make_unique<GaussRule>(compute_rule(n, bits));
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, fresh] = cache.emplace(key, std::move(rule));
  return *it->second;
}

QuadratureResult quadrature(const Integrand& g, const Real& a, const Real& b, const Real& tol,
                            long bits, const QuadratureOptions& opts) {
  if (!(tol > Real(0L))) throw std::invalid_argument("quadrature tolerance must be positive");
  PrecisionScope scope(bits);
  const GaussRule& low = gauss_legendre(opts.order, bits);
  const GaussRule& high = gauss_legendre(2 * opts.order, bits);
  QuadratureResult result;

  auto apply = [&](const GaussRule& rule, const Real& lo, const Real& hi) {
    const Real half = (hi - lo) / Real(2L);
    const Real mid = (hi + lo) / Real(2L);
    Complex sum(Real(0L), Real(0L));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      Complex v = g(mid + half * rule.nodes[i]);
      v *= rule.weights[i];
      sum += v;
    }
    result.evaluations += rule.nodes.size();
    sum *= half;
    return sum;
  };
  auto make_piece = [&](Real lo, Real hi) {
    auto p = std::make_shared<Piece>();
    p->value = apply(high, lo, hi);
    p->err = abs(p->value - apply(low, lo, hi));
    p->key = p->err.to_double();
    p->a = std::move(lo);
    p->b = std::move(hi);
    return p;
  };

  std::priority_queue<std::shared_ptr<Piece>, std::vector<std::shared_ptr<Piece>>, ByError> heap;
  heap.push(make_piece(a, b));
  Real total_err = heap.top()->err;
  while (total_err > tol && result.evaluations < opts.max_evaluations) {
    auto worst = heap.top();
    heap.pop();
    const Real mid = (worst->a + worst->b) / Real(2L);
    auto left = make_piece(worst->a, mid);
    auto right = make_piece(mid, worst->b);
    total_err -= worst->err;
    total_err += left->err;
    total_err += right->err;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }

  result.value = Complex(Real(0L), Real(0L));
  result.err = Real(0L);
  result.intervals = heap.size();
  while (!heap.empty()) {
    result.value += heap.top()->value;
    result.err += heap.top()->err;
    heap.pop();
  }
  // floating-point rounding in the accumulated sums
  result.err += abs(result.value) * ldexp_one(-(bits - 8));
  result.converged = result.err <= tol;
  if (!result.converged) {
    throw ToleranceUnreachable("quadrature did not reach tolerance " + tol.str(6) + " (best error " +
                                   result.err.str(6) + ")",
                               result);
  }
  return result;
}

}  // namespace cycint
