#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "jostlt/operator.hpp"

namespace jostlt {

/// Returns (p(x), p'(x)).
using PolynomialEvaluator = std::function<std::pair<cplx, cplx>(cplx)>;

struct AberthResult {
  std::vector<cplx> roots;
  int iterations = 0;
  bool converged = false;
};

/// Simultaneous Aberth-Ehrlich iteration for all `degree` roots of a
/// polynomial available only through an evaluator. Starting points are
/// spread on the circle of radius `start_radius`.
AberthResult aberth_roots(const PolynomialEvaluator& eval, int degree, double start_radius = 1.0,
                          double tol = 1e-14, int max_iterations = 2000);

/// Dense coefficients, ascending powers. Trailing zeros are trimmed.
AberthResult aberth_roots(std::span<const cplx> coefficients, double tol = 1e-14,
                          int max_iterations = 2000);

}  // namespace jostlt
