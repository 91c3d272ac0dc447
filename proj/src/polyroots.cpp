#include "jostlt/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace jostlt {

AberthResult aberth_roots(const PolynomialEvaluator& eval, int degree, double start_radius,
                          double tol, int max_iterations) {
  AberthResult out;
  if (degree <= 0) {
    out.converged = true;
    return out;
  }
  const auto d = static_cast<std::size_t>(degree);
  std::vector<cplx>& z = out.roots;
  z.resize(d);
  // Angle offset keeps the start off any symmetry axis of the polynomial.
  for (std::size_t i = 0; i < d; ++i) {
    z[i] = std::polar(start_radius, 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.25) /
                                        static_cast<double>(degree) + 0.4);
  }

  std::vector<bool> done(d, false);
  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    bool all_done = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      const auto [p, dp] = eval(z[i]);
      if (p == cplx{0.0}) {
        done[i] = true;
        continue;
      }
      const cplx ratio = p / dp;
      cplx repulsion{0.0};
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      z[i] -= step;
      if (std::abs(step) <= tol * std::max(1.0, std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) {
      out.converged = true;
      break;
    }
  }
  return out;
}

AberthResult aberth_roots(std::span<const cplx> coefficients, double tol, int max_iterations) {
  std::vector<cplx> c(coefficients.begin(), coefficients.end());
  while (!c.empty() && c.back() == cplx{0.0}) c.pop_back();
  if (c.size() <= 1) {
    AberthResult out;
    out.converged = true;
    return out;
  }
  const int degree = static_cast<int>(c.size()) - 1;
  auto horner = [&c](cplx x) {
    cplx p = c.back();
    cplx dp{0.0};
    double bound = std::abs(c.back());
    const double ax = std::abs(x);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[k];
      bound = bound * ax + std::abs(c[k]);
    }
    // A residual at rounding level counts as an exact root.
    if (std::abs(p) <= 4.0 * std::numeric_limits<double>::epsilon() * bound) p = 0.0;
    return std::pair{p, dp};
  };
  // Cauchy-style radius estimate: geometric mean of |c0 / c_d|^{1/d}.
  const double radius = std::pow(std::abs(c.front()) / std::abs(c.back()), 1.0 / degree);
  return aberth_roots(horner, degree, radius > 0.0 ? radius : 1.0, tol, max_iterations);
}

}  // namespace jostlt
