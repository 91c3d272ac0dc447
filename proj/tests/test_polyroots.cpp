#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "jostlt/polyroots.hpp"
#include "support.hpp"

using namespace jostlt;

namespace {

// Distance from each expected root to the nearest computed one.
double max_miss(const std::vector<cplx>& expected, const std::vector<cplx>& got) {
  double worst = 0.0;
  for (const cplx e : expected) {
    double best = 1e300;
    for (const cplx g : got) best = std::min(best, std::abs(e - g));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<cplx> expand(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_CASE("roots of unity") {
  std::vector<cplx> coeffs(9, 0.0);
  coeffs[0] = -1.0;
  coeffs[8] = 1.0;
  const AberthResult r = aberth_roots(coeffs);
  CHECK(r.converged);
  REQUIRE(r.roots.size() == 8);
  std::vector<cplx> expected;
  for (int k = 0; k < 8; ++k) expected.push_back(std::polar(1.0, 2 * M_PI * k / 8));
  CHECK(max_miss(expected, r.roots) < 1e-12);
}

TEST_CASE("random polynomials from known roots") {
  for (int trial = 0; trial < 50; ++trial) {
    const int d = testsupport::uniform_int(1, 20);
    std::vector<cplx> roots;
    for (int k = 0; k < d; ++k) roots.push_back(testsupport::random_in_annulus(0.2, 2.0));
    const AberthResult r = aberth_roots(expand(roots));
    CHECK(r.converged);
    CHECK(r.roots.size() == static_cast<std::size_t>(d));
    CHECK(max_miss(roots, r.roots) < 1e-8);
  }
}

TEST_CASE("evaluator form") {
  // p(x) = (x - 0.5)(x + 2i)(x - 3)
  const std::vector<cplx> roots{0.5, cplx(0, -2), 3.0};
  const auto c = expand(roots);
  const PolynomialEvaluator eval = [&](cplx x) {
    cplx p = 0.0, dp = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[k];
    }
    return std::pair{p, dp};
  };
  const AberthResult r = aberth_roots(eval, 3, 1.0);
  CHECK(r.converged);
  CHECK(max_miss(roots, r.roots) < 1e-12);
}

TEST_CASE("trailing zeros are trimmed") {
  const std::vector<cplx> c{-2.0, 1.0, 0.0, 0.0};
  const AberthResult r = aberth_roots(c);
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - 2.0) < 1e-14);
}
