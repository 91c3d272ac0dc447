#include <cmath>

#include "doctest.h"
#include "jostlt/oracle.hpp"
#include "jostlt/spectrum.hpp"
#include "jostlt/steppot.hpp"
#include "jostlt/zhukovsky.hpp"
#include "support.hpp"

using namespace jostlt;

namespace {

JacobiCoefficients single_b(cplx v) { return JacobiCoefficients::from_map({{1, {1.0, v, 1.0}}}); }

// Determinant by Gaussian elimination with partial pivoting on the dense
// section, as an oracle for the recurrence.
cplx dense_det(const JacobiCoefficients& op, int N, cplx lambda) {
  std::vector<std::vector<cplx>> m(static_cast<std::size_t>(N), std::vector<cplx>(static_cast<std::size_t>(N), 0.0));
  for (int i = 0; i < N; ++i) {
    m[i][i] = op.b(i + 1) - lambda;
    if (i + 1 < N) {
      m[i][i + 1] = op.c(i + 1);
      m[i + 1][i] = op.a(i + 1);
    }
  }
  cplx det{1.0};
  for (int c = 0; c < N; ++c) {
    int p = c;
    for (int r = c + 1; r < N; ++r) if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == cplx{0.0}) return 0.0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < N; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (int k = c; k < N; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("small determinants") {
  const auto b11 = JacobiCoefficients::from_rows({{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}});
  CHECK(std::abs(char_det(b11, 2, 0.0).value()) < 1e-15);
  const JacobiCoefficients j0;
  CHECK(std::abs(char_det(j0, 2, 0.0).value() - (-1.0)) < 1e-15);
  CHECK(std::abs(char_det(j0, 3, 0.0).value()) < 1e-15);
  CHECK(std::abs(char_det(j0, 3, std::sqrt(2.0)).value()) < 1e-14);
  CHECK_THROWS_AS(char_det(j0, 0, 0.0), DomainError);
}

TEST_CASE("recurrence matches dense elimination") {
  for (int i = 0; i < 50; ++i) {
    const auto op = testsupport::random_operator(10, 1.0);
    const int N = testsupport::uniform_int(1, 25);
    const cplx l = testsupport::random_in_annulus(0.0, 3.0);
    const cplx d = dense_det(op, N, l);
    CHECK(std::abs(char_det(op, N, l).value() - d) <= 1e-11 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("exponent tracking for huge lambda") {
  const auto op = testsupport::random_operator(5, 0.5);
  const int N = 400;
  const ScaledComplex d = char_det(op, N, 1e6);
  CHECK(d.log_abs() == doctest::Approx(N * std::log(1e6)).epsilon(1e-6));
  CHECK(std::isinf(std::abs(d.value())));
  const ScaledComplex tiny = char_det(JacobiCoefficients{}, 3000, cplx(0, 1e-3));
  CHECK(std::isfinite(tiny.log_abs()));
}

TEST_CASE("truncation plan") {
  const auto op = single_b(cplx(0, 2));
  const TruncationPlan p = TruncationPlan::for_candidate(op, cplx(0, -0.5), 1e-8);
  CHECK(p.N > op.support_bound());
  CHECK(p.tail_factor < 1e-8);
  CHECK(std::pow(0.5, p.N - op.support_bound()) < 1e-8);
}

TEST_CASE("confirmation") {
  const auto op = single_b(cplx(0, 2));
  DiscreteEigenvalue e = make_eigenvalue(op, cplx(0, -0.5), 1);
  CHECK(confirm_eigenvalue(op, e, 1e-8));
  DiscreteEigenvalue moved = e;
  moved.lambda += 1e-3;
  moved.z = z_of_lambda(moved.lambda);
  CHECK_FALSE(confirm_eigenvalue(op, moved, 1e-8));
  const DiscreteEigenvalue none = make_eigenvalue(JacobiCoefficients{}, 0.5, 1);
  CHECK(none.lambda == cplx(2.5));
  CHECK_FALSE(confirm_eigenvalue(JacobiCoefficients{}, none, 1e-8));
  CHECK(jost_eigenvector_residual(op, cplx(0, -0.5), 40) < 1e-12);
}

TEST_CASE("grid scan") {
  CHECK(grid_zero_scan(JacobiCoefficients{}, 500, default_scan_region(JacobiCoefficients{}), 0.05).empty());
  const auto op = single_b(cplx(0, 2));
  const auto z = grid_zero_scan(op, 40, default_scan_region(op), 0.05);
  REQUIRE(z.size() == 1);
  CHECK(std::abs(z[0] - cplx(0, 1.5)) < 1e-12);
  CHECK_THROWS_AS(grid_zero_scan(op, 40, default_scan_region(op), 0.0), DomainError);
}

TEST_CASE("grid scan agrees with step roots") {
  const StepOperator sp = StepOperator::with_h(5, 1.0);
  const auto op = sp.to_jacobi();
  const auto scan = grid_zero_scan(op, 80, default_scan_region(op), 0.05, 4);
  const auto adm = admissible_roots(complete_step_roots(sp).roots);
  REQUIRE(scan.size() == adm.size());
  for (const auto& r : adm) {
    double best = 1e9;
    for (const cplx l : scan) best = std::min(best, std::abs(l - r.lambda));
    CHECK(best < 1e-10);
  }
  // Thread count does not change the result.
  CHECK(scan == grid_zero_scan(op, 80, default_scan_region(op), 0.05, 1));
}

TEST_CASE("scan region contains the spectrum") {
  for (int i = 0; i < 10; ++i) {
    const auto op = testsupport::random_operator(6, 1.5);
    const ScanRegion r = default_scan_region(op);
    for (const auto& e : discrete_spectrum(op)) {
      CHECK(e.lambda.real() > r.re_min);
      CHECK(e.lambda.real() < r.re_max);
      CHECK(e.lambda.imag() > r.im_min);
      CHECK(e.lambda.imag() < r.im_max);
    }
  }
}
