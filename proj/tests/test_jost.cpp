#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jostlt/jost.hpp"
#include "jostlt/steppot.hpp"
#include "jostlt/zhukovsky.hpp"
#include "support.hpp"

using namespace jostlt;
using testsupport::random_in_annulus;
using testsupport::random_operator;
using testsupport::rel;

namespace {

const cplx kI{0.0, 1.0};

JacobiCoefficients single_b(cplx v) { return JacobiCoefficients::from_map({{1, {1.0, v, 1.0}}}); }

// Both identities of the Green kernel, left minus right.
std::pair<cplx, cplx> kernel_defects(int k, int m, cplx z) {
  const cplx l = z + 1.0 / z;
  const cplx kd = k == m ? 1.0 : 0.0;
  const cplx first = green_kernel(k, m - 1, z) + green_kernel(k, m + 1, z) - l * green_kernel(k, m, z) - kd;
  const cplx second = green_kernel(k - 1, m, z) + green_kernel(k + 1, m, z) - l * green_kernel(k, m, z) - kd;
  return {first, second};
}

}  // namespace

TEST_CASE("green kernel anchors") {
  const cplx z{0.3, 0.4};
  for (int k : {-3, 0, 5}) {
    CHECK(green_kernel(k, k, z) == cplx(0.0));
    CHECK(rel(green_kernel(k, k + 1, z), 1.0) < 1e-15);
    CHECK(green_kernel(k, k - 2, z) == cplx(0.0));
  }
  CHECK(rel(green_kernel(0, 2, z), z + 1.0 / z) < 1e-14);
  CHECK_THROWS_AS(green_kernel(0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(green_kernel(0, 1, -1.0), DomainError);
  CHECK_THROWS_AS(green_kernel(0, 1, 0.0), DomainError);
}

TEST_CASE("green kernel identities, property") {
  for (int i = 0; i < 2000; ++i) {
    const int k = testsupport::uniform_int(-20, 20);
    const int m = k + testsupport::uniform_int(-5, 25);
    const cplx z = random_in_annulus(0.3, 0.95);
    const auto [a, b] = kernel_defects(k, m, z);
    const double scale = std::max(1.0, std::pow(std::abs(z), -std::abs(m - k) - 1));
    CHECK(std::abs(a) <= 1e-12 * scale);
    CHECK(std::abs(b) <= 1e-12 * scale);
  }
}

TEST_CASE("modified kernel") {
  const auto op = JacobiCoefficients::from_map({{1, {1.5, 0.2, 0.5}}, {3, {1.0, cplx(0, 1), 1.0}}});
  const cplx z{0.4, -0.3};
  // delta_5 = 0: both coefficients vanish.
  CHECK(t_tilde(op, 0, 5, z) == cplx(0.0));
  CHECK(rel(t_tilde(op, 2, 3, z), -op.b(3) * z) < 1e-15);
  const PerturbationSummary s = summarize(op);
  CHECK(std::abs(t_tilde(op, 0, 3, 0.5)) <= 4.0 / 3.0 * s.delta[2] + 1e-15);
  CHECK_THROWS_AS(t_tilde(op, 3, 3, z), DomainError);
  // Finite at z = +-1 and continuous there.
  for (double e : {1.0, -1.0}) {
    const cplx at = t_tilde(op, 0, 3, e);
    const cplx near = t_tilde(op, 0, 3, e * (1.0 - 1e-8));
    CHECK(std::abs(at - near) < 1e-6);
  }
  // Matches -b_m z^{m-k} G(k,m) + (1 - a c) z^{m-k} G(k,m-1) away from +-1.
  for (int i = 0; i < 300; ++i) {
    const cplx w = random_in_annulus(0.1, 0.98);
    const int k = testsupport::uniform_int(0, 3);
    const int m = k + testsupport::uniform_int(1, 4);
    const cplx pw = std::pow(w, m - k);
    const cplx expect = -op.b(m) * pw * green_kernel(k, m, w) + (1.0 - op.ac(m - 1)) * pw * green_kernel(k, m - 1, w);
    CHECK(std::abs(t_tilde(op, k, m, w) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    const double d = summarize(op).delta.size() >= static_cast<std::size_t>(m) ? summarize(op).delta[static_cast<std::size_t>(m - 1)] : 0.0;
    CHECK(std::abs(t_tilde(op, k, m, w)) <= std::abs(omega(w)) * d + 1e-12);
    CHECK(std::abs(t_tilde(op, k, m, w)) <= std::abs(w) * m * d + 1e-12);
  }
}

TEST_CASE("backward recursion closed forms") {
  const cplx z{0.3, 0.2};
  const JostEvaluation free = jost_backward(JacobiCoefficients{}, z);
  for (int k = 0; k < 10; ++k) CHECK(rel(free.at(k), std::pow(z, k)) < 1e-15);
  for (cplx v : {cplx(0, 2), cplx(3.0), cplx(1, 2), cplx(-0.4, 0.1)}) {
    CHECK(rel(jost_backward(single_b(v), z).at(0), 1.0 - v * z) < 1e-15);
  }
  const auto step1 = JacobiCoefficients::step(1, 0.7);
  CHECK(rel(jost_function(step1, z), 1.0 - kI * 0.7 * z) < 1e-15);
  CHECK_THROWS_AS(jost_backward(single_b(1.0), 0.0), DomainError);
}

TEST_CASE("tail identity") {
  const auto op = random_operator(6, 0.5);
  const cplx z{-0.2, 0.7};
  const JostEvaluation u = jost_backward(op, z);
  CHECK(u.tail_start == op.support_bound());
  for (int k = u.tail_start; k < static_cast<int>(u.values.size()); ++k) {
    CHECK(u.values[static_cast<std::size_t>(k)] == std::pow(z, k));
  }
  CHECK(u.at(40) == std::pow(z, 40));
}

TEST_CASE("Jost function equals the perturbation determinant") {
  for (int i = 0; i < 300; ++i) {
    const auto op = random_operator(10, 0.6);
    const cplx z = random_in_annulus(0.05, 0.85);
    CHECK(rel(jost_function(op, z), testsupport::determinant_ratio(op, z)) < 1e-10);
  }
}

TEST_CASE("Jost function at the origin") {
  const auto op = random_operator(8, 1.0);
  CHECK(jost_function(op, 0.0) == cplx(1.0));
  // Continuity along z -> 0.
  for (double t : {1e-2, 1e-4, 1e-6}) CHECK(std::abs(jost_function(op, cplx(t, t)) - 1.0) < 50 * t);
  const auto [L, dL] = jost_function_with_derivative(single_b(cplx(0, 2)), 0.0);
  CHECK(L == cplx(1.0));
  CHECK(rel(dL, cplx(0, -2)) < 1e-15);
}

TEST_CASE("derivative matches a central difference") {
  for (int i = 0; i < 100; ++i) {
    const auto op = random_operator(8, 0.7);
    const cplx z = random_in_annulus(0.1, 0.9);
    const double h = 1e-6;
    const cplx fd = (jost_function(op, z + h) - jost_function(op, z - h)) / (2.0 * h);
    const cplx fd_i = (jost_function(op, z + cplx(0, h)) - jost_function(op, z - cplx(0, h))) / cplx(0, 2.0 * h);
    const cplx d = jost_function_with_derivative(op, z).second;
    CHECK(std::abs(d - fd) <= 1e-6 * std::max(1.0, std::abs(d)));
    CHECK(std::abs(d - fd_i) <= 1e-6 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("Volterra iteration agrees with the backward recursion") {
  for (int i = 0; i < 300; ++i) {
    const auto op = random_operator(20, 0.05);
    const cplx z = random_in_annulus(0.01, 0.95);
    const JostEvaluation a = jost_backward(op, z);
    const JostEvaluation b = jost_volterra(op, z, 1e-14);
    for (int k = 0; k <= op.support_bound() + 1; ++k) {
      const double scale = std::pow(std::abs(z), k);
      CHECK(std::abs(a.at(k) - b.at(k)) <= 1e-11 * scale * std::max(1.0, std::abs(a.at(k)) / scale));
    }
  }
}

TEST_CASE("Volterra solution satisfies the recurrence and the growth bound") {
  for (int i = 0; i < 200; ++i) {
    const auto op = random_operator(12, 0.3);
    const cplx z = random_in_annulus(0.05, 0.99);
    const double tol = 1e-12;
    const JostEvaluation u = jost_volterra(op, z, tol);
    CHECK(u.error_bound == tol);
    CHECK(recurrence_residual(op, u) <= 10 * tol * std::max(1.0, std::exp(std::abs(omega(z)) * summarize(op).Delta)));
    const PerturbationSummary s = summarize(op);
    for (int k = 0; k <= op.support_bound() + 2; ++k) {
      const double dev = std::abs(u.at(k) - std::pow(z, k));
      CHECK(dev <= jost_interior_bound(s, z, k) + 2 * tol * std::pow(std::abs(z), k));
    }
  }
}

TEST_CASE("boundary path at z = +-1 and near it") {
  const auto op = JacobiCoefficients::from_map({{1, {1.0, 0.3, 1.0}}, {2, {0.9, cplx(0, 0.2), 1.1}}});
  const PerturbationSummary s = summarize(op);
  for (cplx z : {cplx(1.0), cplx(-1.0), cplx(0.9999), std::polar(1.0, M_PI - 1e-4), std::polar(1.0, 0.4)}) {
    const JostEvaluation v = jost_volterra(op, z, 1e-13);
    const JostEvaluation b = jost_backward(op, z);
    for (int k = 0; k <= 3; ++k) {
      CHECK(std::abs(v.at(k) - b.at(k)) <= 1e-11);
      CHECK(std::abs(b.at(k) - std::pow(z, k)) <= jost_boundary_bound(s, z, k) + 1e-12);
    }
  }
  CHECK_THROWS_AS(jost_volterra(op, 1.01, 1e-12), DomainError);
  CHECK_THROWS_AS(jost_volterra(op, 0.0, 1e-12), DomainError);
}

TEST_CASE("uniqueness of the fixed point") {
  for (int i = 0; i < 50; ++i) {
    const auto op = random_operator(10, 0.2);
    const cplx z = random_in_annulus(0.1, 0.9);
    const double tol = 1e-13;
    const JostEvaluation ref = jost_volterra(op, z, tol);
    std::vector<cplx> seed(static_cast<std::size_t>(op.support_bound() + 2));
    for (auto& x : seed) x = std::polar(testsupport::uniform(0.0, 0.5), testsupport::uniform(-3.0, 3.0));
    const JostEvaluation alt = jost_volterra_seeded(op, z, tol, seed);
    for (int k = 0; k <= op.support_bound(); ++k) {
      CHECK(std::abs(ref.at(k) - alt.at(k)) <= 1e-10 * std::pow(std::abs(z), k));
    }
  }
}

TEST_CASE("determinant bounds") {
  CHECK(determinant_bound_check(JacobiCoefficients{}, 0.5));
  const auto op = single_b(cplx(0, 2));
  CHECK(std::log(std::abs(jost_function(op, 0.5))) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(determinant_bound_check(op, 0.5));
  for (int i = 0; i < 50; ++i) {
    const auto r = random_operator(8, 1.0);
    for (int a = 0; a < 64; ++a) {
      for (int b = 1; b <= 64; ++b) {
        const cplx z = std::polar(b / 64.0 * 0.999, 2 * M_PI * a / 64);
        CHECK(determinant_bound_check(r, z));
      }
    }
  }
}

TEST_CASE("boundary modulus profile") {
  const auto ones = boundary_modulus_profile(JacobiCoefficients{}, 1.0, 5);
  for (double v : ones) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  const auto op = JacobiCoefficients::step(3, 0.5);
  const auto prof = boundary_modulus_profile(op, M_PI / 2, 8);
  CHECK(prof.size() == 12);
  for (std::size_t k = 0; k < prof.size(); ++k) {
    CHECK(prof[k] > 0.0);
    if (k >= 3) CHECK(prof[k] == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(boundary_modulus_profile(op, 0.0), DomainError);
  CHECK_THROWS_AS(boundary_modulus_profile(op, M_PI), DomainError);
}

TEST_CASE("Chebyshev form of the step Jost function") {
  for (int n = 1; n <= 30; ++n) {
    for (double h : {0.1, 0.5, 2.0}) {
      const StepOperator sp = StepOperator::with_h(n, h);
      const auto op = sp.to_jacobi();
      for (int i = 0; i < 10; ++i) {
        const cplx z = random_in_annulus(0.05, 0.99);
        CHECK(rel(chebyshev_jost(sp, z), jost_function(op, z)) < 1e-11);
      }
    }
  }
}
