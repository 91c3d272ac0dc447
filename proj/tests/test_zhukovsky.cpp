#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jostlt/zhukovsky.hpp"
#include "support.hpp"

using namespace jostlt;
using testsupport::rel;

TEST_CASE("lambda of z") {
  CHECK(rel(lambda_of_z(0.5), 2.5) < 1e-15);
  CHECK(rel(lambda_of_z(cplx(0, -0.5)), cplx(0, 1.5)) < 1e-15);
  const double theta = 0.7;
  const cplx l = lambda_of_z(std::polar(1.0, theta));
  CHECK(std::abs(l.imag()) < 1e-15);
  CHECK(l.real() == doctest::Approx(2.0 * std::cos(theta)));
  CHECK_THROWS_AS(lambda_of_z(0.0), DomainError);
}

TEST_CASE("z of lambda picks the root inside the disk") {
  CHECK(rel(z_of_lambda(2.5), 0.5) < 1e-15);
  CHECK(rel(z_of_lambda(-2.5), -0.5) < 1e-15);
  CHECK(rel(z_of_lambda(cplx(0, 1.5)), cplx(0, -0.5)) < 1e-15);
  CHECK_THROWS_AS(z_of_lambda(1.0), DomainError);
  CHECK_THROWS_AS(z_of_lambda(cplx(-2.0, 1e-16)), DomainError);
  CHECK_NOTHROW(z_of_lambda(cplx(0.3, 1e-10)));
}

TEST_CASE("round trips, property") {
  for (int i = 0; i < 10000; ++i) {
    const cplx z = testsupport::random_in_annulus(1e-3, 1.0 - 1e-6);
    const cplx l = lambda_of_z(z);
    const cplx back = z_of_lambda(l);
    CHECK(std::abs(back - z) <= 1e-12);
    // Quadratic check: z^2 - lambda z + 1 = 0, scaled by |lambda z|.
    CHECK(std::abs(back * back - l * back + 1.0) <= 1e-13 * std::max(1.0, std::abs(l * back)));
    CHECK(rel(lambda_of_z(back), l) <= 1e-12);
    const double c1 = cassini_modulus(l);
    const double c2 = cassini_modulus_from_z(z);
    CHECK(std::abs(c1 - c2) <= 1e-11 * std::max(1.0, c2));
  }
}

TEST_CASE("z of lambda near the band stays inside") {
  for (double eps : {1e-6, 1e-9, 1e-12}) {
    for (double x : {-1.999, -1.0, 0.0, 0.5, 1.999}) {
      const cplx l{x, eps};
      const cplx z = z_of_lambda(l);
      CHECK(std::abs(z) < 1.0);
      CHECK(std::abs(lambda_of_z(z) - l) <= 1e-12 * std::abs(l) + 1e-15);
    }
  }
}

TEST_CASE("distance to the band") {
  CHECK(dist_to_band(3.0) == 1.0);
  CHECK(dist_to_band(cplx(1, 1)) == 1.0);
  CHECK(dist_to_band(cplx(-3, -4)) == doctest::Approx(std::sqrt(17.0)));
  CHECK(dist_to_band(cplx(2, 0)) == 0.0);
  CHECK(dist_to_band(cplx(-1.5, -0.25)) == 0.25);
}

TEST_CASE("omega") {
  CHECK(omega(0.0) == cplx(0.0));
  CHECK(rel(omega(0.5), 4.0 / 3.0) < 1e-15);
  CHECK(rel(omega(cplx(0, 1)), cplx(0, 1)) < 1e-15);
  CHECK_THROWS_AS(omega(1.0), DomainError);
  CHECK_THROWS_AS(omega(-1.0), DomainError);
}

TEST_CASE("distortion estimate") {
  CHECK(distortion_check(0.5));
  CHECK(distortion_check(cplx(0, 0.9)));
  // The bracket at z = 0.5 is [0.375, 0.905...] around dist = 0.5.
  const double q = 0.75 * 0.5 / 0.5;
  CHECK(0.5 * q == doctest::Approx(0.375));
  CHECK((1 + std::numbers::sqrt2) / 2 * q == doctest::Approx(0.9053).epsilon(1e-4));
  for (int i = 0; i < 10000; ++i) CHECK(distortion_check(testsupport::random_in_annulus(0.01, 0.999)));
  for (int a = 0; a < 200; ++a) {
    for (int r = 1; r < 200; ++r) {
      CHECK(distortion_check(std::polar(r / 200.0, -M_PI + 2 * M_PI * a / 200.0)));
    }
  }
}
