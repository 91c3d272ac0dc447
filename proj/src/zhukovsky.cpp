#include "jostlt/zhukovsky.hpp"

#include <cmath>

namespace jostlt {

cplx lambda_of_z(cplx z) {
  if (z == cplx{0.0}) throw DomainError("lambda_of_z: z = 0");
  return z + 1.0 / z;
}

cplx z_of_lambda(cplx lambda) {
  if (dist_to_band(lambda) < kBandTolerance) {
    throw DomainError("z_of_lambda: lambda lies on the band [-2, 2]");
  }
  // Roots pair as z1 z2 = 1; take the large root without cancellation and
  // invert it.
  cplx s = std::sqrt(lambda - 2.0) * std::sqrt(lambda + 2.0);
  if (std::real(std::conj(lambda) * s) < 0.0) s = -s;
  const cplx big = 0.5 * (lambda + s);
  return 1.0 / big;
}

SpectralParameterPair pair_from_z(cplx z) { return {z, lambda_of_z(z)}; }

double dist_to_band(cplx lambda) {
  const double re = lambda.real();
  const double im = lambda.imag();
  if (std::abs(re) <= 2.0) return std::abs(im);
  return std::hypot(std::abs(re) - 2.0, im);
}

double cassini_modulus(cplx lambda) { return std::abs((lambda - 2.0) * (lambda + 2.0)); }

double cassini_modulus_from_z(cplx z) {
  const double r = std::abs((1.0 - z * z) / z);
  return r * r;
}

cplx omega(cplx z) {
  if (z == cplx{1.0} || z == cplx{-1.0}) throw DomainError("omega: pole at z = +-1");
  return 2.0 * z / (1.0 - z * z);
}

bool distortion_check(cplx z) {
  const double r = std::abs(z);
  const double scale = std::abs(1.0 - z * z) * (1.0 - r) / r;
  const double d = dist_to_band(lambda_of_z(z));
  constexpr double kSlack = 1e-10;
  return 0.5 * scale <= d + kSlack && d <= 0.5 * (1.0 + std::sqrt(2.0)) * scale + kSlack;
}

}  // namespace jostlt
