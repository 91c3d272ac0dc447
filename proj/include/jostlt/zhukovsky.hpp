#pragma once

#include "jostlt/operator.hpp"

namespace jostlt {

/// Points with dist(lambda, [-2, 2]) below this are treated as on the band.
inline constexpr double kBandTolerance = 1e-14;

/// Disk parameter and the spectral parameter it maps to.
struct SpectralParameterPair {
  cplx z;
  cplx lambda;
};

/// lambda(z) = z + 1/z. Throws DomainError for z = 0.
cplx lambda_of_z(cplx z);

/// The root of z^2 - lambda z + 1 = 0 inside the unit disk.
/// Throws DomainError when lambda lies on [-2, 2].
cplx z_of_lambda(cplx lambda);

SpectralParameterPair pair_from_z(cplx z);

double dist_to_band(cplx lambda);

/// |lambda^2 - 4|, computed directly.
double cassini_modulus(cplx lambda);

/// |(1 - z^2) / z|^2, which equals |lambda(z)^2 - 4|.
double cassini_modulus_from_z(cplx z);

/// omega(z) = 2z / (1 - z^2). Throws DomainError at z = +-1.
cplx omega(cplx z);

/// Two-sided distortion estimate of dist(lambda(z), [-2,2]) by
/// |1 - z^2| (1 - |z|) / |z|, with constants 1/2 and (1 + sqrt 2)/2.
bool distortion_check(cplx z);

}  // namespace jostlt
