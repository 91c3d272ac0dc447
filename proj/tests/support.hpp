#pragma once

#include <complex>
#include <random>

#include "jostlt/operator.hpp"

namespace testsupport {

using jostlt::cplx;

/// Deterministic generator shared by the property tests.
std::mt19937_64& rng();

double uniform(double lo, double hi);
int uniform_int(int lo, int hi);

/// Point uniformly distributed (by area) in the annulus r_lo <= |z| <= r_hi.
cplx random_in_annulus(double r_lo, double r_hi);

/// Random operator with support bound in [1, max_support]; every deviation
/// is drawn with modulus at most `scale`.
jostlt::JacobiCoefficients random_operator(int max_support, double scale);

/// Random diagonal-only operator.
jostlt::JacobiCoefficients random_schroedinger(int max_support, double scale);

/// L(lambda(z)) as the limit of det(J_N - lambda) / det(J0_N - lambda),
/// with N chosen so that |z|^{2(N - M)} is negligible. Independent of the
/// library's recursions; requires 0 < |z| < 1.
cplx determinant_ratio(const jostlt::JacobiCoefficients& op, cplx z);

/// Relative difference |a - b| / max(1, |b|).
double rel(cplx a, cplx b);

}  // namespace testsupport
