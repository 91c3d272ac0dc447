#pragma once

#include <vector>

#include "jostlt/operator.hpp"
#include "jostlt/spectrum.hpp"

namespace jostlt {

/// A complex number held as mantissa * 2^exponent so that determinants of
/// large sections neither overflow nor underflow.
struct ScaledComplex {
  cplx mantissa{0.0};
  long exponent = 0;

  double log_abs() const;
  /// The plain value; may overflow to inf or underflow to 0.
  cplx value() const;
};

/// D_N(lambda) = det(J_N - lambda I) for the N x N principal section, by
/// D_k = (b_k - lambda) D_{k-1} - a_{k-1} c_{k-1} D_{k-2}.
ScaledComplex char_det(const JacobiCoefficients& op, int N, cplx lambda);

/// |D_N(lambda)| / max_{k <= N} |D_k(lambda)|.
double normalized_char_det(const JacobiCoefficients& op, int N, cplx lambda);

/// Section size for a candidate with disk parameter z: the smallest N > M
/// with tail_factor = |z|^{2(N - M)} below threshold^2.
struct TruncationPlan {
  int N = 0;
  double tail_factor = 0.0;

  static TruncationPlan for_candidate(const JacobiCoefficients& op, cplx z, double threshold);
};

/// ||(J - lambda) v|| / ||v|| for the eigenvector v built from the Jost
/// solution, v_j = u_j a_1 ... a_{j-1}, over the first `length` rows.
double jost_eigenvector_residual(const JacobiCoefficients& op, cplx z, int length);

/// Truncated determinant and eigenvector residual both small.
bool confirm_eigenvalue(const JacobiCoefficients& op, const DiscreteEigenvalue& candidate,
                        double threshold);

struct ScanRegion {
  double re_min, re_max, im_min, im_max;
};

/// Rectangle certain to contain the spectrum: the Cassini oval bound
/// intersected with the row-sum norm disk.
ScanRegion default_scan_region(const JacobiCoefficients& op);

/// Grid scan of log|D_N(lambda)| + N log|z(lambda)| (the determinant with
/// the free growth divided out); the 5 x 5 grid block around each local
/// minimum seeds Newton on D_N z^N, deflated by the zeros the block already
/// produced. A zero is
/// kept only if Newton on D_{2N} moves it by less than 1e-6 and it is more
/// than 1e-6 away from [-2, 2]. Returns the refined D_{2N} zeros.
std::vector<cplx> grid_zero_scan(const JacobiCoefficients& op, int N, const ScanRegion& region,
                                 double step, unsigned threads = 1);

}  // namespace jostlt
