#pragma once

#include <span>
#include <string>
#include <vector>

#include "jostlt/operator.hpp"

namespace jostlt {

/// An eigenvalue off [-2, 2] together with its disk preimage.
struct DiscreteEigenvalue {
  cplx lambda;
  cplx z;
  int multiplicity = 1;
  double dist_band = 0.0;
  double cassini = 0.0;   // |lambda^2 - 4|
  double residual = 0.0;  // |L(lambda(z))|
};

/// Builds the record for a zero z of the Jost function.
DiscreteEigenvalue make_eigenvalue(const JacobiCoefficients& op, cplx z, int multiplicity);

struct ZeroSearchOptions {
  double r_max = 0.999;
  double tol = 1e-10;
  /// Cells smaller than this (diameter) are handed to Newton.
  double min_cell = 1e-3;
  /// Cells with winding > 1 are split down to this before giving up on
  /// separating the zeros.
  double cluster_cell = 1e-6;
  unsigned threads = 1;
};

struct ZeroSearchReport {
  int cells_examined = 0;
  int total_winding = 0;
  std::vector<DiscreteEigenvalue> zeros;
  double search_radius = 0.0;
  std::vector<std::string> warnings;
};

/// Winding number of `f` along the boundary of an axis-aligned rectangle or
/// a circle, with adaptive step halving. `near_zero` is set when the contour
/// passes within 1e-9 of a zero; `resolved` is false if the accumulated
/// argument is not within 0.25 of a multiple of 2 pi.
struct WindingResult {
  int winding = 0;
  bool resolved = true;
  bool near_zero = false;
};

WindingResult rectangle_winding(const JacobiCoefficients& op, double x0, double x1, double y0,
                                double y1);
WindingResult circle_winding(const JacobiCoefficients& op, cplx center, double radius);

/// Zeros of L(lambda(z), J) in |z| <= r_max by quadtree subdivision on
/// winding numbers, Newton refinement on the differentiated recursion.
ZeroSearchReport find_determinant_zeros(const JacobiCoefficients& op,
                                        const ZeroSearchOptions& options = {});
ZeroSearchReport find_determinant_zeros(const JacobiCoefficients& op, double r_max, double tol);

/// Eigenvalues sorted by (Re lambda, Im lambda).
std::vector<DiscreteEigenvalue> discrete_spectrum(const JacobiCoefficients& op,
                                                  const ZeroSearchOptions& options = {});

/// sum mult * dist(lambda, [-2,2]) / |lambda^2 - 4|^{(1 - eps)/2}, eps in (0, 1).
double lieb_thirring_sum(std::span<const DiscreteEigenvalue> spectrum, double eps);

/// sum mult * (1 - |z|) |z^2 - 1|^eps / |z|^eps over the disk preimages.
double blaschke_sum(std::span<const DiscreteEigenvalue> spectrum, double eps);

/// Every eigenvalue satisfies |lambda^2 - 4| <= (2 Delta / log 2)^2 (+1e-9).
bool cassini_enclosure_test(std::span<const DiscreteEigenvalue> spectrum, double Delta);

/// Delta1 < log 2, which rules out any discrete spectrum.
bool empty_spectrum_certificate(const JacobiCoefficients& op);

/// |lambda^2 - 4| <= 36^2 ||J - J0||_1^2, and when `schroedinger` also
/// |lambda^2 - 4| <= 4 / (log 2)^2 ||J - J0||_1^2.
bool birman_schwinger_ovals(std::span<const DiscreteEigenvalue> spectrum, double trace_norm,
                            bool schroedinger);

}  // namespace jostlt
