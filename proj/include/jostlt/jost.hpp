#pragma once

#include <utility>
#include <vector>

#include "jostlt/operator.hpp"

namespace jostlt {

/// Jost solution u_k(z), k = 0..values.size()-1, with u_k = z^k for
/// k >= tail_start. error_bound bounds |computed - true| / |z|^k.
struct JostEvaluation {
  cplx z;
  std::vector<cplx> values;
  int tail_start = 0;
  double error_bound = 0.0;

  /// u_k for any k >= 0, using the exact tail past the stored range.
  cplx at(int k) const;
};

enum class JostMethod { backward, volterra };

/// Non-symmetric Green kernel G(k, m; z) = (z^{m-k} - z^{k-m}) / (z - 1/z)
/// for m >= k, zero otherwise. Rejects z in {0, 1, -1}.
cplx green_kernel(int k, int m, cplx z);

/// T~(k, m; z) = z^{m-k} T(k, m; z), evaluated through finite geometric
/// sums so that z = +-1 is admissible. Requires m > k >= 0.
cplx t_tilde(const JacobiCoefficients& op, int k, int m, cplx z);

/// Exact Jost solution by downward recursion from the free tail.
JostEvaluation jost_backward(const JacobiCoefficients& op, cplx z);

/// Jost solution by successive approximations of the Volterra equation
/// for f_k = z^{-k} u_k - 1, stopped on the factorial-tail remainder.
/// Requires 0 < |z| <= 1.
JostEvaluation jost_volterra(const JacobiCoefficients& op, cplx z, double tol);

/// Same as jost_volterra but starting the iteration from f_k = g_k + seed_k
/// instead of g_k. Used to probe uniqueness of the fixed point.
JostEvaluation jost_volterra_seeded(const JacobiCoefficients& op, cplx z, double tol,
                                    const std::vector<cplx>& seed);

/// Perturbation determinant L(lambda(z), J) = u_0(z). Defined for every z,
/// including z = 0 where L = 1.
cplx jost_function(const JacobiCoefficients& op, cplx z);

/// L and dL/dz from the differentiated recursion.
std::pair<cplx, cplx> jost_function_with_derivative(const JacobiCoefficients& op, cplx z);

/// Right-hand sides of the two growth bounds at row k:
/// |z|^k (e^{|omega(z)| s0(k)} - 1) and |z|^k (e^{|z| s1(k)} - 1).
double jost_interior_bound(const PerturbationSummary& s, cplx z, int k);
double jost_boundary_bound(const PerturbationSummary& s, cplx z, int k);

/// log|L| <= |omega(z)| Delta (interior) and log|L| <= |z| Delta1 (closed
/// disk), each with 1e-10 slack.
bool determinant_bound_check(const JacobiCoefficients& op, cplx z);

/// |u_k(e^{i theta})| for k = 0..M+extra. Rejects theta in {0, pi}.
std::vector<double> boundary_modulus_profile(const JacobiCoefficients& op, double theta,
                                             int extra = 8);

/// max_k |residual of the three-term recurrence at row k| / |z|^k.
double recurrence_residual(const JacobiCoefficients& op, const JostEvaluation& u);

}  // namespace jostlt
