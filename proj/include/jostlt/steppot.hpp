#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jostlt/operator.hpp"

namespace jostlt {

/// Discrete Schroedinger operator with potential i*h on sites 1..n.
/// When alpha is set, h = n^{-alpha}.
struct StepOperator {
  int n = 1;
  double h = 0.0;
  std::optional<double> alpha;

  /// Throws DomainError unless n >= 1 and h >= 0.
  static StepOperator with_h(int n, double h);
  /// h = n^{-alpha}, alpha in (0, 1).
  static StepOperator with_alpha(int n, double alpha);

  JacobiCoefficients to_jacobi() const;
  /// ||J - J0||_1 = n h.
  double trace_norm() const { return n * h; }
  /// alpha if set, otherwise -log h / log n (requires n >= 2, h > 0).
  double effective_alpha() const;
};

/// L = z^n U_n(x) - z^{n+1} U_{n-1}(x), x = (z + 1/z - ih)/2, from the
/// three-term Chebyshev recurrence carried in the scaled form z^k U_k(x).
cplx chebyshev_jost(const StepOperator& op, cplx z);

/// P_n(zeta) = zeta^{2n-1}(zeta^2-1)^2 - ih(1 - zeta^{2n})(1 - zeta^{2n+2})
/// and its derivative.
std::pair<cplx, cplx> p_n(const StepOperator& op, cplx zeta);

/// Magnitude scale of the two terms of P_n at zeta, for relative residuals.
double p_n_scale(const StepOperator& op, cplx zeta);

/// z = (zeta^{2n+2} - 1) / (zeta^{2n+1} - zeta).
cplx z_from_zeta(const StepOperator& op, cplx zeta);

struct StepSeed {
  int k = 0;
  cplx w;
};

/// Roots w_{n,k} = gamma_n exp(i pi (4k - 1) / (2(2n + 1))), gamma_n =
/// (h/2)^{1/(2n+1)}, of the binomial 2w^{2n+1} + ih, for integer k in
/// [a(2n+1)/4 + 1, (1/2 - a)(2n+1)/4 - 1]. Throws DomainError if the window
/// is empty or a is outside (0, 1/4).
std::vector<StepSeed> seed_roots(const StepOperator& op, double a);

/// All 2n+1 binomial roots, k = 1..2n+1.
std::vector<StepSeed> full_seed_set(const StepOperator& op);

/// min(n^{-alpha/4}, 0.2). The uncapped value exceeds 1/4 (empty window)
/// unless n > 4^{4/alpha}.
double default_window_parameter(const StepOperator& op);

struct StepRoot {
  cplx zeta;
  cplx z;
  cplx lambda;
  int k = -1;  // seed index, -1 when found without a seed
  bool admissible = false;
  double p_residual = 0.0;        // |P_n(zeta)| / scale
  double lambda_residual = 0.0;  // |z + 1/z - ih - zeta - 1/zeta| / max(1, |lambda|)
  double z_residual = 0.0;   // |z (zeta^{2n+1} - zeta) - (zeta^{2n+2} - 1)| / scale
};

/// Fills z, lambda, admissibility and residuals for a root zeta.
StepRoot make_step_root(const StepOperator& op, cplx zeta, int k);

struct StepRootSet {
  std::vector<StepRoot> roots;
  std::vector<std::string> warnings;
};

/// Damped Newton on P_n from each seed. Roots closer than 1e-9 are merged
/// with a warning; seeds failing to converge in 200 steps are dropped.
StepRootSet newton_step_roots(const StepOperator& op, std::span<const StepSeed> seeds,
                              double tol = 1e-12, unsigned threads = 1);

/// All 2n - 1 roots of P_n inside the unit disk: Newton from the full seed
/// set, then Newton deflated by the roots already found for seeds that
/// collided. Warns if the count falls short.
StepRootSet complete_step_roots(const StepOperator& op, double tol = 1e-12, unsigned threads = 1);

/// Every root of P_n inside the unit disk, from a simultaneous Aberth
/// iteration on the whole degree-(4n+2) polynomial, Newton-polished.
StepRootSet all_step_roots(const StepOperator& op, double tol = 1e-12);

/// Admissible roots, mapped to eigenvalues and deduplicated.
std::vector<StepRoot> admissible_roots(std::span<const StepRoot> roots);

/// Radii r_j = 1 - c_j log n / (2n + 1) and the argument window of the
/// circular segment S(n, a), with c_1 = (1 + alpha) / 2 and c_2 = alpha / 4.
struct Segment {
  double r1, r2;
  double arg_lo, arg_hi;
  bool contains(cplx w) const;
};
Segment segment(const StepOperator& op, double a);

struct AsymptoticsRow {
  int k;
  double theta_deviation;    // theta_k - pi(4k+1)/(2(2n+1))
  double rho_deviation;      // rho_k - (1 - alpha log n / (2n+1))
  double rho_scaled;         // |rho_deviation| (2n+1) / log n
  double im_lambda_ratio;    // Im lambda_k / n^{-alpha} - 1
  double sine_deviation;     // sin((2n+1) theta_k) + 1
};

struct AsymptoticsReport {
  std::vector<AsymptoticsRow> rows;
  double max_theta_deviation = 0.0;
  double max_rho_scaled = 0.0;
  double max_im_lambda_ratio = 0.0;
  double max_sine_deviation = 0.0;
};

/// Deviations of the seeded roots from their leading-order asymptotics.
/// Roots without a seed index are skipped.
AsymptoticsReport asymptotics_report(const StepOperator& op, std::span<const StepRoot> roots);

/// (1 / ||J - J0||_1) sum over admissible roots of dist(lambda,[-2,2]) / |lambda^2 - 4|^{1/2}.
double sharpness_sum(const StepOperator& op, std::span<const StepRoot> roots);

/// Least-squares fit S = slope log n + intercept, with the coefficient of
/// determination r2. Needs at least two distinct n.
struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LogFit fit_against_log(std::span<const int> n, std::span<const double> values);

/// Eigenvector candidate g_j = zeta^j - zeta^{-j} (j <= n), g_j = g_n z^{j-n}
/// (j > n), for j = 1..length.
std::vector<cplx> step_eigenvector(const StepOperator& op, const StepRoot& root, int length);

/// Largest residual of the eigenvector recurrences relative to max |g_j|.
double step_eigenvector_residual(const StepOperator& op, const StepRoot& root, int length);

}  // namespace jostlt
