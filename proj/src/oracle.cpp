#include "jostlt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "jostlt/jost.hpp"
#include "jostlt/parallel.hpp"
#include "jostlt/zhukovsky.hpp"

namespace jostlt {

namespace {

constexpr int kRescaleBits = 256;

cplx scale2(cplx v, int e) { return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)}; }

// Runs the determinant recurrence and its lambda-derivative with a shared
// binary exponent. Returns D_N, D_N' (same exponent) and max_k log|D_k|.
struct DetRun {
  cplx d{1.0};
  cplx dd{0.0};
  long exponent = 0;
  double max_log = 0.0;
};

double max_component(cplx v) { return std::max(std::abs(v.real()), std::abs(v.imag())); }

DetRun run_recurrence(const JacobiCoefficients& op, int N, cplx lambda, bool with_derivative,
                      bool track_max = false) {
  if (N < 1) throw DomainError("char_det: N must be >= 1");
  DetRun r;
  // D_{-1} = 0 and D_0 = 1 make the k = 1 step come out as b_1 - lambda.
  cplx d_prev{0.0};   // D_{k-2}
  cplx dd_prev{0.0};  // D'_{k-2}
  cplx d{1.0};        // D_{k-1}
  cplx dd{0.0};
  long exponent = 0;
  double max_log = 0.0;
  const double hi = std::ldexp(1.0, kRescaleBits);
  const double lo = std::ldexp(1.0, -kRescaleBits);
  const int M = op.support_bound();
  for (int k = 1; k <= N; ++k) {
    // Past the support the coefficients are the free ones.
    const cplx diag = (k <= M ? op.b(k) : cplx{0.0}) - lambda;
    const cplx off = k <= M + 1 ? op.ac(k - 1) : cplx{1.0};
    const cplx d_next = diag * d - off * d_prev;
    cplx dd_next{0.0};
    if (with_derivative) dd_next = -d + diag * dd - off * dd_prev;
    d_prev = d;
    dd_prev = dd;
    d = d_next;
    dd = dd_next;
    double mag = std::max(max_component(d), max_component(d_prev));
    if (with_derivative) mag = std::max({mag, max_component(dd), max_component(dd_prev)});
    if (mag > hi || (mag < lo && mag > 0.0)) {
      int e = 0;
      std::frexp(mag, &e);
      d = scale2(d, -e);
      d_prev = scale2(d_prev, -e);
      dd = scale2(dd, -e);
      dd_prev = scale2(dd_prev, -e);
      exponent += e;
    }
    if (track_max) max_log = std::max(max_log, std::log(std::abs(d)) + exponent * std::numbers::ln2);
  }
  r.d = d;
  r.dd = dd;
  r.exponent = exponent;
  r.max_log = max_log;
  return r;
}

// Newton on F = D_N z(lambda)^N from lambda; F has the zeros of D_N but
// not the pull of the N - M zeros crowding the band, so basins stay wide.
// dz/dlambda = z^2 / (z^2 - 1) gives F'/F = D'/D + N z / (z^2 - 1).
// Zeros in `deflate` are divided out. Returns false if the iterate does
// not settle or reaches the band.
bool newton_on_det(const JacobiCoefficients& op, int N, cplx& lambda, std::span<const cplx> deflate) {
  for (int it = 0; it < 80; ++it) {
    if (dist_to_band(lambda) < kBandTolerance) return false;
    const DetRun r = run_recurrence(op, N, lambda, true);
    if (r.d == cplx{0.0}) return true;
    const cplx z = z_of_lambda(lambda);
    cplx log_derivative = r.dd / r.d + static_cast<double>(N) * z / (z * z - 1.0);
    for (const cplx q : deflate) log_derivative -= 1.0 / (lambda - q);
    if (log_derivative == cplx{0.0}) return false;
    const cplx step = 1.0 / log_derivative;
    lambda -= step;
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) return false;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(lambda))) return true;
  }
  return false;
}

}  // namespace

double ScaledComplex::log_abs() const {
  return std::log(std::abs(mantissa)) + exponent * std::numbers::ln2;
}

cplx ScaledComplex::value() const {
  return scale2(mantissa, static_cast<int>(exponent));
}

ScaledComplex char_det(const JacobiCoefficients& op, int N, cplx lambda) {
  const DetRun r = run_recurrence(op, N, lambda, false);
  return ScaledComplex{r.d, r.exponent};
}

double normalized_char_det(const JacobiCoefficients& op, int N, cplx lambda) {
  const DetRun r = run_recurrence(op, N, lambda, false, true);
  if (r.d == cplx{0.0}) return 0.0;
  const double log_d = std::log(std::abs(r.d)) + r.exponent * std::numbers::ln2;
  return std::exp(log_d - r.max_log);
}

TruncationPlan TruncationPlan::for_candidate(const JacobiCoefficients& op, cplx z,
                                             double threshold) {
  const int M = op.support_bound();
  const double r = std::abs(z);
  TruncationPlan plan;
  if (r == 0.0) {
    plan.N = M + 1;
    plan.tail_factor = 0.0;
    return plan;
  }
  // |z|^{2(N-M)} < threshold^2, i.e. the eigenvector tail |z|^{N-M} < threshold.
  const double steps = std::ceil(std::log(threshold) / std::log(r));
  plan.N = M + std::max(1, static_cast<int>(std::min(steps + 1.0, 5e6)));
  plan.tail_factor = std::pow(r, 2.0 * (plan.N - M));
  return plan;
}

double jost_eigenvector_residual(const JacobiCoefficients& op, cplx z, int length) {
  const JostEvaluation u = jost_backward(op, z);
  const cplx lambda = lambda_of_z(z);
  // v_j = u_j P_j, P_j = a_1 ... a_{j-1}; (J - lambda) v_j = P_j * (row-j
  // recurrence residual with u_0 replaced by 0).
  std::vector<cplx> v(static_cast<std::size_t>(length + 2));
  cplx P{1.0};
  for (int j = 1; j <= length + 1; ++j) {
    v[static_cast<std::size_t>(j)] = P * u.at(j);
    P *= op.a(j);
  }
  double norm_v = 0.0;
  for (int j = 1; j <= length; ++j) norm_v = std::max(norm_v, std::abs(v[static_cast<std::size_t>(j)]));
  double worst = 0.0;
  for (int j = 1; j <= length; ++j) {
    const cplx left = j >= 2 ? op.a(j - 1) * v[static_cast<std::size_t>(j - 1)] : cplx{0.0};
    const cplx row = left + (op.b(j) - lambda) * v[static_cast<std::size_t>(j)] +
                     op.c(j) * v[static_cast<std::size_t>(j + 1)];
    worst = std::max(worst, std::abs(row));
  }
  return norm_v > 0.0 ? worst / norm_v : worst;
}

bool confirm_eigenvalue(const JacobiCoefficients& op, const DiscreteEigenvalue& candidate,
                        double threshold) {
  if (!(std::abs(candidate.z) < 1.0)) return false;
  const TruncationPlan plan = TruncationPlan::for_candidate(op, candidate.z, threshold);
  const double det = normalized_char_det(op, plan.N, candidate.lambda);
  if (!(det < 100.0 * threshold)) return false;
  return jost_eigenvector_residual(op, candidate.z, plan.N) < threshold;
}

ScanRegion default_scan_region(const JacobiCoefficients& op) {
  const PerturbationSummary s = summarize(op);
  const double cassini_r = 2.0 * s.Delta / std::numbers::ln2;
  const double cassini_bound = std::sqrt(4.0 + cassini_r * cassini_r);
  double row_norm = 2.0;
  for (int j = 1; j <= op.support_bound() + 1; ++j) {
    row_norm = std::max(row_norm, std::abs(op.a(j - 1)) + std::abs(op.b(j)) + std::abs(op.c(j)));
  }
  const double R = std::min(cassini_bound, row_norm) + 0.05;
  return ScanRegion{-R, R, -R, R};
}

std::vector<cplx> grid_zero_scan(const JacobiCoefficients& op, int N, const ScanRegion& region,
                                 double step, unsigned threads) {
  if (!(step > 0.0)) throw DomainError("grid_zero_scan: step must be positive");
  const int nx = static_cast<int>(std::floor((region.re_max - region.re_min) / step)) + 1;
  const int ny = static_cast<int>(std::floor((region.im_max - region.im_min) / step)) + 1;
  auto point = [&](int i, int j) { return cplx{region.re_min + i * step, region.im_min + j * step}; };

  // Off the band D_N ~ A z^{-N} + B z^N; dividing out the free growth
  // leaves |A|, whose zeros are wide enough for a grid to see.
  std::vector<double> field(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  parallel_for(static_cast<std::size_t>(ny), threads, [&](std::size_t j) {
    for (int i = 0; i < nx; ++i) {
      const cplx lambda = point(i, static_cast<int>(j));
      const ScaledComplex d = char_det(op, N, lambda);
      const double log_z = dist_to_band(lambda) >= kBandTolerance ? std::log(std::abs(z_of_lambda(lambda))) : 0.0;
      field[j * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)] =
          d.mantissa == cplx{0.0} ? -std::numeric_limits<double>::infinity() : d.log_abs() + N * log_z;
    }
  });
  auto at = [&](int i, int j) {
    return field[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)];
  };

  std::vector<std::pair<int, int>> minima;
  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const double v = at(i, j);
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if ((di != 0 || dj != 0) && at(i + di, j + dj) <= v) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) minima.emplace_back(i, j);
    }
  }

  // Zeros a few grid steps apart share one minimum: every point of the
  // 5 x 5 block around it starts Newton, deflated by the zeros that block
  // has already produced.
  std::vector<std::vector<cplx>> found(minima.size());
  parallel_for(minima.size(), threads, [&](std::size_t s) {
    const auto [i0, j0] = minima[s];
    for (int dj = -2; dj <= 2; ++dj) {
      for (int di = -2; di <= 2; ++di) {
        const int i = i0 + di, j = j0 + dj;
        if (i < 0 || i >= nx || j < 0 || j >= ny) continue;
        cplx lambda = point(i, j);
        if (!newton_on_det(op, N, lambda, found[s])) continue;
        if (dist_to_band(lambda) <= 1e-6) continue;
        cplx doubled = lambda;
        if (!newton_on_det(op, 2 * N, doubled, {})) continue;
        if (std::abs(doubled - lambda) >= 1e-6 || dist_to_band(doubled) <= 1e-6) continue;
        const bool seen = std::any_of(found[s].begin(), found[s].end(),
                                      [&](cplx q) { return std::abs(q - doubled) < 1e-8; });
        if (!seen) found[s].push_back(doubled);
      }
    }
  });

  std::vector<cplx> out;
  for (const auto& block : found) {
    for (const cplx f : block) {
      const bool seen = std::any_of(out.begin(), out.end(), [&](cplx q) { return std::abs(q - f) < 1e-8; });
      if (!seen) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag());
  });
  return out;
}

}  // namespace jostlt
