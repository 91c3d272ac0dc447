#include "jostlt/jost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jostlt/zhukovsky.hpp"

namespace jostlt {

namespace {

constexpr double kBoundSlack = 1e-10;
// Above this |z^2 - 1| the interior (omega) estimates are used.
constexpr double kBoundaryPathRadius = 1e-3;

cplx ipow(cplx z, int k) {
  cplx result{1.0};
  cplx base = z;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

// v_k = z^{-k} u_k for k = 0..M+1, from the recursion
// v_{k-1} = (z^2 + 1 - b_k z) v_k - a_k c_k z^2 v_{k+1}, v_M = v_{M+1} = 1.
std::vector<cplx> normalized_backward(const JacobiCoefficients& op, cplx z) {
  const int M = op.support_bound();
  std::vector<cplx> v(static_cast<std::size_t>(M + 2), cplx{1.0});
  const cplx z2 = z * z;
  for (int k = M; k >= 1; --k) {
    const auto i = static_cast<std::size_t>(k);
    v[i - 1] = (z2 + 1.0 - op.b(k) * z) * v[i] - op.ac(k) * z2 * v[i + 1];
  }
  return v;
}

// Geometric partial sums S_d = sum_{j<d} z^{2j}, d = 0..n.
std::vector<cplx> geometric_sums(cplx z, int n) {
  std::vector<cplx> S(static_cast<std::size_t>(n + 1));
  const cplx z2 = z * z;
  cplx power{1.0};
  S[0] = 0.0;
  for (int d = 1; d <= n; ++d) {
    S[static_cast<std::size_t>(d)] = S[static_cast<std::size_t>(d - 1)] + power;
    power *= z2;
  }
  return S;
}

// Smallest J with sum_{j>J} x^j / j! < tol, capped at `cap`.
int factorial_tail_terms(double x, double tol, int cap) {
  if (x <= 0.0) return 1;
  for (int J = 1; J < cap; ++J) {
    if (static_cast<double>(J) + 2.0 <= x) continue;
    const double log_term = (J + 1) * std::log(x) - std::lgamma(J + 2.0);
    const double remainder = std::exp(log_term) / (1.0 - x / (J + 2.0));
    if (remainder < tol) return J;
  }
  return cap;
}

JostEvaluation volterra_impl(const JacobiCoefficients& op, cplx z, double tol,
                             const std::vector<cplx>* seed) {
  if (z == cplx{0.0}) throw DomainError("jost_volterra: z = 0");
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("jost_volterra: |z| > 1");
  if (!(tol > 0.0)) throw DomainError("jost_volterra: tol must be positive");

  const PerturbationSummary summary = summarize(op);
  const int L = static_cast<int>(summary.delta.size());
  const bool boundary_path = std::abs(z * z - 1.0) < kBoundaryPathRadius;
  const double x = boundary_path ? std::abs(z) * summary.s1(0)
                                 : std::abs(omega(z)) * summary.s0(0);

  const std::vector<cplx> S = geometric_sums(z, L + 1);
  const cplx z2 = z * z;
  // kernel[k][m - k - 1] = T~(k, m), k = 0..L-1, m = k+1..L.
  std::vector<std::vector<cplx>> kernel(static_cast<std::size_t>(L));
  for (int k = 0; k < L; ++k) {
    auto& row = kernel[static_cast<std::size_t>(k)];
    row.resize(static_cast<std::size_t>(L - k));
    for (int m = k + 1; m <= L; ++m) {
      row[static_cast<std::size_t>(m - k - 1)] =
          -op.b(m) * z * S[static_cast<std::size_t>(m - k)] +
          (1.0 - op.ac(m - 1)) * z2 * S[static_cast<std::size_t>(m - k - 1)];
    }
  }

  auto apply = [&](const std::vector<cplx>& f) {
    std::vector<cplx> out(static_cast<std::size_t>(L + 1), cplx{0.0});
    for (int k = 0; k < L; ++k) {
      const auto& row = kernel[static_cast<std::size_t>(k)];
      cplx acc{0.0};
      for (int m = k + 1; m <= L; ++m) acc += row[static_cast<std::size_t>(m - k - 1)] * f[static_cast<std::size_t>(m)];
      out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
  };

  // g_k = sum_{m>k} T~(k, m): the kernel applied to the all-ones vector.
  const std::vector<cplx> g = apply(std::vector<cplx>(static_cast<std::size_t>(L + 1), cplx{1.0}));

  // The kernel is strictly upper triangular, so f_{k,j} = 0 for j > L - k
  // and at most L iterates are ever nonzero.
  const int terms = std::min(factorial_tail_terms(x, tol, 100000), std::max(L, 1));

  std::vector<cplx> f;
  if (seed == nullptr) {
    // Partial sums of f = sum_j f_{., j} with f_{., 1} = g.
    std::vector<cplx> term = g;
    f = g;
    for (int j = 2; j <= terms; ++j) {
      term = apply(term);
      for (int k = 0; k <= L; ++k) f[static_cast<std::size_t>(k)] += term[static_cast<std::size_t>(k)];
    }
  } else {
    // Picard iteration f <- g + T~ f from a perturbed start.
    f.assign(static_cast<std::size_t>(L + 1), cplx{0.0});
    for (int k = 0; k < L && static_cast<std::size_t>(k) < seed->size(); ++k) {
      f[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)] + (*seed)[static_cast<std::size_t>(k)];
    }
    for (int it = 0; it < std::max(terms, L) + 1; ++it) {
      std::vector<cplx> next = apply(f);
      for (int k = 0; k <= L; ++k) next[static_cast<std::size_t>(k)] += g[static_cast<std::size_t>(k)];
      f = std::move(next);
    }
  }

  JostEvaluation out;
  out.z = z;
  out.tail_start = std::max(L, op.support_bound());
  out.error_bound = tol;
  out.values.resize(static_cast<std::size_t>(out.tail_start + 2));
  for (int k = 0; k <= out.tail_start + 1; ++k) {
    const cplx fk = k < L ? f[static_cast<std::size_t>(k)] : cplx{0.0};
    out.values[static_cast<std::size_t>(k)] = ipow(z, k) * (1.0 + fk);
  }
  return out;
}

}  // namespace

cplx JostEvaluation::at(int k) const {
  if (k < 0) throw DomainError("JostEvaluation::at: negative index");
  if (k >= tail_start) return ipow(z, k);
  return values[static_cast<std::size_t>(k)];
}

cplx green_kernel(int k, int m, cplx z) {
  if (z == cplx{0.0} || z == cplx{1.0} || z == cplx{-1.0}) {
    throw DomainError("green_kernel: z must avoid 0 and +-1");
  }
  if (m <= k) return 0.0;
  const int d = m - k;
  return (ipow(z, d) - ipow(1.0 / z, d)) / (z - 1.0 / z);
}

cplx t_tilde(const JacobiCoefficients& op, int k, int m, cplx z) {
  if (k < 0 || m <= k) throw DomainError("t_tilde: requires m > k >= 0");
  const std::vector<cplx> S = geometric_sums(z, m - k);
  return -op.b(m) * z * S[static_cast<std::size_t>(m - k)] +
         (1.0 - op.ac(m - 1)) * z * z * S[static_cast<std::size_t>(m - k - 1)];
}

JostEvaluation jost_backward(const JacobiCoefficients& op, cplx z) {
  if (z == cplx{0.0}) throw DomainError("jost_backward: z = 0");
  const std::vector<cplx> v = normalized_backward(op, z);
  const int M = op.support_bound();
  JostEvaluation out;
  out.z = z;
  out.tail_start = M;
  out.values.resize(v.size());
  cplx power{1.0};
  for (int k = 0; k <= M + 1; ++k) {
    out.values[static_cast<std::size_t>(k)] = k >= M ? ipow(z, k) : power * v[static_cast<std::size_t>(k)];
    power *= z;
  }
  return out;
}

JostEvaluation jost_volterra(const JacobiCoefficients& op, cplx z, double tol) {
  return volterra_impl(op, z, tol, nullptr);
}

JostEvaluation jost_volterra_seeded(const JacobiCoefficients& op, cplx z, double tol,
                                    const std::vector<cplx>& seed) {
  return volterra_impl(op, z, tol, &seed);
}

cplx jost_function(const JacobiCoefficients& op, cplx z) {
  return normalized_backward(op, z).front();
}

std::pair<cplx, cplx> jost_function_with_derivative(const JacobiCoefficients& op, cplx z) {
  const int M = op.support_bound();
  const cplx z2 = z * z;
  cplx v_next{1.0}, v{1.0};    // v_{k+1}, v_k
  cplx dv_next{0.0}, dv{0.0};  // their z-derivatives
  for (int k = M; k >= 1; --k) {
    const cplx bk = op.b(k);
    const cplx ack = op.ac(k);
    const cplx coef = z2 + 1.0 - bk * z;
    const cplx v_prev = coef * v - ack * z2 * v_next;
    const cplx dv_prev = (2.0 * z - bk) * v + coef * dv - ack * (2.0 * z * v_next + z2 * dv_next);
    v_next = v;
    dv_next = dv;
    v = v_prev;
    dv = dv_prev;
  }
  return {v, dv};
}

double jost_interior_bound(const PerturbationSummary& s, cplx z, int k) {
  return std::pow(std::abs(z), k) * std::expm1(std::abs(omega(z)) * s.s0(k));
}

double jost_boundary_bound(const PerturbationSummary& s, cplx z, int k) {
  return std::pow(std::abs(z), k) * std::expm1(std::abs(z) * s.s1(k));
}

bool determinant_bound_check(const JacobiCoefficients& op, cplx z) {
  const PerturbationSummary s = summarize(op);
  const double log_modulus = std::log(std::abs(jost_function(op, z)));
  const double r = std::abs(z);
  bool ok = log_modulus <= r * s.Delta1 + kBoundSlack;
  if (r < 1.0 && z != cplx{0.0}) ok = ok && log_modulus <= std::abs(omega(z)) * s.Delta + kBoundSlack;
  return ok;
}

std::vector<double> boundary_modulus_profile(const JacobiCoefficients& op, double theta, int extra) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DomainError("boundary_modulus_profile: theta must lie in (0, pi)");
  }
  const cplx z = std::polar(1.0, theta);
  const JostEvaluation u = jost_backward(op, z);
  const int last = op.support_bound() + std::max(extra, 0);
  std::vector<double> out(static_cast<std::size_t>(last + 1));
  for (int k = 0; k <= last; ++k) {
    out[static_cast<std::size_t>(k)] = k >= u.tail_start ? 1.0 : std::abs(u.at(k));
  }
  return out;
}

double recurrence_residual(const JacobiCoefficients& op, const JostEvaluation& u) {
  const cplx lambda = lambda_of_z(u.z);
  const double r = std::abs(u.z);
  double worst = 0.0;
  const int last = static_cast<int>(u.values.size());
  for (int k = 1; k < last; ++k) {
    const cplx res = u.at(k - 1) + op.b(k) * u.at(k) + op.ac(k) * u.at(k + 1) - lambda * u.at(k);
    worst = std::max(worst, std::abs(res) / std::pow(r, k - 1));
  }
  return worst;
}

}  // namespace jostlt
