#include "jostlt/steppot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jostlt/parallel.hpp"
#include "jostlt/polyroots.hpp"
#include "jostlt/zhukovsky.hpp"

namespace jostlt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr int kMaxNewton = 200;
constexpr double kMergeDistance = 1e-9;
constexpr double kWindowParameterCap = 0.2;

cplx ipow(cplx z, int k) {
  cplx result{1.0};
  cplx base = z;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

struct NewtonOutcome {
  bool converged = false;
  cplx zeta;
};

NewtonOutcome damped_newton(const StepOperator& op, cplx zeta, double tol) {
  NewtonOutcome out;
  auto [p, dp] = p_n(op, zeta);
  for (int it = 0; it < kMaxNewton; ++it) {
    if (std::abs(p) <= tol * p_n_scale(op, zeta)) {
      out.converged = true;
      break;
    }
    if (dp == cplx{0.0}) break;
    cplx step = p / dp;
    cplx trial = zeta - step;
    auto next = p_n(op, trial);
    for (int halvings = 0; halvings < 30 && std::abs(next.first) > std::abs(p); ++halvings) {
      step *= 0.5;
      trial = zeta - step;
      next = p_n(op, trial);
    }
    zeta = trial;
    p = next.first;
    dp = next.second;
    if (std::abs(step) <= 4e-16 * std::abs(zeta)) {
      out.converged = std::abs(p) <= 1e3 * tol * p_n_scale(op, zeta);
      break;
    }
  }
  out.zeta = zeta;
  return out;
}

// Removes near-duplicates in place (first occurrence wins).
void merge_duplicates(std::vector<StepRoot>& roots, std::vector<std::string>& warnings) {
  std::vector<StepRoot> kept;
  for (const StepRoot& r : roots) {
    const auto dup = std::find_if(kept.begin(), kept.end(), [&](const StepRoot& q) {
      return std::abs(q.zeta - r.zeta) < kMergeDistance;
    });
    if (dup == kept.end()) {
      kept.push_back(r);
    } else {
      std::ostringstream os;
      os << "seeds " << dup->k << " and " << r.k << " converged to the same root";
      warnings.push_back(os.str());
    }
  }
  roots = std::move(kept);
}

// Newton on P_n divided by (zeta - r)(zeta - 1/r) over known roots r and
// by (zeta^2 - 1)^2, followed by a plain polish.
NewtonOutcome deflated_newton(const StepOperator& op, cplx zeta, const std::vector<StepRoot>& known,
                              double tol) {
  for (int it = 0; it < kMaxNewton; ++it) {
    const auto [p, dp] = p_n(op, zeta);
    if (p == cplx{0.0}) break;
    cplx s = dp / p - 2.0 / (zeta - 1.0) - 2.0 / (zeta + 1.0);
    for (const StepRoot& r : known) s -= 1.0 / (zeta - r.zeta) + 1.0 / (zeta - 1.0 / r.zeta);
    if (s == cplx{0.0}) break;
    const cplx step = 1.0 / s;
    zeta -= step;
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) return {};
    if (std::abs(step) <= 1e-14 * std::abs(zeta)) break;
  }
  return damped_newton(op, zeta, tol);
}

// Roots pair as (zeta, 1/zeta); maps a converged root outside the disk to
// its partner inside and polishes it.
NewtonOutcome fold_inside(const StepOperator& op, NewtonOutcome o, double tol) {
  if (!o.converged || std::abs(o.zeta) <= 1.0) return o;
  return damped_newton(op, 1.0 / o.zeta, tol);
}

}  // namespace

StepOperator StepOperator::with_h(int n, double h) {
  if (n < 1) throw DomainError("StepOperator: n must be >= 1");
  if (!(h >= 0.0)) throw DomainError("StepOperator: h must be >= 0");
  return StepOperator{n, h, std::nullopt};
}

StepOperator StepOperator::with_alpha(int n, double alpha) {
  if (n < 1) throw DomainError("StepOperator: n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("StepOperator: alpha must lie in (0, 1)");
  return StepOperator{n, std::pow(static_cast<double>(n), -alpha), alpha};
}

JacobiCoefficients StepOperator::to_jacobi() const { return JacobiCoefficients::step(n, cplx{h}); }

double StepOperator::effective_alpha() const {
  if (alpha) return *alpha;
  if (n < 2 || !(h > 0.0)) throw DomainError("effective_alpha needs n >= 2 and h > 0");
  return -std::log(h) / std::log(static_cast<double>(n));
}

cplx chebyshev_jost(const StepOperator& op, cplx z) {
  if (z == cplx{0.0}) throw DomainError("chebyshev_jost: z = 0");
  // W_k = z^k U_k(x): W_{k+1} = 2xz W_k - z^2 W_{k-1}, with 2xz = z^2 + 1 - ihz.
  const cplx two_xz = z * z + 1.0 - kI * op.h * z;
  const cplx z2 = z * z;
  cplx w_prev{1.0};     // W_0
  cplx w_cur = two_xz;  // W_1
  for (int k = 1; k < op.n; ++k) {
    const cplx w_next = two_xz * w_cur - z2 * w_prev;
    w_prev = w_cur;
    w_cur = w_next;
  }
  return w_cur - z2 * w_prev;
}

std::pair<cplx, cplx> p_n(const StepOperator& op, cplx zeta) {
  const int n = op.n;
  const cplx ih = kI * op.h;
  const cplx z2 = zeta * zeta;
  const cplx pow_2n_m2 = ipow(zeta, 2 * n - 2);
  const cplx pow_2n_m1 = pow_2n_m2 * zeta;
  const cplx pow_2n = pow_2n_m1 * zeta;
  const cplx pow_2n_p1 = pow_2n * zeta;
  const cplx pow_2n_p2 = pow_2n_p1 * zeta;
  const cplx q = z2 - 1.0;
  const cplx value = pow_2n_m1 * q * q - ih * (1.0 - pow_2n) * (1.0 - pow_2n_p2);
  const cplx derivative = static_cast<double>(2 * n - 1) * pow_2n_m2 * q * q +
                          4.0 * pow_2n * q -
                          ih * (-2.0 * n * pow_2n_m1 * (1.0 - pow_2n_p2) -
                                (2.0 * n + 2.0) * pow_2n_p1 * (1.0 - pow_2n));
  return {value, derivative};
}

double p_n_scale(const StepOperator& op, cplx zeta) {
  const cplx pow_2n_m1 = ipow(zeta, 2 * op.n - 1);
  const cplx pow_2n = pow_2n_m1 * zeta;
  const cplx pow_2n_p2 = pow_2n * zeta * zeta;
  const double first = std::abs(pow_2n_m1) * std::norm(zeta * zeta - 1.0);
  const double second = op.h * std::abs(1.0 - pow_2n) * std::abs(1.0 - pow_2n_p2);
  return std::max(first + second, 1e-300);
}

cplx z_from_zeta(const StepOperator& op, cplx zeta) {
  const cplx pow_2n_p1 = ipow(zeta, 2 * op.n + 1);
  return (pow_2n_p1 * zeta - 1.0) / (pow_2n_p1 - zeta);
}

std::vector<StepSeed> seed_roots(const StepOperator& op, double a) {
  if (!(a > 0.0 && a < 0.25)) throw DomainError("seed_roots: a must lie in (0, 1/4)");
  if (!(op.h > 0.0)) throw DomainError("seed_roots: h must be positive");
  const double m = 2.0 * op.n + 1.0;
  const int k_lo = static_cast<int>(std::ceil(a * m / 4.0 + 1.0));
  const int k_hi = static_cast<int>(std::floor((0.5 - a) * m / 4.0 - 1.0));
  if (k_lo > k_hi) throw DomainError("seed_roots: empty index window (n too small for a)");
  const double gamma = std::pow(op.h / 2.0, 1.0 / m);
  std::vector<StepSeed> seeds;
  for (int k = k_lo; k <= k_hi; ++k) {
    seeds.push_back({k, std::polar(gamma, kPi * (4.0 * k - 1.0) / (2.0 * m))});
  }
  return seeds;
}

std::vector<StepSeed> full_seed_set(const StepOperator& op) {
  if (!(op.h > 0.0)) throw DomainError("full_seed_set: h must be positive");
  const double m = 2.0 * op.n + 1.0;
  const double gamma = std::pow(op.h / 2.0, 1.0 / m);
  std::vector<StepSeed> seeds;
  for (int k = 1; k <= 2 * op.n + 1; ++k) {
    seeds.push_back({k, std::polar(gamma, kPi * (4.0 * k - 1.0) / (2.0 * m))});
  }
  return seeds;
}

double default_window_parameter(const StepOperator& op) {
  return std::min(std::pow(static_cast<double>(op.n), -op.effective_alpha() / 4.0),
                  kWindowParameterCap);
}

StepRoot make_step_root(const StepOperator& op, cplx zeta, int k) {
  StepRoot r;
  r.zeta = zeta;
  r.k = k;
  const cplx ih = kI * op.h;
  r.z = z_from_zeta(op, zeta);
  r.lambda = ih + zeta + 1.0 / zeta;
  r.admissible = std::abs(zeta) < 1.0 && std::abs(r.z) < 1.0 - 1e-12;
  const double scale = p_n_scale(op, zeta);
  r.p_residual = std::abs(p_n(op, zeta).first) / scale;
  if (r.z != cplx{0.0}) {
    r.lambda_residual =
        std::abs(r.z + 1.0 / r.z - ih - zeta - 1.0 / zeta) / std::max(1.0, std::abs(r.lambda));
  }
  const cplx pow_2n_p1 = ipow(zeta, 2 * op.n + 1);
  r.z_residual = std::abs(r.z * (pow_2n_p1 - zeta) - (pow_2n_p1 * zeta - 1.0)) /
                      std::max(1.0, std::abs(pow_2n_p1 * zeta) + 1.0);
  return r;
}

StepRootSet newton_step_roots(const StepOperator& op, std::span<const StepSeed> seeds, double tol,
                              unsigned threads) {
  std::vector<NewtonOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), threads,
               [&](std::size_t i) { outcomes[i] = damped_newton(op, seeds[i].w, tol); });
  StepRootSet out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!outcomes[i].converged) {
      out.warnings.push_back("Newton did not converge from seed k = " + std::to_string(seeds[i].k));
      continue;
    }
    out.roots.push_back(make_step_root(op, outcomes[i].zeta, seeds[i].k));
  }
  merge_duplicates(out.roots, out.warnings);
  return out;
}

StepRootSet complete_step_roots(const StepOperator& op, double tol, unsigned threads) {
  if (!(op.h > 0.0)) return {};
  const std::vector<StepSeed> seeds = full_seed_set(op);
  std::vector<NewtonOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), threads,
               [&](std::size_t i) { outcomes[i] = fold_inside(op, damped_newton(op, seeds[i].w, tol), tol); });

  StepRootSet out;
  std::vector<std::size_t> retry;
  auto is_new = [&](cplx zeta) {
    return std::none_of(out.roots.begin(), out.roots.end(),
                        [&](const StepRoot& q) { return std::abs(q.zeta - zeta) < kMergeDistance; });
  };
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const NewtonOutcome& o = outcomes[i];
    if (o.converged && std::abs(o.zeta) < 1.0 - 1e-12 && is_new(o.zeta)) {
      out.roots.push_back(make_step_root(op, o.zeta, seeds[i].k));
    } else {
      retry.push_back(i);
    }
  }

  // P_n has a double root at each of +-1 and its other roots pair as
  // (zeta, 1/zeta), so 2n - 1 lie strictly inside the disk.
  const std::size_t target = static_cast<std::size_t>(2 * op.n - 1);
  for (int pass = 0; pass < 4 && out.roots.size() < target && !retry.empty(); ++pass) {
    std::vector<std::size_t> still;
    for (const std::size_t i : retry) {
      if (out.roots.size() >= target) break;
      // Near +-1 the roots satisfy rho^{2n+1} ~ h / (4 sin^2 theta) rather
      // than h / 2; restart from that radius, rotated per pass.
      const double m = 2.0 * op.n + 1.0;
      const double theta = std::arg(seeds[i].w) + 0.3 * pass / m;
      const double s2 = std::max(4.0 * std::sin(theta) * std::sin(theta), 1e-300);
      const double rho = std::min(std::pow(op.h / s2, 1.0 / m), 1.0 - 0.5 / m);
      const cplx start = std::polar(rho, theta);
      const NewtonOutcome o = fold_inside(op, deflated_newton(op, start, out.roots, tol), tol);
      if (o.converged && std::abs(o.zeta) < 1.0 - 1e-12 && is_new(o.zeta)) {
        out.roots.push_back(make_step_root(op, o.zeta, seeds[i].k));
      } else {
        still.push_back(i);
      }
    }
    retry = std::move(still);
  }
  if (out.roots.size() < target) {
    out.warnings.push_back("found " + std::to_string(out.roots.size()) + " of " +
                           std::to_string(target) + " roots inside the unit disk");
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const StepRoot& a, const StepRoot& b) {
    return std::pair(std::arg(a.zeta), std::abs(a.zeta)) < std::pair(std::arg(b.zeta), std::abs(b.zeta));
  });
  return out;
}

StepRootSet all_step_roots(const StepOperator& op, double tol) {
  StepRootSet out;
  const int degree = 4 * op.n + 2;
  const AberthResult aberth = aberth_roots([&op](cplx x) { return p_n(op, x); }, degree, 1.0);
  if (!aberth.converged) out.warnings.push_back("Aberth iteration hit its iteration cap");
  for (const cplx root : aberth.roots) {
    if (std::abs(root) >= 1.0) continue;
    // Polish; the double roots at +-1 are excluded by the modulus test.
    const NewtonOutcome polished = damped_newton(op, root, tol);
    const cplx zeta = polished.converged ? polished.zeta : root;
    if (std::abs(zeta) >= 1.0 - 1e-12) continue;
    out.roots.push_back(make_step_root(op, zeta, -1));
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const StepRoot& a, const StepRoot& b) {
    return std::pair(std::arg(a.zeta), std::abs(a.zeta)) < std::pair(std::arg(b.zeta), std::abs(b.zeta));
  });
  merge_duplicates(out.roots, out.warnings);
  return out;
}

std::vector<StepRoot> admissible_roots(std::span<const StepRoot> roots) {
  std::vector<StepRoot> out;
  for (const StepRoot& r : roots) {
    if (!r.admissible) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const StepRoot& q) {
      return std::abs(q.lambda - r.lambda) < kMergeDistance;
    });
    if (!seen) out.push_back(r);
  }
  return out;
}

bool Segment::contains(cplx w) const {
  const double r = std::abs(w);
  const double phi = std::arg(w);
  return r > r1 && r < r2 && phi > arg_lo && phi < arg_hi;
}

Segment segment(const StepOperator& op, double a) {
  const double alpha = op.effective_alpha();
  const double c1 = 0.5 * (alpha + 1.0);
  // Near the window edge rho^{2n+1} ~ h / (4 sin^2 theta), well above h at desk n.
  const double c2 = 0.25 * alpha;
  const double t = std::log(static_cast<double>(op.n)) / (2.0 * op.n + 1.0);
  return Segment{1.0 - c1 * t, 1.0 - c2 * t, a * kPi / 2.0, (0.5 - a) * kPi / 2.0};
}

AsymptoticsReport asymptotics_report(const StepOperator& op, std::span<const StepRoot> roots) {
  AsymptoticsReport rep;
  const double alpha = op.effective_alpha();
  const double n = op.n;
  const double m = 2.0 * n + 1.0;
  const double log_n = std::log(n);
  const double rho_leading = 1.0 - alpha * log_n / m;
  const double h = std::pow(n, -alpha);
  for (const StepRoot& r : roots) {
    if (r.k < 0) continue;
    AsymptoticsRow row;
    row.k = r.k;
    const double theta = std::arg(r.zeta);
    const double rho = std::abs(r.zeta);
    row.theta_deviation = theta - kPi * (4.0 * r.k + 1.0) / (2.0 * m);
    row.rho_deviation = rho - rho_leading;
    row.rho_scaled = std::abs(row.rho_deviation) * m / log_n;
    row.im_lambda_ratio = r.lambda.imag() / h - 1.0;
    row.sine_deviation = std::sin(m * theta) + 1.0;
    rep.max_theta_deviation = std::max(rep.max_theta_deviation, std::abs(row.theta_deviation));
    rep.max_rho_scaled = std::max(rep.max_rho_scaled, row.rho_scaled);
    rep.max_im_lambda_ratio = std::max(rep.max_im_lambda_ratio, std::abs(row.im_lambda_ratio));
    rep.max_sine_deviation = std::max(rep.max_sine_deviation, std::abs(row.sine_deviation));
    rep.rows.push_back(row);
  }
  return rep;
}

double sharpness_sum(const StepOperator& op, std::span<const StepRoot> roots) {
  double sum = 0.0;
  for (const StepRoot& r : admissible_roots(roots)) {
    sum += dist_to_band(r.lambda) / std::sqrt(cassini_modulus(r.lambda));
  }
  return op.trace_norm() > 0.0 ? sum / op.trace_norm() : 0.0;
}

LogFit fit_against_log(std::span<const int> n, std::span<const double> values) {
  if (n.size() != values.size() || n.size() < 2) {
    throw DomainError("fit_against_log: need at least two (n, value) pairs");
  }
  const double count = static_cast<double>(n.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    mx += std::log(static_cast<double>(n[i]));
    my += values[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(static_cast<double>(n[i])) - mx;
    const double dy = values[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DomainError("fit_against_log: n values must not all coincide");
  LogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::vector<cplx> step_eigenvector(const StepOperator& op, const StepRoot& root, int length) {
  std::vector<cplx> g(static_cast<std::size_t>(length + 1), cplx{0.0});  // g[0] = 0
  const int n = op.n;
  for (int j = 1; j <= std::min(n, length); ++j) {
    g[static_cast<std::size_t>(j)] = ipow(root.zeta, j) - ipow(1.0 / root.zeta, j);
  }
  for (int j = n + 1; j <= length; ++j) {
    g[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j - 1)] * root.z;
  }
  g.erase(g.begin());
  return g;
}

double step_eigenvector_residual(const StepOperator& op, const StepRoot& root, int length) {
  const std::vector<cplx> g = step_eigenvector(op, root, length);
  double scale = 0.0;
  for (const cplx v : g) scale = std::max(scale, std::abs(v));
  const cplx lambda = lambda_of_z(root.z);
  const cplx ih = kI * op.h;
  auto at = [&](int j) { return j >= 1 && j <= length ? g[static_cast<std::size_t>(j - 1)] : cplx{0.0}; };
  double worst = 0.0;
  for (int j = 1; j < length; ++j) {
    const cplx diag = j <= op.n ? ih : cplx{0.0};
    worst = std::max(worst, std::abs(at(j - 1) + diag * at(j) + at(j + 1) - lambda * at(j)));
  }
  return worst / scale;
}

}  // namespace jostlt
