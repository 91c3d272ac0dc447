#include "support.hpp"

#include <cmath>
#include <map>

namespace testsupport {

std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611ULL);
  return engine;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

cplx random_in_annulus(double r_lo, double r_hi) {
  const double r = std::sqrt(uniform(r_lo * r_lo, r_hi * r_hi));
  return std::polar(r, uniform(-M_PI, M_PI));
}

namespace {
cplx small(double scale) { return std::polar(uniform(0.0, scale), uniform(-M_PI, M_PI)); }
}  // namespace

jostlt::JacobiCoefficients random_operator(int max_support, double scale) {
  const int M = uniform_int(1, max_support);
  std::map<int, jostlt::JacobiEntry> rows;
  for (int j = 1; j <= M; ++j) {
    rows[j] = jostlt::JacobiEntry{1.0 + small(scale), small(scale), 1.0 + small(scale)};
  }
  // Make sure the last row is nontrivial so the support bound is M.
  rows[M].b += cplx{scale / 2.0, 0.0};
  return jostlt::JacobiCoefficients::from_map(rows);
}

jostlt::JacobiCoefficients random_schroedinger(int max_support, double scale) {
  const int M = uniform_int(1, max_support);
  std::vector<cplx> v(static_cast<std::size_t>(M));
  for (auto& x : v) x = small(scale);
  v.back() += cplx{scale / 2.0, 0.0};
  return jostlt::JacobiCoefficients::schroedinger(v);
}

cplx determinant_ratio(const jostlt::JacobiCoefficients& op, cplx z) {
  const cplx lambda = z + 1.0 / z;
  const int M = op.support_bound();
  const double r = std::abs(z);
  const int N = M + 2 + static_cast<int>(std::ceil(std::log(1e-18) / (2.0 * std::log(r))));
  // Ratio q_k = D_k / F_k of the perturbed and free determinants, carried
  // together with p_k = D_{k-1} / F_k so nothing overflows.
  cplx d_prev{0.0}, d{1.0}, f_prev{0.0}, f{1.0};
  for (int k = 1; k <= N; ++k) {
    const cplx dn = (op.b(k) - lambda) * d - op.a(k - 1) * op.c(k - 1) * d_prev;
    const cplx fn = -lambda * f - f_prev;
    d_prev = d / fn;
    f_prev = f / fn;
    d = dn / fn;
    f = 1.0;
  }
  return d;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testsupport
