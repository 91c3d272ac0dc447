#include "jostlt/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jostlt {

namespace {
const JacobiEntry kFreeRow{};
}  // namespace

JacobiCoefficients::JacobiCoefficients(std::vector<JacobiEntry> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].a * rows_[i].c == cplx{0.0}) {
      throw DomainError("a_j c_j = 0 at j = " + std::to_string(i + 1));
    }
  }
  normalize();
}

void JacobiCoefficients::normalize() {
  while (!rows_.empty() && rows_.back().is_free()) rows_.pop_back();
}

JacobiCoefficients JacobiCoefficients::from_map(const std::map<int, JacobiEntry>& entries) {
  if (entries.empty()) return {};
  if (entries.begin()->first < 1) {
    throw DomainError("row index must be >= 1, got " + std::to_string(entries.begin()->first));
  }
  std::vector<JacobiEntry> rows(static_cast<std::size_t>(entries.rbegin()->first));
  for (const auto& [j, e] : entries) rows[static_cast<std::size_t>(j - 1)] = e;
  return JacobiCoefficients(std::move(rows));
}

JacobiCoefficients JacobiCoefficients::from_rows(std::vector<JacobiEntry> rows) {
  return JacobiCoefficients(std::move(rows));
}

JacobiCoefficients JacobiCoefficients::schroedinger(std::span<const cplx> potential) {
  std::vector<JacobiEntry> rows(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) rows[i].b = potential[i];
  return JacobiCoefficients(std::move(rows));
}

JacobiCoefficients JacobiCoefficients::step(int n, cplx h) {
  if (n < 0) throw DomainError("step length must be nonnegative");
  std::vector<cplx> potential(static_cast<std::size_t>(n), cplx{0.0, 1.0} * h);
  return schroedinger(potential);
}

const JacobiEntry& JacobiCoefficients::entry(int j) const {
  if (j < 1 || j > support_bound()) return kFreeRow;
  return rows_[static_cast<std::size_t>(j - 1)];
}

bool JacobiCoefficients::is_schroedinger() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const JacobiEntry& e) { return e.a == cplx{1.0} && e.c == cplx{1.0}; });
}

std::map<int, JacobiEntry> JacobiCoefficients::to_map() const {
  std::map<int, JacobiEntry> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i].is_free()) out.emplace(static_cast<int>(i + 1), rows_[i]);
  }
  return out;
}

std::vector<double> delta_sequence(const JacobiCoefficients& op) {
  const int M = op.support_bound();
  std::vector<double> delta(static_cast<std::size_t>(M + 1));
  for (int m = 1; m <= M + 1; ++m) {
    delta[static_cast<std::size_t>(m - 1)] = std::abs(op.b(m)) + std::abs(1.0 - op.ac(m - 1));
  }
  while (!delta.empty() && delta.back() == 0.0) delta.pop_back();
  return delta;
}

double PerturbationSummary::s0(int k) const {
  if (k < 0) k = 0;
  return static_cast<std::size_t>(k) < s0_.size() ? s0_[static_cast<std::size_t>(k)] : 0.0;
}

double PerturbationSummary::s1(int k) const {
  if (k < 0) k = 0;
  return static_cast<std::size_t>(k) < s1_.size() ? s1_[static_cast<std::size_t>(k)] : 0.0;
}

PerturbationSummary summarize(const JacobiCoefficients& op, std::span<const double> tail_delta) {
  PerturbationSummary s;
  s.delta = delta_sequence(op);
  if (!tail_delta.empty()) {
    s.delta.resize(static_cast<std::size_t>(op.support_bound()) + 1, 0.0);
    s.delta.insert(s.delta.end(), tail_delta.begin(), tail_delta.end());
  }
  while (!s.delta.empty() && s.delta.back() == 0.0) s.delta.pop_back();

  const std::size_t L = s.delta.size();
  s.s0_.assign(L + 1, 0.0);
  s.s1_.assign(L + 1, 0.0);
  // Accumulate from the far end so each tail is an exact suffix sum.
  for (std::size_t m = L; m >= 1; --m) {
    s.s0_[m - 1] = s.s0_[m] + s.delta[m - 1];
    s.s1_[m - 1] = s.s1_[m] + static_cast<double>(m) * s.delta[m - 1];
  }

  for (int n = 1; n <= op.support_bound(); ++n) {
    s.Delta += std::abs(op.b(n)) + std::abs(1.0 - op.ac(n));
    s.trace_norm += std::abs(1.0 - op.a(n)) + std::abs(op.b(n)) + std::abs(1.0 - op.c(n));
  }
  for (double t : tail_delta) s.Delta += t;
  s.Delta1 = s.s1_.front();
  return s;
}

JacobiCoefficients gauge_transform(const JacobiCoefficients& op, std::span<const cplx> r) {
  const int len = std::max(op.support_bound(), static_cast<int>(r.size()));
  std::vector<JacobiEntry> rows(static_cast<std::size_t>(len));
  for (int j = 1; j <= len; ++j) {
    JacobiEntry e = op.entry(j);
    if (static_cast<std::size_t>(j) <= r.size()) {
      const cplx rj = r[static_cast<std::size_t>(j - 1)];
      if (rj == cplx{0.0}) throw DomainError("gauge factor r_" + std::to_string(j) + " is zero");
      e.a *= rj;
      e.c /= rj;
    }
    rows[static_cast<std::size_t>(j - 1)] = e;
  }
  return JacobiCoefficients::from_rows(std::move(rows));
}

JacobiCoefficients stripped(const JacobiCoefficients& op, int k) {
  if (k < 0) throw DomainError("strip count must be nonnegative");
  std::vector<JacobiEntry> rows;
  for (int j = k + 1; j <= op.support_bound(); ++j) rows.push_back(op.entry(j));
  return JacobiCoefficients::from_rows(std::move(rows));
}

}  // namespace jostlt
