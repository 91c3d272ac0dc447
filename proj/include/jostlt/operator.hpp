#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace jostlt {

using cplx = std::complex<double>;

/// Raised for arguments outside an operation's domain (z = 0, a pole, an
/// empty index window, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One row of a Jacobi matrix: sub-diagonal a_j, diagonal b_j,
/// super-diagonal c_j. The default is the free row (1, 0, 1).
struct JacobiEntry {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
  cplx c{1.0, 0.0};

  bool is_free() const { return a == cplx{1.0} && b == cplx{0.0} && c == cplx{1.0}; }
  friend bool operator==(const JacobiEntry&, const JacobiEntry&) = default;
};

/// Finitely supported deviation of a half-line Jacobi matrix from the
/// discrete Laplacian J0. Indices are 1-based; rows past support_bound()
/// and the phantom row 0 are free (a_0 = c_0 = 1, b_0 = 0).
class JacobiCoefficients {
 public:
  JacobiCoefficients() = default;

  /// Builds from a sparse map; missing indices are free rows.
  /// Throws DomainError on j < 1 or a_j c_j = 0.
  static JacobiCoefficients from_map(const std::map<int, JacobiEntry>& entries);

  /// Rows 1..rows.size() taken from `rows` in order.
  static JacobiCoefficients from_rows(std::vector<JacobiEntry> rows);

  /// Diagonal-only (discrete Schroedinger) operator with b_j = potential[j-1].
  static JacobiCoefficients schroedinger(std::span<const cplx> potential);

  /// Step potential: b_j = i*h for j = 1..n.
  static JacobiCoefficients step(int n, cplx h);

  int support_bound() const { return static_cast<int>(rows_.size()); }
  bool is_free() const { return rows_.empty(); }

  const JacobiEntry& entry(int j) const;
  cplx a(int j) const { return entry(j).a; }
  cplx b(int j) const { return entry(j).b; }
  cplx c(int j) const { return entry(j).c; }
  /// a_j c_j, the only off-diagonal combination the recurrence sees.
  cplx ac(int j) const { return entry(j).a * entry(j).c; }

  /// True when every row has a_j = c_j = 1.
  bool is_schroedinger() const;

  std::map<int, JacobiEntry> to_map() const;

  friend bool operator==(const JacobiCoefficients&, const JacobiCoefficients&) = default;

 private:
  explicit JacobiCoefficients(std::vector<JacobiEntry> rows);
  void normalize();

  std::vector<JacobiEntry> rows_;  // rows_[j-1] is row j
};

/// delta_m = |b_m| + |1 - a_{m-1} c_{m-1}|, m = 1..L, where L is the last
/// index with delta_L != 0 (L is M or M + 1).
std::vector<double> delta_sequence(const JacobiCoefficients& op);

/// Size summaries of J - J0. Tails s0(k) = sum_{m>k} delta_m and
/// s1(k) = sum_{m>k} m delta_m are stored exactly.
class PerturbationSummary {
 public:
  std::vector<double> delta;  // delta[m-1] = delta_m
  double Delta = 0.0;         // sum_n (|b_n| + |1 - a_n c_n|)
  double Delta1 = 0.0;        // sum_m m delta_m
  double trace_norm = 0.0;    // sum_n (|1-a_n| + |b_n| + |1-c_n|)

  double s0(int k) const;
  double s1(int k) const;

 private:
  friend PerturbationSummary summarize(const JacobiCoefficients&, std::span<const double>);
  std::vector<double> s0_;  // s0_[k] for k = 0..delta.size()
  std::vector<double> s1_;
};

/// `tail_delta` optionally bounds delta_m for m = M+2, M+3, ... of an
/// operator whose infinite tail was truncated by the caller.
PerturbationSummary summarize(const JacobiCoefficients& op,
                              std::span<const double> tail_delta = {});

/// J(a_j r_j, b_j, c_j / r_j). Throws DomainError if some r_j = 0.
JacobiCoefficients gauge_transform(const JacobiCoefficients& op, std::span<const cplx> r);

/// Drops the first k rows and columns.
JacobiCoefficients stripped(const JacobiCoefficients& op, int k);

}  // namespace jostlt
