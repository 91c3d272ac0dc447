#include "jostlt/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <functional>
#include <numbers>
#include <sstream>

#include "jostlt/jost.hpp"
#include "jostlt/parallel.hpp"
#include "jostlt/zhukovsky.hpp"

namespace jostlt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMergeDistance = 1e-6;
constexpr double kNearZeroDistance = 1e-9;
constexpr int kMaxBisection = 48;
constexpr int kInitialPieces = 8;

// Split positions tried in turn when a child contour grazes a zero.
constexpr std::array<double, 8> kSplitFractions = {0.5,    0.5137, 0.4781, 0.5311,
                                                   0.4577, 0.5423, 0.4689, 0.5559};

std::string format_z(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// Accumulates the continuous argument of L along a parametrized path.
class ArgumentTracker {
 public:
  explicit ArgumentTracker(const JacobiCoefficients& op) : op_(op) {}

  cplx sample(cplx z) {
    const auto [f, df] = jost_function_with_derivative(op_, z);
    if (f == cplx{0.0} || std::abs(f) < kNearZeroDistance * std::abs(df)) near_zero_ = true;
    return f;
  }

  void piece(const std::function<cplx(double)>& path, double ta, double tb) {
    struct Span {
      double ta, tb;
      cplx fa, fb;
      int depth;
    };
    std::vector<Span> stack{{ta, tb, sample(path(ta)), sample(path(tb)), 0}};
    while (!stack.empty()) {
      Span s = stack.back();
      stack.pop_back();
      if (s.fa == cplx{0.0} || s.fb == cplx{0.0}) {
        near_zero_ = true;
        continue;
      }
      const double step = std::arg(s.fb / s.fa);
      if (std::abs(step) < 0.5 * kPi || s.depth >= kMaxBisection) {
        if (s.depth >= kMaxBisection) resolved_ = false;
        total_ += step;
        continue;
      }
      const double tm = 0.5 * (s.ta + s.tb);
      const cplx fm = sample(path(tm));
      // Second half first so the first half is accumulated first.
      stack.push_back({tm, s.tb, fm, s.fb, s.depth + 1});
      stack.push_back({s.ta, tm, s.fa, fm, s.depth + 1});
    }
  }

  WindingResult result() const {
    WindingResult r;
    const double turns = total_ / (2.0 * kPi);
    r.winding = static_cast<int>(std::lround(turns));
    r.resolved = resolved_ && std::abs(turns - r.winding) < 0.25;
    r.near_zero = near_zero_;
    return r;
  }

 private:
  const JacobiCoefficients& op_;
  double total_ = 0.0;
  bool resolved_ = true;
  bool near_zero_ = false;
};

struct Cell {
  double x0, x1, y0, y1;
  int winding;

  double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
  cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double distance_from_origin() const {
    const double px = std::clamp(0.0, x0, x1);
    const double py = std::clamp(0.0, y0, y1);
    return std::hypot(px, py);
  }
  bool contains(cplx z, double margin) const {
    return z.real() >= x0 - margin && z.real() <= x1 + margin && z.imag() >= y0 - margin &&
           z.imag() <= y1 + margin;
  }
};

WindingResult cell_winding(const JacobiCoefficients& op, const Cell& c) {
  return rectangle_winding(op, c.x0, c.x1, c.y0, c.y1);
}

struct SplitOutcome {
  std::vector<Cell> children;  // only those with nonzero winding
  std::vector<std::string> warnings;
  int examined = 0;
};

SplitOutcome split_cell(const JacobiCoefficients& op, const Cell& parent) {
  SplitOutcome out;
  std::array<Cell, 4> best{};
  for (std::size_t attempt = 0; attempt < kSplitFractions.size(); ++attempt) {
    const double fx = kSplitFractions[attempt];
    const double fy = kSplitFractions[(3 * attempt) % kSplitFractions.size()];
    const double xm = parent.x0 + fx * (parent.x1 - parent.x0);
    const double ym = parent.y0 + fy * (parent.y1 - parent.y0);
    std::array<Cell, 4> kids = {Cell{parent.x0, xm, parent.y0, ym, 0},
                                Cell{xm, parent.x1, parent.y0, ym, 0},
                                Cell{parent.x0, xm, ym, parent.y1, 0},
                                Cell{xm, parent.x1, ym, parent.y1, 0}};
    bool clean = true;
    int sum = 0;
    for (Cell& k : kids) {
      const WindingResult w = cell_winding(op, k);
      ++out.examined;
      k.winding = w.winding;
      sum += w.winding;
      clean = clean && w.resolved && !w.near_zero;
    }
    best = kids;
    if (clean && sum == parent.winding) break;
    if (attempt + 1 == kSplitFractions.size()) {
      out.warnings.push_back("winding unresolved while splitting cell at " +
                             format_z(parent.center()));
    }
  }
  for (const Cell& k : best) {
    if (k.winding > 0) out.children.push_back(k);
  }
  return out;
}

struct Refined {
  cplx z;
  int multiplicity;
  double residual;
  std::vector<std::string> warnings;
  int examined = 0;
  int cell_winding = 0;
};

// Newton (or multiplicity-weighted Newton) from the cell center. Returns
// false if the iterate leaves the cell neighbourhood.
bool newton_in_cell(const JacobiCoefficients& op, const Cell& cell, int weight, double tol,
                    cplx& z, double& last_step) {
  z = cell.center();
  last_step = cell.diameter();
  // Once below tol, a few more steps reach working precision; the iterate
  // with the smallest |L| is kept.
  int polish = 0;
  cplx best = z;
  double best_f = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const auto [f, df] = jost_function_with_derivative(op, z);
    const double af = std::abs(f);
    if (af < best_f) {
      best_f = af;
      best = z;
    }
    if (af <= tol && it > 0 && ++polish > 3) break;
    if (af == 0.0) break;
    if (df == cplx{0.0}) return false;
    const cplx step = static_cast<double>(weight) * f / df;
    z -= step;
    last_step = std::abs(step);
    if (!cell.contains(z, cell.diameter())) return false;
    if (last_step <= 1e-15 * std::max(std::abs(z), 1.0)) break;
  }
  const double final_f = std::abs(jost_function(op, z));
  if (best_f < final_f) z = best;
  return cell.contains(z, cell.diameter());
}

Refined refine_cell(const JacobiCoefficients& op, Cell cell, double tol) {
  Refined out{};
  cplx z;
  double last_step = 0.0;
  // A simple zero whose Newton iterate escapes: keep halving the cell.
  while (!newton_in_cell(op, cell, cell.winding, tol, z, last_step)) {
    if (cell.winding > 1 || cell.diameter() < 1e-13) {
      z = cell.center();
      last_step = cell.diameter();
      out.warnings.push_back("Newton failed to converge near " + format_z(z));
      break;
    }
    SplitOutcome s = split_cell(op, cell);
    out.examined += s.examined;
    if (s.children.empty()) {
      z = cell.center();
      out.warnings.push_back("zero lost while localizing near " + format_z(z));
      break;
    }
    cell = s.children.front();
  }

  out.z = z;
  out.cell_winding = cell.winding;
  out.residual = std::abs(jost_function(op, z));
  const double radius = std::clamp(10.0 * last_step, 1e-8, std::max(cell.diameter(), 1e-8));
  const WindingResult w = circle_winding(op, z, radius);
  ++out.examined;
  if (w.resolved && !w.near_zero && w.winding >= 1) {
    out.multiplicity = w.winding;
    if (w.winding != cell.winding) {
      out.warnings.push_back("multiplicity circle disagrees with cell winding near " + format_z(z));
    }
  } else {
    out.multiplicity = cell.winding;
  }
  if (out.residual > tol) {
    std::ostringstream os;
    os << "residual " << out.residual << " above tolerance at " << format_z(z);
    out.warnings.push_back(os.str());
  }
  return out;
}

}  // namespace

DiscreteEigenvalue make_eigenvalue(const JacobiCoefficients& op, cplx z, int multiplicity) {
  DiscreteEigenvalue e;
  e.z = z;
  e.lambda = lambda_of_z(z);
  e.multiplicity = multiplicity;
  e.dist_band = dist_to_band(e.lambda);
  e.cassini = cassini_modulus(e.lambda);
  e.residual = std::abs(jost_function(op, z));
  return e;
}

WindingResult rectangle_winding(const JacobiCoefficients& op, double x0, double x1, double y0,
                                double y1) {
  ArgumentTracker tracker(op);
  const std::array<cplx, 5> corners = {cplx{x0, y0}, cplx{x1, y0}, cplx{x1, y1}, cplx{x0, y1},
                                       cplx{x0, y0}};
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[static_cast<std::size_t>(e)];
    const cplx b = corners[static_cast<std::size_t>(e + 1)];
    const auto path = [a, b](double t) { return a + t * (b - a); };
    for (int p = 0; p < kInitialPieces; ++p) {
      tracker.piece(path, static_cast<double>(p) / kInitialPieces,
                    static_cast<double>(p + 1) / kInitialPieces);
    }
  }
  return tracker.result();
}

WindingResult circle_winding(const JacobiCoefficients& op, cplx center, double radius) {
  ArgumentTracker tracker(op);
  const auto path = [center, radius](double t) { return center + std::polar(radius, 2.0 * kPi * t); };
  constexpr int pieces = 2 * kInitialPieces;
  for (int p = 0; p < pieces; ++p) {
    tracker.piece(path, static_cast<double>(p) / pieces, static_cast<double>(p + 1) / pieces);
  }
  return tracker.result();
}

ZeroSearchReport find_determinant_zeros(const JacobiCoefficients& op,
                                        const ZeroSearchOptions& options) {
  if (!(options.r_max > 0.0 && options.r_max < 1.0)) {
    throw DomainError("find_determinant_zeros: r_max must lie in (0, 1)");
  }
  if (!(options.tol > 0.0)) throw DomainError("find_determinant_zeros: tol must be positive");

  ZeroSearchReport report;
  report.search_radius = options.r_max;
  if (op.is_free()) return report;

  // Root square covering the disk; grown slightly if its boundary grazes a zero.
  Cell root{};
  for (int attempt = 0;; ++attempt) {
    const double R = options.r_max * (1.0 + 1e-3 * attempt) + 1.7e-4;
    root = Cell{-R, R, -R, R, 0};
    const WindingResult w = cell_winding(op, root);
    ++report.cells_examined;
    root.winding = w.winding;
    if ((w.resolved && !w.near_zero) || attempt == 7) {
      if (!w.resolved || w.near_zero) report.warnings.push_back("root contour unresolved");
      break;
    }
  }

  std::vector<Cell> level;
  if (root.winding > 0) level.push_back(root);
  std::vector<Cell> leaves;
  while (!level.empty()) {
    std::vector<Cell> to_split;
    for (const Cell& c : level) {
      if (c.distance_from_origin() > options.r_max) continue;
      const bool small = c.diameter() < options.min_cell;
      if (small && (c.winding == 1 || c.diameter() < options.cluster_cell)) {
        leaves.push_back(c);
      } else {
        to_split.push_back(c);
      }
    }
    std::vector<SplitOutcome> outcomes(to_split.size());
    parallel_for(to_split.size(), options.threads,
                 [&](std::size_t i) { outcomes[i] = split_cell(op, to_split[i]); });
    level.clear();
    for (SplitOutcome& s : outcomes) {
      report.cells_examined += s.examined;
      report.warnings.insert(report.warnings.end(), s.warnings.begin(), s.warnings.end());
      level.insert(level.end(), s.children.begin(), s.children.end());
    }
  }

  std::vector<Refined> refined(leaves.size());
  parallel_for(leaves.size(), options.threads,
               [&](std::size_t i) { refined[i] = refine_cell(op, leaves[i], options.tol); });

  std::vector<const Refined*> kept;
  for (const Refined& r : refined) {
    report.cells_examined += r.examined;
    const double modulus = std::abs(r.z);
    if (modulus > options.r_max) {
      if (modulus < 1.0) {
        report.warnings.push_back("zero at |z| = " + std::to_string(modulus) +
                                  " lies beyond the search radius");
      }
      continue;
    }
    kept.push_back(&r);
  }

  // A split line through a multiple zero leaves one copy in each
  // neighbouring cell; such copies are merged and recounted on a circle.
  std::vector<bool> used(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (used[i]) continue;
    std::vector<const Refined*> group{kept[i]};
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (!used[j] && std::abs(kept[j]->z - kept[i]->z) < kMergeDistance) {
        used[j] = true;
        group.push_back(kept[j]);
      }
    }
    const Refined* best = group.front();
    for (const Refined* g : group) {
      if (g->residual < best->residual) best = g;
    }
    int multiplicity = best->multiplicity;
    if (group.size() == 1) {
      report.warnings.insert(report.warnings.end(), best->warnings.begin(), best->warnings.end());
    } else {
      int cells = 0;
      for (const Refined* g : group) cells += g->cell_winding;
      const WindingResult w = circle_winding(op, best->z, 10.0 * kMergeDistance);
      ++report.cells_examined;
      multiplicity = (w.resolved && !w.near_zero && w.winding >= 1) ? w.winding : cells;
      if (multiplicity != cells) {
        report.warnings.push_back("merged zero count disagrees with cell windings near " +
                                  format_z(best->z));
      }
    }
    DiscreteEigenvalue e = make_eigenvalue(op, best->z, multiplicity);
    report.zeros.push_back(e);
    report.total_winding += multiplicity;
  }
  std::sort(report.zeros.begin(), report.zeros.end(), [](const auto& a, const auto& b) {
    return std::pair(a.z.real(), a.z.imag()) < std::pair(b.z.real(), b.z.imag());
  });
  return report;
}

ZeroSearchReport find_determinant_zeros(const JacobiCoefficients& op, double r_max, double tol) {
  ZeroSearchOptions options;
  options.r_max = r_max;
  options.tol = tol;
  return find_determinant_zeros(op, options);
}

std::vector<DiscreteEigenvalue> discrete_spectrum(const JacobiCoefficients& op,
                                                  const ZeroSearchOptions& options) {
  std::vector<DiscreteEigenvalue> out = find_determinant_zeros(op, options).zeros;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.lambda.real(), a.lambda.imag()) < std::pair(b.lambda.real(), b.lambda.imag());
  });
  return out;
}

double lieb_thirring_sum(std::span<const DiscreteEigenvalue> spectrum, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("lieb_thirring_sum: eps must lie in (0, 1)");
  double sum = 0.0;
  for (const auto& e : spectrum) {
    sum += e.multiplicity * dist_to_band(e.lambda) /
           std::pow(cassini_modulus(e.lambda), 0.5 * (1.0 - eps));
  }
  return sum;
}

double blaschke_sum(std::span<const DiscreteEigenvalue> spectrum, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("blaschke_sum: eps must lie in (0, 1)");
  double sum = 0.0;
  for (const auto& e : spectrum) {
    const double r = std::abs(e.z);
    sum += e.multiplicity * (1.0 - r) * std::pow(std::abs(e.z * e.z - 1.0), eps) / std::pow(r, eps);
  }
  return sum;
}

bool cassini_enclosure_test(std::span<const DiscreteEigenvalue> spectrum, double Delta) {
  if (Delta < 0.0) throw DomainError("cassini_enclosure_test: Delta must be nonnegative");
  const double radius = 2.0 * Delta / std::numbers::ln2;
  return std::all_of(spectrum.begin(), spectrum.end(), [&](const auto& e) {
    return cassini_modulus(e.lambda) <= radius * radius + 1e-9;
  });
}

bool empty_spectrum_certificate(const JacobiCoefficients& op) {
  return summarize(op).Delta1 < std::numbers::ln2;
}

bool birman_schwinger_ovals(std::span<const DiscreteEigenvalue> spectrum, double trace_norm,
                            bool schroedinger) {
  const double t2 = trace_norm * trace_norm;
  const double general = 36.0 * 36.0 * t2;
  const double jost = 4.0 / (std::numbers::ln2 * std::numbers::ln2) * t2;
  return std::all_of(spectrum.begin(), spectrum.end(), [&](const auto& e) {
    const double c = cassini_modulus(e.lambda);
    return c <= general + 1e-9 && (!schroedinger || c <= jost + 1e-9);
  });
}

}  // namespace jostlt
