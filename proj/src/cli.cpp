#include "jostlt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "jostlt/jost.hpp"
#include "jostlt/operator_io.hpp"
#include "jostlt/oracle.hpp"
#include "jostlt/spectrum.hpp"
#include "jostlt/steppot.hpp"
#include "jostlt/zhukovsky.hpp"

namespace jostlt::cli {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  InputError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what) {}
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON with every float printed to 17 significant digits; non-finite
// values become null.
void emit(std::string& out, const json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(out, j[i], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? num(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string to_text(const json& j) {
  std::string s;
  emit(s, j, 0);
  return s + "\n";
}

json cj(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json opt_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_c(cplx v) { return num(v.real()) + "," + num(v.imag()); }

struct Result {
  std::string text;
  std::vector<std::string> warnings;
  std::string summary_text;  // steppot --summary
};

JacobiCoefficients load(const RunConfig& c) {
  if (c.op_path.empty()) throw InputError("--op", "an operator file is required");
  return load_operator(c.op_path);
}

void check_tol(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(field, "must be a positive number");
}

void check_eps(const std::vector<double>& eps) {
  if (eps.empty()) throw InputError("--eps", "at least one value is required");
  for (const double e : eps) {
    if (!(e > 0.0 && e < 1.0)) throw InputError("--eps", "values must lie in (0, 1)");
  }
}

ZeroSearchReport search(const JacobiCoefficients& op, const RunConfig& c) {
  if (!(c.rmax > 0.0 && c.rmax < 1.0)) throw InputError("--rmax", "must lie in (0, 1)");
  check_tol(c.search_tol, "--tol");
  ZeroSearchOptions opts;
  opts.r_max = c.rmax;
  opts.tol = c.search_tol;
  opts.threads = c.threads;
  ZeroSearchReport report = find_determinant_zeros(op, opts);
  std::sort(report.zeros.begin(), report.zeros.end(),
            [](const DiscreteEigenvalue& a, const DiscreteEigenvalue& b) {
              return std::pair(a.lambda.real(), a.lambda.imag()) <
                     std::pair(b.lambda.real(), b.lambda.imag());
            });
  return report;
}

Result cmd_jost(const RunConfig& c) {
  const JacobiCoefficients op = load(c);
  if (c.z == cplx{0.0}) throw InputError("--z", "z = 0 is not admissible");
  JostEvaluation u;
  if (c.method == "backward") {
    u = jost_backward(op, c.z);
  } else if (c.method == "volterra") {
    check_tol(c.tol, "--tol");
    if (std::abs(c.z) > 1.0 + 1e-12) throw InputError("--z", "volterra requires |z| <= 1");
    u = jost_volterra(op, c.z, c.tol);
  } else {
    throw InputError("--method", "expected backward or volterra");
  }
  const PerturbationSummary s = summarize(op);
  const double r = std::abs(c.z);
  const bool interior = r < 1.0 - 1e-12 && std::abs(c.z * c.z - 1.0) >= 1e-3;
  const bool closed_disk = r <= 1.0 + 1e-12;

  Result res;
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,u_re,u_im,bound\n";
  for (int k = 0; k < static_cast<int>(u.values.size()); ++k) {
    double bound = std::nan("");
    if (interior) {
      bound = jost_interior_bound(s, c.z, k);
    } else if (closed_disk) {
      bound = jost_boundary_bound(s, c.z, k);
    }
    const cplx uk = u.values[static_cast<std::size_t>(k)];
    if (std::isfinite(bound)) {
      const double dev = std::abs(uk - std::pow(c.z, k));
      const double slack = 1e-9 * std::pow(r, k) + u.error_bound * std::pow(r, k);
      if (dev > bound + slack) res.warnings.push_back("growth bound exceeded at k = " + std::to_string(k));
    }
    csv << k << "," << csv_c(uk) << "," << num(bound) << "\n";
    rows.push_back({{"k", k}, {"u", cj(uk)}, {"bound", opt_number(bound)}});
  }
  if (c.format.value_or(Format::csv) == Format::csv) {
    res.text = csv.str();
  } else {
    json doc{{"command", "jost"},
             {"method", c.method},
             {"z", cj(c.z)},
             {"lambda", cj(lambda_of_z(c.z))},
             {"tail_start", u.tail_start},
             {"error_bound", u.error_bound},
             {"rows", rows},
             {"warnings", res.warnings}};
    res.text = to_text(doc);
  }
  return res;
}

json zero_json(const DiscreteEigenvalue& e) {
  return json{{"z", cj(e.z)},         {"lambda", cj(e.lambda)}, {"mult", e.multiplicity},
              {"dist", e.dist_band},  {"cassini", e.cassini},   {"residual", e.residual}};
}

Result cmd_spectrum(const RunConfig& c) {
  check_eps(c.eps);
  const JacobiCoefficients op = load(c);
  const ZeroSearchReport report = search(op, c);
  const PerturbationSummary s = summarize(op);
  const double eps = c.eps.front();

  Result res;
  res.warnings = report.warnings;
  const bool cassini = cassini_enclosure_test(report.zeros, s.Delta);
  const bool bs_general = birman_schwinger_ovals(report.zeros, s.trace_norm, false);
  const bool schroedinger = op.is_schroedinger();
  const bool bs_schroedinger = schroedinger && birman_schwinger_ovals(report.zeros, s.trace_norm, true);
  const bool certificate = empty_spectrum_certificate(op);
  if (!cassini) res.warnings.push_back("Cassini enclosure violated");
  if (!bs_general || (schroedinger && !bs_schroedinger)) {
    res.warnings.push_back("Birman-Schwinger enclosure violated");
  }
  if (certificate && !report.zeros.empty()) {
    res.warnings.push_back("zeros found although Delta1 < log 2");
  }

  if (c.format.value_or(Format::json) == Format::csv) {
    std::ostringstream csv;
    csv << "z_re,z_im,lambda_re,lambda_im,mult,dist,cassini,residual\n";
    for (const auto& e : report.zeros) {
      csv << csv_c(e.z) << "," << csv_c(e.lambda) << "," << e.multiplicity << "," << num(e.dist_band)
          << "," << num(e.cassini) << "," << num(e.residual) << "\n";
    }
    res.text = csv.str();
    return res;
  }
  json zeros = json::array();
  for (const auto& e : report.zeros) zeros.push_back(zero_json(e));
  json doc{{"zeros", zeros},
           {"lt_sum", lieb_thirring_sum(report.zeros, eps)},
           {"eps", eps},
           {"enclosures",
            {{"cassini", cassini},
             {"bs_general", bs_general},
             {"bs_schroedinger", schroedinger ? json(bs_schroedinger) : json(nullptr)}}},
           {"Delta", s.Delta},
           {"Delta1", s.Delta1},
           {"trace_norm", s.trace_norm},
           {"empty_certificate", certificate},
           {"cells_examined", report.cells_examined},
           {"total_winding", report.total_winding},
           {"search_radius", report.search_radius},
           {"warnings", res.warnings}};
  res.text = to_text(doc);
  return res;
}

Result cmd_lt_sum(const RunConfig& c) {
  check_eps(c.eps);
  const JacobiCoefficients op = load(c);
  const ZeroSearchReport report = search(op, c);
  const PerturbationSummary s = summarize(op);
  Result res;
  res.warnings = report.warnings;
  auto ratio = [&](double v) { return s.Delta > 0.0 ? v / s.Delta : std::nan(""); };

  json rows = json::array();
  std::ostringstream csv;
  csv << "eps,lt_sum,lt_over_delta,blaschke_sum,blaschke_over_delta\n";
  for (const double eps : c.eps) {
    const double lt = lieb_thirring_sum(report.zeros, eps);
    const double bl = blaschke_sum(report.zeros, eps);
    csv << num(eps) << "," << num(lt) << "," << num(ratio(lt)) << "," << num(bl) << ","
        << num(ratio(bl)) << "\n";
    rows.push_back({{"eps", eps},
                    {"lt_sum", lt},
                    {"lt_over_delta", opt_number(ratio(lt))},
                    {"blaschke_sum", bl},
                    {"blaschke_over_delta", opt_number(ratio(bl))}});
  }
  if (c.format.value_or(Format::csv) == Format::csv) {
    res.text = csv.str();
  } else {
    int count = 0;
    for (const auto& e : report.zeros) count += e.multiplicity;
    res.text = to_text(json{{"Delta", s.Delta}, {"count", count}, {"rows", rows}, {"warnings", res.warnings}});
  }
  return res;
}

Result cmd_enclosure(const RunConfig& c) {
  const JacobiCoefficients op = load(c);
  const ZeroSearchReport report = search(op, c);
  const PerturbationSummary s = summarize(op);
  Result res;
  res.warnings = report.warnings;

  double max_cassini = 0.0;
  int count = 0;
  for (const auto& e : report.zeros) {
    max_cassini = std::max(max_cassini, e.cassini);
    count += e.multiplicity;
  }
  const double cassini_r = 2.0 * s.Delta / std::numbers::ln2;
  const double cassini_bound = cassini_r * cassini_r;
  const double bs_general_bound = 36.0 * 36.0 * s.trace_norm * s.trace_norm;
  const double bs_schr_bound = 4.0 / (std::numbers::ln2 * std::numbers::ln2) * s.trace_norm * s.trace_norm;
  const bool schroedinger = op.is_schroedinger();
  const bool cassini = cassini_enclosure_test(report.zeros, s.Delta);
  const bool bs_general = birman_schwinger_ovals(report.zeros, s.trace_norm, false);
  const bool bs_schr = schroedinger && birman_schwinger_ovals(report.zeros, s.trace_norm, true);
  const bool certificate = empty_spectrum_certificate(op);
  if (!cassini) res.warnings.push_back("Cassini enclosure violated");
  if (!bs_general || (schroedinger && !bs_schr)) res.warnings.push_back("Birman-Schwinger enclosure violated");
  if (certificate && count > 0) res.warnings.push_back("zeros found although Delta1 < log 2");

  if (c.format.value_or(Format::json) == Format::csv) {
    std::ostringstream csv;
    csv << "check,holds,bound,max_value\n";
    csv << "cassini," << cassini << "," << num(cassini_bound) << "," << num(max_cassini) << "\n";
    csv << "bs_general," << bs_general << "," << num(bs_general_bound) << "," << num(max_cassini) << "\n";
    if (schroedinger) {
      csv << "bs_schroedinger," << bs_schr << "," << num(bs_schr_bound) << "," << num(max_cassini) << "\n";
    }
    csv << "empty_certificate," << certificate << "," << num(std::numbers::ln2) << "," << num(s.Delta1) << "\n";
    res.text = csv.str();
    return res;
  }
  json doc{{"Delta", s.Delta},
           {"Delta1", s.Delta1},
           {"trace_norm", s.trace_norm},
           {"schroedinger", schroedinger},
           {"count", count},
           {"max_cassini_modulus", max_cassini},
           {"cassini", {{"holds", cassini}, {"bound", cassini_bound}}},
           {"bs_general", {{"holds", bs_general}, {"bound", bs_general_bound}}},
           {"bs_schroedinger",
            schroedinger ? json{{"holds", bs_schr}, {"bound", bs_schr_bound}} : json(nullptr)},
           {"empty_certificate", certificate},
           {"warnings", res.warnings}};
  res.text = to_text(doc);
  return res;
}

void check_step_params(int n, double alpha, const std::optional<double>& a) {
  if (n < 1) throw InputError("--n", "must be a positive integer");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("--alpha", "must lie in (0, 1)");
  if (a && !(*a > 0.0 && *a < 0.25)) throw InputError("--a", "must lie in (0, 1/4)");
}

std::vector<StepSeed> window_seeds(const StepOperator& op, double a) {
  try {
    return seed_roots(op, a);
  } catch (const DomainError&) {
    throw InputError("--n", "index window is empty for n = " + std::to_string(op.n) +
                                " and a = " + num(a) +
                                "; use a smaller --a or --all-roots");
  }
}

Result cmd_steppot(const RunConfig& c) {
  check_step_params(c.n, c.alpha, c.a);
  const StepOperator op = StepOperator::with_alpha(c.n, c.alpha);
  const double a = c.a.value_or(default_window_parameter(op));

  // The asymptotics are measured over the index window for a; in
  // --all-roots mode the window may be empty for small n.
  std::vector<StepSeed> window;
  StepRootSet set;
  std::size_t seed_count = 0;
  if (c.all_roots) {
    try {
      window = seed_roots(op, a);
    } catch (const DomainError&) {
    }
    set = complete_step_roots(op, 1e-12, c.threads);
    seed_count = static_cast<std::size_t>(2 * c.n + 1);
  } else {
    window = window_seeds(op, a);
    set = newton_step_roots(op, window, 1e-12, c.threads);
    seed_count = window.size();
  }
  std::vector<StepRoot> in_window;
  if (!window.empty()) {
    for (const StepRoot& r : set.roots) {
      if (r.k >= window.front().k && r.k <= window.back().k) in_window.push_back(r);
    }
  }
  const AsymptoticsReport rep = asymptotics_report(op, in_window);
  const std::size_t admissible = admissible_roots(set.roots).size();

  Result res;
  res.warnings = set.warnings;
  json summary{{"n", c.n},
               {"alpha", c.alpha},
               {"h", op.h},
               {"a", a},
               {"mode", c.all_roots ? "all" : "window"},
               {"counts", {{"seeds", seed_count}, {"roots", set.roots.size()}, {"admissible", admissible}}},
               {"sharpness_sum", sharpness_sum(op, set.roots)},
               {"asymptotics",
                {{"rows", rep.rows.size()},
                 {"max_theta_deviation", rep.max_theta_deviation},
                 {"max_rho_scaled", rep.max_rho_scaled},
                 {"max_im_lambda_ratio", rep.max_im_lambda_ratio},
                 {"max_sine_deviation", rep.max_sine_deviation}}},
               {"warnings", res.warnings}};

  if (c.format.value_or(Format::csv) == Format::csv) {
    std::ostringstream csv;
    csv << "k,zeta_re,zeta_im,z_re,z_im,lambda_re,lambda_im,admissible,p_residual,lambda_residual,"
           "z_residual\n";
    for (const StepRoot& r : set.roots) {
      csv << r.k << "," << csv_c(r.zeta) << "," << csv_c(r.z) << "," << csv_c(r.lambda) << ","
          << (r.admissible ? 1 : 0) << "," << num(r.p_residual) << "," << num(r.lambda_residual) << ","
          << num(r.z_residual) << "\n";
    }
    res.text = csv.str();
    res.summary_text = to_text(summary);
  } else {
    json roots = json::array();
    for (const StepRoot& r : set.roots) {
      roots.push_back({{"k", r.k},
                       {"zeta", cj(r.zeta)},
                       {"z", cj(r.z)},
                       {"lambda", cj(r.lambda)},
                       {"admissible", r.admissible},
                       {"p_residual", r.p_residual},
                       {"lambda_residual", r.lambda_residual},
                       {"z_residual", r.z_residual}});
    }
    res.text = to_text(json{{"summary", summary}, {"roots", roots}});
  }
  return res;
}

Result cmd_sharpness_sweep(const RunConfig& c) {
  if (c.n_list.empty()) throw InputError("--n-list", "at least one n is required");
  for (const int n : c.n_list) {
    if (n < 2) throw InputError("--n-list", "every n must be >= 2");
  }
  check_step_params(c.n_list.front(), c.alpha, c.a);

  Result res;
  std::vector<double> sums;
  json rows = json::array();
  std::ostringstream csv;
  csv << "n,sum,sum_over_log_n\n";
  for (const int n : c.n_list) {
    const StepOperator op = StepOperator::with_alpha(n, c.alpha);
    StepRootSet set = c.a ? newton_step_roots(op, window_seeds(op, *c.a), 1e-12, c.threads)
                          : complete_step_roots(op, 1e-12, c.threads);
    for (auto& w : set.warnings) res.warnings.push_back("n = " + std::to_string(n) + ": " + w);
    const double sum = sharpness_sum(op, set.roots);
    const double per_log = sum / std::log(static_cast<double>(n));
    sums.push_back(sum);
    csv << n << "," << num(sum) << "," << num(per_log) << "\n";
    rows.push_back({{"n", n},
                    {"sum", sum},
                    {"sum_over_log_n", per_log},
                    {"admissible", admissible_roots(set.roots).size()}});
  }
  if (c.format.value_or(Format::csv) == Format::csv) {
    res.text = csv.str();
    return res;
  }
  json fit = nullptr;
  const bool distinct = std::any_of(c.n_list.begin(), c.n_list.end(),
                                    [&](int n) { return n != c.n_list.front(); });
  if (distinct) {
    const LogFit f = fit_against_log(c.n_list, sums);
    fit = json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
  }
  res.text = to_text(json{{"alpha", c.alpha},
                          {"mode", c.a ? "window" : "all"},
                          {"a", c.a ? json(*c.a) : json(nullptr)},
                          {"rows", rows},
                          {"fit", fit},
                          {"warnings", res.warnings}});
  return res;
}

Result cmd_oracle(const RunConfig& c) {
  if (c.n_trunc < 1) throw InputError("--n-trunc", "must be a positive integer");
  const JacobiCoefficients op = load(c);
  ScanRegion region = default_scan_region(op);
  double step = 0.05;
  if (c.scan) {
    const ScanSpec& s = *c.scan;
    if (!(s.re_max > s.re_min && s.im_max > s.im_min)) throw InputError("--scan", "empty rectangle");
    if (!(s.step > 0.0)) throw InputError("--scan", "step must be positive");
    region = ScanRegion{s.re_min, s.re_max, s.im_min, s.im_max};
    step = s.step;
  }
  const std::vector<cplx> zeros = grid_zero_scan(op, c.n_trunc, region, step, c.threads);

  Result res;
  if (c.format.value_or(Format::csv) == Format::csv) {
    std::ostringstream csv;
    csv << "lambda_re,lambda_im,z_re,z_im\n";
    for (const cplx l : zeros) csv << csv_c(l) << "," << csv_c(z_of_lambda(l)) << "\n";
    res.text = csv.str();
  } else {
    json arr = json::array();
    for (const cplx l : zeros) arr.push_back({{"lambda", cj(l)}, {"z", cj(z_of_lambda(l))}});
    res.text = to_text(json{{"n_trunc", c.n_trunc},
                            {"region",
                             {{"re_min", region.re_min},
                              {"re_max", region.re_max},
                              {"im_min", region.im_min},
                              {"im_max", region.im_max}}},
                            {"step", step},
                            {"zeros", arr},
                            {"warnings", json::array()}});
  }
  return res;
}

void write_file(const std::string& path, const std::string& text, const char* field) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(field, "cannot write " + path);
  f << text;
}

std::vector<double> parse_numbers(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError(field, "cannot parse '" + item + "' as a number");
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw InputError(field, "cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.threads < 1) throw InputError("--threads", "must be >= 1");
    Result res;
    const std::string& cmd = config.command;
    if (cmd == "jost") {
      res = cmd_jost(config);
    } else if (cmd == "spectrum") {
      res = cmd_spectrum(config);
    } else if (cmd == "lt-sum") {
      res = cmd_lt_sum(config);
    } else if (cmd == "enclosure") {
      res = cmd_enclosure(config);
    } else if (cmd == "steppot") {
      res = cmd_steppot(config);
    } else if (cmd == "sharpness-sweep") {
      res = cmd_sharpness_sweep(config);
    } else if (cmd == "oracle") {
      res = cmd_oracle(config);
    } else {
      throw InputError("command", "unknown command '" + cmd + "'");
    }
    if (config.output_path.empty()) {
      out << res.text;
    } else {
      write_file(config.output_path, res.text, "--output");
    }
    if (!config.summary_path.empty() && !res.summary_text.empty()) {
      write_file(config.summary_path, res.summary_text, "--summary");
    }
    for (const auto& w : res.warnings) err << "warning: " << w << "\n";
    return config.strict && !res.warnings.empty() ? kWarnings : kOk;
  } catch (const OperatorFormatError& e) {
    err << "error: " << config.op_path << ": " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jost functions and discrete spectra of finitely supported Jacobi perturbations"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::string format;
  std::string z_text;
  std::string eps_text;
  std::vector<std::string> scan;
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", c.strict, "exit 3 when numeric warnings were raised");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", c.output_path, "write data here instead of stdout");

  auto* jost = app.add_subcommand("jost", "Jost solution u_k at one z");
  jost->add_option("--op", c.op_path, "operator file")->required();
  jost->add_option("--z", z_text, "RE,IM")->required();
  jost->add_option("--method", c.method, "backward or volterra")
      ->check(CLI::IsMember({"backward", "volterra"}));
  jost->add_option("--tol", c.tol, "Volterra truncation tolerance");

  auto add_search = [&](CLI::App* sub, bool with_eps) {
    sub->add_option("--op", c.op_path, "operator file")->required();
    sub->add_option("--rmax", c.rmax, "search radius in the z disk");
    sub->add_option("--tol", c.search_tol, "Newton residual tolerance");
    if (with_eps) sub->add_option("--eps", eps_text, "epsilon (lt-sum accepts a comma list)");
  };
  add_search(app.add_subcommand("spectrum", "discrete spectrum and enclosure checks"), true);
  add_search(app.add_subcommand("lt-sum", "Lieb-Thirring and Blaschke sums"), true);
  add_search(app.add_subcommand("enclosure", "Cassini, Birman-Schwinger and empty-spectrum checks"), false);

  auto* step = app.add_subcommand("steppot", "roots of the step-potential equation");
  step->add_option("--n", c.n, "number of sites carrying the potential")->required();
  step->add_option("--alpha", c.alpha, "h = n^-alpha");
  step->add_option("--a", c.a, "index window parameter in (0, 1/4)");
  step->add_flag("--all-roots", c.all_roots, "every root inside the unit disk");
  step->add_option("--summary", c.summary_path, "write the JSON summary here (csv mode)");

  auto* sweep = app.add_subcommand("sharpness-sweep", "normalized sums over a list of n");
  sweep->add_option("--alpha", c.alpha, "h = n^-alpha");
  sweep->add_option("--n-list", c.n_list, "comma-separated n values")->required()->delimiter(',');
  sweep->add_option("--a", c.a, "restrict to the index window for this a");

  auto* oracle = app.add_subcommand("oracle", "stable zeros of truncated determinants");
  oracle->add_option("--op", c.op_path, "operator file")->required();
  oracle->add_option("--n-trunc", c.n_trunc, "section size N")->required();
  oracle->add_option("--scan", scan, "RE0,RE1,IM0,IM1 STEP")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (!format.empty()) c.format = format == "json" ? Format::json : Format::csv;
    if (!z_text.empty()) {
      const auto v = parse_numbers(z_text, "--z");
      if (v.size() != 2) throw InputError("--z", "expected RE,IM");
      c.z = {v[0], v[1]};
    }
    if (!eps_text.empty()) {
      c.eps = parse_numbers(eps_text, "--eps");
      if (c.command == "spectrum" && c.eps.size() != 1) throw InputError("--eps", "expected one value");
    }
    if (!scan.empty()) {
      const auto rect = parse_numbers(scan[0], "--scan");
      const auto st = parse_numbers(scan[1], "--scan");
      if (rect.size() != 4 || st.size() != 1) throw InputError("--scan", "expected RE0,RE1,IM0,IM1 STEP");
      c.scan = ScanSpec{rect[0], rect[1], rect[2], rect[3], st[0]};
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return run(c, out, err);
}

}  // namespace jostlt::cli
