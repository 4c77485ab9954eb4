#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>

#include "harmonics/expr.hpp"
#include "harmonics/io.hpp"
#include "harmonics/line.hpp"
#include "harmonics/measures.hpp"
#include "harmonics/metric.hpp"
#include "verify.hpp"

namespace {

using namespace harmonics;

using Cell = std::variant<double, std::string>;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// Output document: a "meta" object plus uniform "rows", rendered as JSON or
/// CSV with 15 significant digits on every numeric field.
struct Doc {
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, Cell v) { meta.emplace_back(std::move(key), std::move(v)); }

  std::string render_json() const {
    std::ostringstream os;
    const auto cell = [&](const Cell& c) {
      if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
      return "\"" + std::get<std::string>(c) + "\"";
    };
    os << "{\"meta\": {";
    for (size_t i = 0; i < meta.size(); ++i)
      os << (i ? ", " : "") << "\"" << meta[i].first << "\": " << cell(meta[i].second);
    os << "}, \"rows\": [";
    for (size_t r = 0; r < rows.size(); ++r) {
      os << (r ? ", " : "") << "{";
      for (size_t c = 0; c < columns.size(); ++c)
        os << (c ? ", " : "") << "\"" << columns[c] << "\": " << cell(rows[r][c]);
      os << "}";
    }
    os << "]}\n";
    return os.str();
  }

  std::string render_csv() const {
    std::ostringstream os;
    const auto cell = [&](const Cell& c) {
      if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
      return std::get<std::string>(c);
    };
    for (size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell(row[c]);
      os << "\n";
    }
    return os.str();
  }
};

void write_out(const Doc& doc, const std::string& format, const std::string& path) {
  const std::string text = (format == "csv") ? doc.render_csv() : doc.render_json();
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

/// Builds a LineFunction from --fn "name:params" or --expr with an envelope.
LineFunction make_line_function(const std::string& fn, const std::string& expr,
                                double env_c, double env_l) {
  if (!fn.empty()) {
    const size_t colon = fn.find(':');
    const std::string name = fn.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) params = parse_list(fn.substr(colon + 1));
    if (name == "gaussian" && params.size() == 1) return gaussian_line(params[0]);
    if (name == "abel" && params.size() == 1) return abel_line(params[0]);
    if (name == "poisson" && params.size() == 1) return poisson_line(params[0]);
    if (name == "indicator" && params.size() == 2)
      return indicator_line(params[0], params[1]);
    if (name == "sign" && params.empty()) return sign_line();
    throw std::runtime_error(
        "unknown --fn; use gaussian:a, abel:eta, poisson:t, indicator:a,b or sign");
  }
  if (expr.empty()) throw std::runtime_error("need --fn or --expr");
  return to_line_function(parse(expr), Envelope{env_c, env_l});
}

struct CommonFlags {
  std::string format = "json";
  std::string out;
  double tol = 1e-8;
  double cutoff = 16.0;
  int grid = 64;
  std::uint64_t seed = 0;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "output format (json|csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", flags.out, "output path (default stdout)");
  cmd->add_option("--tol", flags.tol, "absolute quadrature tolerance");
  cmd->add_option("--cutoff", flags.cutoff, "nominal quadrature core radius");
  cmd->add_option("--grid", flags.grid, "samples per axis for torus grids");
  cmd->add_option("--seed", flags.seed, "seed for randomized batteries");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale harmonic analysis toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  // fourier-series ---------------------------------------------------------
  auto* series_cmd = app.add_subcommand(
      "fourier-series", "coefficients and Parseval defect of torus samples");
  std::string series_in, series_poly;
  int series_degree = 8;
  double series_radius = 0.0;
  series_cmd->add_option("--in", series_in, "CircleGrid JSON file");
  series_cmd->add_option("--poly", series_poly, "TrigPoly JSON file (sampled on --grid)");
  series_cmd->add_option("--degree", series_degree, "coefficient box half-width");
  series_cmd->add_option("--radius", series_radius,
                         "also report the Abel-extension sup gap at this radius");
  attach_common(series_cmd, flags);

  // fourier-transform ------------------------------------------------------
  auto* ft_cmd = app.add_subcommand("fourier-transform",
                                    "table of fhat on a frequency grid");
  std::string ft_fn, ft_expr;
  double ft_env_c = 1.0, ft_env_l = 0.0, ft_lo = -10.0, ft_hi = 10.0;
  int ft_count = 101;
  ft_cmd->add_option("--fn", ft_fn, "built-in function, e.g. gaussian:1");
  ft_cmd->add_option("--expr", ft_expr, "expression in x");
  ft_cmd->add_option("--env-c", ft_env_c, "envelope constant C");
  ft_cmd->add_option("--env-l", ft_env_l, "envelope order l");
  ft_cmd->add_option("--xi-min", ft_lo, "start of the frequency grid");
  ft_cmd->add_option("--xi-max", ft_hi, "end of the frequency grid");
  ft_cmd->add_option("--xi-count", ft_count, "number of grid points");
  attach_common(ft_cmd, flags);

  // invert -----------------------------------------------------------------
  auto* inv_cmd = app.add_subcommand("invert", "Abel/summability inversion sweep");
  std::string inv_fn, inv_expr, inv_etas = "0.1,0.01,0.001";
  double inv_env_c = 1.0, inv_env_l = 0.0, inv_at = 0.0;
  inv_cmd->add_option("--fn", inv_fn, "built-in function");
  inv_cmd->add_option("--expr", inv_expr, "expression in x");
  inv_cmd->add_option("--env-c", inv_env_c, "envelope constant C");
  inv_cmd->add_option("--env-l", inv_env_l, "envelope order l");
  inv_cmd->add_option("--at", inv_at, "evaluation point x");
  inv_cmd->add_option("--eta", inv_etas, "comma-separated eta schedule");
  attach_common(inv_cmd, flags);

  // convolve ---------------------------------------------------------------
  auto* conv_cmd = app.add_subcommand("convolve",
                                      "convolution of functions or measures");
  std::string conv_domain = "line", conv_in, conv_in2, conv_measure, conv_measure2;
  std::string conv_fn, conv_fn2, conv_at = "0";
  conv_cmd->add_option("--domain", conv_domain, "torus or line")
      ->check(CLI::IsMember({"torus", "line"}));
  conv_cmd->add_option("--in", conv_in, "first CircleGrid JSON (torus)");
  conv_cmd->add_option("--in2", conv_in2, "second CircleGrid JSON (torus)");
  conv_cmd->add_option("--measure", conv_measure, "first measure JSON");
  conv_cmd->add_option("--measure2", conv_measure2, "second measure JSON");
  conv_cmd->add_option("--fn", conv_fn, "first line function");
  conv_cmd->add_option("--fn2", conv_fn2, "second line function");
  conv_cmd->add_option("--at", conv_at, "comma-separated evaluation points");
  attach_common(conv_cmd, flags);

  // mean -------------------------------------------------------------------
  auto* mean_cmd = app.add_subcommand("mean",
                                      "invariant mean and spectrum of a trig sum");
  std::string mean_in;
  double mean_L = 0.0, mean_eps = 0.5;
  mean_cmd->add_option("--in", mean_in, "TrigSum JSON file")->required();
  mean_cmd->add_option("--L", mean_L, "averaging half-length (0 = exact mode only)");
  mean_cmd->add_option("--eps", mean_eps, "spectrum threshold");
  attach_common(mean_cmd, flags);

  // kernels ----------------------------------------------------------------
  auto* ker_cmd = app.add_subcommand("kernels", "closed-form kernel tables");
  double ker_abel = 0.0, ker_poisson = 0.0, ker_gauss = 0.0;
  std::string ker_at = "0";
  ker_cmd->add_option("--abel", ker_abel, "Abel kernel parameter eta");
  ker_cmd->add_option("--poisson", ker_poisson, "Poisson kernel parameter t");
  ker_cmd->add_option("--gauss", ker_gauss, "Gaussian parameter a");
  ker_cmd->add_option("--at", ker_at, "comma-separated evaluation points");
  attach_common(ker_cmd, flags);

  // regularize -------------------------------------------------------------
  auto* reg_cmd = app.add_subcommand("regularize",
                                     "Lipschitz inf-convolution on a metric space");
  std::string reg_in, reg_values;
  double reg_j = 1.0;
  reg_cmd->add_option("--in", reg_in, "FiniteMetricSpace JSON file")->required();
  reg_cmd->add_option("--values", reg_values, "comma-separated sample values")
      ->required();
  reg_cmd->add_option("--j", reg_j, "regularization constant j");
  attach_common(reg_cmd, flags);

  // verify -----------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run the full invariant battery");
  attach_common(verify_cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    QuadSpec q = QuadSpec::with_tol(flags.tol);
    q.cutoff = flags.cutoff;

    if (series_cmd->parsed()) {
      CircleGrid grid = series_in.empty()
                            ? CircleGrid::sample(
                                  io::trigpoly_from_json(slurp(series_poly)), flags.grid)
                            : io::grid_from_json(slurp(series_in));
      Doc doc;
      doc.columns = {"index", "re", "im"};
      const TrigPoly p = partial_sum(grid, series_degree);
      for (const auto& [alpha, v] : p.coeffs()) {
        std::string idx;
        for (size_t j = 0; j < alpha.size(); ++j)
          idx += (j ? " " : "") + std::to_string(alpha[j]);
        doc.rows.push_back({Cell{idx}, Cell{v.real()}, Cell{v.imag()}});
      }
      doc.add_meta("subcommand", std::string("fourier-series"));
      doc.add_meta("degree", double(series_degree));
      doc.add_meta("parseval_defect", parseval_defect(grid, series_degree));
      if (series_radius > 0.0 && series_radius < 1.0 && grid.dim() == 1) {
        double sup = 0.0;
        const int m = grid.samples_per_axis();
        for (int k = 0; k < m; ++k) {
          const double t = 2.0 * std::numbers::pi * k / double(m);
          const cx h = abel_extend(grid, DiskPoint({std::polar(series_radius, t)}));
          sup = std::max(sup, std::abs(h - grid.values()[size_t(k)]));
        }
        doc.add_meta("abel_sup_gap", sup);
      }
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (ft_cmd->parsed()) {
      const LineFunction f = make_line_function(ft_fn, ft_expr, ft_env_c, ft_env_l);
      Doc doc;
      doc.columns = {"xi", "re", "im"};
      for (int i = 0; i < ft_count; ++i) {
        const double xi =
            ft_count == 1 ? ft_lo : ft_lo + (ft_hi - ft_lo) * i / double(ft_count - 1);
        const cx v = fourier_transform(f, xi, q);
        doc.rows.push_back({Cell{xi}, Cell{v.real()}, Cell{v.imag()}});
      }
      doc.add_meta("subcommand", std::string("fourier-transform"));
      doc.add_meta("tol", flags.tol);
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (inv_cmd->parsed()) {
      const LineFunction f = make_line_function(inv_fn, inv_expr, inv_env_c, inv_env_l);
      Doc doc;
      doc.columns = {"eta", "re", "im", "gap"};
      const cx fx = f(inv_at);
      for (double eta : parse_list(inv_etas)) {
        const cx v = abel_invert(f, inv_at, eta, q);
        doc.rows.push_back(
            {Cell{eta}, Cell{v.real()}, Cell{v.imag()}, Cell{std::abs(v - fx)}});
      }
      doc.add_meta("subcommand", std::string("invert"));
      doc.add_meta("at", inv_at);
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (conv_cmd->parsed()) {
      Doc doc;
      if (!conv_measure.empty()) {
        if (conv_domain == "torus") {
          const MeasureT a = io::measure_t_from_json(slurp(conv_measure));
          const MeasureT b = io::measure_t_from_json(slurp(conv_measure2));
          const std::string text = io::to_json(convolve_measures(a, b));
          if (flags.out.empty())
            std::cout << text << "\n";
          else
            std::ofstream(flags.out) << text << "\n";
        } else {
          const MeasureR a = io::measure_r_from_json(slurp(conv_measure));
          const MeasureR b = io::measure_r_from_json(slurp(conv_measure2));
          const std::string text = io::to_json(convolve_measures(a, b));
          if (flags.out.empty())
            std::cout << text << "\n";
          else
            std::ofstream(flags.out) << text << "\n";
        }
        return 0;
      }
      if (conv_domain == "torus") {
        const CircleGrid a = io::grid_from_json(slurp(conv_in));
        const CircleGrid b = io::grid_from_json(slurp(conv_in2));
        const std::string text = io::to_json(convolve_circle(a, b));
        if (flags.out.empty())
          std::cout << text << "\n";
        else
          std::ofstream(flags.out) << text << "\n";
        return 0;
      }
      const LineFunction f = make_line_function(conv_fn, "", 1.0, 0.0);
      const LineFunction g = make_line_function(conv_fn2, "", 1.0, 0.0);
      doc.columns = {"x", "re", "im"};
      for (double x : parse_list(conv_at)) {
        const cx v = convolve_line(f, g, x, q);
        doc.rows.push_back({Cell{x}, Cell{v.real()}, Cell{v.imag()}});
      }
      doc.add_meta("subcommand", std::string("convolve"));
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (mean_cmd->parsed()) {
      const TrigSum f = io::trigsum_from_json(slurp(mean_in));
      Doc doc;
      doc.columns = {"quantity", "re", "im"};
      const cx exact = invariant_mean(f);
      doc.rows.push_back({Cell{std::string("mean")}, Cell{exact.real()},
                          Cell{exact.imag()}});
      if (mean_L > 0.0) {
        const cx avg = invariant_mean_averaged(f, mean_L);
        doc.rows.push_back({Cell{std::string("mean_averaged")}, Cell{avg.real()},
                            Cell{avg.imag()}});
        doc.add_meta("error_bound", invariant_mean_error_bound(f, mean_L));
      }
      for (const auto& t : spectrum(f, mean_eps))
        doc.rows.push_back({Cell{"spectrum " + format_number(t.freq)},
                            Cell{t.amp.real()}, Cell{t.amp.imag()}});
      doc.add_meta("subcommand", std::string("mean"));
      doc.add_meta("eps", mean_eps);
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (ker_cmd->parsed()) {
      Doc doc;
      doc.columns = {"kernel", "param", "at", "value", "hat"};
      for (double x : parse_list(ker_at)) {
        if (ker_abel > 0.0)
          doc.rows.push_back({Cell{std::string("abel")}, Cell{ker_abel}, Cell{x},
                              Cell{abel_kernel(ker_abel, x)},
                              Cell{abel_kernel_hat(ker_abel, x)}});
        if (ker_poisson > 0.0)
          doc.rows.push_back({Cell{std::string("poisson")}, Cell{ker_poisson}, Cell{x},
                              Cell{poisson_kernel_line(ker_poisson, x)},
                              Cell{std::exp(-ker_poisson * std::fabs(x))}});
        if (ker_gauss > 0.0)
          doc.rows.push_back({Cell{std::string("gaussian")}, Cell{ker_gauss}, Cell{x},
                              Cell{std::exp(-ker_gauss * x * x)},
                              Cell{gaussian_hat(ker_gauss, x).real()}});
      }
      if (doc.rows.empty())
        throw std::runtime_error("pick a kernel: --abel eta, --poisson t or --gauss a");
      doc.add_meta("subcommand", std::string("kernels"));
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (reg_cmd->parsed()) {
      const FiniteMetricSpace m = io::metric_from_json(slurp(reg_in));
      const std::vector<double> values = parse_list(reg_values);
      const std::vector<double> smoothed = lipschitz_regularize(values, m, reg_j);
      Doc doc;
      doc.columns = {"point", "value", "regularized"};
      for (size_t i = 0; i < m.size(); ++i)
        doc.rows.push_back({Cell{m.labels()[i]}, Cell{values[i]}, Cell{smoothed[i]}});
      doc.add_meta("subcommand", std::string("regularize"));
      doc.add_meta("j", reg_j);
      write_out(doc, flags.format, flags.out);
      return 0;
    }

    if (verify_cmd->parsed()) {
      std::ostringstream report;
      const int failures = run_verify(flags.seed, report);
      if (flags.out.empty()) {
        std::cout << report.str();
      } else {
        std::ofstream f(flags.out);
        f << report.str();
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
