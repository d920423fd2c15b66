// rgg-spectra: command-line laboratory for random geometric graph spectra.
//
// Subcommands
//   spectrum         eigenvalues of one sampled W-operator
//   kernel-spectrum  Nystrom spectrum of the limiting kernel + tensor products
//   converge         step-kernel convergence metrics across n
//   gap-sweep        spectral gap gamma_2 = 1 - lambda_2 across radii
//
// Every command validates its configuration, writes CSV or JSON with a
// schema header and round-trip-exact floats, and exits 0 only if the
// command's built-in assertions pass (failures are listed as JSON on
// stderr).  Identical configurations produce byte-identical output files.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgg/rgg.hpp"
#include "rgg/report_json.hpp"

namespace {

// "a", "a,b,c", or "a:b:step" (inclusive endpoints, fp slack on the last).
std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':') {
      throw std::invalid_argument("range must look like a:b:step, got '" + text + "'");
    }
    if (!(step > 0.0) || b < a) throw std::invalid_argument("range needs a <= b and step > 0");
    for (double v = a; v <= b + step * 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty value list '" + text + "'");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_value_list(text)) {
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("sizes must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + out_path + "'");
  os << payload;
}

struct Assertions {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  int finish() const {
    if (failures.empty()) return 0;
    rgg::json j;
    j["schema"] = rgg::kOutputSchemaVersion;
    j["failures"] = failures;
    std::cerr << j.dump(2) << "\n";
    return 1;
  }
};

int cmd_spectrum(std::size_t d, std::size_t n, double r, std::uint64_t seed,
                 const std::string& out) {
  const rgg::PointCloud cloud = rgg::sample_uniform_cube(n, d, seed);
  const rgg::GraphOperators ops = rgg::build_graph_operators(cloud, rgg::Radius(r));
  const rgg::Spectrum spec = rgg::symmetric_eigenvalues(ops.w_matrix);

  std::ostringstream os;
  rgg::write_csv_schema_header(os);
  os << "# config: spectrum d=" << d << " n=" << n << " r=" << rgg::format_double17(r)
     << " seed=" << seed << "\n";
  os << "# gamma2: " << rgg::format_double17(1.0 - spec.values[1]) << "\n";
  os << "rank,value\n";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    os << (i + 1) << ',' << rgg::format_double17(spec.values[i]) << '\n';
  }
  emit(os.str(), out);

  Assertions checks;
  checks.require(std::fabs(spec.values[0] - 1.0) <= 1e-9, "top eigenvalue must equal 1 within 1e-9");
  for (double v : spec.values) {
    if (std::fabs(v) > 1.0 + 1e-9) {
      checks.require(false, "eigenvalue outside [-1, 1]: " + rgg::format_double17(v));
      break;
    }
  }
  return checks.finish();
}

int cmd_kernel_spectrum(std::size_t d, const std::string& r_text, std::size_t mquad,
                        std::size_t topk, double truncation, const std::string& format,
                        const std::string& out) {
  const std::vector<double> r_list = parse_value_list(r_text);
  if (r_list.size() != 1 && r_list.size() != d) {
    throw std::invalid_argument("--r must be one radius or exactly d per-axis radii");
  }

  // One Nystrom solve per distinct radius.
  std::vector<double> distinct = r_list;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const rgg::NystromGrid grid(mquad);
  std::vector<rgg::Spectrum> spectra(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const rgg::KernelSpec spec(1, rgg::Radius(distinct[i]));
    spectra[i] = rgg::symmetric_eigenvalues(rgg::nystrom_matrix(spec, grid));
  }
  auto spectrum_for = [&](double r) -> const rgg::Spectrum& {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), r);
    return spectra[static_cast<std::size_t>(it - distinct.begin())];
  };

  std::vector<rgg::Spectrum> per_axis;
  for (std::size_t k = 0; k < d; ++k) {
    per_axis.push_back(spectrum_for(r_list.size() == 1 ? r_list[0] : r_list[k]));
  }
  const rgg::Spectrum tensor =
      rgg::tensor_spectrum(std::span<const rgg::Spectrum>(per_axis), topk, truncation);

  Assertions checks;
  for (double r : distinct) {
    const rgg::Spectrum& s = spectrum_for(r);
    const std::string tag = "axis r=" + rgg::format_double17(r) + ": ";
    checks.require(std::fabs(s.values[0] - 1.0) <= 1e-2, tag + "top eigenvalue should be 1");
    double max_nontop = 0.0;
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      max_nontop = std::max(max_nontop, std::fabs(s.values[i]));
    }
    if (r < 1.0) {
      checks.require(s.values[1] > 0.5 && s.values[1] < 1.0,
                     tag + "second eigenvalue must lie in (0.5, 1) for r < 1");
    } else if (r > 1.0) {
      checks.require(max_nontop < 0.5, tag + "non-top eigenvalues must stay below 0.5 for r > 1");
    } else {
      checks.require(std::fabs(s.values[1] - 0.5) <= 5e-3,
                     tag + "second eigenvalue must equal 1/2 at r = 1");
    }
  }

  std::ostringstream os;
  if (format == "csv") {
    rgg::write_csv_schema_header(os);
    os << "# config: kernel-spectrum d=" << d << " r=" << r_text << " mquad=" << mquad
       << " topk=" << topk << "\n";
    os << "rank,value\n";
    for (std::size_t i = 0; i < tensor.values.size(); ++i) {
      os << (i + 1) << ',' << rgg::format_double17(tensor.values[i]) << '\n';
    }
  } else {
    rgg::json j;
    j["schema"] = rgg::kOutputSchemaVersion;
    j["config"] = {{"command", "kernel-spectrum"}, {"d", d}, {"r", r_list},
                   {"mquad", mquad}, {"topk", topk}, {"truncation", truncation}};
    rgg::json axes = rgg::json::array();
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      const std::size_t keep = std::min<std::size_t>(spectra[i].values.size(), 64);
      axes.push_back({{"r", distinct[i]},
                      {"top", std::vector<double>(spectra[i].values.begin(),
                                                  spectra[i].values.begin() +
                                                      static_cast<std::ptrdiff_t>(keep))}});
    }
    j["axis_spectra"] = axes;
    j["tensor_spectrum"] = tensor.values;
    j["assertions_failed"] = checks.failures;
    os << j.dump(2) << "\n";
  }
  emit(os.str(), out);
  return checks.finish();
}

int cmd_converge(std::size_t d, const std::string& n_text, double r, std::uint64_t seed,
                 std::size_t trials, std::size_t sub, double eps, const std::string& out) {
  const std::vector<std::size_t> n_list = parse_size_list(n_text);
  if (trials == 0) throw std::invalid_argument("--trials must be positive");
  const rgg::Radius radius(r);
  const bool run_goodsets = eps > 0.0 && eps < r && eps < 2.0 - r;

  std::ostringstream os;
  rgg::write_csv_schema_header(os);
  os << "# config: converge d=" << d << " r=" << rgg::format_double17(r) << " eps="
     << rgg::format_double17(eps) << " sub=" << sub << " trials=" << trials << " seed=" << seed
     << "\n";
  os << "seed,d,r,n,sup_H,l1_dist,boundary_fraction,violations\n";

  Assertions checks;
  for (std::size_t n : n_list) {
    // reject sizes that are not m^d up front
    std::size_t m = static_cast<std::size_t>(
        std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
    bool is_power = false;
    for (std::size_t cand = (m > 1 ? m - 1 : 1); cand <= m + 1; ++cand) {
      std::size_t p = 1;
      bool overflow = false;
      for (std::size_t k = 0; k < d; ++k) {
        if (cand != 0 && p > static_cast<std::size_t>(-1) / cand) { overflow = true; break; }
        p *= cand;
      }
      if (!overflow && p == n) {
        m = cand;
        is_power = true;
        break;
      }
    }
    if (!is_power) {
      throw std::invalid_argument("converge: n = " + std::to_string(n) + " is not m^" +
                                  std::to_string(d) + " for any integer m");
    }
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed = seed + t;
      const rgg::PointCloud cloud = rgg::sample_uniform_cube(n, d, trial_seed);
      const rgg::SortedGrid grid = rgg::coordinate_sort(cloud, m);
      const double sup = rgg::sup_h_distance(grid, radius);
      const double l1 = rgg::l1_kernel_distance(grid, radius, sub);
      double boundary_fraction = 0.0;
      std::size_t violations = 0;
      if (run_goodsets) {
        const rgg::GoodsetReport rep = rgg::goodset_classification(grid, r, eps);
        boundary_fraction = rep.boundary_fraction;
        violations = rep.violations;
        checks.require(rep.violations == 0,
                       "goodset violations at n=" + std::to_string(n) + " trial " +
                           std::to_string(t));
        if (8.0 / static_cast<double>(m) <= eps) {
          const double cap = 2.0 * static_cast<double>(d) * (2.0 - r) * eps + 0.01;
          checks.require(boundary_fraction <= cap,
                         "boundary fraction " + rgg::format_double17(boundary_fraction) +
                             " above cap " + rgg::format_double17(cap) + " at n=" +
                             std::to_string(n));
        }
      }
      os << trial_seed << ',' << d << ',' << rgg::format_double17(r) << ',' << n << ','
         << rgg::format_double17(sup) << ',' << rgg::format_double17(l1) << ','
         << rgg::format_double17(boundary_fraction) << ',' << violations << '\n';
    }
  }
  emit(os.str(), out);
  return checks.finish();
}

int cmd_gap_sweep(std::size_t d, std::size_t n, const std::string& r_text, std::size_t trials,
                  std::uint64_t seed, std::size_t threads, const std::string& format,
                  const std::string& out) {
  const std::vector<double> r_values = parse_value_list(r_text);
  const std::vector<rgg::GapReport> reports =
      rgg::gap_sweep(d, n, r_values, trials, seed, threads);

  Assertions checks;
  for (const rgg::GapReport& rep : reports) {
    for (std::size_t t = 0; t < rep.gamma2.size(); ++t) {
      const double g = rep.gamma2[t];
      const std::string tag = "r=" + rgg::format_double17(rep.r) + " trial " + std::to_string(t) +
                              ": gamma2=" + rgg::format_double17(g);
      if (rep.r < 1.0) {
        checks.require(g > 0.0 && g < 0.5, tag + " outside (0, 0.5)");
      } else if (rep.r > 1.0) {
        checks.require(g > 0.5 && g < 1.0, tag + " outside (0.5, 1)");
      } else {
        checks.require(g > 0.45 && g < 0.55, tag + " outside (0.45, 0.55)");
      }
    }
  }

  std::ostringstream os;
  if (format == "json") {
    rgg::json j;
    j["schema"] = rgg::kOutputSchemaVersion;
    j["config"] = {{"command", "gap-sweep"}, {"d", d}, {"n", n}, {"r", r_values},
                   {"trials", trials}, {"seed", seed}};
    rgg::json rows = rgg::json::array();
    for (const rgg::GapReport& rep : reports) rows.push_back(rgg::to_json(rep));
    j["reports"] = rows;
    j["assertions_failed"] = checks.failures;
    os << j.dump(2) << "\n";
  } else {
    rgg::write_csv_schema_header(os);
    os << "# config: gap-sweep d=" << d << " n=" << n << " trials=" << trials << " seed=" << seed
       << "\n";
    os << "r,d,n,trials,seed,gamma2_mean,gamma2_min,gamma2_max\n";
    for (const rgg::GapReport& rep : reports) {
      os << rgg::format_double17(rep.r) << ',' << rep.d << ',' << rep.n << ',' << rep.trials << ','
         << rep.seed << ',' << rgg::format_double17(rep.mean) << ','
         << rgg::format_double17(rep.min) << ',' << rgg::format_double17(rep.max) << '\n';
    }
  }
  emit(os.str(), out);
  return checks.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of dense random geometric graphs on the sup-norm cube"};
  app.require_subcommand(1);

  // spectrum
  std::size_t sp_d = 0, sp_n = 0;
  double sp_r = 0.0;
  std::uint64_t sp_seed = 1;
  std::string sp_out;
  CLI::App* sp = app.add_subcommand("spectrum", "Eigenvalues of one sampled W-operator (CSV)");
  sp->add_option("--d", sp_d, "dimension")->required();
  sp->add_option("--n", sp_n, "number of points")->required();
  sp->add_option("--r", sp_r, "radius in (0, 2)")->required();
  sp->add_option("--seed", sp_seed, "generator seed");
  sp->add_option("--out", sp_out, "output file (default stdout)");

  // kernel-spectrum
  std::size_t ks_d = 1, ks_mquad = 2000, ks_topk = 8;
  double ks_trunc = 1e-4;
  std::string ks_r, ks_format = "json", ks_out;
  CLI::App* ks = app.add_subcommand(
      "kernel-spectrum", "Nystrom spectrum of the limiting kernel and its tensor products");
  ks->add_option("--d", ks_d, "dimension of the tensor spectrum");
  ks->add_option("--r", ks_r, "radius, or d comma-separated per-axis radii")->required();
  ks->add_option("--mquad", ks_mquad, "Nystrom subintervals (default 2000)");
  ks->add_option("--topk", ks_topk, "tensor products to report (default 8)");
  ks->add_option("--truncation", ks_trunc, "drop 1-D eigenvalues at or below this magnitude");
  ks->add_option("--format", ks_format, "csv or json (default json)")
      ->check(CLI::IsMember({"csv", "json"}));
  ks->add_option("--out", ks_out, "output file (default stdout)");

  // converge
  std::size_t cv_d = 0, cv_trials = 1, cv_sub = 2;
  double cv_r = 1.0, cv_eps = 0.1;
  std::uint64_t cv_seed = 1;
  std::string cv_n, cv_out;
  CLI::App* cv = app.add_subcommand(
      "converge", "Step-kernel convergence metrics across grid sizes (CSV rows)");
  cv->add_option("--d", cv_d, "dimension")->required();
  cv->add_option("--n", cv_n, "comma-separated sizes, each a perfect d-th power")->required();
  cv->add_option("--r", cv_r, "radius in (0, 2)");
  cv->add_option("--seed", cv_seed, "base seed; trial t uses seed + t");
  cv->add_option("--trials", cv_trials, "trials per size");
  cv->add_option("--sub", cv_sub, "quadrature nodes per axis per cell");
  cv->add_option("--eps", cv_eps, "goodset margin (skipped unless 0 < eps < min(r, 2-r))");
  cv->add_option("--out", cv_out, "output file (default stdout)");

  // gap-sweep
  std::size_t gs_d = 0, gs_n = 0, gs_trials = 5, gs_threads = 0;
  std::uint64_t gs_seed = 1;
  std::string gs_r, gs_format = "csv", gs_out;
  CLI::App* gs = app.add_subcommand("gap-sweep", "Spectral gap across radii");
  gs->add_option("--d", gs_d, "dimension")->required();
  gs->add_option("--n", gs_n, "number of points")->required();
  gs->add_option("--r", gs_r, "radius, comma list, or a:b:step range")->required();
  gs->add_option("--trials", gs_trials, "trials per radius");
  gs->add_option("--seed", gs_seed, "base seed; trial t uses seed + t");
  gs->add_option("--threads", gs_threads,
                 "worker threads (default: RGG_SPECTRA_THREADS or hardware)");
  gs->add_option("--format", gs_format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  gs->add_option("--out", gs_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) return cmd_spectrum(sp_d, sp_n, sp_r, sp_seed, sp_out);
    if (ks->parsed()) {
      return cmd_kernel_spectrum(ks_d, ks_r, ks_mquad, ks_topk, ks_trunc, ks_format, ks_out);
    }
    if (cv->parsed()) {
      return cmd_converge(cv_d, cv_n, cv_r, cv_seed, cv_trials, cv_sub, cv_eps, cv_out);
    }
    if (gs->parsed()) {
      return cmd_gap_sweep(gs_d, gs_n, gs_r, gs_trials, gs_seed, gs_threads, gs_format, gs_out);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
