/*
 * Copyright 2026 The rmtk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rmtk/correlations.hpp"
#include "rmtk/ensembles_mc.hpp"
#include "rmtk/io.hpp"
#include "rmtk/kernels.hpp"
#include "rmtk/superint.hpp"
#include "rmtk/verify.hpp"

namespace {

using nlohmann::json;

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
};

struct NumericTable {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

void emit(const NumericTable& t, const OutputOptions& opt) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path);
    if (!file) throw std::runtime_error("cannot open output file " + opt.out_path);
    os = &file;
  }
  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
      rows.push_back(obj);
    }
    *os << json{{"columns", t.columns}, {"rows", rows}}.dump(2) << "\n";
  } else {
    rmtk::io::Table table;
    table.columns = t.columns;
    for (const auto& row : t.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const json& v : row) {
        if (v.is_string())
          cells.push_back(v.get<std::string>());
        else
          cells.push_back(rmtk::io::format_g17(v.get<double>()));
      }
      table.add_row(std::move(cells));
    }
    rmtk::io::write_csv(table, *os);
  }
}

json suite_to_json(const rmtk::verify::SuiteResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"got", c.got},
                      {"tol", c.tol},
                      {"pass", c.pass}});
  }
  return json{{"schema", 1},
              {"suite", r.suite},
              {"checks", checks},
              {"summary", {{"total", r.total()}, {"failed", r.failed()}}}};
}

int resolve_workers(int workers) {
  if (const char* env = std::getenv("RMTK_THREADS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return workers;
}

struct CommonMC {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  double eta = 0.0;
  int workers = 1;
};

void add_mc_options(CLI::App* cmd, CommonMC& mc) {
  cmd->add_option("--samples", mc.samples, "Monte Carlo sample count");
  cmd->add_option("--seed", mc.seed, "counter RNG seed");
  cmd->add_option("--eta", mc.eta,
                  "imaginary regularization (<= 0 selects the spacing-based default)");
  cmd->add_option("--workers", mc.workers, "worker threads (RMTK_THREADS overrides)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rmtk: finite-N random matrix kernels and correlation functions "
      "(analytic, Monte Carlo and superspace-integral routes)"};
  app.require_subcommand(1);

  // ---- kernel ----
  auto* kernel_cmd = app.add_subcommand(
      "kernel", "evaluate K_N^{(beta)}(x_q, x_p) for one or more point pairs");
  int k_beta = 2, k_n = 1;
  std::vector<double> k_xp, k_xq;
  std::string k_method = "analytic";
  double k_abs_tol = 1e-10, k_rel_tol = 1e-10;
  CommonMC k_mc;
  OutputOptions k_out;
  kernel_cmd->add_option("--beta", k_beta, "Dyson index")->check(CLI::IsMember({1, 2, 4}));
  kernel_cmd->add_option("--n", k_n, "level number (beta=4: Kramers doublets)")
      ->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--xp", k_xp, "first energy argument(s)")->required();
  kernel_cmd->add_option("--xq", k_xq, "second energy argument(s)")->required();
  kernel_cmd->add_option("--method", k_method, "analytic | mc | superint")
      ->check(CLI::IsMember({"analytic", "mc", "superint"}));
  kernel_cmd->add_option("--abs-tol", k_abs_tol, "quadrature absolute tolerance");
  kernel_cmd->add_option("--rel-tol", k_rel_tol, "quadrature relative tolerance");
  add_mc_options(kernel_cmd, k_mc);
  kernel_cmd->add_option("--format", k_out.format)->check(CLI::IsMember({"csv", "json"}));
  kernel_cmd->add_option("--out", k_out.out_path, "output file (default stdout)");

  // ---- corr ----
  auto* corr_cmd =
      app.add_subcommand("corr", "k-point correlation functions R_k(x_1..x_k)");
  int c_beta = 2, c_n = 2;
  std::vector<std::string> c_points;
  OutputOptions c_out;
  corr_cmd->add_option("--beta", c_beta)->check(CLI::IsMember({1, 2, 4}));
  corr_cmd->add_option("--n", c_n)->check(CLI::PositiveNumber);
  corr_cmd
      ->add_option("--point", c_points,
                   "comma-separated tuple x_1,..,x_k (repeatable; equal arity)")
      ->required();
  corr_cmd->add_option("--format", c_out.format)->check(CLI::IsMember({"csv", "json"}));
  corr_cmd->add_option("--out", c_out.out_path);

  // ---- density ----
  auto* density_cmd =
      app.add_subcommand("density", "level density on a grid (analytic, optional MC)");
  int d_beta = 2, d_n = 2;
  std::string d_grid = "-4:4:0.25";
  bool d_with_mc = false;
  CommonMC d_mc;
  OutputOptions d_out;
  density_cmd->add_option("--beta", d_beta)->check(CLI::IsMember({1, 2, 4}));
  density_cmd->add_option("--n", d_n)->check(CLI::PositiveNumber);
  density_cmd->add_option("--grid", d_grid, "lo:hi:step (inclusive of lo)");
  density_cmd->add_flag("--mc", d_with_mc, "add Monte Carlo histogram columns");
  add_mc_options(density_cmd, d_mc);
  density_cmd->add_option("--format", d_out.format)->check(CLI::IsMember({"csv", "json"}));
  density_cmd->add_option("--out", d_out.out_path);

  // ---- histogram ----
  auto* hist_cmd = app.add_subcommand(
      "histogram", "eigenvalue histogram of sampled matrices (doublets counted once)");
  int h_beta = 2, h_n = 2;
  std::string h_grid = "-4:4:0.25";
  CommonMC h_mc;
  h_mc.samples = 10000;
  OutputOptions h_out;
  hist_cmd->add_option("--beta", h_beta)->check(CLI::IsMember({1, 2, 4}));
  hist_cmd->add_option("--n", h_n)->check(CLI::PositiveNumber);
  hist_cmd->add_option("--grid", h_grid, "lo:hi:step (bin centers)");
  add_mc_options(hist_cmd, h_mc);
  hist_cmd->add_option("--format", h_out.format)->check(CLI::IsMember({"csv", "json"}));
  hist_cmd->add_option("--out", h_out.out_path);

  // ---- verify ----
  auto* verify_cmd =
      app.add_subcommand("verify", "cross-route verification suites (JSON report)");
  std::string v_suite = "all";
  int v_beta = 2, v_n = 4;
  bool v_have_beta = false, v_have_n = false;
  double v_abs_tol = 1e-10, v_rel_tol = 1e-10;
  CommonMC v_mc;
  OutputOptions v_out;
  v_out.format = "json";
  verify_cmd->add_option("suite", v_suite, "mc | superint | constants | recursions | all")
      ->check(CLI::IsMember({"mc", "superint", "constants", "recursions", "all"}));
  verify_cmd->add_option("--beta", v_beta)->check(CLI::IsMember({1, 2, 4}))
      ->each([&](const std::string&) { v_have_beta = true; });
  verify_cmd->add_option("--n", v_n)->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { v_have_n = true; });
  verify_cmd->add_option("--abs-tol", v_abs_tol);
  verify_cmd->add_option("--rel-tol", v_rel_tol);
  add_mc_options(verify_cmd, v_mc);
  verify_cmd->add_option("--out", v_out.out_path);

  // ---- constants (alias for verify constants) ----
  auto* const_cmd =
      app.add_subcommand("constants", "golden integration constants (JSON report)");
  OutputOptions const_out;
  const_out.format = "json";
  const_cmd->add_option("--out", const_out.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kernel_cmd->parsed()) {
      if (k_xp.size() != k_xq.size())
        throw CLI::ValidationError("--xp and --xq need the same arity");
      rmtk::quad::QuadratureSpec spec;
      spec.abs_tol = k_abs_tol;
      spec.rel_tol = k_rel_tol;
      NumericTable t;
      t.columns = {"beta", "N", "x_p", "x_q", "method", "value", "uncertainty"};
      if (k_method == "mc") {
        rmtk::mc::MCConfig cfg{rmtk::kernels::EnsembleSpec(k_beta, k_n), k_mc.samples,
                               k_mc.seed, k_mc.eta, resolve_workers(k_mc.workers)};
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < k_xp.size(); ++i)
          pairs.emplace_back(k_xp[i], k_xq[i]);
        const auto kvs = rmtk::mc::kernel_mc_grid(cfg, pairs);
        for (std::size_t i = 0; i < pairs.size(); ++i)
          t.rows.push_back({double(k_beta), double(k_n), k_xp[i], k_xq[i], k_method,
                            kvs[i].value, kvs[i].uncertainty});
      } else {
        for (std::size_t i = 0; i < k_xp.size(); ++i) {
          double value;
          if (k_method == "analytic") {
            value = rmtk::kernels::kernel(k_beta, k_n, k_xq[i], k_xp[i]);
          } else {
            value = rmtk::superint::kernel_from_superint(k_beta, k_n, k_xp[i], k_xq[i],
                                                         spec);
          }
          t.rows.push_back(
              {double(k_beta), double(k_n), k_xp[i], k_xq[i], k_method, value, 0.0});
        }
      }
      emit(t, k_out);
      return 0;
    }

    if (corr_cmd->parsed()) {
      std::vector<std::vector<double>> tuples;
      for (const auto& p : c_points) tuples.push_back(rmtk::io::parse_csv_doubles(p));
      const std::size_t k = tuples.front().size();
      for (const auto& tup : tuples)
        if (tup.size() != k)
          throw CLI::ValidationError("all --point tuples need the same arity");
      NumericTable t;
      t.columns = {"beta", "N", "k"};
      for (std::size_t i = 1; i <= k; ++i) t.columns.push_back("x_" + std::to_string(i));
      t.columns.push_back("R_k");
      for (const auto& tup : tuples) {
        rmtk::correlations::EnergyTuple xs(tup);
        std::vector<json> row{double(c_beta), double(c_n), double(k)};
        for (double x : tup) row.push_back(x);
        row.push_back(rmtk::correlations::r_k(c_beta, c_n, xs));
        t.rows.push_back(std::move(row));
      }
      emit(t, c_out);
      return 0;
    }

    if (density_cmd->parsed()) {
      const auto grid = rmtk::io::parse_grid(d_grid);
      NumericTable t;
      t.columns = {"x", "analytic_density"};
      if (d_with_mc) {
        t.columns.push_back("mc_density");
        t.columns.push_back("mc_err");
      }
      rmtk::mc::Histogram h;
      if (d_with_mc) {
        const double step = grid.size() > 1 ? grid[1] - grid[0] : 1.0;
        rmtk::mc::MCConfig cfg{rmtk::kernels::EnsembleSpec(d_beta, d_n), d_mc.samples,
                               d_mc.seed, d_mc.eta, resolve_workers(d_mc.workers)};
        h = rmtk::mc::eigen_histogram(cfg, grid.front() - 0.5 * step,
                                      grid.back() + 0.5 * step,
                                      static_cast<int>(grid.size()));
      }
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<json> row{grid[i],
                              rmtk::kernels::level_density(d_beta, d_n, grid[i])};
        if (d_with_mc) {
          row.push_back(h.density[i]);
          row.push_back(h.std_error[i]);
        }
        t.rows.push_back(std::move(row));
      }
      emit(t, d_out);
      return 0;
    }

    if (hist_cmd->parsed()) {
      const auto grid = rmtk::io::parse_grid(h_grid);
      const double step = grid.size() > 1 ? grid[1] - grid[0] : 1.0;
      rmtk::mc::MCConfig cfg{rmtk::kernels::EnsembleSpec(h_beta, h_n), h_mc.samples,
                             h_mc.seed, h_mc.eta, resolve_workers(h_mc.workers)};
      const auto h = rmtk::mc::eigen_histogram(cfg, grid.front() - 0.5 * step,
                                               grid.back() + 0.5 * step,
                                               static_cast<int>(grid.size()));
      NumericTable t;
      t.columns = {"x", "mc_density", "mc_err"};
      for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({h.centers[i], h.density[i], h.std_error[i]});
      emit(t, h_out);
      return 0;
    }

    if (verify_cmd->parsed() || const_cmd->parsed()) {
      rmtk::quad::QuadratureSpec spec;
      rmtk::verify::SuiteResult result;
      OutputOptions out = const_cmd->parsed() ? const_out : v_out;
      if (const_cmd->parsed() || v_suite == "constants") {
        result = rmtk::verify::run_constants(spec);
      } else if (v_suite == "superint") {
        spec.abs_tol = v_abs_tol;
        spec.rel_tol = v_rel_tol;
        result = rmtk::verify::SuiteResult{"superint", {}};
        if (v_have_beta || v_have_n) {
          result.append(rmtk::verify::run_superint(v_beta, v_n, spec));
        } else {
          for (int beta : {1, 2, 4}) {
            const int n_max = beta == 4 ? 4 : 8;
            for (int n = 1; n <= n_max; ++n)
              result.append(rmtk::verify::run_superint(beta, n, spec));
          }
        }
      } else if (v_suite == "mc") {
        rmtk::mc::MCConfig cfg{rmtk::kernels::EnsembleSpec(v_beta, v_n), v_mc.samples,
                               v_mc.seed, v_mc.eta, resolve_workers(v_mc.workers)};
        result = rmtk::verify::run_mc(cfg);
      } else if (v_suite == "recursions") {
        result = rmtk::verify::run_recursions(spec);
      } else {
        rmtk::mc::MCConfig cfg{rmtk::kernels::EnsembleSpec(2, 4), v_mc.samples, v_mc.seed,
                               v_mc.eta, resolve_workers(v_mc.workers)};
        result = rmtk::verify::run_all(cfg, spec);
        result.suite = "all";
      }
      std::ofstream file;
      std::ostream* os = &std::cout;
      if (!out.out_path.empty()) {
        file.open(out.out_path);
        if (!file) throw std::runtime_error("cannot open output file " + out.out_path);
        os = &file;
      }
      *os << suite_to_json(result).dump(2) << "\n";
      return result.all_pass() ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rmtk::kernels::DegenerateArguments& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const rmtk::correlations::DegeneratePoints& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
