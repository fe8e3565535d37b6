// Command-line front end: reproduces the critical-coefficient, operator-norm,
// accuracy, energy-evolution, discontinuous-profile and Burgers experiments
// as CSV, from flags or a JSON config file (flags win).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "svrk/experiments.hpp"

namespace {

struct CliValues {
  svrk::ExperimentConfig cfg;  // flag targets; merged over JSON after parse
  std::string config_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw svrk::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void add_common_options(CLI::App* sub, CliValues& vals) {
  sub->add_option("--system", vals.cfg.system, "system/table selector (ode3|dg|advection|burgers)");
  sub->add_option("--p", vals.cfg.p, "linear order of the method");
  sub->add_option("--k", vals.cfg.k, "polynomial degree of the DG space");
  sub->add_option("--n-cells", vals.cfg.n_cells, "number of DG cells");
  sub->add_option("--tau", vals.cfg.tau, "ODE step size (rational, e.g. 1/20)");
  sub->add_option("--cfl", vals.cfg.cfl, "DG step ratio tau/h (rational, e.g. 1/20)");
  sub->add_option("--mu", vals.cfg.mu, "dispersive superviscosity coefficient (rational)");
  sub->add_option("--nu", vals.cfg.nu, "diffusive superviscosity coefficient (rational)");
  sub->add_option("--mode", vals.cfg.mode, "plain|modified|filtered|adaptive");
  sub->add_option("--alpha", vals.cfg.alpha,
                  "interface flux parameter in [-1,1]; dissipative runs use [-1,0]");
  sub->add_option("--T", vals.cfg.T, "final time");
  sub->add_option("--ic", vals.cfg.ic, "initial condition (expsin|sin|sin5|indicator)");
  sub->add_option("--out", vals.cfg.out, "output CSV path (default stdout)");
  sub->add_flag("--exact", vals.cfg.exact, "force exact certificates on every norm-table cell");
  sub->add_option("--config", vals.config_path, "JSON config file (flags override it)");
}

// Flags were parsed into vals.cfg; rebuild the effective config so that JSON
// supplies anything the command line left untouched.
svrk::ExperimentConfig effective_config(const CLI::App* sub, const CliValues& vals) {
  svrk::ExperimentConfig cfg;
  if (!vals.config_path.empty()) cfg = svrk::merge_json(cfg, read_file(vals.config_path));
  const auto touched = [&](const std::string& name) { return sub->count(name) > 0; };
  if (touched("--system")) cfg.system = vals.cfg.system;
  if (touched("--p")) cfg.p = vals.cfg.p;
  if (touched("--k")) cfg.k = vals.cfg.k;
  if (touched("--n-cells")) cfg.n_cells = vals.cfg.n_cells;
  if (touched("--tau")) cfg.tau = vals.cfg.tau;
  if (touched("--cfl")) cfg.cfl = vals.cfg.cfl;
  if (touched("--mu")) cfg.mu = vals.cfg.mu;
  if (touched("--nu")) cfg.nu = vals.cfg.nu;
  if (touched("--mode")) cfg.mode = vals.cfg.mode;
  if (touched("--alpha")) cfg.alpha = vals.cfg.alpha;
  if (touched("--T")) cfg.T = vals.cfg.T;
  if (touched("--ic")) cfg.ic = vals.cfg.ic;
  if (touched("--out")) cfg.out = vals.cfg.out;
  if (touched("--exact")) cfg.exact = vals.cfg.exact;
  return cfg;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw svrk::ConfigError("cannot write '" + path + "'");
  out << content;
}

void emit(const svrk::ExperimentConfig& cfg, const svrk::MultiOutput& result) {
  write_output(cfg.out, result.primary);
  if (cfg.out.empty()) return;  // extra files only make sense next to a real path
  for (const auto& [suffix, content] : result.extras) write_output(cfg.out + suffix, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superviscosity-stabilized Runge-Kutta experiment driver"};
  app.require_subcommand(1);

  CliValues vals;
  CLI::App* critical = app.add_subcommand("critical-table", "critical coefficients nu0, mu0");
  CLI::App* norm = app.add_subcommand("norm-table", "one-step operator norm grids");
  CLI::App* accuracy = app.add_subcommand("accuracy", "error/order ladders");
  CLI::App* energy = app.add_subcommand("energy", "per-step energy evolution");
  CLI::App* disc = app.add_subcommand("discontinuous", "discontinuous-data profiles");
  CLI::App* burgers = app.add_subcommand("burgers", "Burgers runs with filtering");
  for (CLI::App* sub : {critical, norm, accuracy, energy, disc, burgers})
    add_common_options(sub, vals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const svrk::ExperimentConfig cfg = effective_config(sub, vals);
    if (sub == critical)
      write_output(cfg.out, svrk::cmd_critical_table());
    else if (sub == norm)
      write_output(cfg.out, svrk::cmd_norm_table(cfg));
    else if (sub == accuracy)
      write_output(cfg.out, svrk::cmd_accuracy(cfg));
    else if (sub == energy)
      emit(cfg, svrk::cmd_energy(cfg));
    else if (sub == disc)
      emit(cfg, svrk::cmd_discontinuous(cfg));
    else
      emit(cfg, svrk::cmd_burgers(cfg));
  } catch (const svrk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
