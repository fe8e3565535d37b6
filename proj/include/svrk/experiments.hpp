#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svrk/adaptive_filter.hpp"
#include "svrk/dg1d.hpp"
#include "svrk/norms.hpp"
#include "svrk/rk_core.hpp"
#include "svrk/superviscosity.hpp"

namespace svrk {

// Bad or inconsistent experiment parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A run that started but lost numerical meaning (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One bag of knobs shared by all subcommands; each reads the fields it needs
// and fills experiment-specific defaults for the rest. Zero/negative/empty
// sentinel values mean "default".
struct ExperimentConfig {
  std::string system = "";  // norm-table: ode3|dg; accuracy: ode3|advection|burgers
  int p = 0;
  int k = -1;
  int n_cells = 0;
  std::string tau;        // rational string, ODE tables
  std::string cfl;        // rational string tau/h, DG tables
  std::string mu = "0";   // rational string
  std::string nu = "0";   // rational string
  std::string mode = "";  // plain|modified|filtered|adaptive
  std::string alpha = "-1";
  double T = -1;
  std::string ic;   // expsin|sin|sin5|indicator
  std::string out;  // output path ("" = stdout)
  bool exact = false;
};

// Applies the keys present in a JSON object onto base (flags still override
// the result at the CLI layer).
ExperimentConfig merge_json(ExperimentConfig base, const std::string& json_text);

Mode parse_mode(const std::string& text);

// ---------------------------------------------------------------- systems --

// Matched float/exact representations of one scaled generator Z = tau L with
// its inner product (the rational weights may carry a different positive
// scale; norms of polynomials in Z are unaffected).
struct LinearSystem {
  MatD z;
  MatQ z_exact;
  InnerProduct<double> ip;
  InnerProduct<Rational> ip_exact;
};

// The 3x3 upper-triangular decay system used by the ODE tables.
MatD ode3_generator();
MatQ ode3_generator_rational();
VecD ode3_exact(double t);  // exact solution from u(0) = (1, 1, 1)
LinearSystem ode3_system(const Rational& tau);

// Periodic DG advection at N cells, degree k: Z = cfl * (h L_alpha).
LinearSystem dg_system(int k, int n_cells, const Rational& cfl, const Rational& alpha);

// Superviscosity configs with k_star taken from the energy expansion of
// taylor(p). Rational strings like "1.01/144" parse exactly.
SuperviscosityConfig<double> make_config(int p, const std::string& mu, const std::string& nu);
SuperviscosityConfig<Rational> make_config_rational(int p, const std::string& mu,
                                                    const std::string& nu);

// ------------------------------------------------------------- norm cells --

double norm_gap_float_sys(const LinearSystem& sys, int p, const std::string& mu,
                          const std::string& nu, Mode mode);
StabilityCertificate certificate_sys(const LinearSystem& sys, int p, const std::string& mu,
                                     const std::string& nu, Mode mode);
ExactNormBracket exact_bracket_sys(const LinearSystem& sys, int p, const std::string& mu,
                                   const std::string& nu, Mode mode, const Rational& tol);

struct NormCell {
  double value = 0;  // float-path ||R|| - 1 (defect assembly + Jacobi)
  bool consulted_exact = false;
  std::optional<Verdict> verdict;
  std::string rendered;  // float value, or "≤0" when certified stable
};

// One table cell. The exact certificate is consulted when |value| < 1e-12
// (the float value's sign is no longer meaningful evidence) or when forced.
NormCell norm_table_cell(const std::string& system, int p, int k, int n_cells,
                         const std::string& mu, const std::string& nu, Mode mode,
                         const Rational& step, bool force_exact);

// Default table grids (row parameter sets in table order).
struct NormTableRow {
  int p;
  const char* mu;
  const char* nu;
  Mode mode;
};
const std::vector<NormTableRow>& ode_norm_rows();
const std::vector<NormTableRow>& dg_norm_rows();
const std::vector<Rational>& norm_table_steps();  // 1e-1 .. 1e-6

// --------------------------------------------------------------- runners ---

std::function<double(double)> ic_function(const std::string& id);

struct OdeAccuracyRow {
  Rational tau;
  double error;  // Euclidean norm against the exact solution at T
};
std::vector<OdeAccuracyRow> run_ode_accuracy(int p, const std::string& mu, const std::string& nu,
                                             Mode mode, const std::vector<Rational>& taus,
                                             double T);

struct AdvectionLadderRow {
  int n_cells;
  ErrorNorms errors;
};
std::vector<AdvectionLadderRow> run_advection_accuracy(int p, int k, const std::string& mu,
                                                       const std::string& nu, Mode mode,
                                                       const Rational& cfl, double T,
                                                       const std::vector<int>& cells,
                                                       const std::string& ic = "expsin");

// Linear DG run (matrix-free stepping), optionally recording the norm series.
struct LinearRunResult {
  DGFunction final_state;
  std::vector<double> t;           // after step n (t[0] = 0)
  std::vector<double> norm_delta;  // ||u^n|| - ||u^0||
};
LinearRunResult run_linear_dg(int p, int k, int n_cells, const std::string& mu,
                              const std::string& nu, Mode mode, const Rational& cfl, double alpha,
                              const std::string& ic, double T, bool record_series);

enum class BurgersFilter { None, Adaptive, FixedNu };

struct BurgersRun {
  DGFunction final_state;
  std::vector<double> t;                      // after step n (t[0] = 0 row excluded)
  std::vector<AdaptiveFilterReport> reports;  // one per step
};
BurgersRun run_burgers(int p, int k, int n_cells, const Rational& cfl, double T,
                       BurgersFilter filter, const std::string& fixed_nu = "0");

// ------------------------------------------------------------ subcommands --

struct MultiOutput {
  std::string primary;
  std::vector<std::pair<std::string, std::string>> extras;  // (suffix, content)
};

std::string cmd_critical_table();
std::string cmd_norm_table(const ExperimentConfig& cfg);
std::string cmd_accuracy(const ExperimentConfig& cfg);
MultiOutput cmd_energy(const ExperimentConfig& cfg);
MultiOutput cmd_discontinuous(const ExperimentConfig& cfg);
MultiOutput cmd_burgers(const ExperimentConfig& cfg);

}  // namespace svrk
