#include "svrk/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "svrk/csv.hpp"
#include "svrk/energy_expansion.hpp"

namespace svrk {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi_v<double>;

// Below this magnitude the float defect value no longer carries a trustworthy
// sign, so the exact certificate is consulted.
constexpr double kExactConsultThreshold = 1e-12;

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Plain:
      return "plain";
    case Mode::Modified:
      return "modified";
    case Mode::Filtered:
      return "filtered";
  }
  return "?";
}

std::string order_entry(double coarse, double fine) {
  if (!(coarse > 0) || !(fine > 0)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::log2(coarse / fine));
  return buf;
}

Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad ") + what + " '" + text + "': " + e.what());
  }
}

double norm_of(const VecD& v, const InnerProduct<double>& ip) { return std::sqrt(ip.norm_sq(v)); }

int default_k_star(int p) { return expand_energy(taylor_polynomial(p)).k_star; }

// Fills experiment-wide defaults shared by the DG run commands.
struct DGRunParams {
  int p;
  int k;
  int n_cells;
  Rational cfl;
  double alpha;
  double T;
  std::string ic;
};

DGRunParams dg_params(const ExperimentConfig& cfg, int def_p, int def_k, int def_cells,
                      const char* def_cfl, double def_T, const char* def_ic) {
  DGRunParams out{};
  out.p = cfg.p > 0 ? cfg.p : def_p;
  out.k = cfg.k >= 0 ? cfg.k : def_k;
  out.n_cells = cfg.n_cells > 0 ? cfg.n_cells : def_cells;
  out.cfl = parse_rational(cfg.cfl.empty() ? def_cfl : cfg.cfl, "cfl");
  if (!(out.cfl > Rational(0))) throw ConfigError("cfl must be positive");
  out.alpha = parse_rational(cfg.alpha, "alpha").to_double();
  out.T = cfg.T >= 0 ? cfg.T : def_T;
  out.ic = cfg.ic.empty() ? def_ic : cfg.ic;
  return out;
}

}  // namespace

ExperimentConfig merge_json(ExperimentConfig base, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config JSON must be an object");
  try {
    if (j.contains("system")) base.system = j["system"].get<std::string>();
    if (j.contains("p")) base.p = j["p"].get<int>();
    if (j.contains("k")) base.k = j["k"].get<int>();
    if (j.contains("n_cells")) base.n_cells = j["n_cells"].get<int>();
    if (j.contains("tau")) base.tau = j["tau"].get<std::string>();
    if (j.contains("cfl")) base.cfl = j["cfl"].get<std::string>();
    if (j.contains("mu")) base.mu = j["mu"].get<std::string>();
    if (j.contains("nu")) base.nu = j["nu"].get<std::string>();
    if (j.contains("mode")) base.mode = j["mode"].get<std::string>();
    if (j.contains("alpha")) base.alpha = j["alpha"].get<std::string>();
    if (j.contains("T")) base.T = j["T"].get<double>();
    if (j.contains("ic")) base.ic = j["ic"].get<std::string>();
    if (j.contains("out")) base.out = j["out"].get<std::string>();
    if (j.contains("exact")) base.exact = j["exact"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return base;
}

Mode parse_mode(const std::string& text) {
  if (text == "plain") return Mode::Plain;
  if (text == "modified") return Mode::Modified;
  if (text == "filtered") return Mode::Filtered;
  throw ConfigError("unknown mode '" + text + "' (expected plain|modified|filtered)");
}

// ---------------------------------------------------------------- systems --

MatD ode3_generator() {
  MatD L(3, 3);
  const double rows[3][3] = {{-1, -2, -2}, {0, -1, -2}, {0, 0, -1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L(i, j) = rows[i][j];
  return L;
}

MatQ ode3_generator_rational() {
  MatQ L(3, 3);
  const long rows[3][3] = {{-1, -2, -2}, {0, -1, -2}, {0, 0, -1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L(i, j) = Rational(rows[i][j]);
  return L;
}

VecD ode3_exact(double t) {
  const double e = std::exp(-t);
  return {(1 - 4 * t + 2 * t * t) * e, (1 - 2 * t) * e, e};
}

LinearSystem ode3_system(const Rational& tau) {
  MatD z = ode3_generator();
  z *= tau.to_double();
  MatQ zq = ode3_generator_rational();
  zq *= tau;
  return {std::move(z), std::move(zq), InnerProduct<double>::uniform(3),
          InnerProduct<Rational>::uniform(3)};
}

LinearSystem dg_system(int k, int n_cells, const Rational& cfl, const Rational& alpha) {
  const DGSpace space(n_cells, k);
  MatQ zq = build_advection_operator_rational(space, alpha);
  zq *= cfl;
  MatD z(zq.rows(), zq.cols());
  for (int i = 0; i < zq.rows(); ++i)
    for (int j = 0; j < zq.cols(); ++j) z(i, j) = zq(i, j).to_double();
  InnerProduct<Rational> ipq = mass_inner_product_rational(space);
  std::vector<double> w(static_cast<size_t>(space.dim()));
  for (int i = 0; i < space.dim(); ++i) w[static_cast<size_t>(i)] = ipq.weight(i).to_double();
  return {std::move(z), std::move(zq), InnerProduct<double>(std::move(w)), std::move(ipq)};
}

SuperviscosityConfig<double> make_config(int p, const std::string& mu, const std::string& nu) {
  return {parse_rational(mu, "mu").to_double(), parse_rational(nu, "nu").to_double(),
          default_k_star(p)};
}

SuperviscosityConfig<Rational> make_config_rational(int p, const std::string& mu,
                                                    const std::string& nu) {
  return {parse_rational(mu, "mu"), parse_rational(nu, "nu"), default_k_star(p)};
}

// ------------------------------------------------------------- norm cells --

double norm_gap_float_sys(const LinearSystem& sys, int p, const std::string& mu,
                          const std::string& nu, Mode mode) {
  const MatD defect = energy_defect_matrix(taylor_polynomial(p), sys.z, make_config(p, mu, nu),
                                           mode, sys.ip);
  return norm_gap_from_defect(defect, sys.ip);
}

StabilityCertificate certificate_sys(const LinearSystem& sys, int p, const std::string& mu,
                                     const std::string& nu, Mode mode) {
  const MatQ R = one_step_operator(taylor_polynomial(p), sys.z_exact,
                                   make_config_rational(p, mu, nu), mode, sys.ip_exact);
  return strong_stability_certificate(R, sys.ip_exact);
}

ExactNormBracket exact_bracket_sys(const LinearSystem& sys, int p, const std::string& mu,
                                   const std::string& nu, Mode mode, const Rational& tol) {
  const MatQ R = one_step_operator(taylor_polynomial(p), sys.z_exact,
                                   make_config_rational(p, mu, nu), mode, sys.ip_exact);
  return operator_norm_exact(R, sys.ip_exact, tol);
}

NormCell norm_table_cell(const std::string& system, int p, int k, int n_cells,
                         const std::string& mu, const std::string& nu, Mode mode,
                         const Rational& step, bool force_exact) {
  LinearSystem sys = system == "ode3" ? ode3_system(step)
                     : system == "dg" ? dg_system(k, n_cells, step, Rational(-1))
                                      : throw ConfigError("unknown system '" + system + "'");
  NormCell cell;
  cell.value = norm_gap_float_sys(sys, p, mu, nu, mode);
  if (force_exact || std::fabs(cell.value) < kExactConsultThreshold) {
    cell.consulted_exact = true;
    cell.verdict = certificate_sys(sys, p, mu, nu, mode).verdict;
  }
  cell.rendered = cell.consulted_exact && *cell.verdict == Verdict::StronglyStable
                      ? "≤0"
                      : format_sci(cell.value);
  return cell;
}

const std::vector<NormTableRow>& ode_norm_rows() {
  static const std::vector<NormTableRow> rows = {
      {1, "0", "0", Mode::Plain},
      {1, "0", "-1/2", Mode::Modified},
      {1, "0", "-1/2", Mode::Filtered},
      {1, "0", "-1.01/2", Mode::Modified},
      {1, "0", "-1.01/2", Mode::Filtered},
      {2, "0", "0", Mode::Plain},
      {2, "-1/4", "-1/8", Mode::Modified},
      {2, "-1/4", "-1/8", Mode::Filtered},
      {2, "-0.99/4", "-1.01/8", Mode::Modified},
      {2, "-0.99/4", "-1.01/8", Mode::Filtered},
      {2, "0", "-1.01/8", Mode::Modified},
      {2, "0", "-1.01/8", Mode::Filtered},
      {3, "0", "0", Mode::Plain},
      {3, "0", "1/24", Mode::Modified},
      {3, "0", "1/24", Mode::Filtered},
      {3, "0", "1.01/24", Mode::Modified},
      {3, "0", "1.01/24", Mode::Filtered},
      {4, "0", "0", Mode::Plain},
      {4, "1/144", "1/144", Mode::Modified},
      {4, "1/144", "1/144", Mode::Filtered},
      {4, "1.01/144", "0.99/144", Mode::Modified},
      {4, "1.01/144", "0.99/144", Mode::Filtered},
      {4, "1.01/144", "0", Mode::Modified},
      {4, "1.01/144", "0", Mode::Filtered},
      {4, "0", "-100", Mode::Modified},
      {4, "0", "-100", Mode::Filtered},
  };
  return rows;
}

const std::vector<NormTableRow>& dg_norm_rows() {
  static const std::vector<NormTableRow> rows = {
      {1, "0", "0", Mode::Plain},
      {1, "0", "-1/2", Mode::Modified},
      {1, "0", "-1/2", Mode::Filtered},
      {1, "0", "-1.01/2", Mode::Modified},
      {1, "0", "-1.01/2", Mode::Filtered},
      {2, "0", "0", Mode::Plain},
      {2, "-1/4", "-1/8", Mode::Modified},
      {2, "-1/4", "-1/8", Mode::Filtered},
      {2, "-0.99/4", "-1.01/8", Mode::Modified},
      {2, "-0.99/4", "-1.01/8", Mode::Filtered},
      {2, "0", "-1.01/8", Mode::Modified},
      {2, "0", "-1.01/8", Mode::Filtered},
      {3, "0", "0", Mode::Plain},
      {3, "0", "1/24", Mode::Modified},
      {3, "0", "1/24", Mode::Filtered},
      {3, "0", "0.99/24", Mode::Modified},
      {3, "0", "0.99/24", Mode::Filtered},
      {4, "0", "0", Mode::Plain},
      {4, "1/144", "1/144", Mode::Modified},
      {4, "1/144", "1/144", Mode::Filtered},
      {4, "1.01/144", "0.99/144", Mode::Modified},
      {4, "1.01/144", "0.99/144", Mode::Filtered},
      {4, "1.01/144", "0", Mode::Modified},
      {4, "1.01/144", "0", Mode::Filtered},
      {5, "0", "0", Mode::Plain},
      {5, "0", "-1/720", Mode::Modified},
      {5, "0", "-1/720", Mode::Filtered},
      {5, "0", "-1.01/720", Mode::Modified},
      {5, "0", "-1.01/720", Mode::Filtered},
      {6, "0", "0", Mode::Plain},
      {6, "-1/4800", "-1/5760", Mode::Modified},
      {6, "-1/4800", "-1/5760", Mode::Filtered},
      {6, "-0.99/4800", "-1.01/5760", Mode::Modified},
      {6, "-0.99/4800", "-1.01/5760", Mode::Filtered},
      {6, "0", "-1.01/5760", Mode::Modified},
      {6, "0", "-1.01/5760", Mode::Filtered},
  };
  return rows;
}

const std::vector<Rational>& norm_table_steps() {
  static const std::vector<Rational> steps = {
      Rational(1, 10),     Rational(1, 100),     Rational(1, 1000),
      Rational(1, 10000), Rational(1, 100000), Rational(1, 1000000),
  };
  return steps;
}

// --------------------------------------------------------------- runners ---

std::function<double(double)> ic_function(const std::string& id) {
  if (id == "expsin") return [](double x) { return std::exp(std::sin(x)); };
  if (id == "sin") return [](double x) { return std::sin(x); };
  if (id == "sin5") return [](double x) { return std::sin(5 * x); };
  if (id == "indicator")
    return [](double x) {
      const double y = wrap_angle(x);
      return (y >= kTwoPi / 4 && y <= 3 * kTwoPi / 4) ? 1.0 : 0.0;
    };
  throw ConfigError("unknown initial condition '" + id + "'");
}

std::vector<OdeAccuracyRow> run_ode_accuracy(int p, const std::string& mu, const std::string& nu,
                                             Mode mode, const std::vector<Rational>& taus,
                                             double T) {
  const auto poly = taylor_polynomial(p);
  const auto cfg = make_config(p, mu, nu);
  const MatD L = ode3_generator();
  const auto ip = InnerProduct<double>::uniform(3);

  std::vector<OdeAccuracyRow> out;
  for (const Rational& tau_q : taus) {
    const double tau = tau_q.to_double();
    MatD Z = L;
    Z *= tau;
    const MatD R = one_step_operator(poly, Z, cfg, mode, ip);
    VecD u = {1, 1, 1};
    const StepSchedule sched = step_schedule(T, tau);
    for (long n = 0; n < sched.full_steps; ++n) u = R.apply(u);
    if (sched.remainder > 0) {
      MatD Zr = L;
      Zr *= sched.remainder;
      u = one_step_operator(poly, Zr, cfg, mode, ip).apply(u);
    }
    const VecD ref = ode3_exact(T);
    double err_sq = 0;
    for (int i = 0; i < 3; ++i) err_sq += (u[i] - ref[i]) * (u[i] - ref[i]);
    if (!std::isfinite(err_sq)) throw NumericalError("ODE accuracy run diverged");
    out.push_back({tau_q, std::sqrt(err_sq)});
  }
  return out;
}

LinearRunResult run_linear_dg(int p, int k, int n_cells, const std::string& mu,
                              const std::string& nu, Mode mode, const Rational& cfl, double alpha,
                              const std::string& ic, double T, bool record_series) {
  const DGSpace space(n_cells, k);
  const auto ip = mass_inner_product(space);
  const auto poly = taylor_polynomial(p);
  const auto cfg = make_config(p, mu, nu);
  const LinearOp L = advection_linear_op(space, alpha);
  const double tau = cfl.to_double() * space.h;

  LinearRunResult res;
  res.final_state = l2_project(ic_function(ic), space);
  VecD& u = res.final_state.coeffs;
  const double norm0 = norm_of(u, ip);

  const auto record = [&](double t) {
    const double nrm = norm_of(u, ip);
    if (!std::isfinite(nrm)) throw NumericalError("linear DG run diverged at t = " + std::to_string(t));
    if (record_series) {
      res.t.push_back(t);
      res.norm_delta.push_back(nrm - norm0);
    }
  };

  record(0);
  const StepSchedule sched = step_schedule(T, tau);
  const LinearOp Z = scaled_op(L, tau);
  for (long n = 1; n <= sched.full_steps; ++n) {
    u = one_step_apply(poly, Z, cfg, mode, u);
    record(static_cast<double>(n) * tau);
  }
  if (sched.remainder > 0) {
    u = one_step_apply(poly, scaled_op(L, sched.remainder), cfg, mode, u);
    record(T);
  }
  if (!std::isfinite(norm_of(u, ip))) throw NumericalError("linear DG run diverged");
  return res;
}

std::vector<AdvectionLadderRow> run_advection_accuracy(int p, int k, const std::string& mu,
                                                       const std::string& nu, Mode mode,
                                                       const Rational& cfl, double T,
                                                       const std::vector<int>& cells,
                                                       const std::string& ic) {
  const auto f = ic_function(ic);
  const auto exact = [&f, T](double x) { return f(wrap_angle(x - T)); };
  std::vector<AdvectionLadderRow> out;
  for (int N : cells) {
    const auto run = run_linear_dg(p, k, N, mu, nu, mode, cfl, -1.0, ic, T, false);
    out.push_back({N, error_norms(run.final_state, exact, DGSpace(N, k))});
  }
  return out;
}

BurgersRun run_burgers(int p, int k, int n_cells, const Rational& cfl, double T,
                       BurgersFilter filter, const std::string& fixed_nu) {
  const ButcherTableau tab = p == 2   ? heun2()
                             : p == 5 ? fehlberg5()
                                      : throw ConfigError("Burgers runs support p = 2 or p = 5");
  const DGSpace space(n_cells, k);
  const auto ip = mass_inner_product(space);
  const int k_star = default_k_star(p);
  const double nu_fixed = parse_rational(fixed_nu, "nu").to_double();
  const auto rhs = [&space](const VecD& v) { return burgers_rhs({v}, space).coeffs; };

  BurgersRun res;
  res.final_state = l2_project(ic_function("sin"), space);
  VecD& u = res.final_state.coeffs;

  LinearOp D;
  double norm_D = 0;
  const auto set_tau = [&](double tau) {
    if (filter == BurgersFilter::None) return;
    D = build_default_D_op(space, tau, k_star);
    norm_D = operator_norm_float_op(D, ip, {1e-9, 1000000});
  };

  const auto advance = [&](double tau, double t_next) {
    const VecD u_plus = nonlinear_step(tab, rhs, tau, u);
    AdaptiveFilterReport rep;
    switch (filter) {
      case BurgersFilter::None:
        rep.nu = 0;
        rep.norm_before = norm_of(u, ip);
        rep.norm_after = norm_of(u_plus, ip);
        rep.filter_inactive = true;
        u = u_plus;
        break;
      case BurgersFilter::Adaptive: {
        auto [filtered, r] = apply_adaptive_filter(u, u_plus, D, norm_D, ip);
        rep = r;
        u = std::move(filtered);
        break;
      }
      case BurgersFilter::FixedNu: {
        rep.nu = nu_fixed;
        rep.norm_before = norm_of(u, ip);
        rep.guarantee_held = std::fabs(nu_fixed) * norm_D * norm_D <= 1;
        VecD w = D.apply(u_plus);
        w = D.apply_adjoint(w);
        u = u_plus;
        for (size_t i = 0; i < u.size(); ++i) u[i] += nu_fixed * w[i];
        rep.norm_after = norm_of(u, ip);
        break;
      }
    }
    if (!std::isfinite(rep.norm_after)) throw NumericalError("Burgers run diverged");
    res.t.push_back(t_next);
    res.reports.push_back(rep);
  };

  const double tau = cfl.to_double() * space.h;
  const StepSchedule sched = step_schedule(T, tau);
  set_tau(tau);
  for (long n = 1; n <= sched.full_steps; ++n) advance(tau, static_cast<double>(n) * tau);
  if (sched.remainder > 0) {
    set_tau(sched.remainder);
    advance(sched.remainder, T);
  }
  return res;
}

// ------------------------------------------------------------ subcommands --

std::string cmd_critical_table() {
  std::ostringstream csv;
  csv << "p,nu0,mu0\n";
  for (int p = 1; p <= 6; ++p) {
    const auto exp = expand_energy(taylor_polynomial(p));
    const auto bounds = critical_bounds(exp, p);
    csv << p << ',' << bounds.nu0.str() << ','
        << (bounds.mu0 ? bounds.mu0->str() : std::string("-")) << '\n';
  }
  return csv.str();
}

std::string cmd_norm_table(const ExperimentConfig& cfg) {
  const std::string system = cfg.system.empty() ? "ode3" : cfg.system;
  const bool dg = system == "dg";
  if (!dg && system != "ode3") throw ConfigError("norm-table system must be ode3 or dg");
  const auto& rows = dg ? dg_norm_rows() : ode_norm_rows();
  const int n_cells = cfg.n_cells > 0 ? cfg.n_cells : 10;

  std::ostringstream csv;
  csv << "system,p,k,mu,nu,mode,step,value,verdict\n";
  for (const auto& row : rows) {
    if (cfg.p > 0 && row.p != cfg.p) continue;
    for (const Rational& step : norm_table_steps()) {
      const NormCell cell = norm_table_cell(system, row.p, row.p, n_cells, row.mu, row.nu,
                                            row.mode, step, cfg.exact);
      csv << system << ',' << row.p << ',' << (dg ? std::to_string(row.p) : std::string("-"))
          << ',' << row.mu << ',' << row.nu << ',' << mode_name(row.mode) << ',' << step.str()
          << ',' << cell.rendered << ','
          << (cell.consulted_exact
                  ? (*cell.verdict == Verdict::StronglyStable ? "stable" : "unstable")
                  : "")
          << '\n';
    }
  }
  return csv.str();
}

namespace {

std::string accuracy_ode3(const ExperimentConfig& cfg) {
  if (cfg.p < 1) throw ConfigError("accuracy ode3 requires --p");
  const Mode mode = parse_mode(cfg.mode.empty() ? "modified" : cfg.mode);
  const double T = cfg.T >= 0 ? cfg.T : 1.0;
  std::vector<Rational> taus;
  const Rational base = cfg.tau.empty() ? Rational(1, 20) : parse_rational(cfg.tau, "tau");
  for (int j = 0; j < 5; ++j) taus.push_back(base / Rational(1L << j));
  const auto rows = run_ode_accuracy(cfg.p, cfg.mu, cfg.nu, mode, taus, T);

  std::ostringstream csv;
  csv << "tau,error,order\n";
  for (size_t i = 0; i < rows.size(); ++i)
    csv << rows[i].tau.str() << ',' << format_sci(rows[i].error) << ','
        << (i == 0 ? std::string("-") : order_entry(rows[i - 1].error, rows[i].error)) << '\n';
  return csv.str();
}

std::string accuracy_advection(const ExperimentConfig& cfg) {
  if (cfg.p < 1) throw ConfigError("accuracy advection requires --p");
  const auto par = dg_params(cfg, cfg.p, cfg.p - 1, 0, "1/50", 1.0, "expsin");
  const Mode mode = parse_mode(cfg.mode.empty() ? "modified" : cfg.mode);
  std::vector<int> cells = {20, 40, 80, 160, 320};
  if (cfg.n_cells > 0) cells = {cfg.n_cells};
  const auto rows =
      run_advection_accuracy(par.p, par.k, cfg.mu, cfg.nu, mode, par.cfl, par.T, cells, par.ic);

  std::ostringstream csv;
  csv << "N,error_l2,order\n";
  for (size_t i = 0; i < rows.size(); ++i)
    csv << rows[i].n_cells << ',' << format_sci(rows[i].errors.l2) << ','
        << (i == 0 ? std::string("-") : order_entry(rows[i - 1].errors.l2, rows[i].errors.l2))
        << '\n';
  return csv.str();
}

BurgersFilter burgers_filter_kind(const std::string& mode) {
  if (mode.empty() || mode == "adaptive") return BurgersFilter::Adaptive;
  if (mode == "plain") return BurgersFilter::None;
  if (mode == "filtered") return BurgersFilter::FixedNu;
  throw ConfigError("burgers mode must be plain|adaptive|filtered");
}

std::string accuracy_burgers(const ExperimentConfig& cfg) {
  const int p = cfg.p > 0 ? cfg.p : 2;
  const auto par = dg_params(cfg, p, p == 5 ? 4 : 2, 0, "1/20", 0.3, "sin");
  const BurgersFilter filter = burgers_filter_kind(cfg.mode);
  std::vector<int> cells;
  if (cfg.n_cells > 0)
    cells = {cfg.n_cells};
  else
    for (int N = p == 5 ? 20 : 40; N <= (p == 5 ? 160 : 2560); N *= 2) cells.push_back(N);

  std::ostringstream csv;
  csv << "N,error_l1,error_l2,error_linf,order\n";
  double prev_l2 = 0;
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto run = run_burgers(par.p, par.k, cells[i], par.cfl, par.T, filter, cfg.nu);
    const auto exact = [&par](double x) { return burgers_reference(x, par.T); };
    const ErrorNorms err = error_norms(run.final_state, exact, DGSpace(cells[i], par.k));
    csv << cells[i] << ',' << format_sci(err.l1) << ',' << format_sci(err.l2) << ','
        << format_sci(err.linf) << ','
        << (i == 0 ? std::string("-") : order_entry(prev_l2, err.l2)) << '\n';
    prev_l2 = err.l2;
  }
  return csv.str();
}

std::string series_csv(const LinearRunResult& run) {
  std::ostringstream csv;
  csv << "step,t,delta\n";
  for (size_t n = 0; n < run.t.size(); ++n)
    csv << n << ',' << format_sci(run.t[n]) << ',' << format_sci(run.norm_delta[n]) << '\n';
  return csv.str();
}

}  // namespace

std::string cmd_accuracy(const ExperimentConfig& cfg) {
  const std::string system = cfg.system.empty() ? "ode3" : cfg.system;
  if (system == "ode3") return accuracy_ode3(cfg);
  if (system == "advection") return accuracy_advection(cfg);
  if (system == "burgers") return accuracy_burgers(cfg);
  throw ConfigError("accuracy system must be ode3, advection or burgers");
}

MultiOutput cmd_energy(const ExperimentConfig& cfg) {
  const int p = cfg.p > 0 ? cfg.p : 1;
  const auto par = dg_params(cfg, p, p, 80, "1/20", 10.0, "expsin");
  const Mode mode = parse_mode(cfg.mode.empty() ? "plain" : cfg.mode);
  const auto run = run_linear_dg(par.p, par.k, par.n_cells, cfg.mu, cfg.nu, mode, par.cfl,
                                 par.alpha, par.ic, par.T, true);
  return {series_csv(run),
          {{".profile.csv", dg_samples_csv(run.final_state, DGSpace(par.n_cells, par.k))}}};
}

MultiOutput cmd_discontinuous(const ExperimentConfig& cfg) {
  const auto par = dg_params(cfg, 3, 2, 80, "1/20", kTwoPi, "indicator");
  const std::string nu = cfg.nu == "0" && cfg.mu == "0" ? "-10" : cfg.nu;

  const auto run_mode = [&](Mode mode, const std::string& m, const std::string& n) {
    return run_linear_dg(par.p, par.k, par.n_cells, m, n, mode, par.cfl, par.alpha, par.ic, par.T,
                         false);
  };
  const auto plain = run_mode(Mode::Plain, "0", "0");
  const auto modified = run_mode(Mode::Modified, cfg.mu, nu);
  const auto filtered = run_mode(Mode::Filtered, cfg.mu, nu);

  const DGSpace space(par.n_cells, par.k);
  std::ostringstream csv;
  csv << "x,plain,modified,filtered\n";
  const int samples = 10;
  for (int j = 0; j < space.N; ++j)
    for (int s = 0; s < samples; ++s) {
      const double x = space.cell_left(j) + (s + 0.5) * space.h / samples;
      csv << format_sci(x) << ',' << format_sci(evaluate(plain.final_state, space, x)) << ','
          << format_sci(evaluate(modified.final_state, space, x)) << ','
          << format_sci(evaluate(filtered.final_state, space, x)) << '\n';
    }
  return {csv.str(), {}};
}

MultiOutput cmd_burgers(const ExperimentConfig& cfg) {
  const int p = cfg.p > 0 ? cfg.p : 2;
  const auto par = dg_params(cfg, p, p == 5 ? 4 : 2, 80, "1/20", 1.5, "sin");
  if (par.ic != "sin") throw ConfigError("burgers runs use the sin initial condition");
  const BurgersFilter filter = burgers_filter_kind(cfg.mode);
  const auto run = run_burgers(par.p, par.k, par.n_cells, par.cfl, par.T, filter, cfg.nu);

  std::string report = adaptive_report_csv_header();
  for (size_t n = 0; n < run.reports.size(); ++n)
    report += adaptive_report_csv_row(static_cast<long>(n) + 1, run.t[n], run.reports[n]);
  return {std::move(report),
          {{".profile.csv", dg_samples_csv(run.final_state, DGSpace(par.n_cells, par.k))}}};
}

}  // namespace svrk
