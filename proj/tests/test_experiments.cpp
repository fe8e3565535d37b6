#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "svrk/csv.hpp"
#include "svrk/experiments.hpp"

using svrk::ExperimentConfig;
using svrk::Mode;
using svrk::Rational;
using svrk::VecD;

TEST_CASE("json config merging") {
  ExperimentConfig base;
  base.p = 3;
  base.nu = "1/24";

  const auto merged = svrk::merge_json(base, R"({"system": "ode3", "p": 4, "T": 2.5})");
  CHECK(merged.system == "ode3");
  CHECK(merged.p == 4);
  CHECK(merged.T == 2.5);
  CHECK(merged.nu == "1/24");  // untouched keys survive

  CHECK_THROWS_AS(svrk::merge_json(base, "{"), svrk::ConfigError);
  CHECK_THROWS_AS(svrk::merge_json(base, "[1,2]"), svrk::ConfigError);
  CHECK_THROWS_AS(svrk::merge_json(base, R"({"p": "three"})"), svrk::ConfigError);
}

TEST_CASE("mode parsing") {
  CHECK(svrk::parse_mode("plain") == Mode::Plain);
  CHECK(svrk::parse_mode("modified") == Mode::Modified);
  CHECK(svrk::parse_mode("filtered") == Mode::Filtered);
  CHECK_THROWS_AS(svrk::parse_mode("midified"), svrk::ConfigError);
}

TEST_CASE("decay system and its exact solution") {
  const auto u0 = svrk::ode3_exact(0);
  CHECK(u0[0] == 1.0);
  CHECK(u0[1] == 1.0);
  CHECK(u0[2] == 1.0);

  // (1 - 4t + 2t^2, 1 - 2t, 1) e^{-t}
  const double t = 0.7;
  const auto u = svrk::ode3_exact(t);
  const double e = std::exp(-t);
  CHECK(u[0] == doctest::Approx((1 - 4 * t + 2 * t * t) * e).epsilon(1e-14));
  CHECK(u[1] == doctest::Approx((1 - 2 * t) * e).epsilon(1e-14));
  CHECK(u[2] == doctest::Approx(e).epsilon(1e-14));

  // the closed form satisfies u' = L u (checked at the analytic level)
  const auto L = svrk::ode3_generator();
  const double h = 1e-6;
  const auto up = svrk::ode3_exact(t + h);
  const auto um = svrk::ode3_exact(t - h);
  const auto lu = L.apply(u);
  for (int i = 0; i < 3; ++i)
    CHECK((up[i] - um[i]) / (2 * h) == doctest::Approx(lu[i]).epsilon(1e-7));

  const auto sys = svrk::ode3_system(Rational(1, 100));
  CHECK(sys.z(0, 1) == doctest::Approx(-0.02).epsilon(1e-15));
  CHECK(sys.z_exact(0, 1) == Rational(-1, 50));
  CHECK(sys.ip.dim() == 3);
}

TEST_CASE("superviscosity configs pick up the leading index") {
  const auto c2 = svrk::make_config(2, "-1/4", "-1/8");
  CHECK(c2.k_star == 2);
  CHECK(c2.mu == doctest::Approx(-0.25).epsilon(1e-15));
  const auto c5 = svrk::make_config_rational(5, "0", "-1/720");
  CHECK(c5.k_star == 3);
  CHECK(c5.nu == Rational(-1, 720));
  CHECK_THROWS_AS(svrk::make_config(2, "zebra", "0"), svrk::ConfigError);
}

TEST_CASE("critical coefficient table") {
  CHECK(svrk::cmd_critical_table() ==
        "p,nu0,mu0\n"
        "1,-1/2,-\n"
        "2,-1/8,-1/4\n"
        "3,1/24,-\n"
        "4,1/144,1/144\n"
        "5,-1/720,-\n"
        "6,-1/5760,-1/4800\n");
}

TEST_CASE("norm table cells cross the certificate threshold correctly") {
  // coarse step: the float value is decisive on its own
  auto cell = svrk::norm_table_cell("ode3", 1, -1, 0, "0", "0", Mode::Plain, Rational(1, 10), false);
  CHECK(svrk::format_sci(cell.value) == "1.7182E-02");
  CHECK_FALSE(cell.consulted_exact);
  CHECK(cell.rendered == "1.7182E-02");

  // tiny gap: certificate consulted, verdict unstable, float value kept
  cell = svrk::norm_table_cell("ode3", 2, -1, 0, "0", "0", Mode::Plain, Rational(1, 1000), false);
  CHECK(cell.consulted_exact);
  REQUIRE(cell.verdict.has_value());
  CHECK(*cell.verdict == svrk::Verdict::NotStronglyStable);
  CHECK(cell.rendered == svrk::format_sci(cell.value));

  // certified stable: rendered as a bound, not a noise-level float
  cell = svrk::norm_table_cell("ode3", 1, -1, 0, "0", "-1.01/2", Mode::Modified,
                               Rational(1, 100000), false);
  CHECK(cell.consulted_exact);
  REQUIRE(cell.verdict.has_value());
  CHECK(*cell.verdict == svrk::Verdict::StronglyStable);
  CHECK(cell.rendered == "≤0");

  // forcing the certificate at a coarse step keeps the float rendering when
  // the operator is genuinely expanding
  cell = svrk::norm_table_cell("ode3", 1, -1, 0, "0", "0", Mode::Plain, Rational(1, 10), true);
  CHECK(cell.consulted_exact);
  CHECK(*cell.verdict == svrk::Verdict::NotStronglyStable);
}

TEST_CASE("exact bracket agrees with the float gap where both are reliable") {
  const auto sys = svrk::ode3_system(Rational(1, 10));
  const double fl = svrk::norm_gap_float_sys(sys, 4, "0", "0", Mode::Plain);
  const auto br = svrk::exact_bracket_sys(sys, 4, "0", "0", Mode::Plain,
                                          Rational(1, 10000000000000000L));
  CHECK(fl == doctest::Approx(br.norm_minus_one()).epsilon(1e-9));
  CHECK(svrk::format_sci(br.norm_minus_one()) == "2.2173E-07");

  const auto cert = svrk::certificate_sys(sys, 4, "0", "0", Mode::Plain);
  CHECK(cert.verdict == svrk::Verdict::NotStronglyStable);
}

TEST_CASE("table grids have the documented shapes") {
  CHECK(svrk::ode_norm_rows().size() == 26);
  CHECK(svrk::dg_norm_rows().size() == 36);
  CHECK(svrk::norm_table_steps().size() == 6);
  CHECK(svrk::norm_table_steps().front() == Rational(1, 10));
  CHECK(svrk::norm_table_steps().back() == Rational(1, 1000000));
}

TEST_CASE("initial condition catalogue") {
  const auto expsin = svrk::ic_function("expsin");
  CHECK(expsin(0.5) == doctest::Approx(std::exp(std::sin(0.5))).epsilon(1e-15));
  const auto sin5 = svrk::ic_function("sin5");
  CHECK(sin5(0.3) == doctest::Approx(std::sin(1.5)).epsilon(1e-15));
  const auto ind = svrk::ic_function("indicator");
  CHECK(ind(3.0) == 1.0);
  CHECK(ind(0.5) == 0.0);
  CHECK(ind(3.0 + 4 * 3.14159265358979) == 1.0);  // periodic wrap
  CHECK_THROWS_AS(svrk::ic_function("square"), svrk::ConfigError);
}

TEST_CASE("ODE accuracy reproduces the reference table digits") {
  ExperimentConfig cfg;
  cfg.system = "ode3";
  cfg.p = 3;
  cfg.mu = "0";
  cfg.nu = "-1";
  cfg.mode = "modified";
  CHECK(svrk::cmd_accuracy(cfg) ==
        "tau,error,order\n"
        "1/20,5.2177E-03,-\n"
        "1/40,6.5467E-04,2.99\n"
        "1/80,8.1878E-05,3.00\n"
        "1/160,1.0236E-05,3.00\n"
        "1/320,1.2795E-06,3.00\n");

  cfg.mode = "filtered";
  const std::string filtered = svrk::cmd_accuracy(cfg);
  CHECK(filtered.find("1/320,1.2756E-06,3.00\n") != std::string::npos);

  // dispersive-only coefficients degrade odd p to order p - 1
  cfg.mode = "modified";
  cfg.mu = "1";
  cfg.nu = "0";
  const std::string degraded = svrk::cmd_accuracy(cfg);
  CHECK(degraded.find("1/320,1.2550E-04,2.00\n") != std::string::npos);

  cfg.p = 4;
  cfg.mu = "1";
  cfg.nu = "-1";
  const std::string fourth = svrk::cmd_accuracy(cfg);
  CHECK(fourth.find("1/320,8.2943E-09,4.01\n") != std::string::npos);
}

TEST_CASE("accuracy command validates its inputs") {
  ExperimentConfig cfg;
  cfg.system = "ode3";
  CHECK_THROWS_AS(svrk::cmd_accuracy(cfg), svrk::ConfigError);  // p missing
  cfg.system = "heat";
  cfg.p = 2;
  CHECK_THROWS_AS(svrk::cmd_accuracy(cfg), svrk::ConfigError);
  cfg.system = "ode3";
  cfg.nu = "1/oops";
  CHECK_THROWS_AS(svrk::cmd_accuracy(cfg), svrk::ConfigError);
}

TEST_CASE("advection ladder converges") {
  const auto rows = svrk::run_advection_accuracy(2, 1, "0", "-1/8", Mode::Modified,
                                                 Rational(1, 50), 0.5, {10, 20});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_cells == 10);
  CHECK(rows[1].errors.l2 < rows[0].errors.l2 / 3.0);
}

TEST_CASE("linear DG runs record a norm series") {
  const auto run = svrk::run_linear_dg(2, 1, 10, "0", "0", Mode::Plain, Rational(1, 20), -1.0,
                                       "expsin", 0.5, true);
  REQUIRE(run.t.size() == run.norm_delta.size());
  REQUIRE(run.t.size() >= 2);
  CHECK(run.t.front() == 0.0);
  CHECK(run.norm_delta.front() == 0.0);
  CHECK(run.t.back() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(static_cast<int>(run.final_state.coeffs.size()) == 20);
  // upwind flux dissipates overall on this horizon
  CHECK(run.norm_delta.back() < 0.0);
}

TEST_CASE("energy command emits series plus profile") {
  ExperimentConfig cfg;
  cfg.p = 1;
  cfg.k = 1;
  cfg.n_cells = 8;
  cfg.T = 0.5;
  const auto out = svrk::cmd_energy(cfg);
  CHECK(out.primary.find("step,t,delta\n0,0.0000E+00,0.0000E+00\n") == 0);
  REQUIRE(out.extras.size() == 1);
  CHECK(out.extras[0].first == ".profile.csv");
  CHECK(out.extras[0].second.find("x,u\n") == 0);
}

TEST_CASE("burgers command rejects non-sine initial data") {
  ExperimentConfig cfg;
  cfg.ic = "expsin";
  CHECK_THROWS_AS(svrk::cmd_burgers(cfg), svrk::ConfigError);
  cfg.ic = "sin";
  cfg.p = 7;
  CHECK_THROWS_AS(svrk::cmd_burgers(cfg), svrk::ConfigError);  // only 2 and 5
}

TEST_CASE("burgers adaptive run stays below the initial norm") {
  const auto run = svrk::run_burgers(2, 2, 16, Rational(1, 20), 0.5, svrk::BurgersFilter::Adaptive);
  REQUIRE_FALSE(run.reports.empty());
  for (const auto& rep : run.reports) {
    CHECK(rep.nu <= 0.0);
    CHECK(rep.guarantee_held);
  }
  // every filtered norm is bounded by the norm entering the step
  for (const auto& rep : run.reports) CHECK(rep.norm_after <= rep.norm_before * (1 + 1e-13));
}

TEST_CASE("commands are deterministic") {
  ExperimentConfig cfg;
  cfg.system = "ode3";
  cfg.p = 2;
  const std::string a = svrk::cmd_norm_table(cfg);
  const std::string b = svrk::cmd_norm_table(cfg);
  CHECK(a == b);
  CHECK(a.find("system,p,k,mu,nu,mode,step,value,verdict\n") == 0);

  cfg.p = 3;
  cfg.nu = "-1";
  CHECK(svrk::cmd_accuracy(cfg) == svrk::cmd_accuracy(cfg));
}

TEST_CASE("discontinuous command compares the three stabilizations") {
  ExperimentConfig cfg;
  cfg.n_cells = 10;
  cfg.T = 0.2;
  const auto out = svrk::cmd_discontinuous(cfg);
  CHECK(out.primary.find("x,plain,modified,filtered\n") == 0);
  // 10 samples per cell on 10 cells plus the header
  CHECK(std::count(out.primary.begin(), out.primary.end(), '\n') == 101);
}
