#include "phonoblock/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "phonoblock/optimal.hpp"
#include "phonoblock/sweep.hpp"
#include "phonoblock/verify.hpp"

namespace phonoblock {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

int do_sweep(const std::string& config_path, const std::string& csv_path,
             std::size_t workers, bool timestamp, bool require_tau,
             std::ostream& out, std::ostream& err) {
  SweepConfig cfg = load_config(config_path);
  if (require_tau && !cfg.wants(Observable::kG2Tau)) {
    throw ConfigError("g2tau needs a tau axis and the g2_tau observable");
  }
  const SweepResult result = run_sweep(cfg, workers);

  std::ofstream file;
  std::ostream* sink = &out;
  if (csv_path != "-") {
    file.open(csv_path);
    if (!file) throw ConfigError("cannot write " + csv_path);
    sink = &file;
  }
  write_csv(result, *sink, timestamp);
  sink->flush();
  if (!*sink) throw ConfigError("write failed for " + csv_path);

  err << fmt("%zu rows, %zu with errors, %.2f s\n", result.rows.size(),
             result.failed(), result.wall_seconds);
  return kExitOk;
}

void print_single(double j, std::ostream& out) {
  const double gamma = 1.0;
  for (Branch b : {Branch::kPlus, Branch::kMinus}) {
    const auto opt = single_drive_optimal(j, gamma, b);
    const auto q = quadratic_coeffs(opt.u_opt, j, opt.delta_opt, gamma);
    out << fmt("branch %s: delta_opt = %.6f  u_opt = %.6f  |a0| = %.3e\n",
               branch_name(b), opt.delta_opt, opt.u_opt, std::abs(q.a0));
  }
}

void print_two(double u, double j, double delta, std::ostream& out) {
  const double gamma = 1.0;
  const auto [plus, minus] = two_drive_optimal(u, j, delta, gamma);
  bool printed_ok = true;
  bool double_ok = true;
  for (const auto& r : {plus, minus}) {
    MechParams p;
    p.delta = delta;
    p.u = u;
    p.j = j;
    p.gamma = gamma;
    p.omega1 = 0.1;
    p.omega2 = r.zeta * p.omega1;
    p.phi = r.phi;
    const auto as_printed = determinant_check(p, X22Phase::kAsPrinted);
    const auto doubled = determinant_check(p, X22Phase::kDoublePhase);
    printed_ok = printed_ok && as_printed.passed;
    double_ok = double_ok && doubled.passed;
    out << fmt("branch %s: zeta = %.6f  phi = %.6f  phi/pi = %.6f\n",
               branch_name(r.branch), r.zeta, r.phi, r.phi_over_pi());
    out << fmt("  |det|/max|x|^3: x22 as printed %.3e, x22 with exp(-2i phi) %.3e\n",
               as_printed.relative, doubled.relative);
  }
  out << "determinant: x22 as printed " << (printed_ok ? "passes" : "fails")
      << ", exp(-2i phi) variant " << (double_ok ? "passes" : "fails") << '\n';
}

int do_verify(std::ostream& out) {
  bool all = true;
  for (const auto& c : run_verification()) {
    all = all && c.passed;
    if (c.informational) {
      out << fmt("info %-22s %.3e  ", c.name.c_str(), c.value) << c.detail << '\n';
      continue;
    }
    out << fmt("%-4s %-22s %.3e (tol %.1e)  ", c.passed ? "ok" : "FAIL",
               c.name.c_str(), c.value, c.tolerance)
        << c.detail << '\n';
  }
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Phonon blockade in coupled nonlinear resonators", "phonoblock"};
  app.require_subcommand(1);

  std::string config_path, csv_path = "-";
  std::size_t workers = 0;
  bool no_timestamp = false;

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep to CSV");
  auto* g2tau = app.add_subcommand("g2tau", "Run a delayed-correlation sweep to CSV");
  for (auto* sub : {sweep, g2tau}) {
    sub->add_option("config", config_path, "Sweep config file")->required();
    sub->add_option("-o,--output", csv_path, "CSV path, '-' for stdout");
    sub->add_option("-w,--workers", workers,
                    "Worker threads (default: PHONOBLOCK_WORKERS or all cores)");
    sub->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp comment");
  }

  auto* optimal = app.add_subcommand("optimal", "Closed-form optimal conditions");
  optimal->require_subcommand(1);
  double j = 0.0, u = 0.0, delta = 0.0;
  auto* single = optimal->add_subcommand("single", "Single-drive optimum");
  single->add_option("--j", j, "Coupling J / gamma")->required();
  auto* two = optimal->add_subcommand("two", "Two-drive optimum");
  two->add_option("--u", u, "Kerr U / gamma")->required();
  two->add_option("--j", j, "Coupling J / gamma")->required();
  two->add_option("--delta", delta, "Detuning / gamma")->required();

  auto* verify = app.add_subcommand("verify", "Run the oracle self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "phonoblock: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      return do_sweep(config_path, csv_path, workers, !no_timestamp, false, out, err);
    }
    if (g2tau->parsed()) {
      return do_sweep(config_path, csv_path, workers, !no_timestamp, true, out, err);
    }
    if (single->parsed()) {
      print_single(j, out);
      return kExitOk;
    }
    if (two->parsed()) {
      print_two(u, j, delta, out);
      return kExitOk;
    }
    if (verify->parsed()) return do_verify(out);
  } catch (const ConfigError& e) {
    err << "phonoblock: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "phonoblock: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "phonoblock: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace phonoblock
