// qclock: figure sweeps, single-point evaluation and the oracle self-test.
// Links only the C interface of libqclock.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qclock/qclock.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 1;
constexpr int kExitSelftest = 2;

std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int report_failure(qclock_status status) {
  std::cerr << "error: " << qclock_status_string(status) << ": " << qclock_last_error() << "\n";
  return kExitParameter;
}

struct SweepFlags {
  std::optional<int> n;
  std::optional<int> k;
  std::optional<double> q;
  std::optional<double> nu;
  std::optional<double> theta;
  std::optional<double> omega_delta;
  std::optional<int> steps;
  std::optional<double> q_max;
  std::optional<double> nu_max;
  std::string out;
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--out", f.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case));
}

int run_figure(qclock_figure figure, const SweepFlags& f) {
  qclock_sweep_options opts;
  qclock_status st = qclock_sweep_options_init(figure, &opts);
  if (st != QCLOCK_OK) return report_failure(st);
  if (f.n) opts.n = *f.n;
  if (f.k) opts.k = *f.k;
  if (f.q) opts.q = *f.q;
  if (f.nu) opts.nu = *f.nu;
  if (f.theta) opts.theta = *f.theta;
  if (f.omega_delta) opts.omega_delta = *f.omega_delta;
  if (f.steps) opts.steps = *f.steps;
  if (f.q_max) opts.q_max = *f.q_max;
  if (f.nu_max) opts.nu_max = *f.nu_max;

  qclock_sweep* sweep = nullptr;
  st = qclock_sweep_run(figure, &opts, &sweep);
  if (st != QCLOCK_OK) return report_failure(st);

  const qclock_format format = f.format == "json" || f.format == "JSON" ? QCLOCK_FORMAT_JSON
                                                                        : QCLOCK_FORMAT_CSV;
  if (!f.out.empty()) {
    st = qclock_sweep_write(sweep, format, f.out.c_str());
  } else {
    size_t needed = 0;
    st = qclock_sweep_render(sweep, format, nullptr, 0, &needed);
    if (st == QCLOCK_OK) {
      std::string text(needed, '\0');
      st = qclock_sweep_render(sweep, format, text.data(), text.size(), &needed);
      if (st == QCLOCK_OK) std::cout << text.c_str();
    }
  }
  qclock_sweep_destroy(sweep);
  return st == QCLOCK_OK ? kExitOk : report_failure(st);
}

struct EvalFlags {
  std::string family;
  int n = 2;
  std::optional<int> k;
  double q = 0.0;
  double nu = 0.0;
  double theta = 0.7853981633974483;
  double omega_delta = 0.0;
  std::optional<double> estimate;
  double omega = 1.0;
  std::string format = "text";
  std::string out;
};

int run_eval(const EvalFlags& f) {
  std::vector<std::pair<std::string, std::string>> fields;
  qclock_probability prob{};
  qclock_status st = QCLOCK_OK;
  const std::string fam = f.family == "z" || f.family == "Z" ? "Z"
                          : f.family == "w" || f.family == "W" ? "W"
                                                               : "Bipartite";
  fields.emplace_back("family", fam);

  if (fam == "Z") {
    qclock_optimal_k_result opt{};
    st = qclock_optimal_k(f.n, f.q, f.nu, &opt);
    if (st != QCLOCK_OK) return report_failure(st);
    const int k = f.k.value_or(opt.k_opt);
    st = qclock_prob_pos_z(f.n, k, f.q, f.nu, f.omega_delta, &prob);
    if (st != QCLOCK_OK) return report_failure(st);
    fields.emplace_back("n", std::to_string(f.n));
    fields.emplace_back("k", std::to_string(k));
    fields.emplace_back("k_opt", std::to_string(opt.k_opt));
    fields.emplace_back("y_formula_k", opt.y_formula_k > 0 ? std::to_string(opt.y_formula_k) : "");
  } else if (fam == "W") {
    st = qclock_prob_pos_w(f.n, f.q, f.nu, f.omega_delta, &prob);
    if (st != QCLOCK_OK) return report_failure(st);
    fields.emplace_back("n", std::to_string(f.n));
  } else {
    st = qclock_prob_pos_bipartite(f.theta, f.q, f.nu, f.omega_delta, &prob);
    if (st != QCLOCK_OK) return report_failure(st);
    fields.emplace_back("theta", num(f.theta));
  }
  fields.emplace_back("q", num(f.q));
  fields.emplace_back("nu", num(f.nu));
  fields.emplace_back("omega_delta", num(f.omega_delta));
  fields.emplace_back("p_pos", num(prob.p_pos));
  fields.emplace_back("p_neg", num(prob.p_neg));
  fields.emplace_back("amplitude", num(prob.amplitude));
  if (fam == "Bipartite") {
    double c = 0.0;
    st = qclock_bipartite_concurrence(f.theta, f.q, f.nu, &c);
    if (st != QCLOCK_OK) return report_failure(st);
    fields.emplace_back("concurrence", num(c));
  }

  std::vector<double> candidates;
  if (f.estimate) {
    double buf[4];
    size_t count = 0;
    st = qclock_estimate_delta(*f.estimate, prob.amplitude, f.omega, buf, 4, &count);
    if (st != QCLOCK_OK) return report_failure(st);
    candidates.assign(buf, buf + count);
    fields.emplace_back("p_obs", num(*f.estimate));
    fields.emplace_back("omega", num(f.omega));
  }

  std::ostringstream os;
  if (f.format == "json") {
    os << "{";
    for (size_t i = 0; i < fields.size(); ++i) {
      const auto& [key, value] = fields[i];
      const bool text = key == "family";
      os << (i ? ", " : "") << "\"" << key << "\": ";
      if (text) {
        os << "\"" << value << "\"";
      } else {
        os << (value.empty() ? "null" : value);
      }
    }
    if (f.estimate) {
      os << ", \"delta_candidates\": [";
      for (size_t i = 0; i < candidates.size(); ++i) os << (i ? ", " : "") << num(candidates[i]);
      os << "]";
    }
    os << "}\n";
  } else {
    for (const auto& [key, value] : fields) os << key << "=" << value << "\n";
    if (f.estimate) {
      os << "delta_candidates=";
      for (size_t i = 0; i < candidates.size(); ++i) os << (i ? ";" : "") << num(candidates[i]);
      os << "\n";
    }
  }

  if (f.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    if (!(file << os.str())) {
      std::cerr << "error: cannot write '" << f.out << "'\n";
      return kExitParameter;
    }
  }
  return kExitOk;
}

int run_selftest(unsigned long long seed) {
  qclock_selftest_report report{};
  const qclock_status st = qclock_selftest(seed, &report);
  if (st != QCLOCK_OK) {
    report_failure(st);
    return kExitSelftest;
  }
  std::cout << "cases=" << report.cases << "\n"
            << "failures=" << report.failures << "\n"
            << "max_rho_error=" << num(report.max_rho_error) << "\n"
            << "max_prob_error=" << num(report.max_prob_error) << "\n"
            << "max_family_error=" << num(report.max_family_error) << "\n"
            << "seconds=" << num(report.seconds) << "\n";
  for (size_t i = 0; i < report.failures && i < 20; ++i) {
    std::cout << "FAIL " << qclock_selftest_failure(i) << "\n";
  }
  std::cout << (report.passed ? "selftest: PASS" : "selftest: FAIL") << "\n";
  return report.passed ? kExitOk : kExitSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic multipartite clock-synchronization sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qclock_version());

  SweepFlags fig1, fig2, fig3, fig4;
  auto* c1 = app.add_subcommand("fig1", "Probability vs. atom count n for W and optimal-Z states");
  c1->add_option("--n", fig1.n, "Largest atom count (default 20)")->check(CLI::Range(2, 100000));
  c1->add_option("--k", fig1.k, "Fix k for the Z family instead of optimising it");
  c1->add_option("--q", fig1.q, "Acceleration parameter (default 0.9)");
  c1->add_option("--nu", fig1.nu, "Effective coupling (default 0.1)");
  c1->add_option("--omega-delta", fig1.omega_delta, "Phase Omega*delta (default 2pi)");
  add_output_flags(c1, fig1);

  auto* c2 = app.add_subcommand("fig2", "Probability and concurrence vs. theta, bipartite state");
  c2->add_option("--steps", fig2.steps, "Grid points over [0, pi/2] (default 1000)");
  c2->add_option("--q", fig2.q, "Acceleration parameter (default 0.9)");
  c2->add_option("--nu", fig2.nu, "Effective coupling (default 0.1)");
  c2->add_option("--omega-delta", fig2.omega_delta, "Phase Omega*delta (default 2pi)");
  add_output_flags(c2, fig2);

  auto* c3 = app.add_subcommand("fig3", "Probability vs. q for bipartite, W and optimal-Z states");
  c3->add_option("--steps", fig3.steps, "Grid points (default 200)");
  c3->add_option("--n", fig3.n, "Multipartite atom count (default 20)");
  c3->add_option("--k", fig3.k, "Fix k for the Z family instead of optimising it");
  c3->add_option("--nu", fig3.nu, "Effective coupling (default 0.1)");
  c3->add_option("--theta", fig3.theta, "Bipartite state angle (default pi/4)");
  c3->add_option("--omega-delta", fig3.omega_delta, "Phase Omega*delta (default 2pi)");
  c3->add_option("--q-max", fig3.q_max, "Last grid point (default 1-1e-6)");
  add_output_flags(c3, fig3);

  auto* c4 = app.add_subcommand("fig4", "Probability vs. nu for bipartite, W and optimal-Z states");
  c4->add_option("--steps", fig4.steps, "Grid points (default 200)");
  c4->add_option("--n", fig4.n, "Multipartite atom count (default 20)");
  c4->add_option("--k", fig4.k, "Fix k for the Z family instead of optimising it");
  c4->add_option("--q", fig4.q, "Acceleration parameter (default 0.8)");
  c4->add_option("--theta", fig4.theta, "Bipartite state angle (default pi/4)");
  c4->add_option("--omega-delta", fig4.omega_delta, "Phase Omega*delta (default 2pi)");
  c4->add_option("--nu-max", fig4.nu_max, "Last grid point (default 1)");
  add_output_flags(c4, fig4);

  EvalFlags ev;
  auto* ce = app.add_subcommand("eval", "Evaluate one parameter point");
  ce->add_option("--family", ev.family, "z, w or bipartite")
      ->required()
      ->check(CLI::IsMember({"z", "w", "bipartite"}, CLI::ignore_case));
  ce->add_option("--n", ev.n, "Atom count (Z and W)");
  ce->add_option("--k", ev.k, "Excited atoms (Z); optimal when omitted");
  ce->add_option("--q", ev.q, "Acceleration parameter");
  ce->add_option("--nu", ev.nu, "Effective coupling");
  ce->add_option("--theta", ev.theta, "Bipartite state angle");
  ce->add_option("--omega-delta", ev.omega_delta, "Phase Omega*delta");
  ce->add_option("--estimate", ev.estimate, "Observed P(|pos>) to invert into clock offsets");
  ce->add_option("--omega", ev.omega, "Energy gap used to convert phases into offsets (default 1)");
  ce->add_option("--format", ev.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}, CLI::ignore_case));
  ce->add_option("--out", ev.out, "Output file (stdout when omitted)");

  unsigned long long seed = 20240501ULL;
  auto* cs = app.add_subcommand("selftest", "Closed form vs. brute-force oracle equivalence");
  cs->add_option("--seed", seed, "Seed for the randomised parameter grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParameter;
  }

  if (*c1) return run_figure(QCLOCK_FIG1, fig1);
  if (*c2) return run_figure(QCLOCK_FIG2, fig2);
  if (*c3) return run_figure(QCLOCK_FIG3, fig3);
  if (*c4) return run_figure(QCLOCK_FIG4, fig4);
  if (*ce) {
    for (auto& c : ev.family) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto& c : ev.format) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return run_eval(ev);
  }
  if (*cs) return run_selftest(seed);
  return kExitParameter;
}
