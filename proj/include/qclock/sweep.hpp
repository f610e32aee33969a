#pragma once

// Parameter sweeps behind the figure subcommands, and their CSV/JSON
// emission. Output is deterministic: rows are ordered by grid index, then by
// the order of `families`, and numbers use 12 significant digits with a '.'
// separator regardless of locale.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qclock/protocol.hpp"

namespace qclock::sweep {

enum class Figure { Fig1, Fig2, Fig3, Fig4, Custom };
enum class OutputFormat { Csv, Json };
enum class SweepVar { N, Q, Nu, Theta, OmegaDelta };

const char* to_string(SweepVar v) noexcept;

// Closest approach to the q = 1 pole.
inline constexpr double kDefaultQMax = 1.0 - 1e-6;
inline constexpr double kDefaultNuMax = 1.0;
inline constexpr int kDefaultMultipartiteN = 20;

// Values held fixed during a sweep. An empty k means "optimal k" for the Z
// family.
struct FixedParams {
  std::optional<int> n;
  std::optional<int> k;
  std::optional<double> q;
  std::optional<double> nu;
  std::optional<double> theta;
  std::optional<double> omega_delta;

  bool has(SweepVar v) const;
};

struct Range {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;  // ignored for N sweeps, which visit every integer in [start, stop]
};

struct SweepSpec {
  Figure figure = Figure::Custom;
  FixedParams fixed;
  SweepVar sweep_var = SweepVar::Q;
  Range range;
  std::vector<protocol::Family> families;
  OutputFormat output_format = OutputFormat::Csv;

  void validate() const;
};

struct SweepRow {
  double x = 0.0;
  protocol::Family family = protocol::Family::Z;
  double p_pos = 0.5;
  double amplitude = 0.0;
  std::optional<int> k_used;
  std::optional<double> concurrence;
};

struct SweepResult {
  SweepVar sweep_var = SweepVar::Q;
  std::vector<SweepRow> rows;
};

SweepSpec fig1_spec(int n_max = 20);
SweepSpec fig2_spec(int theta_steps = 1000);
SweepSpec fig3_spec(int q_steps = 200, int n_multi = kDefaultMultipartiteN);
SweepSpec fig4_spec(int nu_steps = 200, int n_multi = kDefaultMultipartiteN);

SweepResult run_sweep(const SweepSpec& spec);

inline SweepResult run_fig1(int n_max) { return run_sweep(fig1_spec(n_max)); }
inline SweepResult run_fig2(int theta_steps) { return run_sweep(fig2_spec(theta_steps)); }
inline SweepResult run_fig3(int q_steps, int n_multi) { return run_sweep(fig3_spec(q_steps, n_multi)); }
inline SweepResult run_fig4(int nu_steps, int n_multi) { return run_sweep(fig4_spec(nu_steps, n_multi)); }

// Evaluates one family at one parameter point. k <= 0 selects optimal k.
SweepRow evaluate_point(protocol::Family family, const ProtocolParams& params, bool optimal_k);

// i-th of `steps` evenly spaced points; the last one is exactly `stop`.
double grid_point(const Range& r, int i);

std::string format_number(double v);
std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);
std::string render(const SweepResult& result, OutputFormat format);
void write_file(const SweepResult& result, OutputFormat format, const std::string& path);

}  // namespace qclock::sweep
