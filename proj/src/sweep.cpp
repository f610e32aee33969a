#include "qclock/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qclock/error.hpp"

namespace qclock::sweep {

namespace {

using protocol::Family;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Caption values shared by all four figures.
constexpr double kCaptionQ = 0.9;
constexpr double kCaptionNu = 0.1;
constexpr double kFig4Q = 0.8;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

ProtocolParams base_params(const FixedParams& f) {
  ProtocolParams p;
  p.n = f.n.value_or(kDefaultMultipartiteN);
  p.k = f.k.value_or(1);
  p.q = f.q.value_or(kCaptionQ);
  p.nu = f.nu.value_or(kCaptionNu);
  p.theta = f.theta.value_or(std::numbers::pi / 4);
  p.omega_delta = f.omega_delta.value_or(kTwoPi);
  return p;
}

void assign(ProtocolParams& p, SweepVar v, double x) {
  switch (v) {
    case SweepVar::N: p.n = static_cast<int>(std::lround(x)); break;
    case SweepVar::Q: p.q = x; break;
    case SweepVar::Nu: p.nu = x; break;
    case SweepVar::Theta: p.theta = x; break;
    case SweepVar::OmegaDelta: p.omega_delta = x; break;
  }
}

std::string family_label(Family f) { return protocol::to_string(f); }

}  // namespace

const char* to_string(SweepVar v) noexcept {
  switch (v) {
    case SweepVar::N: return "n";
    case SweepVar::Q: return "q";
    case SweepVar::Nu: return "nu";
    case SweepVar::Theta: return "theta";
    case SweepVar::OmegaDelta: return "omega_delta";
  }
  return "?";
}

bool FixedParams::has(SweepVar v) const {
  switch (v) {
    case SweepVar::N: return n.has_value();
    case SweepVar::Q: return q.has_value();
    case SweepVar::Nu: return nu.has_value();
    case SweepVar::Theta: return theta.has_value();
    case SweepVar::OmegaDelta: return omega_delta.has_value();
  }
  return false;
}

void SweepSpec::validate() const {
  require(!families.empty(), "a sweep needs at least one family");
  require(!fixed.has(sweep_var), std::string("swept variable '") + to_string(sweep_var) +
                                     "' is also fixed");
  require(std::isfinite(range.start) && std::isfinite(range.stop), "sweep range must be finite");
  if (sweep_var == SweepVar::N) {
    require(range.start >= 2 && range.start <= range.stop, "n range must satisfy 2 <= start <= stop");
    require(range.start == std::floor(range.start) && range.stop == std::floor(range.stop),
            "n range endpoints must be integers");
  } else {
    require(range.steps >= 2, "steps must be at least 2");
    require(range.start < range.stop, "sweep range must satisfy start < stop");
  }
}

double grid_point(const Range& r, int i) {
  if (i == r.steps - 1) return r.stop;
  return r.start + (r.stop - r.start) * static_cast<double>(i) / static_cast<double>(r.steps - 1);
}

SweepSpec fig1_spec(int n_max) {
  SweepSpec s;
  s.figure = Figure::Fig1;
  s.fixed.q = kCaptionQ;
  s.fixed.nu = kCaptionNu;
  s.fixed.omega_delta = kTwoPi;
  s.sweep_var = SweepVar::N;
  s.range = {2.0, static_cast<double>(n_max), std::max(n_max - 1, 1)};
  s.families = {Family::W, Family::Z};
  return s;
}

SweepSpec fig2_spec(int theta_steps) {
  SweepSpec s;
  s.figure = Figure::Fig2;
  s.fixed.q = kCaptionQ;
  s.fixed.nu = kCaptionNu;
  s.fixed.omega_delta = kTwoPi;
  s.sweep_var = SweepVar::Theta;
  s.range = {0.0, std::numbers::pi / 2, theta_steps};
  s.families = {Family::Bipartite};
  return s;
}

SweepSpec fig3_spec(int q_steps, int n_multi) {
  SweepSpec s;
  s.figure = Figure::Fig3;
  s.fixed.n = n_multi;
  s.fixed.nu = kCaptionNu;
  s.fixed.theta = std::numbers::pi / 4;
  s.fixed.omega_delta = kTwoPi;
  s.sweep_var = SweepVar::Q;
  s.range = {0.0, kDefaultQMax, q_steps};
  s.families = {Family::Bipartite, Family::W, Family::Z};
  return s;
}

SweepSpec fig4_spec(int nu_steps, int n_multi) {
  SweepSpec s;
  s.figure = Figure::Fig4;
  s.fixed.n = n_multi;
  s.fixed.q = kFig4Q;
  s.fixed.theta = std::numbers::pi / 4;
  s.fixed.omega_delta = kTwoPi;
  s.sweep_var = SweepVar::Nu;
  s.range = {0.0, kDefaultNuMax, nu_steps};
  s.families = {Family::Bipartite, Family::W, Family::Z};
  return s;
}

SweepRow evaluate_point(Family family, const ProtocolParams& params, bool optimal_k) {
  SweepRow row;
  row.family = family;
  protocol::ProbabilityResult prob;
  switch (family) {
    case Family::W:
      prob = protocol::prob_pos_w(params.n, params.q, params.nu, params.omega_delta);
      row.k_used = 1;
      break;
    case Family::Z: {
      int k = params.k;
      if (optimal_k) k = protocol::optimal_k(params.n, params.q, params.nu).k_opt;
      prob = protocol::prob_pos_z(params.n, k, params.q, params.nu, params.omega_delta);
      row.k_used = k;
      break;
    }
    case Family::Bipartite:
      prob = protocol::prob_pos_bipartite(params.theta, params.q, params.nu, params.omega_delta);
      row.concurrence = protocol::bipartite_concurrence(params.theta, params.q, params.nu);
      break;
  }
  row.p_pos = prob.p_pos;
  row.amplitude = prob.amplitude;
  return row;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  Range range = spec.range;
  if (spec.sweep_var == SweepVar::N) {
    range.steps = static_cast<int>(range.stop - range.start) + 1;
  }
  const bool optimal = !spec.fixed.k.has_value();

  SweepResult result;
  result.sweep_var = spec.sweep_var;
  result.rows.reserve(static_cast<std::size_t>(range.steps) * spec.families.size());
  for (int i = 0; i < range.steps; ++i) {
    const double x = spec.sweep_var == SweepVar::N ? range.start + i : grid_point(range, i);
    ProtocolParams params = base_params(spec.fixed);
    assign(params, spec.sweep_var, x);
    for (Family f : spec.families) {
      SweepRow row = evaluate_point(f, params, optimal);
      row.x = x;
      result.rows.push_back(row);
    }
  }
  return result;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return {buf, res.ptr};
}

namespace {

std::string format_x(const SweepResult& r, double x) {
  if (r.sweep_var == SweepVar::N) return std::to_string(std::lround(x));
  return format_number(x);
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string out = "x,family,p_pos,amplitude,k_used,concurrence\n";
  for (const auto& row : result.rows) {
    out += format_x(result, row.x);
    out += ',';
    out += family_label(row.family);
    out += ',';
    out += format_number(row.p_pos);
    out += ',';
    out += format_number(row.amplitude);
    out += ',';
    if (row.k_used) out += std::to_string(*row.k_used);
    out += ',';
    if (row.concurrence) out += format_number(*row.concurrence);
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  std::string out = "[";
  bool first = true;
  for (const auto& row : result.rows) {
    out += first ? "\n  " : ",\n  ";
    first = false;
    out += "{\"x\": " + format_x(result, row.x);
    out += ", \"family\": \"" + family_label(row.family) + "\"";
    out += ", \"p_pos\": " + format_number(row.p_pos);
    out += ", \"amplitude\": " + format_number(row.amplitude);
    out += ", \"k_used\": " + (row.k_used ? std::to_string(*row.k_used) : std::string("null"));
    out += ", \"concurrence\": " + (row.concurrence ? format_number(*row.concurrence) : std::string("null"));
    out += "}";
  }
  out += result.rows.empty() ? "]\n" : "\n]\n";
  return out;
}

std::string render(const SweepResult& result, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(result) : to_json(result);
}

void write_file(const SweepResult& result, OutputFormat format, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  os << render(result, format);
  if (!os) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace qclock::sweep
