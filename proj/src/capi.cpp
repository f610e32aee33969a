#include "qclock/qclock.h"

#include <cstring>
#include <exception>
#include <new>
#include <numbers>
#include <string>
#include <vector>

#include "qclock/error.hpp"
#include "qclock/protocol.hpp"
#include "qclock/selftest.hpp"
#include "qclock/states.hpp"
#include "qclock/sweep.hpp"
#include "qclock/unruh.hpp"

struct qclock_state {
  qclock::qlin::PureState value;
};

struct qclock_matrix {
  qclock::qlin::ComplexMatrix value;
};

struct qclock_sweep {
  qclock::sweep::SweepResult value;
};

namespace {

using namespace qclock;

thread_local std::string g_last_error;
thread_local std::vector<std::string> g_selftest_failures;

qclock_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return QCLOCK_ERR_INVALID_PARAMETER;
    case ErrorCode::DimensionMismatch: return QCLOCK_ERR_DIMENSION;
    case ErrorCode::SizeLimit: return QCLOCK_ERR_SIZE_LIMIT;
    case ErrorCode::NullEvent: return QCLOCK_ERR_NULL_EVENT;
    case ErrorCode::NoTimingInformation: return QCLOCK_ERR_NO_TIMING_INFO;
    case ErrorCode::NonXState: return QCLOCK_ERR_NON_X_STATE;
    case ErrorCode::Io: return QCLOCK_ERR_IO;
  }
  return QCLOCK_ERR_INTERNAL;
}

qclock_status fail(qclock_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
qclock_status guarded(F&& body) {
  try {
    body();
    return QCLOCK_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QCLOCK_ERR_SIZE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(QCLOCK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QCLOCK_ERR_INTERNAL, "unknown exception");
  }
}

#define QCLOCK_REQUIRE_ARG(ptr) \
  if ((ptr) == nullptr) return fail(QCLOCK_ERR_NULL_ARGUMENT, "null argument: " #ptr)

void fill(const protocol::ProbabilityResult& r, qclock_probability* out) {
  out->p_pos = r.p_pos;
  out->p_neg = r.p_neg;
  out->amplitude = r.amplitude;
  out->family = r.family ? static_cast<int>(*r.family) : QCLOCK_FAMILY_NONE;
}

qclock_status new_state(qlin::PureState s, qclock_state** out) {
  *out = new qclock_state{std::move(s)};
  return QCLOCK_OK;
}

}  // namespace

extern "C" {

const char* qclock_version(void) { return "1.0.0"; }

const char* qclock_last_error(void) { return g_last_error.c_str(); }

const char* qclock_status_string(qclock_status status) {
  switch (status) {
    case QCLOCK_OK: return "ok";
    case QCLOCK_ERR_INVALID_PARAMETER: return "invalid parameter";
    case QCLOCK_ERR_DIMENSION: return "dimension mismatch";
    case QCLOCK_ERR_SIZE_LIMIT: return "size limit exceeded";
    case QCLOCK_ERR_NULL_EVENT: return "conditioning on a null event";
    case QCLOCK_ERR_NO_TIMING_INFO: return "no timing information";
    case QCLOCK_ERR_NON_X_STATE: return "not an X state";
    case QCLOCK_ERR_IO: return "i/o error";
    case QCLOCK_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case QCLOCK_ERR_NULL_ARGUMENT: return "null argument";
    case QCLOCK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qclock_status qclock_effective_coupling(double eps, double omega, double duration, double kappa,
                                        double* nu) {
  QCLOCK_REQUIRE_ARG(nu);
  return guarded([&] {
    PhysicalInputs p;
    p.eps = eps;
    p.omega = omega;
    p.duration = duration;
    p.kappa = kappa;
    *nu = states::effective_coupling(p);
  });
}

qclock_status qclock_acceleration_to_q(double omega, double accel, double* q) {
  QCLOCK_REQUIRE_ARG(q);
  return guarded([&] { *q = states::acceleration_to_q(omega, accel); });
}

qclock_status qclock_state_w(int n, qclock_state** out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { new_state(states::build_w_state(n), out); });
}

qclock_status qclock_state_z(int n, int k, qclock_state** out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { new_state(states::build_z_state(n, k), out); });
}

qclock_status qclock_state_bipartite(double theta, qclock_state** out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { new_state(states::build_bipartite_theta(theta), out); });
}

qclock_status qclock_state_from_amplitudes(size_t num_qubits, const double* re, const double* im,
                                           qclock_state** out) {
  QCLOCK_REQUIRE_ARG(re);
  QCLOCK_REQUIRE_ARG(im);
  QCLOCK_REQUIRE_ARG(out);
  if (num_qubits > static_cast<size_t>(unruh::kMaxFullStateAtoms)) {
    return fail(QCLOCK_ERR_SIZE_LIMIT, "too many qubits");
  }
  return guarded([&] {
    const size_t dim = size_t{1} << num_qubits;
    std::vector<qlin::Complex> amps(dim);
    for (size_t i = 0; i < dim; ++i) amps[i] = {re[i], im[i]};
    new_state(qlin::PureState(num_qubits, 1, std::move(amps)), out);
  });
}

void qclock_state_destroy(qclock_state* state) { delete state; }

qclock_status qclock_state_num_qubits(const qclock_state* state, size_t* num_qubits) {
  QCLOCK_REQUIRE_ARG(state);
  QCLOCK_REQUIRE_ARG(num_qubits);
  *num_qubits = state->value.num_qubits();
  return QCLOCK_OK;
}

qclock_status qclock_state_amplitude(const qclock_state* state, size_t index, double* re,
                                     double* im) {
  QCLOCK_REQUIRE_ARG(state);
  QCLOCK_REQUIRE_ARG(re);
  QCLOCK_REQUIRE_ARG(im);
  if (index >= state->value.dimension()) return fail(QCLOCK_ERR_DIMENSION, "amplitude index out of range");
  const auto z = state->value.amplitude(index);
  *re = z.real();
  *im = z.imag();
  return QCLOCK_OK;
}

void qclock_matrix_destroy(qclock_matrix* m) { delete m; }

qclock_status qclock_matrix_dim(const qclock_matrix* m, size_t* rows, size_t* cols) {
  QCLOCK_REQUIRE_ARG(m);
  QCLOCK_REQUIRE_ARG(rows);
  QCLOCK_REQUIRE_ARG(cols);
  *rows = m->value.rows();
  *cols = m->value.cols();
  return QCLOCK_OK;
}

qclock_status qclock_matrix_get(const qclock_matrix* m, size_t row, size_t col, double* re,
                                double* im) {
  QCLOCK_REQUIRE_ARG(m);
  QCLOCK_REQUIRE_ARG(re);
  QCLOCK_REQUIRE_ARG(im);
  if (row >= m->value.rows() || col >= m->value.cols()) {
    return fail(QCLOCK_ERR_DIMENSION, "matrix index out of range");
  }
  const auto z = m->value(row, col);
  *re = z.real();
  *im = z.imag();
  return QCLOCK_OK;
}

qclock_status qclock_matrix_is_density(const qclock_matrix* m, double tol, int* valid) {
  QCLOCK_REQUIRE_ARG(m);
  QCLOCK_REQUIRE_ARG(valid);
  return guarded([&] {
    const auto diag = qlin::is_density_matrix(m->value, tol);
    *valid = diag.valid ? 1 : 0;
    if (!diag.valid) g_last_error = diag.message;
  });
}

qclock_status qclock_partial_trace(const qclock_matrix* rho, const size_t* dims, size_t num_dims,
                                   const size_t* keep, size_t num_keep, qclock_matrix** out) {
  QCLOCK_REQUIRE_ARG(rho);
  QCLOCK_REQUIRE_ARG(out);
  if (num_dims > 0) QCLOCK_REQUIRE_ARG(dims);
  if (num_keep > 0) QCLOCK_REQUIRE_ARG(keep);
  return guarded([&] {
    auto result = qlin::partial_trace(rho->value, {dims, num_dims}, {keep, num_keep});
    *out = new qclock_matrix{std::move(result)};
  });
}

qclock_status qclock_apply_unruh(const qclock_state* psi, size_t target, double q, double nu,
                                 qclock_matrix** rho_atoms, double* norm_const) {
  QCLOCK_REQUIRE_ARG(psi);
  QCLOCK_REQUIRE_ARG(rho_atoms);
  return guarded([&] {
    auto out = unruh::apply_unruh_map(psi->value, target, q, nu);
    if (norm_const != nullptr) *norm_const = out.norm_const;
    *rho_atoms = new qclock_matrix{std::move(out.rho_atoms)};
  });
}

qclock_status qclock_closed_form_rho_ab(int n, int k, double q, double nu, qclock_matrix** out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { *out = new qclock_matrix{unruh::closed_form_rho_ab(n, k, q, nu)}; });
}

qclock_status qclock_closed_form_rho_full(int n, int k, double q, double nu, qclock_matrix** out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { *out = new qclock_matrix{unruh::closed_form_rho_full(n, k, q, nu)}; });
}

qclock_status qclock_prob_pos_z(int n, int k, double q, double nu, double omega_delta,
                                qclock_probability* out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { fill(protocol::prob_pos_z(n, k, q, nu, omega_delta), out); });
}

qclock_status qclock_prob_pos_w(int n, double q, double nu, double omega_delta,
                                qclock_probability* out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { fill(protocol::prob_pos_w(n, q, nu, omega_delta), out); });
}

qclock_status qclock_prob_pos_bipartite(double theta, double q, double nu, double omega_delta,
                                        qclock_probability* out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { fill(protocol::prob_pos_bipartite(theta, q, nu, omega_delta), out); });
}

qclock_status qclock_pipeline_probability(const qclock_state* initial, double q, double nu,
                                          double omega_delta, qclock_probability* out) {
  QCLOCK_REQUIRE_ARG(initial);
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { fill(protocol::pipeline_probability(initial->value, q, nu, omega_delta), out); });
}

qclock_status qclock_optimal_k(int n, double q, double nu, qclock_optimal_k_result* out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] {
    const auto r = protocol::optimal_k(n, q, nu);
    out->k_opt = r.k_opt;
    out->amplitude = r.amplitude;
    out->y_formula_k = r.y_formula_k.value_or(0);
    out->agreement = r.agreement ? 1 : 0;
  });
}

qclock_status qclock_estimate_delta(double p_obs, double amplitude, double omega,
                                    double* candidates, size_t capacity, size_t* count) {
  QCLOCK_REQUIRE_ARG(count);
  if (capacity > 0) QCLOCK_REQUIRE_ARG(candidates);
  std::vector<double> found;
  const auto status = guarded([&] { found = protocol::estimate_delta(p_obs, amplitude, omega); });
  if (status != QCLOCK_OK) return status;
  *count = found.size();
  for (size_t i = 0; i < found.size() && i < capacity; ++i) candidates[i] = found[i];
  if (capacity < found.size()) return fail(QCLOCK_ERR_BUFFER_TOO_SMALL, "candidate buffer too small");
  return QCLOCK_OK;
}

qclock_status qclock_concurrence_x_state(const qclock_matrix* rho, double* out) {
  QCLOCK_REQUIRE_ARG(rho);
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] {
    *out = protocol::concurrence_x_state({rho->value, BasisLabel::Computational});
  });
}

qclock_status qclock_bipartite_concurrence(double theta, double q, double nu, double* out) {
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] { *out = protocol::bipartite_concurrence(theta, q, nu); });
}

qclock_status qclock_sweep_options_init(qclock_figure figure, qclock_sweep_options* opts) {
  QCLOCK_REQUIRE_ARG(opts);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  *opts = qclock_sweep_options{};
  opts->k = 0;
  opts->theta = std::numbers::pi / 4;
  opts->omega_delta = two_pi;
  opts->q_max = sweep::kDefaultQMax;
  opts->nu_max = sweep::kDefaultNuMax;
  opts->n = sweep::kDefaultMultipartiteN;
  switch (figure) {
    case QCLOCK_FIG1:
      opts->q = 0.9;
      opts->nu = 0.1;
      opts->steps = 0;
      return QCLOCK_OK;
    case QCLOCK_FIG2:
      opts->q = 0.9;
      opts->nu = 0.1;
      opts->steps = 1000;
      return QCLOCK_OK;
    case QCLOCK_FIG3:
      opts->q = 0.0;
      opts->nu = 0.1;
      opts->steps = 200;
      return QCLOCK_OK;
    case QCLOCK_FIG4:
      opts->q = 0.8;
      opts->nu = 0.0;
      opts->steps = 200;
      return QCLOCK_OK;
  }
  return fail(QCLOCK_ERR_INVALID_PARAMETER, "unknown figure");
}

qclock_status qclock_sweep_run(qclock_figure figure, const qclock_sweep_options* opts,
                               qclock_sweep** out) {
  QCLOCK_REQUIRE_ARG(opts);
  QCLOCK_REQUIRE_ARG(out);
  return guarded([&] {
    sweep::SweepSpec spec;
    switch (figure) {
      case QCLOCK_FIG1:
        spec = sweep::fig1_spec(opts->n);
        spec.fixed.q = opts->q;
        spec.fixed.nu = opts->nu;
        break;
      case QCLOCK_FIG2:
        spec = sweep::fig2_spec(opts->steps);
        spec.fixed.q = opts->q;
        spec.fixed.nu = opts->nu;
        break;
      case QCLOCK_FIG3:
        spec = sweep::fig3_spec(opts->steps, opts->n);
        spec.range.stop = opts->q_max;
        spec.fixed.nu = opts->nu;
        spec.fixed.theta = opts->theta;
        break;
      case QCLOCK_FIG4:
        spec = sweep::fig4_spec(opts->steps, opts->n);
        spec.range.stop = opts->nu_max;
        spec.fixed.q = opts->q;
        spec.fixed.theta = opts->theta;
        break;
      default:
        throw Error(ErrorCode::InvalidParameter, "unknown figure");
    }
    spec.fixed.omega_delta = opts->omega_delta;
    if (opts->k > 0) spec.fixed.k = opts->k;
    *out = new qclock_sweep{sweep::run_sweep(spec)};
  });
}

void qclock_sweep_destroy(qclock_sweep* s) { delete s; }

qclock_status qclock_sweep_row_count(const qclock_sweep* s, size_t* count) {
  QCLOCK_REQUIRE_ARG(s);
  QCLOCK_REQUIRE_ARG(count);
  *count = s->value.rows.size();
  return QCLOCK_OK;
}

qclock_status qclock_sweep_get_row(const qclock_sweep* s, size_t index, qclock_sweep_row* row) {
  QCLOCK_REQUIRE_ARG(s);
  QCLOCK_REQUIRE_ARG(row);
  if (index >= s->value.rows.size()) return fail(QCLOCK_ERR_DIMENSION, "row index out of range");
  const auto& r = s->value.rows[index];
  row->x = r.x;
  row->family = static_cast<int>(r.family);
  row->p_pos = r.p_pos;
  row->amplitude = r.amplitude;
  row->k_used = r.k_used.value_or(0);
  row->has_concurrence = r.concurrence ? 1 : 0;
  row->concurrence = r.concurrence.value_or(0.0);
  return QCLOCK_OK;
}

qclock_status qclock_sweep_render(const qclock_sweep* s, qclock_format format, char* buf,
                                  size_t capacity, size_t* needed) {
  QCLOCK_REQUIRE_ARG(s);
  QCLOCK_REQUIRE_ARG(needed);
  std::string text;
  const auto status = guarded([&] {
    text = sweep::render(s->value, format == QCLOCK_FORMAT_JSON ? sweep::OutputFormat::Json
                                                                : sweep::OutputFormat::Csv);
  });
  if (status != QCLOCK_OK) return status;
  *needed = text.size() + 1;
  if (buf == nullptr) return QCLOCK_OK;
  if (capacity < *needed) return fail(QCLOCK_ERR_BUFFER_TOO_SMALL, "render buffer too small");
  std::memcpy(buf, text.c_str(), *needed);
  return QCLOCK_OK;
}

qclock_status qclock_sweep_write(const qclock_sweep* s, qclock_format format, const char* path) {
  QCLOCK_REQUIRE_ARG(s);
  QCLOCK_REQUIRE_ARG(path);
  return guarded([&] {
    sweep::write_file(s->value,
                      format == QCLOCK_FORMAT_JSON ? sweep::OutputFormat::Json : sweep::OutputFormat::Csv,
                      path);
  });
}

qclock_status qclock_selftest(unsigned long long seed, qclock_selftest_report* report) {
  QCLOCK_REQUIRE_ARG(report);
  return guarded([&] {
    const auto r = selftest::run(seed);
    report->passed = r.passed ? 1 : 0;
    report->cases = r.cases;
    report->failures = r.failures.size();
    report->max_rho_error = r.max_rho_error;
    report->max_prob_error = r.max_prob_error;
    report->max_family_error = r.max_family_error;
    report->seconds = r.seconds;
    g_selftest_failures = r.failures;
  });
}

const char* qclock_selftest_failure(size_t index) {
  if (index >= g_selftest_failures.size()) return nullptr;
  return g_selftest_failures[index].c_str();
}

}  // extern "C"
