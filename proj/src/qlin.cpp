#include "qclock/qlin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qclock/error.hpp"

namespace qclock::qlin {

namespace {

void check_finite(const Complex& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidParameter, "non-finite matrix entry");
  }
}

void check_size(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  }
  if (rows > kMaxDimension || cols > kMaxDimension) {
    std::ostringstream os;
    os << "matrix " << rows << "x" << cols << " exceeds the size cap of " << kMaxDimension;
    throw Error(ErrorCode::SizeLimit, os.str());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
}

// Offsets of every multi-index over the listed subsystems, in row-major
// order of those subsystems.
std::vector<std::size_t> subsystem_offsets(std::span<const std::size_t> dims,
                                           std::span<const std::size_t> strides,
                                           std::span<const std::size_t> which) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t s : which) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[s]);
    for (std::size_t base : offsets) {
      for (std::size_t d = 0; d < dims[s]; ++d) next.push_back(base + d * strides[s]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

struct Split {
  std::vector<std::size_t> keep_offsets;
  std::vector<std::size_t> trace_offsets;
};

Split split_subsystems(std::span<const std::size_t> dims, std::span<const std::size_t> keep,
                       std::size_t total) {
  std::size_t product = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::DimensionMismatch, "subsystem dimension must be positive");
    product *= d;
  }
  if (product != total) {
    std::ostringstream os;
    os << "subsystem dimensions multiply to " << product << " but the operand has dimension "
       << total;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }

  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw Error(ErrorCode::InvalidParameter, "duplicate subsystem in keep set");
  }
  if (!kept.empty() && kept.back() >= dims.size()) {
    throw Error(ErrorCode::InvalidParameter, "keep index out of range");
  }

  std::vector<std::size_t> strides(dims.size());
  std::size_t stride = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= dims[i];
  }
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  }
  return {subsystem_offsets(dims, strides, kept), subsystem_offsets(dims, strides, traced)};
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_size(rows, cols);
  data_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_size(rows, cols);
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "entry count does not match dimensions");
  }
  for (const auto& z : data_) check_finite(z);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  check_size(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (const auto& z : row) {
      check_finite(z);
      data_.push_back(z);
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    check_finite(diag[i]);
    m(i, i) = diag[i];
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "trace of a non-square matrix");
  Complex t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  check_finite(s);
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw Error(ErrorCode::SizeLimit, "tensor product exceeds the size cap");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (!rho.is_square()) throw Error(ErrorCode::DimensionMismatch, "partial trace of non-square matrix");
  const Split split = split_subsystems(dims, keep, rho.rows());
  const std::size_t out_dim = split.keep_offsets.size();
  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = 0; c < out_dim; ++c) {
      Complex acc{};
      for (std::size_t t : split.trace_offsets) {
        acc += rho(split.keep_offsets[r] + t, split.keep_offsets[c] + t);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

PureState::PureState(std::size_t num_qubits, std::size_t ancilla_dim,
                     std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), ancilla_dim_(ancilla_dim), amplitudes_(std::move(amplitudes)) {
  if (ancilla_dim_ == 0) throw Error(ErrorCode::InvalidParameter, "ancilla dimension must be positive");
  if (num_qubits_ >= 8 * sizeof(std::size_t) - 2) {
    throw Error(ErrorCode::SizeLimit, "too many qubits");
  }
  const std::size_t expected = (std::size_t{1} << num_qubits_) * ancilla_dim_;
  if (amplitudes_.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count must be 2^num_qubits * ancilla_dim");
  }
  for (const auto& z : amplitudes_) check_finite(z);
}

double PureState::norm() const {
  double sum = 0.0;
  for (const auto& z : amplitudes_) sum += std::norm(z);
  return std::sqrt(sum);
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::InvalidParameter, "cannot normalize the zero vector");
  std::vector<Complex> amps(amplitudes_.begin(), amplitudes_.end());
  for (auto& z : amps) z /= n;
  return {num_qubits_, ancilla_dim_, std::move(amps)};
}

std::vector<std::size_t> PureState::subsystem_dims() const {
  std::vector<std::size_t> dims(num_qubits_, 2);
  if (ancilla_dim_ > 1) dims.push_back(ancilla_dim_);
  return dims;
}

ComplexMatrix PureState::projector() const {
  const std::size_t d = dimension();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
  }
  return out;
}

ComplexMatrix reduced_density_matrix(const PureState& psi, std::span<const std::size_t> keep) {
  const auto dims = psi.subsystem_dims();
  const Split split = split_subsystems(dims, keep, psi.dimension());
  const std::size_t out_dim = split.keep_offsets.size();
  const auto amps = psi.amplitudes();
  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = 0; c < out_dim; ++c) {
      Complex acc{};
      for (std::size_t t : split.trace_offsets) {
        acc += amps[split.keep_offsets[r] + t] * std::conj(amps[split.keep_offsets[c] + t]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "eigenvalues of a non-square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dense(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

DensityDiagnostic is_density_matrix(const ComplexMatrix& m, double tol) {
  auto fail = [](DensityCheck which, double magnitude) {
    std::ostringstream os;
    os << to_string(which) << " check failed (violation " << magnitude << ")";
    return DensityDiagnostic{false, which, magnitude, os.str()};
  };

  if (!m.is_square()) return fail(DensityCheck::NotSquare, 0.0);

  double asym = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  if (asym > tol) return fail(DensityCheck::Hermiticity, asym);

  const double trace_err = std::abs(m.trace() - Complex{1.0, 0.0});
  if (trace_err > tol) return fail(DensityCheck::Trace, trace_err);

  const auto eigs = hermitian_eigenvalues(m);
  if (eigs.front() < -tol) return fail(DensityCheck::Positivity, -eigs.front());

  return {};
}

const char* to_string(DensityCheck check) noexcept {
  switch (check) {
    case DensityCheck::Ok: return "ok";
    case DensityCheck::NotSquare: return "square";
    case DensityCheck::Hermiticity: return "hermiticity";
    case DensityCheck::Trace: return "trace";
    case DensityCheck::Positivity: return "positivity";
  }
  return "unknown";
}

}  // namespace qclock::qlin
