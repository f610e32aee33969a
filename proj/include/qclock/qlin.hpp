#pragma once

// Dense complex linear algebra for exact small-system simulation.
//
// Conventions: row-major storage; subsystem 0 is the leftmost tensor factor
// (most significant digit of a basis index).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qclock::qlin {

using Complex = std::complex<double>;

// Largest admitted row or column count. 2^12 atoms, or 2^10 atoms times a
// three-sector ancilla, both fit.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 13;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix dagger(const ComplexMatrix& m);

// Kronecker product; entry (i*rb + k, j*cb + l) = a(i,j) * b(k,l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Traces out every subsystem not listed in `keep`. The kept subsystems stay
// in ascending index order. An empty `keep` yields the 1x1 trace.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

// Ket over a qubit register followed by an optional ancilla of
// `ancilla_dim` levels (the ancilla is the least significant digit).
class PureState {
 public:
  PureState() = default;
  PureState(std::size_t num_qubits, std::size_t ancilla_dim, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t ancilla_dim() const noexcept { return ancilla_dim_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_[index]; }

  double norm() const;
  PureState normalized() const;

  // Subsystem dimensions: 2 per qubit, then the ancilla if it has more than
  // one level.
  std::vector<std::size_t> subsystem_dims() const;

  ComplexMatrix projector() const;

 private:
  std::size_t num_qubits_ = 0;
  std::size_t ancilla_dim_ = 1;
  std::vector<Complex> amplitudes_{Complex{1.0, 0.0}};
};

// Reduced density matrix of |psi><psi| on the kept subsystems, computed
// without materialising the full projector.
ComplexMatrix reduced_density_matrix(const PureState& psi, std::span<const std::size_t> keep);

// Eigenvalues of a Hermitian matrix (ascending). Only the lower triangle is read.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

enum class DensityCheck { Ok, NotSquare, Hermiticity, Trace, Positivity };

struct DensityDiagnostic {
  bool valid = true;
  DensityCheck failed = DensityCheck::Ok;
  double magnitude = 0.0;  // size of the offending violation
  std::string message;
};

inline constexpr double kDensityTolerance = 1e-10;

DensityDiagnostic is_density_matrix(const ComplexMatrix& m, double tol = kDensityTolerance);

const char* to_string(DensityCheck check) noexcept;

}  // namespace qclock::qlin
