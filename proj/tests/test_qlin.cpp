#include <doctest.h>

#include <array>
#include <random>

#include "oracles.hpp"
#include "qclock/error.hpp"
#include "qclock/qlin.hpp"

using namespace qclock::qlin;
using oracle::near;

namespace {

const Complex I{0.0, 1.0};

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix bell_phi_plus() {
  const double h = 0.5;
  return {{h, 0, 0, h}, {0, 0, 0, 0}, {0, 0, 0, 0}, {h, 0, 0, h}};
}

}  // namespace

TEST_SUITE("qlin") {

TEST_CASE("matrix construction rejects non-finite entries and bad shapes") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 0.0, 0.0}), qclock::Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex{std::nan(""), 0.0}}), qclock::Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex{0.0, INFINITY}}), qclock::Error);
  CHECK_THROWS_AS(ComplexMatrix(0, 3), qclock::Error);
}

TEST_CASE("tensor product") {
  SUBCASE("I2 (x) I2 = I4") {
    CHECK(max_abs_diff(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                       ComplexMatrix::identity(4)) == 0.0);
  }
  SUBCASE("X (x) Z has blocks [[0, Z], [Z, 0]]") {
    const ComplexMatrix expected{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    CHECK(max_abs_diff(tensor_product(pauli_x(), pauli_z()), expected) == 0.0);
  }
  SUBCASE("random pairs match the elementwise definition") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = oracle::random_matrix(rng, 2, 2);
      const auto b = oracle::random_matrix(rng, 2 + trial % 2, 3);
      CHECK(max_abs_diff(tensor_product(a, b), oracle::kron(a, b)) < 1e-15);
    }
  }
  SUBCASE("size cap") {
    const auto big = ComplexMatrix::identity(kMaxDimension / 2);
    CHECK_THROWS_AS(tensor_product(big, ComplexMatrix::identity(4)), qclock::Error);
  }
}

TEST_CASE("tensor product is trace multiplicative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_matrix(rng, 3, 3);
    const auto b = oracle::random_matrix(rng, 4, 4);
    CHECK(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()) < 1e-12);
  }
}

TEST_CASE("dagger") {
  CHECK(max_abs_diff(dagger(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) == 0.0);
  const ComplexMatrix m{{0, I}, {0, 0}};
  const ComplexMatrix expected{{0, 0}, {-I, 0}};
  CHECK(max_abs_diff(dagger(m), expected) == 0.0);

  std::mt19937_64 rng(3);
  const auto r = oracle::random_matrix(rng, 3, 5);
  CHECK(max_abs_diff(dagger(dagger(r)), r) == 0.0);
  CHECK(dagger(r).rows() == 5);
}

TEST_CASE("partial trace") {
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 1> keep_a{0};
  const std::array<std::size_t, 1> keep_b{1};

  SUBCASE("Bell marginal is maximally mixed") {
    const auto half = ComplexMatrix::identity(2) * 0.5;
    CHECK(max_abs_diff(partial_trace(bell_phi_plus(), dims, keep_a), half) < 1e-15);
    CHECK(max_abs_diff(partial_trace(bell_phi_plus(), dims, keep_b), half) < 1e-15);
  }

  SUBCASE("product state factorises") {
    std::mt19937_64 rng(5);
    const auto ra = oracle::random_density(rng, 2);
    const auto rb = oracle::random_density(rng, 3);
    const std::array<std::size_t, 2> mixed{2, 3};
    CHECK(max_abs_diff(partial_trace(tensor_product(ra, rb), mixed, keep_a), ra) < 1e-14);
    CHECK(max_abs_diff(partial_trace(tensor_product(ra, rb), mixed, keep_b), rb) < 1e-14);
  }

  SUBCASE("empty keep set gives the scalar trace") {
    const auto t = partial_trace(ComplexMatrix::identity(4) * 0.25, dims, std::span<const std::size_t>{});
    REQUIRE(t.rows() == 1);
    CHECK(near(t(0, 0).real(), 1.0, 1e-15));
  }

  SUBCASE("errors") {
    const std::array<std::size_t, 2> wrong{2, 3};
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(4), wrong, keep_a), qclock::Error);
    const std::array<std::size_t, 1> out_of_range{2};
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(4), dims, out_of_range), qclock::Error);
    const std::array<std::size_t, 2> dup{0, 0};
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(4), dims, dup), qclock::Error);
    CHECK_THROWS_AS(partial_trace(ComplexMatrix(2, 4), dims, keep_a), qclock::Error);
  }
}

TEST_CASE("partial trace properties on random three-party states") {
  std::mt19937_64 rng(2024);
  const std::array<std::size_t, 3> dims{2, 3, 2};
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = oracle::random_density(rng, 12);
    const std::array<std::size_t, 2> keep02{0, 2};
    const auto joint = partial_trace(rho, dims, keep02);
    CHECK(std::abs(joint.trace() - rho.trace()) < 1e-12);
    CHECK(max_abs_diff(joint, dagger(joint)) < 1e-12);

    // Tracing subsystem 2 and then 1 equals tracing both at once.
    const std::array<std::size_t, 2> keep01{0, 1};
    const auto step1 = partial_trace(rho, dims, keep01);
    const std::array<std::size_t, 2> dims01{2, 3};
    const std::array<std::size_t, 1> keep0{0};
    const auto sequential = partial_trace(step1, dims01, keep0);
    const auto direct = partial_trace(rho, dims, keep0);
    CHECK(max_abs_diff(sequential, direct) < 1e-12);
  }
}

TEST_CASE("reduced density matrix of a pure state equals the partial trace of its projector") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::vector<Complex> amps(8 * 3);
  for (auto& z : amps) z = {g(rng), g(rng)};
  const PureState psi = PureState(3, 3, amps).normalized();
  CHECK(near(psi.norm(), 1.0, 1e-12));
  const auto dims = psi.subsystem_dims();
  const std::array<std::size_t, 2> keep{0, 2};
  CHECK(max_abs_diff(reduced_density_matrix(psi, keep), partial_trace(psi.projector(), dims, keep)) <
        1e-14);
}

TEST_CASE("pure state validation") {
  CHECK_THROWS_AS(PureState(2, 1, {1.0, 0.0}), qclock::Error);
  CHECK_THROWS_AS(PureState(1, 0, {}), qclock::Error);
  CHECK_THROWS_AS(PureState(1, 1, {0.0, 0.0}).normalized(), qclock::Error);
}

TEST_CASE("density matrix check") {
  CHECK(is_density_matrix(ComplexMatrix::identity(4) * 0.25).valid);

  const auto trace_two = is_density_matrix(ComplexMatrix::identity(2));
  CHECK_FALSE(trace_two.valid);
  CHECK(trace_two.failed == DensityCheck::Trace);
  CHECK(near(trace_two.magnitude, 1.0, 1e-15));
  CHECK(std::string(to_string(trace_two.failed)) == "trace");

  const ComplexMatrix non_hermitian{{0.5, 0.3}, {0.0, 0.5}};
  CHECK(is_density_matrix(non_hermitian).failed == DensityCheck::Hermiticity);

  const ComplexMatrix negative{{1.2, 0.0}, {0.0, -0.2}};
  const auto neg = is_density_matrix(negative);
  CHECK(neg.failed == DensityCheck::Positivity);
  CHECK(near(neg.magnitude, 0.2, 1e-12));

  CHECK(is_density_matrix(ComplexMatrix(2, 3)).failed == DensityCheck::NotSquare);

  std::mt19937_64 rng(1);
  CHECK(is_density_matrix(oracle::random_density(rng, 8)).valid);
}

TEST_CASE("hermitian eigenvalues of a known spectrum") {
  const ComplexMatrix m{{2.0, I}, {-I, 2.0}};
  const auto eig = hermitian_eigenvalues(m);
  REQUIRE(eig.size() == 2);
  CHECK(near(eig[0], 1.0, 1e-14));
  CHECK(near(eig[1], 3.0, 1e-14));
}

}  // TEST_SUITE
