#include <doctest.h>

#include <cmath>

#include "jaynes/bell_chsh.hpp"
#include "jaynes/hermitian.hpp"
#include "jaynes/random.hpp"
#include "oracles.hpp"

using namespace jaynes;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<cplx>().asDiagonal();
}

DensityMatrix phi_plus() { return DensityMatrix::pure(bell_basis()[0]); }
DensityMatrix psi_minus() { return DensityMatrix::pure(bell_basis()[3]); }

}  // namespace

TEST_CASE("pauli matrices") {
  CHECK(max_abs_deviation(pauli(PauliAxis::I).matrix(), ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_deviation(pauli(PauliAxis::Z).matrix(), diag({1, -1})) == 0.0);
  for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const ComplexMatrix p = pauli(a).matrix();
    CHECK(max_abs_deviation(p * p, ComplexMatrix::Identity(2, 2)) < 1e-15);
  }
  // sx sy = i sz
  const ComplexMatrix xy = pauli(PauliAxis::X).matrix() * pauli(PauliAxis::Y).matrix();
  CHECK(max_abs_deviation(xy, cplx(0, 1) * pauli(PauliAxis::Z).matrix()) < 1e-15);
}

TEST_CASE("tensor product") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs_deviation(tensor_product(i2, i2), ComplexMatrix::Identity(4, 4)) == 0.0);
  const ComplexMatrix zz = tensor_product(pauli(PauliAxis::Z).matrix(), pauli(PauliAxis::Z).matrix());
  CHECK(max_abs_deviation(zz, diag({1, -1, -1, 1})) == 0.0);

  // party 1 is the slow index: (sz x I) = diag(1, 1, -1, -1)
  CHECK(max_abs_deviation(tensor_product(pauli(PauliAxis::Z).matrix(), i2), diag({1, 1, -1, -1})) == 0.0);

  Rng rng(3);
  const ComplexMatrix a = random_hermitian(2, rng).matrix();
  const ComplexMatrix b = random_hermitian(3, rng).matrix();
  const ComplexMatrix ab = tensor_product(a, b);
  CHECK(ab.rows() == 6);
  CHECK(std::abs(ab.trace() - a.trace() * b.trace()) < 1e-14);
}

TEST_CASE("bell basis is orthonormal and in the fixed order") {
  const auto basis = bell_basis();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx ip = basis[i].amplitudes().dot(basis[j].amplitudes());
      CHECK(std::abs(ip - cplx(i == j ? 1.0 : 0.0)) < 1e-15);
    }
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(basis[0].amplitudes()(0) - s) < 1e-15);  // Phi+ = (uu + dd)/sqrt2
  CHECK(std::abs(basis[0].amplitudes()(3) - s) < 1e-15);
  CHECK(std::abs(basis[1].amplitudes()(3) + s) < 1e-15);  // Phi- = (uu - dd)/sqrt2
  CHECK(std::abs(basis[2].amplitudes()(2) - s) < 1e-15);  // Psi+ = (ud + du)/sqrt2
  CHECK(std::abs(basis[3].amplitudes()(2) + s) < 1e-15);  // Psi- = (ud - du)/sqrt2

  // X|Phi+> = Z|Phi+> = |Phi+>, by literal matrix-vector products
  const std::array<double, 4> phi{s, 0, 0, s};
  const auto xphi = oracle::apply(oracle::kXX, phi);
  const auto zphi = oracle::apply(oracle::kZZ, phi);
  for (int k = 0; k < 4; ++k) {
    CHECK(xphi[k] == doctest::Approx(phi[k]).epsilon(1e-15));
    CHECK(zphi[k] == doctest::Approx(phi[k]).epsilon(1e-15));
  }
  const ChshOperators ops = chsh_operators();
  CHECK((ops.x.matrix() * basis[0].amplitudes() - basis[0].amplitudes()).norm() < 1e-15);
  CHECK((ops.z.matrix() * basis[0].amplitudes() - basis[0].amplitudes()).norm() < 1e-15);
}

TEST_CASE("eig_hermitian") {
  SUBCASE("identity and diagonal") {
    const auto id = eig_hermitian(HermitianOperator(ComplexMatrix::Identity(4, 4)));
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(id.eigenvalues(i) == doctest::Approx(1.0));
    const auto d = eig_hermitian(HermitianOperator(diag({3, -1})));
    CHECK(d.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(d.eigenvalues(1) == doctest::Approx(3.0));
  }
  SUBCASE("rho_J1 at b = 0.75") {
    const auto sd = eig_hermitian(to_density_matrix(jaynes_b(0.75)).op());
    const double expect[] = {0.015625, 0.109375, 0.109375, 0.765625};
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(sd.eigenvalues(i) - expect[i]) < 1e-12);
  }
  SUBCASE("rejects non-Hermitian input") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 1e-9;
    CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
    ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
    nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(HermitianOperator{nan}, std::invalid_argument);
    CHECK_THROWS_AS(HermitianOperator{ComplexMatrix(2, 3)}, std::invalid_argument);
  }
  SUBCASE("reconstruction and orthonormality on 1000 random 4x4 matrices") {
    Rng rng(11);
    double worst_rec = 0.0, worst_orth = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const HermitianOperator h = random_hermitian(4, rng);
      const auto sd = eig_hermitian(h);
      worst_rec = std::max(worst_rec, max_abs_deviation(sd.reconstruct(), h.matrix()));
      worst_orth = std::max(worst_orth, max_abs_deviation(sd.eigenvectors.adjoint() * sd.eigenvectors,
                                                          ComplexMatrix::Identity(4, 4)));
      for (Eigen::Index i = 1; i < 4; ++i) REQUIRE(sd.eigenvalues(i - 1) <= sd.eigenvalues(i));
    }
    CHECK(worst_rec < 1e-10);
    CHECK(worst_orth < 1e-10);
  }
}

TEST_CASE("matrix_function") {
  const auto expf = [](double e) { return std::exp(e); };
  CHECK(max_abs_deviation(matrix_function(HermitianOperator(ComplexMatrix::Zero(3, 3)), expf).matrix(),
                          ComplexMatrix::Identity(3, 3)) < 1e-15);
  CHECK(max_abs_deviation(matrix_function(HermitianOperator(diag({0.3, -2.0})), expf).matrix(),
                          diag({std::exp(0.3), std::exp(-2.0)})) < 1e-14);

  SUBCASE("exp then ln round-trips for spectra in [-5, 5]") {
    Rng rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
      const ComplexMatrix v = random_unitary(4, rng);
      const RealVector spectrum{{u(rng), u(rng), u(rng), u(rng)}};
      const HermitianOperator h(ComplexMatrix(v * spectrum.cast<cplx>().asDiagonal() * v.adjoint()));
      const auto back = matrix_function(matrix_function(h, expf), [](double e) { return std::log(e); });
      worst = std::max(worst, max_abs_deviation(back.matrix(), h.matrix()));
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("domain error") {
    CHECK_THROWS_AS(matrix_function(HermitianOperator(diag({1.0, -1.0})), [](double e) { return std::log(e); }),
                    std::domain_error);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(phi_plus()) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  // -sum p ln p over the b = 0.75 weights
  const double oracle = oracle::shannon({0.765625, 0.109375, 0.109375, 0.015625});
  CHECK(oracle == doctest::Approx(0.753540322513).epsilon(1e-11));
  CHECK(std::abs(von_neumann_entropy(to_density_matrix(jaynes_b(0.75))) - oracle) < 1e-12);
}

TEST_CASE("expectation") {
  const ChshOperators ops = chsh_operators();
  CHECK(std::abs(expectation(DensityMatrix::maximally_mixed(4), ops.b)) < 1e-15);
  CHECK(expectation(phi_plus(), ops.b) == doctest::Approx(1.0).epsilon(1e-15));
  for (double b : {0.5, 0.75, 0.9}) {
    CHECK(std::abs(expectation(to_density_matrix(jaynes_b(b)), ops.b) - b) < 1e-12);
  }
  CHECK_THROWS_AS(expectation(DensityMatrix::maximally_mixed(2), ops.b), std::invalid_argument);

  SUBCASE("linear in the observable") {
    Rng rng(8);
    for (int s = 0; s < 100; ++s) {
      const DensityMatrix rho = random_density_matrix(4, 4, rng);
      const HermitianOperator o1 = random_hermitian(4, rng);
      const HermitianOperator o2 = random_hermitian(4, rng);
      const double alpha = std::uniform_real_distribution<double>(-3, 3)(rng);
      const double lhs = expectation(rho, alpha * o1 + o2);
      const double rhs = alpha * expectation(rho, o1) + expectation(rho, o2);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("B, X, Z are simultaneously diagonal in the Bell basis") {
  const ChshOperators ops = chsh_operators();
  for (const HermitianOperator* o : {&ops.b, &ops.x, &ops.z}) CHECK(bell_offdiagonal(o->matrix()) < 1e-12);
}

TEST_CASE("partial transpose") {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  CHECK(max_abs_deviation(partial_transpose(mixed, Party::Second).matrix(), mixed.matrix()) == 0.0);
  const auto pt = eig_hermitian(partial_transpose(phi_plus(), Party::Second));
  CHECK(pt.eigenvalues(0) == doctest::Approx(-0.5).epsilon(1e-14));

  Rng rng(2);
  for (int s = 0; s < 20; ++s) {
    const DensityMatrix rho = random_density_matrix(4, 4, rng);
    for (Party p : {Party::First, Party::Second}) {
      const HermitianOperator once = partial_transpose(rho, p);
      CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-12);
      CHECK(max_abs_deviation(partial_transpose(once, p).matrix(), rho.matrix()) < 1e-15);
    }
    // T1 and T2 are related by a full transpose
    CHECK(max_abs_deviation(partial_transpose(rho, Party::First).matrix(),
                            partial_transpose(rho, Party::Second).matrix().transpose()) < 1e-15);
  }
  // product states are mapped to products of transposes
  const ComplexMatrix a = random_density_matrix(2, 2, rng).matrix();
  const ComplexMatrix b = random_density_matrix(2, 2, rng).matrix();
  const DensityMatrix prod(ComplexMatrix(tensor_product(a, b)));
  CHECK(max_abs_deviation(partial_transpose(prod, Party::Second).matrix(), tensor_product(a, b.transpose())) < 1e-15);

  CHECK_THROWS_AS(partial_transpose(DensityMatrix::maximally_mixed(2), Party::Second), std::invalid_argument);
}

TEST_CASE("trace distance") {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  CHECK(trace_distance(phi_plus(), phi_plus()) < 1e-15);
  CHECK(trace_distance(phi_plus(), psi_minus()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(mixed, phi_plus()) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(trace_distance(phi_plus(), mixed) == doctest::Approx(trace_distance(mixed, phi_plus())));
  CHECK_THROWS_AS(trace_distance(mixed, DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

TEST_CASE("density matrix and state vector contracts") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(2, 2))), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(diag({1.5, -0.5}))), std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix(ComplexMatrix(diag({1.0 + 5e-11, -5e-11}))));
  CHECK_THROWS_AS(StateVector(ComplexVector::Ones(2)), std::invalid_argument);

  Rng rng(9);
  for (int s = 0; s < 100; ++s) {
    const DensityMatrix rho = random_density_matrix(4, 1 + s % 4, rng);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-10);
    CHECK(eig_hermitian(rho.op()).eigenvalues(0) >= -1e-10);
  }
}
