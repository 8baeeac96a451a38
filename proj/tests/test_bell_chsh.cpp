#include <doctest.h>

#include "jaynes/bell_chsh.hpp"
#include "oracles.hpp"

using namespace jaynes;

namespace {

void check_weights(const BellDiagonalState& s, const std::array<double, 4>& expect, double tolerance = 1e-12) {
  for (int k = 0; k < 4; ++k) {
    INFO("weight " << k);
    CHECK(std::abs(s.weight(k) - expect[k]) <= tolerance);
  }
}

std::vector<std::pair<double, double>> admissible_grid(int n, double b_lo = 0.5) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double b = b_lo + (1.0 - b_lo) * i / (n - 1);
    const double lo = 2.0 * b - 1.0;
    for (int j = 0; j < n; ++j) pts.emplace_back(b, j == n - 1 ? 1.0 : lo + (1.0 - lo) * j / (n - 1));
  }
  return pts;
}

}  // namespace

TEST_CASE("chsh operators") {
  const ChshOperators ops = chsh_operators();
  const ComplexMatrix comm = ops.b.matrix() * ops.x.matrix() - ops.x.matrix() * ops.b.matrix();
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-15);

  const ComplexMatrix bell_b = to_bell_frame(ops.b.matrix());
  const ComplexMatrix bell_x = to_bell_frame(ops.x.matrix());
  const ComplexMatrix bell_z = to_bell_frame(ops.z.matrix());
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(bell_b(k, k) - oracle::kBellB[k]) < 1e-15);
    CHECK(std::abs(bell_x(k, k) - oracle::kBellX[k]) < 1e-15);
    CHECK(std::abs(bell_z(k, k) - (2.0 * oracle::kBellB[k] - oracle::kBellX[k])) < 1e-15);
  }
  // 2 sqrt2 B = sqrt2 (X + Z)
  const ComplexMatrix lhs = 2.0 * std::sqrt(2.0) * ops.b.matrix();
  const ComplexMatrix rhs = std::sqrt(2.0) * (ops.x.matrix() + ops.z.matrix());
  CHECK(max_abs_deviation(lhs, rhs) < 1e-15);
}

TEST_CASE("jaynes_b") {
  check_weights(jaynes_b(1.0), {1, 0, 0, 0});
  check_weights(jaynes_b(0.0), {0.25, 0.25, 0.25, 0.25});
  check_weights(jaynes_b(0.75), {0.765625, 0.109375, 0.109375, 0.015625});
  CHECK_THROWS_AS(jaynes_b(1.0001), std::domain_error);
  CHECK_THROWS_AS(jaynes_b(-1.5), std::domain_error);
}

TEST_CASE("jaynes_bx") {
  SUBCASE("matches the expanded polynomial form") {
    for (const auto& [b, x] : admissible_grid(20)) {
      const auto expect = oracle::expanded_bx(b, x);
      check_weights(jaynes_bx(b, x), expect, 1e-15);
    }
  }
  SUBCASE("spot values") {
    // direct substitution: (1.9*1.6, 0.1*1.6, 1.9*0.4, 0.1*0.4) / 4
    check_weights(jaynes_bx(0.75, 0.9), {0.76, 0.04, 0.19, 0.01});
    check_weights(jaynes_bx(0.5, 1.0), {0.5, 0.0, 0.5, 0.0});
  }
  SUBCASE("redundant information leaves rho_J1 unchanged") {
    for (int k = -100; k <= 100; ++k) {
      const double b = k / 100.0;
      check_weights(jaynes_bx(b, b), jaynes_b(b).weights());
    }
  }
  SUBCASE("inadmissible pairs are rejected with the violated inequality") {
    try {
      jaynes_bx(0.75, 0.4);
      FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("x >= 2b - 1") != std::string::npos);
    }
    CHECK_THROWS_AS(jaynes_bx(0.5, 1.2), std::domain_error);
    CHECK_THROWS_AS(jaynes_bx(-0.75, 0.9), std::domain_error);
  }
}

TEST_CASE("constraint consistency on a 20x20 grid") {
  const ChshOperators ops = chsh_operators();
  for (const auto& [b, x] : admissible_grid(20)) {
    const DensityMatrix rho2 = to_density_matrix(jaynes_bx(b, x));
    CHECK(std::abs(expectation(rho2, ops.b) - b) <= 1e-12);
    CHECK(std::abs(expectation(rho2, ops.x) - x) <= 1e-12);
    const DensityMatrix rho1 = to_density_matrix(jaynes_b(b));
    CHECK(std::abs(expectation(rho1, ops.b) - b) <= 1e-12);
  }
}

TEST_CASE("admissible region") {
  CHECK(admissible(0.75, 0.9));
  CHECK_FALSE(admissible(0.75, 0.4));
  CHECK(admissible(0.5, 0.0));
  CHECK_FALSE(admissible(1.1, 1.0));
  CHECK_FALSE(admissible(0.5, -1.1));
  // equivalent to nonnegativity of all four weights (dyadic grid, exact boundaries)
  for (int i = -32; i <= 32; ++i)
    for (int j = -32; j <= 32; ++j) {
      const double b = i / 32.0, x = j / 32.0;
      const auto w = oracle::expanded_bx(b, x);
      const bool nonneg = std::all_of(w.begin(), w.end(), [](double v) { return v >= -1e-15; });
      INFO("b=" << b << " x=" << x);
      CHECK(admissible(b, x) == nonneg);
    }
  ConstraintPoint p{0.75, 0.4};
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  CHECK_NOTHROW(ConstraintPoint{0.75, std::nullopt}.validate());
  check_weights(jaynes_state({0.75, 0.9}), jaynes_bx(0.75, 0.9).weights());
  check_weights(jaynes_state({0.75, std::nullopt}), jaynes_b(0.75).weights());
}

TEST_CASE("largest eigenvalues") {
  CHECK(largest_eigenvalue_j1(1.0) == doctest::Approx(1.0));
  CHECK(largest_eigenvalue_j1(0.5) == doctest::Approx(0.5625));
  CHECK(largest_eigenvalue_j1(0.75) == doctest::Approx(0.765625));
  CHECK(largest_eigenvalue_j2(0.75, 0.9) == doctest::Approx(0.76));
  CHECK_THROWS_AS(largest_eigenvalue_j1(0.4), std::domain_error);
  CHECK_THROWS_AS(largest_eigenvalue_j2(0.4, 0.5), std::domain_error);
  CHECK_THROWS_AS(largest_eigenvalue_j2(0.75, 0.4), std::domain_error);

  for (int k = 0; k <= 50; ++k) {
    const double b = 0.5 + k / 100.0;
    CHECK(largest_eigenvalue_j2(b, b) == doctest::Approx(largest_eigenvalue_j1(b)).epsilon(1e-15));
    CHECK(std::abs(largest_eigenvalue_j2(b, 1.0) - b) < 1e-15);
    CHECK(std::abs(largest_eigenvalue_j2(b, 2.0 * b - 1.0) - b) < 1e-15);
  }

  SUBCASE("Phi+ dominates and f_J1 >= f_J2 with equality only at x = b") {
    for (const auto& [b, x] : admissible_grid(25)) {
      const BellDiagonalState s = jaynes_bx(b, x);
      CHECK(s.weight(BellDiagonalState::PhiPlus) == doctest::Approx(s.max_weight()).epsilon(1e-15));
      CHECK(std::abs(s.weight(BellDiagonalState::PhiPlus) - largest_eigenvalue_j2(b, x)) < 1e-15);
      const double gap = largest_eigenvalue_j1(b) - largest_eigenvalue_j2(b, x);
      CHECK(gap >= -1e-12);
      if (std::abs(x - b) > 1e-9) CHECK(gap > 0.0);
    }
  }
}

TEST_CASE("variance and the minimum-variance state") {
  CHECK(variance_x(1.0) == 0.0);
  CHECK(variance_x(0.0) == 1.0);
  CHECK(variance_x(0.6) == doctest::Approx(0.64));
  CHECK_THROWS_AS(variance_x(1.5), std::domain_error);

  check_weights(min_variance_state(0.5), {0.5, 0, 0.5, 0});
  check_weights(min_variance_state(1.0), {1, 0, 0, 0});
  CHECK_THROWS_AS(min_variance_state(-0.1), std::domain_error);
  for (int k = 0; k <= 100; ++k) {
    const double b = k / 100.0;
    check_weights(min_variance_state(b), jaynes_bx(b, 1.0).weights());
    if (b >= 0.5) CHECK(min_variance_state(b).max_weight() == doctest::Approx(b));
  }
  for (int k = 0; k < 10; ++k) {
    const double b = 0.5 + k / 20.0;
    const double lo = 2.0 * b - 1.0;
    for (int j = 0; j < 20; ++j) CHECK(variance_x(lo + (1.0 - lo) * j / 20.0) > variance_x(1.0));
  }
}

TEST_CASE("entropy never rises with more information") {
  for (const auto& [b, x] : admissible_grid(20)) {
    const double s1 = von_neumann_entropy(to_density_matrix(jaynes_b(b)));
    const double s2 = von_neumann_entropy(to_density_matrix(jaynes_bx(b, x)));
    CHECK(s1 >= s2 - 1e-12);
  }
  CHECK(oracle::shannon({0.765625, 0.109375, 0.109375, 0.015625}) >
        oracle::shannon({0.76, 0.04, 0.19, 0.01}));
}

TEST_CASE("BellDiagonalState") {
  CHECK_THROWS_AS(BellDiagonalState({0.5, 0.5, 0.1, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(BellDiagonalState({0.5, 0.6, 0.0, 0.0}), std::invalid_argument);
  const BellDiagonalState tiny({1.0 + 1e-13, -1e-13, 0.0, 0.0});
  CHECK(tiny.weight(1) == 0.0);

  const DensityMatrix mixed = to_density_matrix(BellDiagonalState({0.25, 0.25, 0.25, 0.25}));
  CHECK(max_abs_deviation(mixed.matrix(), ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);
  const DensityMatrix phi = to_density_matrix(BellDiagonalState({1, 0, 0, 0}));
  CHECK(max_abs_deviation(phi.matrix(), bell_basis()[0].projector()) < 1e-15);
  CHECK(std::abs(expectation(to_density_matrix(jaynes_bx(0.75, 0.9)), chsh_operators().x) - 0.9) < 1e-12);

  for (const auto& [b, x] : admissible_grid(8)) {
    const BellDiagonalState s = jaynes_bx(b, x);
    check_weights(BellDiagonalState::from_density_matrix(to_density_matrix(s)), s.weights());
  }
  ComplexMatrix coherent = ComplexMatrix::Zero(4, 4);
  coherent(0, 0) = coherent(1, 1) = 0.5;
  coherent(0, 1) = coherent(1, 0) = 0.25;
  const DensityMatrix up_up(coherent);
  CHECK_THROWS_AS(BellDiagonalState::from_density_matrix(up_up), std::invalid_argument);
}
