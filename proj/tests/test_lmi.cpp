#include "ratecert/lmi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ratecert/rng.hpp"
#include "ratecert/supply.hpp"

using namespace ratecert;

namespace {

double max_entry_gap(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  REQUIRE(a.dim() == b.dim());
  double gap = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) gap = std::max(gap, std::fabs(a(i, j) - b(i, j)));
  return gap;
}

SymmetricMatrix scalar_storage(double p) { return SymmetricMatrix::from_rows({{p}}); }

}  // namespace

TEST_SUITE("lmi") {

TEST_CASE("gradient descent block at the first closed-form parameter triple") {
  const FunctionClass fc(1.0, 10.0);
  const auto real = realize(MethodSpec::gradient_descent(1.0 / fc.L, fc));
  const auto supply = gd_supply(fc, GdSupplyMode::StronglyConvex);
  const double rho = 1.0 - fc.m / fc.L;
  const auto block = assemble_lti(real, scalar_storage(fc.L * fc.L), rho * rho, supply.X);
  CHECK(block.lhs(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(block.lhs(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(block.lhs(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("gradient descent block at the second closed-form parameter triple") {
  const FunctionClass fc(1.0, 10.0);
  const double alpha = 2.0 / (fc.L + fc.m);
  const double rho = (fc.L - fc.m) / (fc.L + fc.m);
  const double p = 0.5 * (fc.L + fc.m) * (fc.L + fc.m);
  const auto real = realize(MethodSpec::gradient_descent(alpha, fc));
  const auto supply = gd_supply(fc, GdSupplyMode::StronglyConvex);
  const auto block = assemble_lti(real, scalar_storage(p), rho * rho, supply.X);
  CHECK(block.lhs.max_abs() <= 1e-12);
}

TEST_CASE("zero inputs assemble to zero") {
  const auto real = realize(MethodSpec::gradient_descent(0.5, FunctionClass(1.0, 2.0)));
  const auto block = assemble_lti(real, SymmetricMatrix(1), 0.7, SymmetricMatrix(2));
  CHECK(block.lhs.max_abs() == 0.0);

  Realization acc = realize(MethodSpec::nesterov(0.1, 0.5, FunctionClass(1.0, 10.0)));
  const auto ltv = assemble_ltv(acc, SymmetricMatrix(2), SymmetricMatrix(2), SymmetricMatrix(3), 0);
  CHECK(ltv.lhs.max_abs() == 0.0);
}

TEST_CASE("assembled block is symmetric before symmetrization between random inputs") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const double m = rng.uniform(0.1, 2.0);
    const double L = m * rng.uniform(1.0, 50.0);
    const FunctionClass fc(m, L);
    const auto spec = MethodSpec::nesterov(rng.uniform(0.01, 1.0) / L, rng.uniform(0.0, 1.0), fc);
    const auto real = realize(spec);
    SymmetricMatrix P(2);
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) P.set(i, j, rng.uniform(-L, L));
    const auto supply = nesterov_supply(fc, spec.alpha, spec.beta, 0.9);
    const auto block = assemble_lti(real, P, 0.9, supply.combined.X);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(block.lhs(i, j) == block.lhs(j, i));
  }
}

TEST_CASE("raw assembly is symmetric to rounding before symmetrization") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const double m = rng.uniform(0.1, 2.0);
    const double L = m * rng.uniform(2.0, 50.0);
    const FunctionClass fc(m, L);
    const auto spec = MethodSpec::nesterov(1.0 / L, rng.uniform(0.0, 1.0), fc);
    const auto real = realize(spec);
    SymmetricMatrix P(2);
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) P.set(i, j, rng.uniform(-L, L));
    const double rho_sq = rng.uniform(0.0, 1.0);

    // Rebuild the block with plain matrix products, no symmetrization.
    const Matrix PA = P.as_matrix() * real.A;
    const Matrix PB = P.as_matrix() * real.B;
    const Matrix topleft = real.A.transpose() * PA;
    const Matrix topright = real.A.transpose() * PB;
    const Matrix bottomright = real.B.transpose() * PB;
    Matrix raw(3, 3);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) raw(i, j) = topleft(i, j) - rho_sq * P(i, j);
      raw(i, 2) = topright(i, 0);
      raw(2, i) = topright(i, 0);
    }
    raw(2, 2) = bottomright(0, 0);
    const double scale = std::max(1.0, raw.max_abs());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::fabs(raw(i, j) - raw(j, i)) <= 1e-14 * scale);
  }
}

TEST_CASE("identity lift consistency") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const double m = rng.uniform(0.1, 2.0);
    const double L = m * rng.uniform(2.0, 20.0);
    const FunctionClass fc(m, L);
    const auto spec = MethodSpec::nesterov(1.0 / L, rng.uniform(0.0, 1.0), fc);
    const auto real = realize(spec);
    SymmetricMatrix P(2);
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) P.set(i, j, rng.uniform(-L, L));
    const double rho_sq = rng.uniform(0.0, 1.0);
    const auto supply = nesterov_supply(fc, spec.alpha, spec.beta, rho_sq);

    const SymmetricMatrix reduced = assemble_lti_lhs(real.A, real.B, P, rho_sq, supply.combined.X);
    for (int p = 1; p <= 3; ++p) {
      const SymmetricMatrix lifted =
          assemble_lti_lhs(real.A.kron_identity(p), real.B.kron_identity(p), kron_identity(P, p),
                           rho_sq, kron_identity(supply.combined.X, p));
      const double tol = 1e-12 * std::max(1.0, reduced.max_abs());
      CHECK(max_entry_gap(lifted, kron_identity(reduced, p)) <= tol);
    }
  }
}

TEST_CASE("sublinear certificate family zeroes the time-varying block") {
  const double L = 3.0;
  const ZetaSchedule sched(40);
  for (int k = 0; k <= 39; ++k) {
    const auto real = realize_at(k, sched, L);
    std::vector<double> dir_k = {sched.zeta(k - 1), 1.0 - sched.zeta(k - 1)};
    std::vector<double> dir_next = {sched.zeta(k), 1.0 - sched.zeta(k)};
    const SymmetricMatrix P_k = 0.5 * L * SymmetricMatrix::outer(dir_k);
    const SymmetricMatrix P_next = 0.5 * L * SymmetricMatrix::outer(dir_next);
    const auto supply = sublinear_supply(L, sched, k);
    const auto block = assemble_ltv(real, P_k, P_next, supply.combined.X, k);
    CHECK(block.lhs.max_abs() <= 1e-9 * L * std::max(1.0, sched.mu(k + 1)));
  }
}

TEST_CASE("geometric certificate family collapses onto the single-rate block") {
  const FunctionClass fc(1.0, 10.0);
  const auto spec = MethodSpec::nominal_nesterov(fc);
  const auto real = realize(spec);
  const double rho_sq = 1.0 - std::sqrt(fc.m / fc.L);
  const auto supply = nesterov_supply(fc, spec.alpha, spec.beta, rho_sq);
  SymmetricMatrix P = SymmetricMatrix::from_rows({{5.0, -4.5}, {-4.5, 4.05}});

  const SymmetricMatrix lti = assemble_lti_lhs(real.A, real.B, P, rho_sq, supply.combined.X);
  double weight = 1.0;  // rho^{-2j}
  for (int j = 0; j < 20; ++j) {
    const double weight_next = weight / rho_sq;
    const SymmetricMatrix X_j =
        weight * supply.decrease.X + (weight_next - weight) * supply.gap.X;
    const auto ltv = assemble_ltv(real, weight * P, weight_next * P, X_j, j);
    const SymmetricMatrix expected = weight_next * lti;
    CHECK(max_entry_gap(ltv.lhs, expected) <= 1e-9 * std::max(1.0, expected.max_abs()));
    weight = weight_next;
  }
}

TEST_CASE("continuous-time certificate zeroes the block on a time grid") {
  for (double t : {1.0, 2.0, 10.0}) {
    const Matrix A = Matrix::from_rows({{-3.0 / t, 0.0}, {1.0, 0.0}});
    const Matrix B = Matrix::from_rows({{-1.0}, {0.0}});
    const SymmetricMatrix P = SymmetricMatrix::from_rows({{t * t / 2.0, t}, {t, 2.0}});
    const SymmetricMatrix P_dot = SymmetricMatrix::from_rows({{t, 1.0}, {1.0, 0.0}});
    const SymmetricMatrix X = -1.0 * SymmetricMatrix::from_rows({{0.0, 0.0, t * t / 2.0},
                                                                 {0.0, 0.0, t},
                                                                 {t * t / 2.0, t, 0.0}});
    const auto block = assemble_ct(A, B, P, P_dot, X, t);
    CHECK(block.lhs.max_abs() <= 1e-12 * std::max(1.0, t * t));

    // Storage-weighted input column at this t.
    const Matrix PB = P.as_matrix() * B;
    CHECK(PB(0, 0) == doctest::Approx(-t * t / 2.0).epsilon(1e-15));
    CHECK(PB(1, 0) == doctest::Approx(-t).epsilon(1e-15));
  }

  const Matrix A0 = Matrix::from_rows({{0.0, 0.0}, {0.0, 0.0}});
  const Matrix B0 = Matrix::from_rows({{0.0}, {0.0}});
  const auto zero = assemble_ct(A0, B0, SymmetricMatrix(2), SymmetricMatrix(2), SymmetricMatrix(3), 1.0);
  CHECK(zero.lhs.max_abs() == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  const auto real = realize(MethodSpec::nesterov(0.1, 0.5, FunctionClass(1.0, 10.0)));
  CHECK_THROWS_AS(assemble_lti(real, SymmetricMatrix(1), 0.9, SymmetricMatrix(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_lti(real, SymmetricMatrix(2), 0.9, SymmetricMatrix(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_lti(real, SymmetricMatrix(2), 1.5, SymmetricMatrix(3)),
                  std::invalid_argument);
}

}  // TEST_SUITE
