#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "lbreg/potentials.hpp"
#include "oracles.hpp"

using namespace lbreg;

namespace {

struct Named {
  std::string label;
  std::unique_ptr<Potential> J;
  bool smooth;
};

std::vector<Named> all_potentials(std::size_t r, std::size_t c) {
  std::vector<Named> out;
  out.push_back({"quadratic", quadratic_potential(), true});
  out.push_back({"sobolev a=3", sobolev_potential(3.0, NeumannLaplacian(r, c)), true});
  out.push_back({"sobolev a=1000", sobolev_potential(1000.0, NeumannLaplacian(r, c)), true});
  out.push_back({"dct_l1 mu=0", dct_l1_potential(0.4, 0.0, DctPlan(r, c)), false});
  out.push_back({"dct_l1 mu=0.01", dct_l1_potential(0.4, 0.01, DctPlan(r, c)), true});
  out.push_back({"dct_l1 mu=0.5", dct_l1_potential(2.0, 0.5, DctPlan(r, c)), true});
  return out;
}

}  // namespace

TEST_CASE("bregman distance examples") {
  const auto J = quadratic_potential();
  CHECK(bregman(*J, Grid(1, 1, 2.0), Grid(1, 1, 0.0), Grid(1, 1, 0.0)) == 2.0);

  std::mt19937_64 rng(1);
  const Grid v = oracle::random_grid(3, 3, rng);
  CHECK(bregman(*J, v, v, v) == 0.0);
  CHECK_THROWS_AS(bregman(*J, v, v, v + Grid(3, 3, 1.0)), SubgradientError);
}

TEST_CASE("bregman distance for the DCT l1 potential") {
  std::mt19937_64 rng(2);
  const auto J = dct_l1_potential(0.3, 0.0, DctPlan(4, 4));
  for (int trial = 0; trial < 10; ++trial) {
    const Grid q = oracle::random_grid(4, 4, rng);
    const Grid v = J->solve_subproblem(q);
    const Grid u = oracle::random_grid(4, 4, rng);
    const double d = bregman(*J, u, v, q);
    // Direct evaluation of J(u) - J(v) - <q, u - v> through the oracle DCT.
    const auto j_direct = [](const Grid& x) {
      const Grid coef = oracle::dct2_by_definition(x);
      double l1 = 0.0;
      for (double c : coef.values()) l1 += std::abs(c);
      return 0.5 * norm_sq(x) + 0.3 * l1;
    };
    CHECK(d == doctest::Approx(j_direct(u) - j_direct(v) - inner(q, u - v)).epsilon(1e-12));
    CHECK(d >= -1e-12);
  }
}

TEST_CASE("symmetric bregman") {
  const auto J = quadratic_potential();
  const Grid u(1, 2, std::vector<double>{1, 0});
  const Grid v(1, 2);
  CHECK(symmetric_bregman(*J, u, v, u, v) == 1.0);
  CHECK_THROWS_AS(symmetric_bregman(*J, u, v, v, v), SubgradientError);

  std::mt19937_64 rng(3);
  for (auto& [label, pot, smooth] : all_potentials(5, 4)) {
    CAPTURE(label);
    for (int trial = 0; trial < 5; ++trial) {
      const Grid p = oracle::random_grid(5, 4, rng, -2, 2);
      const Grid q = oracle::random_grid(5, 4, rng, -2, 2);
      const Grid a = pot->solve_subproblem(p);
      const Grid b = pot->solve_subproblem(q);
      const auto diag = bregman_diag(*pot, a, b, p, q);
      const double both = diag.d_forward + bregman(*pot, b, a, p);
      CHECK(diag.d_symmetric == doctest::Approx(both).epsilon(1e-10).scale(1.0));
      // Swapping primal and dual roles gives the identical pairing.
      CHECK(symmetric_bregman(p, q, a, b) == diag.d_symmetric);
    }
  }
}

TEST_CASE("quadratic potential") {
  const auto J = quadratic_potential();
  const Grid p(1, 2, std::vector<double>{1, -2});
  CHECK(J->solve_subproblem(p) == p);
  CHECK(J->gamma() == 1.0);
  CHECK(J->delta() == 1.0);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Grid u = oracle::random_grid(3, 4, rng);
    const Grid v = oracle::random_grid(3, 4, rng);
    CHECK(symmetric_bregman(*J, u, v, u, v) == doctest::Approx(norm_sq(u - v)).epsilon(1e-12));
  }
}

TEST_CASE("sobolev potential") {
  const NeumannLaplacian lap(6, 6);
  CHECK_THROWS_AS(SobolevPotential(0.0, lap), std::invalid_argument);

  const auto J = sobolev_potential(1000.0, lap);
  CHECK(max_abs(J->solve_subproblem(Grid(6, 6, 0.7)) - Grid(6, 6, 0.7)) <= 1e-12);
  CHECK(*J->delta() == doctest::Approx(1.0 / (1.0 + 1000.0 * lap.max_eigenvalue())));
  CHECK_THROWS_AS(J->solve_subproblem(Grid(5, 6)), ShapeError);

  std::mt19937_64 rng(5);
  const Grid p = oracle::random_grid(6, 6, rng);
  CHECK(max_abs(sobolev_potential(1e-12, lap)->solve_subproblem(p) - p) <= 1e-10);

  auto system = oracle::dense_neumann_laplacian(6, 6);
  for (std::size_t i = 0; i < system.size(); ++i) system[i] *= 1000.0;
  for (std::size_t i = 0; i < 36; ++i) system[i * 36 + i] += 1.0;
  const Grid dense(6, 6, oracle::dense_solve(system, {p.values().begin(), p.values().end()}));
  CHECK(max_abs(J->solve_subproblem(p) - dense) <= 1e-8);

  const Grid u = oracle::random_grid(6, 6, rng);
  CHECK(J->value(u) == doctest::Approx(0.5 * norm_sq(u) + 500.0 * norm_sq(gradient(u).first) +
                                       500.0 * norm_sq(gradient(u).second)));
}

TEST_CASE("huber scalar") {
  CHECK(huber(0.3, 0.0) == 0.3);
  CHECK(huber(-0.3, 0.0) == 0.3);
  CHECK(huber(0.2, 0.5) == doctest::Approx(0.04));
  CHECK(huber(2.0, 0.5) == 1.75);
}

TEST_CASE("dct l1 shrinkage") {
  CHECK_THROWS_AS(DctL1Potential(0.0, 0.0, DctPlan(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(DctL1Potential(1.0, -0.1, DctPlan(2, 2)), std::invalid_argument);

  const DctL1Potential hard(2.0, 0.0, DctPlan(1, 1));
  CHECK(hard.shrink(3.0) == 1.0);
  CHECK(hard.shrink(1.0) == 0.0);
  CHECK(hard.shrink(-5.0) == -3.0);
  CHECK(!hard.delta());

  const DctL1Potential soft(2.0, 0.5, DctPlan(1, 1));
  CHECK(soft.shrink(1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(*soft.delta() == doctest::Approx(0.2));
  // The two branches meet at |z| = mu + alpha.
  const double edge = 2.5;
  CHECK(edge / (1.0 + 2.0 / 0.5) == doctest::Approx(edge - 2.0).epsilon(1e-15));
  CHECK(soft.shrink(std::nextafter(edge, 0.0)) == doctest::Approx(soft.shrink(std::nextafter(edge, 10.0))).epsilon(1e-14));

  for (double z : {-7.0, -2.5, -0.3, 0.0, 0.1, 1.0, 2.5, 4.0}) {
    const double root = oracle::bisect([&](double c) { return c + 2.0 * (std::abs(c) <= 0.5 ? c / 0.5 : (c > 0 ? 1.0 : -1.0)) - z; }, -20, 20);
    CHECK(soft.shrink(z) == doctest::Approx(root).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("dct l1 subproblem, mu = 0, against subgradient descent") {
  std::mt19937_64 rng(6);
  const double alpha = 0.5;
  const auto J = dct_l1_potential(alpha, 0.0, DctPlan(4, 4));
  const Grid p = oracle::random_grid(4, 4, rng, -1.5, 1.5);
  const Grid u = J->solve_subproblem(p);
  const Grid ref = oracle::l1_subgradient_descent(p, alpha, 200000);
  CHECK(max_abs(u - ref) <= 1e-4);
}

TEST_CASE("dct l1 subproblem, mu > 0, against per-coefficient bisection") {
  std::mt19937_64 rng(7);
  const double alpha = 0.8, mu = 0.01;
  const auto J = dct_l1_potential(alpha, mu, DctPlan(5, 6));
  const Grid p = oracle::random_grid(5, 6, rng, -2, 2);
  Grid c = oracle::dct2_by_definition(p);
  for (double& ci : c.values()) {
    const double z = ci;
    const auto eq = [&](double t) {
      const double h1 = std::abs(t) <= mu ? t / mu : (t > 0 ? 1.0 : -1.0);
      return t + alpha * h1 - z;
    };
    ci = oracle::bisect(eq, -10, 10);
  }
  CHECK(max_abs(J->solve_subproblem(p) - oracle::idct2_by_definition(c)) <= 1e-10);
}

TEST_CASE("potential invariants on random inputs") {
  std::mt19937_64 rng(8);
  for (auto& [label, pot, smooth] : all_potentials(6, 5)) {
    CAPTURE(label);
    const double gamma = *pot->gamma();
    const auto delta = pot->delta();
    for (int trial = 0; trial < 10; ++trial) {
      const Grid p = oracle::random_grid(6, 5, rng, -3, 3);
      const Grid q = oracle::random_grid(6, 5, rng, -3, 3);
      const Grid u = pot->solve_subproblem(p);
      const Grid v = pot->solve_subproblem(q);

      CHECK(pot->subgradient_consistency(u, p) <= kConsistencyTol);
      CHECK(pot->subgradient_consistency(v, q) <= kConsistencyTol);

      const double ds = symmetric_bregman(*pot, u, v, p, q);
      CHECK(ds >= -1e-12);
      CHECK(bregman(*pot, u, v, q) >= -1e-12);
      CHECK(ds >= gamma * norm_sq(u - v) - 1e-10);
      if (delta) CHECK(ds >= *delta * norm_sq(p - q) - 1e-10);

      const Grid a = oracle::random_grid(6, 5, rng, -3, 3);
      const Grid b = oracle::random_grid(6, 5, rng, -3, 3);
      CHECK(pot->value(0.5 * (a + b)) <= 0.5 * pot->value(a) + 0.5 * pot->value(b) + 1e-12);

      if (smooth) CHECK(max_abs(pot->canonical_subgradient(u) - p) <= 1e-8 * (1 + max_abs(p)));
      const Grid w = oracle::random_grid(6, 5, rng);
      CHECK(pot->subgradient_consistency(w, pot->canonical_subgradient(w)) <= kConsistencyTol);
    }
  }
}

TEST_CASE("canonical subgradient of the l1 potential at zero is zero") {
  const auto J = dct_l1_potential(50.0, 0.0, DctPlan(4, 4));
  CHECK(max_abs(J->canonical_subgradient(Grid(4, 4))) == 0.0);
  // Any p with |Cp| <= alpha is also a subgradient at zero.
  CHECK(J->subgradient_consistency(Grid(4, 4), Grid(4, 4, 1.0)) == 0.0);
  CHECK(J->subgradient_consistency(Grid(4, 4), Grid(4, 4, 13.0)) > kConsistencyTol);
}
