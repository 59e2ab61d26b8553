#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <urysohn/analysis.hpp>
#include <urysohn/solvers.hpp>

using namespace urysohn;

namespace {

double rel_dev(double got, double want) { return std::abs(got - want) / want; }

DiscretizedOperator table1_op(int n, CellCount cells) {
  return DiscretizedOperator(example1(), NodeSet(UniformMesh(n), 0), quad_cells_for(cells, n), false);
}

DiscretizedOperator table2_op(int n) {
  return DiscretizedOperator(example2(), NodeSet(UniformMesh(n), 0), n * n, false);
}

}  // namespace

TEST_CASE("method tags") {
  CHECK(method_tag(Method::collocation) == "C");
  CHECK(method_tag(Method::iterated) == "S");
  CHECK(method_tag(Method::modified) == "M");
  CHECK(method_tag(Method::iterated_modified) == "IM");
}

TEST_CASE("Newton configuration validation") {
  NewtonConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.residual_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.step_clip = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.initial_guess = InitialGuess::user_supplied;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("linear problem: Newton converges at once") {
  const auto c = conclusion_example();
  for (int n : {1, 3, 9}) {
    const DiscretizedOperator op(c, c.nodes(UniformMesh(n), 0), n);
    const auto sol = solve_collocation(op, {});
    CHECK(sol.newton_iterations <= 2);
    CHECK(sol.final_residual <= 1e-12);
    // The collocation solution is (int v + 2) times the projection of s;
    // with nodes at a third of each cell, int Q_n s = 1/2 - h/6.
    const double h = 1.0 / n;
    const double c_int = 2.0 * (0.5 - h / 6.0) / (1.0 - (0.5 - h / 6.0));
    const auto& nodes = op.nodes();
    for (int k = 0; k < nodes.size(); ++k) {
      CHECK(sol.coefficients->values()[static_cast<std::size_t>(k)] ==
            doctest::Approx((c_int + 2.0) * nodes.node(k)).epsilon(1e-12));
    }
    const auto m = solve_modified(op, {});
    CHECK(m.newton_iterations <= 2);
  }
}

TEST_CASE("collocation residual is met at every node") {
  const auto e2 = example2();
  const DiscretizedOperator op(e2, NodeSet(UniformMesh(6), 1), 6);
  NewtonConfig cfg;
  const auto sol = solve_collocation(op, cfg);
  CHECK(sol.final_residual <= cfg.residual_tol);
  const RealFunction v = [&](double t) { return sol(t); };
  const auto& nodes = op.nodes();
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 3; ++i) {
      const double tau = nodes.node(j, i);
      const double vi = sol.coefficients->values()[static_cast<std::size_t>(j * 3 + i)];
      CHECK(std::abs(vi - apply_K(op, v, tau) - e2.rhs(tau)) <= 1e-11);
    }
  }
}

TEST_CASE("iterated solutions") {
  const auto e1 = example1();
  const DiscretizedOperator op(e1, NodeSet(UniformMesh(4), 0), 4);
  const auto c = solve_collocation(op, {});
  const auto s = iterate_solution(op, c);
  CHECK(s.method == Method::iterated);
  const RealFunction c_fn = [&](double t) { return c(t); };
  for (int k = 0; k <= 50; ++k) {
    const double x = k / 50.0;
    CHECK(std::abs(s(x) - apply_K(op, c_fn, x) - e1.rhs(x)) <= 1e-14);
  }
  CHECK_THROWS_AS(iterate_solution(op, s), std::invalid_argument);

  const auto m = solve_modified(op, {});
  CHECK(iterate_solution(op, m).method == Method::iterated_modified);

  Problem zero = e1;
  zero.kernel = zero_kernel();
  const DiscretizedOperator zop(zero, NodeSet(UniformMesh(4), 0), 4);
  const auto zs = iterate_solution(zop, solve_collocation(zop, {}));
  for (double x : {0.0, 0.3, 1.0}) CHECK(zs(x) == e1.rhs(x));
}

TEST_CASE("modified solution satisfies its equation on the grid") {
  for (const auto& p : {example1(), example2()}) {
    for (int r : {0, 1}) {
      const DiscretizedOperator op(p, NodeSet(UniformMesh(4), r), 4);
      NewtonConfig cfg;
      const auto m = solve_modified(op, cfg);
      const auto km = apply_K_nM(op, m.evaluate);
      const double defect = sup_norm(
          [&](double s, Side side) { return m.evaluate(s, side) - km(s, side) - p.rhs(s); }, op.nodes());
      CHECK(defect <= 10 * cfg.residual_tol);
    }
  }
}

TEST_CASE("Newton residuals shrink quadratically") {
  for (const auto& p : {example1(), example2()}) {
    const DiscretizedOperator op(p, NodeSet(UniformMesh(8), 0), 8);
    for (const auto& sol : {solve_collocation(op, {}), solve_modified(op, {})}) {
      const auto& h = sol.residual_history;
      REQUIRE(h.size() >= 2);
      CHECK(sol.newton_iterations + 1 == static_cast<int>(h.size()));
      for (std::size_t k = 1; k < h.size(); ++k) {
        if (h[k - 1] > 1e-7) CHECK(h[k] <= 1e6 * h[k - 1] * h[k - 1]);
      }
    }
  }
}

TEST_CASE("initial guesses") {
  const auto e2 = example2();
  const DiscretizedOperator op(e2, NodeSet(UniformMesh(6), 0), 6);
  const auto base = solve_collocation(op, {});
  NewtonConfig cfg;
  cfg.initial_guess = InitialGuess::exact_perturbed;
  cfg.perturbation = 0.05;
  const auto alt = solve_collocation(op, cfg);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(alt.coefficients->values()[k] == doctest::Approx(base.coefficients->values()[k]).epsilon(1e-11));
  }
  cfg.initial_guess = InitialGuess::user_supplied;
  cfg.user_values = {1.0, 2.0};
  CHECK_THROWS_AS(solve_collocation(op, cfg), std::invalid_argument);
  cfg.user_values.assign(6, 0.0);
  CHECK_NOTHROW(solve_collocation(op, cfg));
}

TEST_CASE("solver failures") {
  SUBCASE("iteration cap") {
    NewtonConfig cfg;
    cfg.max_iter = 1;
    const auto op = table1_op(4, CellCount::mesh);
    CHECK_THROWS_AS(solve_collocation(op, cfg), NonConvergence);
    CHECK_THROWS_AS(solve_modified(op, cfg), NonConvergence);
  }
  SUBCASE("1 is an eigenvalue of K'") {
    // K'(x)y = 2 s int y has eigenfunction s with eigenvalue 1, also after
    // midpoint collocation.
    Problem p = conclusion_example();
    p.kernel = linear_rank_one_kernel(2.0);
    p.node_offsets.reset();
    const DiscretizedOperator op(p, NodeSet(UniformMesh(4), 0), 4);
    CHECK_THROWS_AS(solve_collocation(op, {}), SingularJacobian);
  }
}

TEST_CASE("published error values for single solves") {
  SUBCASE("example 1") {
    const auto op = table1_op(2, CellCount::mesh);
    const auto& phi = *op.problem().exact;
    CHECK(rel_dev(sup_error(solve_collocation(op, {}).evaluate, phi, op.nodes()), 1.93e-1) <= 0.25);

    const auto op8 = table1_op(8, CellCount::mesh);
    CHECK(rel_dev(sup_error(solve_modified(op8, {}).evaluate, phi, op8.nodes()), 1.40e-4) <= 0.25);

    const auto op32 = table1_op(32, CellCount::mesh);
    const auto it32 = table1_op(32, CellCount::mesh_squared);
    const auto s = iterate_solution(it32, solve_collocation(op32, {}));
    CHECK(rel_dev(sup_error(s.evaluate, phi, op32.nodes()), 4.91e-5) <= 0.25);
  }
  SUBCASE("example 2") {
    const auto op12 = table2_op(12);
    const auto& phi = *op12.problem().exact;
    CHECK(rel_dev(sup_error(solve_collocation(op12, {}).evaluate, phi, op12.nodes()), 3.66e-2) <= 0.25);

    const auto op4 = table2_op(4);
    const auto im = iterate_solution(op4, solve_modified(op4, {}));
    CHECK(rel_dev(sup_error(im.evaluate, phi, op4.nodes()), 7.77e-5) <= 0.40);

    const auto op10 = table2_op(10);
    CHECK(rel_dev(sup_error(solve_modified(op10, {}).evaluate, phi, op10.nodes()), 1.37e-5) <= 0.40);
  }
}
