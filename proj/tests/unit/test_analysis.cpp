#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include <urysohn/analysis.hpp>
#include <urysohn/published.hpp>

#include "oracles.hpp"

using namespace urysohn;

TEST_CASE("observed order") {
  CHECK(observed_order(1e-2, 2.5e-3, 2, 4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(observed_order(9.54e-2, 6.87e-2, 4, 6) - 0.81) <= 0.005);
  CHECK(std::abs(observed_order(1.27e-2, 3.15e-3, 2, 4) - 2.01) <= 0.005);
  CHECK_THROWS_AS(observed_order(0.0, 1e-3, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(observed_order(1e-3, -1e-4, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(observed_order(1e-3, 1e-4, 4, 4), std::invalid_argument);
}

TEST_CASE("least-squares slope") {
  const std::vector<int> n{2, 4, 8, 16};
  std::vector<double> e;
  for (int k : n) e.push_back(3.0 * std::pow(1.0 / k, 2.5));
  CHECK(loglog_slope(n, e) == doctest::Approx(2.5).epsilon(1e-12));
  const std::vector<double> noisy{0.5, 0.2, 0.06, 0.02};
  CHECK(loglog_slope(n, noisy) == doctest::Approx(oracle::slope(n, noisy)).epsilon(1e-12));
  CHECK_THROWS_AS(loglog_slope(std::vector<int>{2}, std::vector<double>{0.1}), std::invalid_argument);
}

TEST_CASE("sup error") {
  const RealFunction phi = [](double s) { return std::sin(s); };
  const UniformMesh mesh(5);
  CHECK(sup_error(sided(phi), phi, mesh) == 0.0);
  CHECK(sup_error(sided([&](double s) { return phi(s) + 1e-3; }), phi, mesh) == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("printed orders") {
  // 33 of the 36 printed orders follow from the printed, rounded errors.
  const auto r = check_printed_orders();
  CHECK(r.detail.find("33 of 36 reproduced") != std::string::npos);
  CHECK(r.detail.find("delta_S(10)") != std::string::npos);
  CHECK(r.detail.find("delta_S(12)") != std::string::npos);
  CHECK(r.detail.find("delta_IM(12)") != std::string::npos);
}

TEST_CASE("published tables are well formed") {
  for (int id : {1, 2}) {
    const auto& t = published_table(id);
    for (std::size_t m = 0; m < method_count; ++m) {
      CHECK(t.errors[m].size() == t.n.size());
      CHECK(t.orders[m].size() + 1 == t.n.size());
    }
  }
  CHECK_THROWS_AS(published_table(3), std::invalid_argument);
  CHECK_THROWS_AS(table_preset(0), std::invalid_argument);
}

TEST_CASE("study input validation") {
  NewtonConfig cfg;
  CHECK_THROWS_AS(run_convergence_study(example1(), 0, {4}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(run_convergence_study(example1(), 0, {4, 2}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(run_convergence_study(example1(), 0, {0, 2}, cfg), std::invalid_argument);
  Problem no_exact = example1();
  no_exact.exact.reset();
  CHECK_THROWS_AS(run_convergence_study(no_exact, 0, {2, 4}, cfg), std::invalid_argument);
}

TEST_CASE("table studies") {
  for (int id : {1, 2}) {
    CAPTURE(id);
    const auto preset = table_preset(id);
    StudyOptions opts;
    opts.quadrature = preset.quadrature;
    const auto report = run_convergence_study(preset.problem, preset.r, preset.n, {}, opts);
    REQUIRE(report.rows.size() == preset.n.size());
    CHECK_FALSE(report.has_failures());
    for (const auto& c : check_table_reproduction(report, id)) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }

    // Orders are absent on the first row only; errors are positive.
    for (std::size_t m = 0; m < method_count; ++m) CHECK_FALSE(report.rows[0].order[m]);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      for (std::size_t m = 0; m < method_count; ++m) {
        REQUIRE(report.rows[i].error[m]);
        CHECK(*report.rows[i].error[m] > 0.0);
        if (i > 0) CHECK(report.rows[i].order[m]);
      }
    }

    // Each error column decreases strictly.
    for (Method m : {Method::collocation, Method::iterated, Method::modified, Method::iterated_modified}) {
      const auto e = report.errors(m);
      for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
    }
    // e_IM <= e_M <= e_S <= e_C from n = 4 on.
    for (const auto& row : report.rows) {
      if (row.n < 4) continue;
      CHECK(*row.error[3] <= *row.error[2]);
      CHECK(*row.error[2] <= *row.error[1]);
      CHECK(*row.error[1] <= *row.error[0]);
    }

    // Concurrent rows give identical output.
    opts.parallel = true;
    const auto par = run_convergence_study(preset.problem, preset.r, preset.n, {}, opts);
    CHECK(to_csv(par) == to_csv(report));
    CHECK(to_table(par) == to_table(report));
  }
}

TEST_CASE("report formatting") {
  const auto preset = table_preset(1);
  StudyOptions opts;
  opts.quadrature = preset.quadrature;
  const auto report = run_convergence_study(preset.problem, 0, {2, 4}, {}, opts);
  const auto csv = to_csv(report);
  std::istringstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(header == "n,e_C,delta_C,e_S,delta_S,e_M,delta_M,e_IM,delta_IM");
  CHECK(first.rfind("2,1.93e-01,,", 0) == 0);
  CHECK(first.back() == ',');
  CHECK(second.rfind("4,1.09e-01,0.83,", 0) == 0);
  CHECK(format_error(5.2312e-9) == "5.23e-09");
  CHECK(format_order(3.996) == "4.00");
  const auto table = to_table(report);
  CHECK(table.find("e_IM") != std::string::npos);
  CHECK(table.find("# quadrature:") != std::string::npos);
  CHECK(report.metadata.count("newton") == 1);
  CHECK(report.metadata.count("sup_grid") == 1);
}

TEST_CASE("conclusion problem shows no superconvergence") {
  const auto report = run_convergence_study(conclusion_example(), 0, {3, 9, 27}, {});
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(std::abs(*report.rows[i].order[0] - 1.0) <= 0.1);
    CHECK(std::abs(*report.rows[i].order[1] - 1.0) <= 0.1);
  }
}

TEST_CASE("solver failures annotate rows") {
  NewtonConfig cfg;
  cfg.max_iter = 1;
  StudyOptions opts;
  opts.continuation = false;
  const auto report = run_convergence_study(example1(), 0, {2, 4}, cfg, opts);
  CHECK(report.has_failures());
  CHECK_FALSE(report.rows[0].error[0]);
  CHECK(report.rows[0].note.find("collocation") != std::string::npos);
}
