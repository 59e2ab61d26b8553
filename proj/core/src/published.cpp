#include "urysohn/published.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace urysohn {

namespace {

PublishedTable make_table1() {
  PublishedTable t;
  t.id = 1;
  t.n = {2, 4, 8, 16, 32};
  t.errors = {{
      {1.93e-1, 1.08e-1, 5.73e-2, 2.93e-2, 1.45e-2},
      {1.27e-2, 3.15e-3, 7.86e-4, 1.96e-4, 4.91e-5},
      {6.92e-3, 1.02e-3, 1.40e-4, 1.82e-5, 2.27e-6},
      {3.30e-4, 2.13e-5, 1.34e-6, 8.37e-8, 5.23e-9},
  }};
  t.orders = {{
      {0.84, 0.91, 0.97, 1.01},
      {2.01, 2.00, 2.00, 2.00},
      {2.76, 2.87, 2.94, 3.00},
      {3.95, 3.99, 4.00, 4.00},
  }};
  return t;
}

PublishedTable make_table2() {
  PublishedTable t;
  t.id = 2;
  t.n = {2, 4, 6, 8, 10, 12};
  t.errors = {{
      {1.50e-1, 9.54e-2, 6.87e-2, 5.34e-2, 4.35e-2, 3.66e-2},
      {1.30e-3, 2.31e-4, 1.02e-4, 5.81e-5, 3.67e-5, 2.59e-5},
      {1.31e-3, 1.68e-4, 5.71e-5, 2.62e-5, 1.37e-5, 8.22e-6},
      {1.31e-3, 7.77e-5, 1.47e-5, 4.76e-6, 1.87e-6, 9.52e-7},
  }};
  t.orders = {{
      {0.65, 0.81, 0.88, 0.92, 0.95},
      {2.49, 2.01, 1.95, 2.07, 1.90},
      {2.97, 2.66, 2.71, 2.90, 2.80},
      {4.07, 4.10, 3.92, 4.19, 3.69},
  }};
  return t;
}

std::string printf_string(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

const Method all_methods[] = {Method::collocation, Method::iterated, Method::modified, Method::iterated_modified};

std::size_t idx(Method m) { return static_cast<std::size_t>(m); }

// Index of n in the report, or -1.
int find_row(const ConvergenceReport& report, int n) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (report.rows[i].n == n) return static_cast<int>(i);
  }
  return -1;
}

CriterionResult check_errors(const ConvergenceReport& report, const PublishedTable& table, double rel_tol) {
  CriterionResult res{"table " + std::to_string(table.id) + " errors within " +
                          printf_string("%.0f%%", rel_tol * 100.0),
                      true, ""};
  double worst = 0.0;
  std::string worst_at;
  for (std::size_t i = 0; i < table.n.size(); ++i) {
    const int row = find_row(report, table.n[i]);
    for (Method m : all_methods) {
      const double printed = table.errors[idx(m)][i];
      const auto& got = row < 0 ? std::optional<double>{} : report.rows[static_cast<std::size_t>(row)].error[idx(m)];
      if (!got) {
        res.passed = false;
        res.detail += "missing e_" + method_tag(m) + "(" + std::to_string(table.n[i]) + "); ";
        continue;
      }
      const double rel = std::abs(*got - printed) / printed;
      if (rel > worst) {
        worst = rel;
        worst_at = printf_string("e_%s(%d) = %.3e vs %.2e", method_tag(m).c_str(), table.n[i], *got, printed);
      }
      if (!(rel <= rel_tol)) res.passed = false;
    }
  }
  res.detail += printf_string("worst relative deviation %.1f%%: ", worst * 100.0) + worst_at;
  return res;
}

}  // namespace

const PublishedTable& published_table(int id) {
  static const PublishedTable t1 = make_table1();
  static const PublishedTable t2 = make_table2();
  if (id == 1) return t1;
  if (id == 2) return t2;
  throw std::invalid_argument("no published table " + std::to_string(id) + " (expected 1 or 2)");
}

TablePreset table_preset(int id) {
  TablePreset p;
  p.id = id;
  p.r = 0;
  if (id == 1) {
    p.problem = example1();
    p.n = {2, 4, 8, 16, 32};
    p.quadrature = {CellCount::mesh, CellCount::mesh_squared, false};
  } else if (id == 2) {
    p.problem = example2();
    p.n = {2, 4, 6, 8, 10, 12};
    p.quadrature = {CellCount::mesh_squared, CellCount::mesh_squared, false};
  } else {
    throw std::invalid_argument("no table preset " + std::to_string(id) + " (expected 1 or 2)");
  }
  return p;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

std::vector<CriterionResult> check_table_reproduction(const ConvergenceReport& report, int id) {
  const auto& table = published_table(id);
  std::vector<CriterionResult> out;

  if (id == 1) {
    out.push_back(check_errors(report, table, 0.25));
    CriterionResult orders{"table 1 orders within 0.15 for n >= 8", true, ""};
    double worst = 0.0;
    for (std::size_t i = 1; i < table.n.size(); ++i) {
      if (table.n[i] < 8) continue;
      const int row = find_row(report, table.n[i]);
      for (Method m : all_methods) {
        const double printed = table.orders[idx(m)][i - 1];
        const auto& got = row < 0 ? std::optional<double>{} : report.rows[static_cast<std::size_t>(row)].order[idx(m)];
        if (!got) {
          orders.passed = false;
          orders.detail += "missing delta_" + method_tag(m) + "(" + std::to_string(table.n[i]) + "); ";
          continue;
        }
        worst = std::max(worst, std::abs(*got - printed));
        if (!(std::abs(*got - printed) <= 0.15)) {
          orders.passed = false;
          orders.detail += printf_string("delta_%s(%d) = %.2f vs %.2f; ", method_tag(m).c_str(), table.n[i], *got,
                                         printed);
        }
      }
    }
    orders.detail += printf_string("largest deviation %.3f", worst);
    out.push_back(orders);
    return out;
  }

  out.push_back(check_errors(report, table, 0.40));

  constexpr std::array<double, method_count> mean_target{0.9, 2.0, 2.8, 3.9};
  CriterionResult mean{"table 2 mean order over the last three rows within 0.3", true, ""};
  constexpr std::array<double, method_count> slope_floor{0.8, 1.8, 2.6, 3.5};
  CriterionResult slopes{"table 2 least-squares slopes over n = 4..12", true, ""};

  for (Method m : all_methods) {
    std::vector<double> last;
    std::vector<int> ns;
    std::vector<double> es;
    for (const auto& row : report.rows) {
      if (row.n >= 8 && row.order[idx(m)]) last.push_back(*row.order[idx(m)]);
      if (row.n >= 4 && row.error[idx(m)] && *row.error[idx(m)] > 0.0) {
        ns.push_back(row.n);
        es.push_back(*row.error[idx(m)]);
      }
    }
    const auto tag = method_tag(m);
    if (last.size() != 3) {
      mean.passed = false;
      mean.detail += "delta_" + tag + " incomplete; ";
    } else {
      const double avg = (last[0] + last[1] + last[2]) / 3.0;
      const bool ok = std::abs(avg - mean_target[idx(m)]) <= 0.3;
      mean.passed = mean.passed && ok;
      mean.detail += printf_string("%s %.2f (target %.1f)%s; ", tag.c_str(), avg, mean_target[idx(m)], ok ? "" : " FAIL");
    }
    if (ns.size() != 5) {
      slopes.passed = false;
      slopes.detail += "e_" + tag + " incomplete; ";
    } else {
      const double slope = loglog_slope(ns, es);
      const bool ok = slope >= slope_floor[idx(m)];
      slopes.passed = slopes.passed && ok;
      slopes.detail +=
          printf_string("%s %.2f (>= %.1f)%s; ", tag.c_str(), slope, slope_floor[idx(m)], ok ? "" : " FAIL");
    }
  }
  out.push_back(mean);
  out.push_back(slopes);
  return out;
}

CriterionResult check_printed_orders() {
  CriterionResult res{"printed orders recomputed from printed errors within 0.01", true, ""};
  int checked = 0;
  int mismatched = 0;
  for (int id : {1, 2}) {
    const auto& t = published_table(id);
    for (Method m : all_methods) {
      for (std::size_t i = 1; i < t.n.size(); ++i) {
        const double d = observed_order(t.errors[idx(m)][i - 1], t.errors[idx(m)][i], t.n[i - 1], t.n[i]);
        const double printed = t.orders[idx(m)][i - 1];
        ++checked;
        if (!(std::abs(d - printed) <= 0.01)) {
          ++mismatched;
          res.passed = false;
          res.detail += printf_string("table %d delta_%s(%d) = %.3f vs printed %.2f; ", id, method_tag(m).c_str(),
                                      t.n[i], d, printed);
        }
      }
    }
  }
  res.detail += printf_string("%d of %d reproduced", checked - mismatched, checked);
  return res;
}

}  // namespace urysohn
