#pragma once

// Urysohn kernels kappa(s, t, u), their u-derivatives, and the built-in
// problem instances.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/mesh.hpp"

namespace urysohn {

using KernelFunction = std::function<double(double s, double t, double u)>;

/// kappa together with the derivative data the solvers and checks consume.
///
/// Green's-type kernels (diagonal_split) are continuous on the square but
/// their s- and t-derivatives jump across s = t; `lower` is the piece on
/// t <= s and `upper` the piece on s <= t.
struct UrysohnKernel {
  std::string name;
  KernelFunction value;
  KernelFunction du;   ///< d kappa / du
  KernelFunction du2;  ///< optional
  KernelFunction du3;  ///< optional
  KernelFunction du4;  ///< optional

  bool diagonal_split = false;
  KernelFunction lower;  ///< kappa_1 on t <= s (Green's type only)
  KernelFunction upper;  ///< kappa_2 on s <= t (Green's type only)
  KernelFunction ds_du;  ///< optional d/ds of du, piecewise off the diagonal

  double operator()(double s, double t, double u) const { return value(s, t, u); }
};

/// kappa = 0.
UrysohnKernel zero_kernel();

/// kappa(s,t,u) = 1 / (shift + s + t + u).
UrysohnKernel reciprocal_sum_kernel(double shift = 0.0);

/// kappa(s,t,u) = G(s,t) / (shift + t + u) with the Green's function
/// G(s,t) = s(1-t) for s <= t and (1-s)t for t <= s.
UrysohnKernel green_hammerstein_kernel(double shift = 1.0);

/// kappa(s,t,u) = scale * s * (u + 1), so K(x)(s) = scale * (int x + 1) s.
UrysohnKernel linear_rank_one_kernel(double scale = 1.0);

/// The Green's function G(s,t) above.
double green_function(double s, double t);

struct Problem {
  UrysohnKernel kernel;
  RealFunction rhs;
  std::optional<RealFunction> exact;
  double ball_radius = 10.0;
  std::string label;
  /// Reference node offsets overriding the equidistant rule (with the
  /// half-degree they imply).
  std::optional<std::vector<double>> node_offsets;

  NodeSet nodes(const UniformMesh& mesh, int r) const;
};

/// f(s) = phi(s) - int_0^1 kappa(s,t,phi(t)) dt, integrated with the
/// reference rule (split at t = s for Green's-type kernels). Values are
/// memoized per point behind a reader/writer lock.
RealFunction manufacture_rhs(const UrysohnKernel& kernel, RealFunction exact);

/// sup over 1001 equispaced s of |phi - K(phi) - f| using the reference
/// rule. Throws std::logic_error when the problem has no exact solution.
double residual_self_check(const Problem& problem);

/// Smooth kernel 1/(s+t+u) with exact solution 1/(s+1).
Problem example1();
/// Green's kernel G(s,t) / (1+t+u) with exact solution s(1-s)/(s+1).
Problem example2();
/// K(x)(s) = (int x + 1) s, f(s) = s, exact solution 4s, single node per
/// cell placed at one third of the cell.
Problem conclusion_example();

/// Names accepted by builtin_problem.
std::vector<std::string> builtin_problem_names();
/// Throws std::invalid_argument listing the available names.
Problem builtin_problem(const std::string& name);

}  // namespace urysohn
