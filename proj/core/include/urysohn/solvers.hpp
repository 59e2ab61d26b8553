#pragma once

// Collocation, iterated collocation, modified collocation and iterated
// modified collocation solutions of x - K(x) = f.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urysohn/mesh.hpp"
#include "urysohn/operators.hpp"

namespace urysohn {

enum class Method { collocation, iterated, modified, iterated_modified };

/// Short tag used in reports: "C", "S", "M", "IM".
std::string method_tag(Method m);

enum class InitialGuess { rhs_at_nodes, exact_perturbed, user_supplied };

struct NewtonConfig {
  double residual_tol = 1e-12;  ///< sup-norm of the nodal residual
  int max_iter = 50;
  /// Steps longer than this (sup-norm) are scaled back; defaults to the
  /// problem's ball radius.
  std::optional<double> step_clip;
  InitialGuess initial_guess = InitialGuess::rhs_at_nodes;
  double perturbation = 1e-3;       ///< for exact_perturbed
  std::vector<double> user_values;  ///< for user_supplied, one per node
  /// Condition-number estimate above which the Jacobian counts as singular.
  double max_condition = 1e12;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Newton hit max_iter without meeting the tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Newton matrix is numerically singular (1 is close to an eigenvalue of
/// the discrete K').
class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MethodSolution {
  Method method;
  /// Nodal unknown: the collocation solution for C, u = Q_n x for M.
  std::optional<PiecewisePolynomial> coefficients;
  SidedFunction evaluate;
  int newton_iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;

  double operator()(double s) const { return evaluate(s, Side::left); }
};

/// Solves v - Q_n K(v) = Q_n f for v in X_n (nodal Newton, Jacobian from
/// d kappa/du).
MethodSolution solve_collocation(const DiscretizedOperator& op, const NewtonConfig& cfg);

/// s -> K(base)(s) + f(s). Tags C -> S and M -> IM.
MethodSolution iterate_solution(const DiscretizedOperator& op, const MethodSolution& base);

/// Solves x - K_n^M(x) = f through the nodal unknown u = Q_n x:
///   u = Q_n f + Q_n K(f - Q_n f + u + (I - Q_n) K(u)),
/// and returns x = f - Q_n f + u + (I - Q_n) K(u).
MethodSolution solve_modified(const DiscretizedOperator& op, const NewtonConfig& cfg);

/// Initial nodal vector chosen by cfg.initial_guess.
std::vector<double> initial_nodal_guess(const DiscretizedOperator& op, const NewtonConfig& cfg);

}  // namespace urysohn
