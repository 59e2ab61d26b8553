#include "urysohn/solvers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <sstream>

#include "urysohn/projection.hpp"

namespace urysohn {

std::string method_tag(Method m) {
  switch (m) {
    case Method::collocation:
      return "C";
    case Method::iterated:
      return "S";
    case Method::modified:
      return "M";
    case Method::iterated_modified:
      return "IM";
  }
  return "?";
}

void NewtonConfig::validate() const {
  if (!(residual_tol > 0.0)) throw std::invalid_argument("newton.residual_tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("newton.max_iter must be >= 1");
  if (step_clip && !(*step_clip > 0.0)) throw std::invalid_argument("newton.step_clip must be > 0");
  if (!(max_condition > 1.0)) throw std::invalid_argument("newton.max_condition must be > 1");
  if (initial_guess == InitialGuess::user_supplied && user_values.empty()) {
    throw std::invalid_argument("newton.initial_guess = user_supplied needs user_values");
  }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct NewtonResult {
  VectorXd u;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

template <class Residual, class Jacobian>
NewtonResult newton(VectorXd u, Residual&& residual, Jacobian&& jacobian, const NewtonConfig& cfg, double clip,
                    const std::string& what) {
  NewtonResult out;
  for (int k = 0;; ++k) {
    const VectorXd r = residual(u);
    const double norm = r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
    out.history.push_back(norm);
    if (!std::isfinite(norm)) throw NonConvergence(what + ": residual is not finite at iteration " + std::to_string(k));
    if (norm <= cfg.residual_tol) {
      out.u = std::move(u);
      out.iterations = k;
      out.residual = norm;
      return out;
    }
    if (k == cfg.max_iter) {
      std::ostringstream msg;
      msg << what << ": no convergence in " << cfg.max_iter << " Newton iterations (residual " << norm << ")";
      throw NonConvergence(msg.str());
    }
    const MatrixXd jac = jacobian(u);
    Eigen::PartialPivLU<MatrixXd> lu(jac);
    const double rcond = lu.rcond();
    if (!(rcond * cfg.max_condition >= 1.0)) {
      std::ostringstream msg;
      msg << what << ": Jacobian condition estimate " << (rcond > 0 ? 1.0 / rcond : INFINITY) << " exceeds "
          << cfg.max_condition;
      throw SingularJacobian(msg.str());
    }
    VectorXd step = lu.solve(-r);
    const double len = step.lpNorm<Eigen::Infinity>();
    if (len > clip) step *= clip / len;
    u += step;
  }
}

/// Cell and Lagrange basis values of each quadrature point.
struct PointBasis {
  int per_cell = 0;
  std::vector<int> cell;
  std::vector<double> basis;

  PointBasis(const NodeSet& nodes, std::span<const QuadratureNode> points) : per_cell(nodes.per_cell()) {
    cell.resize(points.size());
    basis.resize(points.size() * static_cast<std::size_t>(per_cell));
    for (std::size_t k = 0; k < points.size(); ++k) {
      cell[k] = nodes.mesh().cell_of(points[k].t);
      nodes.lagrange_basis(cell[k], points[k].t,
                           std::span<double>(basis).subspan(k * static_cast<std::size_t>(per_cell),
                                                            static_cast<std::size_t>(per_cell)));
    }
  }

  double at(std::size_t k, int i) const { return basis[k * static_cast<std::size_t>(per_cell) + static_cast<std::size_t>(i)]; }
};

/// Values of the X_n element with nodal vector u at the given points.
VectorXd eval_at_points(const NodeSet& nodes, std::span<const QuadratureNode> points, const PointBasis& pb,
                        const VectorXd& u) {
  VectorXd out(static_cast<Eigen::Index>(points.size()));
  const auto p = static_cast<std::size_t>(nodes.per_cell());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto offset = static_cast<Eigen::Index>(static_cast<std::size_t>(pb.cell[k]) * p);
    out[static_cast<Eigen::Index>(k)] =
        nodes.interpolate(pb.cell[k], std::span<const double>(u.data() + offset, p), points[k].t);
  }
  return out;
}

std::vector<double> to_std(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double clip_radius(const DiscretizedOperator& op, const NewtonConfig& cfg) {
  return cfg.step_clip.value_or(op.problem().ball_radius);
}

}  // namespace

std::vector<double> initial_nodal_guess(const DiscretizedOperator& op, const NewtonConfig& cfg) {
  const auto& nodes = op.nodes();
  std::vector<double> u(static_cast<std::size_t>(nodes.size()));
  switch (cfg.initial_guess) {
    case InitialGuess::rhs_at_nodes:
      for (int k = 0; k < nodes.size(); ++k) u[static_cast<std::size_t>(k)] = op.problem().rhs(nodes.node(k));
      break;
    case InitialGuess::exact_perturbed:
      if (!op.problem().exact) throw std::invalid_argument("initial guess exact_perturbed needs an exact solution");
      for (int k = 0; k < nodes.size(); ++k) {
        u[static_cast<std::size_t>(k)] = (*op.problem().exact)(nodes.node(k)) + cfg.perturbation;
      }
      break;
    case InitialGuess::user_supplied:
      if (cfg.user_values.size() != u.size()) {
        throw std::invalid_argument("user-supplied initial guess has " + std::to_string(cfg.user_values.size()) +
                                    " values; expected " + std::to_string(u.size()));
      }
      u = cfg.user_values;
      break;
  }
  return u;
}

// --- collocation -------------------------------------------------------------

MethodSolution solve_collocation(const DiscretizedOperator& op, const NewtonConfig& cfg) {
  cfg.validate();
  const auto& nodes = op.nodes();
  const auto& kernel = op.kernel();
  const auto N = static_cast<Eigen::Index>(nodes.size());
  const int p = nodes.per_cell();

  const QuadratureLayout layout(op, nodes.all());
  const auto points = layout.points();
  const PointBasis pb(nodes, points);

  VectorXd f_nodes(N);
  for (Eigen::Index a = 0; a < N; ++a) f_nodes[a] = op.problem().rhs(nodes.node(static_cast<int>(a)));

  const auto residual = [&](const VectorXd& v) {
    const VectorXd xv = eval_at_points(nodes, points, pb, v);
    VectorXd r(N);
    for (Eigen::Index a = 0; a < N; ++a) {
      const double s = nodes.node(static_cast<int>(a));
      double k_val = 0.0;
      layout.for_each(static_cast<std::size_t>(a), [&](std::size_t idx, const QuadratureNode& q) {
        k_val += q.w * kernel.value(s, q.t, xv[static_cast<Eigen::Index>(idx)]);
      });
      r[a] = v[a] - k_val - f_nodes[a];
    }
    return r;
  };

  const auto jacobian = [&](const VectorXd& v) {
    const VectorXd xv = eval_at_points(nodes, points, pb, v);
    MatrixXd jac = MatrixXd::Identity(N, N);
    for (Eigen::Index a = 0; a < N; ++a) {
      const double s = nodes.node(static_cast<int>(a));
      layout.for_each(static_cast<std::size_t>(a), [&](std::size_t idx, const QuadratureNode& q) {
        const double d = q.w * kernel.du(s, q.t, xv[static_cast<Eigen::Index>(idx)]);
        const int c = pb.cell[idx];
        for (int i = 0; i < p; ++i) jac(a, c * p + i) -= d * pb.at(idx, i);
      });
    }
    return jac;
  };

  auto result = newton(to_eigen(initial_nodal_guess(op, cfg)), residual, jacobian, cfg, clip_radius(op, cfg),
                       "collocation (n=" + std::to_string(nodes.mesh().cells()) + ")");

  PiecewisePolynomial poly(nodes, to_std(result.u));
  auto shared = std::make_shared<const PiecewisePolynomial>(poly);
  MethodSolution sol{Method::collocation,
                     std::move(poly),
                     [shared](double s, Side side) { return shared->evaluate(s, side); },
                     result.iterations,
                     result.residual,
                     std::move(result.history)};
  return sol;
}

// --- iteration ---------------------------------------------------------------

MethodSolution iterate_solution(const DiscretizedOperator& op, const MethodSolution& base) {
  Method tag;
  if (base.method == Method::collocation) {
    tag = Method::iterated;
  } else if (base.method == Method::modified) {
    tag = Method::iterated_modified;
  } else {
    throw std::invalid_argument("iterate_solution: base must be a collocation or modified solution");
  }

  struct State {
    DiscretizedOperator op;
    SidedFunction x;
    std::vector<double> x_at_base;
  };
  auto state = std::make_shared<State>(State{op, base.evaluate, {}});
  const auto b = op.base_nodes();
  state->x_at_base.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) state->x_at_base[i] = base.evaluate(b[i].t, Side::left);

  SidedFunction evaluate = [state](double s, Side) {
    const auto& kernel = state->op.kernel();
    double k_val = 0.0;
    state->op.for_each_node(s, [&](const QuadratureNode& q, int base_index) {
      const double xt = base_index >= 0 ? state->x_at_base[static_cast<std::size_t>(base_index)]
                                        : state->x(q.t, Side::left);
      k_val += q.w * kernel.value(s, q.t, xt);
    });
    return k_val + state->op.problem().rhs(s);
  };
  return MethodSolution{tag, std::nullopt, std::move(evaluate), base.newton_iterations, base.final_residual,
                        base.residual_history};
}

// --- modified collocation ----------------------------------------------------

MethodSolution solve_modified(const DiscretizedOperator& op, const NewtonConfig& cfg) {
  cfg.validate();
  const auto& nodes = op.nodes();
  const auto& kernel = op.kernel();
  const auto& rhs = op.problem().rhs;
  const auto N = static_cast<Eigen::Index>(nodes.size());
  const int p = nodes.per_cell();

  // Outer integrals K(x)(tau_a) are taken over the points of `outer`; x is
  // needed there. x involves K(x_u) at those points and at the nodes, which
  // the `inner` layout provides.
  const QuadratureLayout outer(op, nodes.all());
  const auto P = outer.points();
  const auto Np = static_cast<Eigen::Index>(P.size());
  const PointBasis pb_outer(nodes, P);

  std::vector<double> inner_eval;
  inner_eval.reserve(P.size() + static_cast<std::size_t>(N));
  for (const auto& q : P) inner_eval.push_back(q.t);
  for (double tau : nodes.all()) inner_eval.push_back(tau);
  const QuadratureLayout inner(op, inner_eval);
  const auto P2 = inner.points();
  const PointBasis pb_inner(nodes, P2);
  const auto Ne = static_cast<Eigen::Index>(inner_eval.size());

  VectorXd f_nodes(N);
  for (Eigen::Index a = 0; a < N; ++a) f_nodes[a] = rhs(nodes.node(static_cast<int>(a)));
  // f - Q_n f at the outer points.
  VectorXd f_defect(Np);
  for (Eigen::Index k = 0; k < Np; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    double qf = 0.0;
    for (int i = 0; i < p; ++i) qf += pb_outer.at(kk, i) * f_nodes[pb_outer.cell[kk] * p + i];
    f_defect[k] = rhs(P[kk].t) - qf;
  }

  const auto k_of_xu = [&](const VectorXd& xu_inner) {
    VectorXd out(Ne);
    for (Eigen::Index e = 0; e < Ne; ++e) {
      const double s = inner_eval[static_cast<std::size_t>(e)];
      double sum = 0.0;
      inner.for_each(static_cast<std::size_t>(e), [&](std::size_t idx, const QuadratureNode& q) {
        sum += q.w * kernel.value(s, q.t, xu_inner[static_cast<Eigen::Index>(idx)]);
      });
      out[e] = sum;
    }
    return out;
  };

  // x at the outer points for nodal vector u.
  const auto recover_x = [&](const VectorXd& u, const VectorXd& kxu) {
    const VectorXd xu = eval_at_points(nodes, P, pb_outer, u);
    VectorXd x(Np);
    for (Eigen::Index k = 0; k < Np; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      double qk = 0.0;
      for (int i = 0; i < p; ++i) qk += pb_outer.at(kk, i) * kxu[Np + pb_outer.cell[kk] * p + i];
      x[k] = f_defect[k] + xu[k] + kxu[k] - qk;
    }
    return x;
  };

  const auto residual = [&](const VectorXd& u) {
    const VectorXd kxu = k_of_xu(eval_at_points(nodes, P2, pb_inner, u));
    const VectorXd x = recover_x(u, kxu);
    VectorXd r(N);
    for (Eigen::Index a = 0; a < N; ++a) {
      const double s = nodes.node(static_cast<int>(a));
      double k_val = 0.0;
      outer.for_each(static_cast<std::size_t>(a), [&](std::size_t idx, const QuadratureNode& q) {
        k_val += q.w * kernel.value(s, q.t, x[static_cast<Eigen::Index>(idx)]);
      });
      r[a] = u[a] - f_nodes[a] - k_val;
    }
    return r;
  };

  const auto jacobian = [&](const VectorXd& u) {
    const VectorXd xu_inner = eval_at_points(nodes, P2, pb_inner, u);
    const VectorXd kxu = k_of_xu(xu_inner);
    const VectorXd x = recover_x(u, kxu);

    // D(e, b) = d K(x_u)(e) / d u_b
    MatrixXd D = MatrixXd::Zero(Ne, N);
    for (Eigen::Index e = 0; e < Ne; ++e) {
      const double s = inner_eval[static_cast<std::size_t>(e)];
      inner.for_each(static_cast<std::size_t>(e), [&](std::size_t idx, const QuadratureNode& q) {
        const double d = q.w * kernel.du(s, q.t, xu_inner[static_cast<Eigen::Index>(idx)]);
        const int c = pb_inner.cell[idx];
        for (int i = 0; i < p; ++i) D(e, c * p + i) += d * pb_inner.at(idx, i);
      });
    }
    // dx(k, b) = d x(t_k) / d u_b
    MatrixXd dx = D.topRows(Np);
    for (Eigen::Index k = 0; k < Np; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const int c = pb_outer.cell[kk];
      for (int i = 0; i < p; ++i) {
        const double l = pb_outer.at(kk, i);
        dx(k, c * p + i) += l;
        dx.row(k) -= l * D.row(Np + c * p + i);
      }
    }
    MatrixXd W = MatrixXd::Zero(N, Np);
    for (Eigen::Index a = 0; a < N; ++a) {
      const double s = nodes.node(static_cast<int>(a));
      outer.for_each(static_cast<std::size_t>(a), [&](std::size_t idx, const QuadratureNode& q) {
        const auto k = static_cast<Eigen::Index>(idx);
        W(a, k) += q.w * kernel.du(s, q.t, x[k]);
      });
    }
    MatrixXd jac = MatrixXd::Identity(N, N);
    jac.noalias() -= W * dx;
    return jac;
  };

  auto result = newton(to_eigen(initial_nodal_guess(op, cfg)), residual, jacobian, cfg, clip_radius(op, cfg),
                       "modified collocation (n=" + std::to_string(nodes.mesh().cells()) + ")");

  struct State {
    DiscretizedOperator op;
    PiecewisePolynomial u;
    PiecewisePolynomial qf;
    PiecewisePolynomial qkxu;
  };
  PiecewisePolynomial u_poly(nodes, to_std(result.u));
  const RealFunction u_fn = [&u_poly](double t) { return u_poly(t); };
  auto qkxu = project([&](double s) { return apply_K(op, u_fn, s); }, nodes);
  PiecewisePolynomial qf(nodes, to_std(f_nodes));
  auto state = std::make_shared<const State>(State{op, u_poly, std::move(qf), std::move(qkxu)});

  SidedFunction x = [state](double s, Side side) {
    const RealFunction u_of = [&](double t) { return state->u(t); };
    return state->op.problem().rhs(s) - state->qf.evaluate(s, side) + state->u.evaluate(s, side) +
           apply_K(state->op, u_of, s) - state->qkxu.evaluate(s, side);
  };

  // The recovered x must satisfy the full equation x - K_n^M(x) = f.
  const auto knm = apply_K_nM(op, x);
  const double defect =
      sup_norm([&](double s, Side side) { return x(s, side) - knm(s, side) - rhs(s); }, nodes);
  if (!(defect <= 10.0 * cfg.residual_tol)) {
    std::ostringstream msg;
    msg << "modified collocation (n=" << nodes.mesh().cells() << "): recovered solution violates x - K_n^M(x) = f by "
        << defect;
    throw NonConvergence(msg.str());
  }

  return MethodSolution{Method::modified,          std::move(u_poly),    std::move(x),
                        result.iterations,          result.residual,      std::move(result.history)};
}

}  // namespace urysohn
