#include "urysohn/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "urysohn/quadrature.hpp"

namespace urysohn {

UrysohnKernel zero_kernel() {
  const KernelFunction zero = [](double, double, double) { return 0.0; };
  UrysohnKernel k;
  k.name = "zero";
  k.value = k.du = k.du2 = k.du3 = k.du4 = zero;
  return k;
}

UrysohnKernel reciprocal_sum_kernel(double shift) {
  UrysohnKernel k;
  k.name = "reciprocal_sum";
  k.value = [shift](double s, double t, double u) { return 1.0 / (shift + s + t + u); };
  k.du = [shift](double s, double t, double u) {
    const double d = shift + s + t + u;
    return -1.0 / (d * d);
  };
  k.du2 = [shift](double s, double t, double u) {
    const double d = shift + s + t + u;
    return 2.0 / (d * d * d);
  };
  k.du3 = [shift](double s, double t, double u) {
    const double d = shift + s + t + u;
    return -6.0 / (d * d * d * d);
  };
  k.du4 = [shift](double s, double t, double u) {
    const double d = shift + s + t + u;
    return 24.0 / (d * d * d * d * d);
  };
  return k;
}

double green_function(double s, double t) { return s <= t ? s * (1.0 - t) : (1.0 - s) * t; }

UrysohnKernel green_hammerstein_kernel(double shift) {
  UrysohnKernel k;
  k.name = "green_hammerstein";
  k.diagonal_split = true;
  k.lower = [shift](double s, double t, double u) { return (1.0 - s) * t / (shift + t + u); };
  k.upper = [shift](double s, double t, double u) { return s * (1.0 - t) / (shift + t + u); };
  k.value = [shift](double s, double t, double u) { return green_function(s, t) / (shift + t + u); };
  k.du = [shift](double s, double t, double u) {
    const double d = shift + t + u;
    return -green_function(s, t) / (d * d);
  };
  k.du2 = [shift](double s, double t, double u) {
    const double d = shift + t + u;
    return 2.0 * green_function(s, t) / (d * d * d);
  };
  k.du3 = [shift](double s, double t, double u) {
    const double d = shift + t + u;
    return -6.0 * green_function(s, t) / (d * d * d * d);
  };
  k.du4 = [shift](double s, double t, double u) {
    const double d = shift + t + u;
    return 24.0 * green_function(s, t) / (d * d * d * d * d);
  };
  k.ds_du = [shift](double s, double t, double u) {
    const double d = shift + t + u;
    const double dg_ds = s < t ? 1.0 - t : -t;
    return -dg_ds / (d * d);
  };
  return k;
}

UrysohnKernel linear_rank_one_kernel(double scale) {
  UrysohnKernel k;
  k.name = "linear_rank_one";
  k.value = [scale](double s, double, double u) { return scale * s * (u + 1.0); };
  k.du = [scale](double s, double, double) { return scale * s; };
  const KernelFunction zero = [](double, double, double) { return 0.0; };
  k.du2 = k.du3 = k.du4 = zero;
  k.ds_du = [scale](double, double, double) { return scale; };
  return k;
}

NodeSet Problem::nodes(const UniformMesh& mesh, int r) const {
  if (!node_offsets) return NodeSet(mesh, r);
  const int implied = static_cast<int>(node_offsets->size() - 1) / 2;
  if (implied != r) {
    throw std::invalid_argument("problem '" + label + "' fixes its nodes at half-degree " + std::to_string(implied) +
                                "; requested r = " + std::to_string(r));
  }
  return NodeSet(mesh, r, *node_offsets);
}

namespace {

class MemoizedRhs {
 public:
  MemoizedRhs(UrysohnKernel kernel, RealFunction exact) : kernel_(std::move(kernel)), exact_(std::move(exact)) {}

  double operator()(double s) {
    const auto key = std::bit_cast<std::uint64_t>(s);
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const double value = compute(s);
    std::unique_lock lock(mutex_);
    cache_.emplace(key, value);
    return value;
  }

 private:
  double compute(double s) const {
    const RealFunction integrand = [&](double t) { return kernel_.value(s, t, exact_(t)); };
    const double integral =
        kernel_.diagonal_split ? reference_integrate_split(integrand, s) : reference_integrate(integrand);
    return exact_(s) - integral;
  }

  UrysohnKernel kernel_;
  RealFunction exact_;
  std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace

RealFunction manufacture_rhs(const UrysohnKernel& kernel, RealFunction exact) {
  auto memo = std::make_shared<MemoizedRhs>(kernel, std::move(exact));
  return [memo](double s) { return (*memo)(s); };
}

double residual_self_check(const Problem& problem) {
  if (!problem.exact) throw std::logic_error("residual_self_check: problem '" + problem.label + "' has no exact solution");
  const auto& phi = *problem.exact;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 1000.0;
    const RealFunction integrand = [&](double t) { return problem.kernel.value(s, t, phi(t)); };
    const double k_phi =
        problem.kernel.diagonal_split ? reference_integrate_split(integrand, s) : reference_integrate(integrand);
    worst = std::max(worst, std::abs(phi(s) - k_phi - problem.rhs(s)));
  }
  return worst;
}

Problem example1() {
  Problem p;
  p.kernel = reciprocal_sum_kernel(0.0);
  p.exact = [](double s) { return 1.0 / (s + 1.0); };
  p.rhs = manufacture_rhs(p.kernel, *p.exact);
  p.label = "example1";
  return p;
}

Problem example2() {
  Problem p;
  p.kernel = green_hammerstein_kernel(1.0);
  p.exact = [](double s) { return s * (1.0 - s) / (s + 1.0); };
  p.rhs = manufacture_rhs(p.kernel, *p.exact);
  p.label = "example2";
  return p;
}

Problem conclusion_example() {
  Problem p;
  p.kernel = linear_rank_one_kernel(1.0);
  p.rhs = [](double s) { return s; };
  p.exact = [](double s) { return 4.0 * s; };
  p.label = "conclusion";
  p.node_offsets = std::vector<double>{1.0 / 3.0};
  return p;
}

std::vector<std::string> builtin_problem_names() { return {"example1", "example2", "conclusion"}; }

Problem builtin_problem(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "conclusion") return conclusion_example();
  std::string list;
  for (const auto& n : builtin_problem_names()) list += (list.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown problem '" + name + "'; available built-ins: " + list);
}

}  // namespace urysohn
