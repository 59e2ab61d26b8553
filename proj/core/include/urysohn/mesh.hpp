#pragma once

// Uniform partitions of [0,1], interpolation nodes and the discontinuous
// piecewise polynomial space built on them.

#include <functional>
#include <span>
#include <vector>

namespace urysohn {

using RealFunction = std::function<double(double)>;

/// Which one-sided limit to take at an interior knot. Away from knots the
/// side is irrelevant.
enum class Side { left, right };

/// A function on [0,1] that may jump at mesh knots.
using SidedFunction = std::function<double(double, Side)>;

/// Lifts a continuous function to a SidedFunction (both sides agree).
SidedFunction sided(RealFunction f);

/// Largest supported half-degree; cells carry at most 2r+1 = 9 nodes.
inline constexpr int max_half_degree = 4;

class UniformMesh {
 public:
  explicit UniformMesh(int n);

  int cells() const noexcept { return n_; }
  double width() const noexcept { return h_; }
  /// t_j = j/n for j = 0..n.
  double knot(int j) const { return knots_.at(static_cast<std::size_t>(j)); }
  std::span<const double> knots() const noexcept { return knots_; }

  /// 0-based index of the cell containing s. At an interior knot the left
  /// cell is returned for Side::left and the right cell for Side::right.
  /// Throws std::out_of_range when s is outside [0,1].
  int cell_of(double s, Side side = Side::left) const;

  /// True when s coincides with some t_j up to round-off.
  bool is_knot(double s) const noexcept;

 private:
  int n_;
  double h_;
  std::vector<double> knots_;
};

UniformMesh build_mesh(int n);

/// Interpolation nodes tau_j^i, stored cell by cell. Every cell uses the same
/// reference offsets zeta_i in [0,1], so tau_j^i = t_{j-1} + zeta_i h.
class NodeSet {
 public:
  /// Equidistant nodes: zeta_i = i/(2r) for r >= 1, the midpoint for r = 0.
  NodeSet(UniformMesh mesh, int r);
  /// Caller-chosen offsets (2r+1 strictly increasing values in [0,1]).
  NodeSet(UniformMesh mesh, int r, std::vector<double> offsets);

  static std::vector<double> equidistant_offsets(int r);

  const UniformMesh& mesh() const noexcept { return mesh_; }
  int half_degree() const noexcept { return r_; }
  int per_cell() const noexcept { return 2 * r_ + 1; }
  /// Total number of nodes n(2r+1).
  int size() const noexcept { return mesh_.cells() * per_cell(); }

  double node(int cell, int i) const;
  /// Node by flat index cell * per_cell() + i.
  double node(int flat) const { return nodes_.at(static_cast<std::size_t>(flat)); }
  std::span<const double> cell_nodes(int cell) const;
  std::span<const double> all() const noexcept { return nodes_; }
  std::span<const double> offsets() const noexcept { return offsets_; }

  /// Values of the cell-local Lagrange basis polynomials at s (s need not lie
  /// inside the cell). out.size() must equal per_cell().
  void lagrange_basis(int cell, double s, std::span<double> out) const;

  /// Barycentric evaluation of the cell interpolant through `values`
  /// (per_cell() entries) at s.
  double interpolate(int cell, std::span<const double> values, double s) const;

 private:
  void init();

  UniformMesh mesh_;
  int r_;
  std::vector<double> offsets_;
  std::vector<double> bary_weights_;
  std::vector<double> nodes_;
};

NodeSet build_nodes(const UniformMesh& mesh, int r);

/// Element of X_n in nodal form: values[j*(2r+1)+i] = p(tau_j^i).
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(NodeSet nodes, std::vector<double> values);

  const NodeSet& nodes() const noexcept { return nodes_; }
  const UniformMesh& mesh() const noexcept { return nodes_.mesh(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> cell_values(int cell) const;

  /// Value at s in [0,1]; interior knots use the left cell.
  double operator()(double s) const { return evaluate(s, Side::left); }
  double evaluate(double s, Side side) const;
  /// Cell polynomial of `cell` at s, no range checks.
  double evaluate_in_cell(int cell, double s) const;

 private:
  NodeSet nodes_;
  std::vector<double> values_;
};

double evaluate(const PiecewisePolynomial& p, double s);
double evaluate_one_sided(const PiecewisePolynomial& p, double s, Side side);

/// A sample point of the sup-norm grid.
struct SamplePoint {
  double s;
  Side side;
};

/// Deterministic grid used for every sup-norm estimate: each knot from both
/// sides, every node, and the midpoints of a 10-way subdivision of each cell.
std::vector<SamplePoint> sup_norm_grid(const NodeSet& nodes);

/// max |g| over sup_norm_grid(nodes).
double sup_norm(const SidedFunction& g, const NodeSet& nodes);

}  // namespace urysohn
