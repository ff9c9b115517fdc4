// Affine charts t_i = z_i / z_k on CP^(n-1) and the Fubini-Study metric in
// the real coordinates (u_1, v_1, u_2, v_2, ...) with t_i = u_i + i v_i.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gqm/linalg.hpp"
#include "gqm/projective.hpp"
#include "gqm/scale.hpp"

namespace gqm {

struct ChartPoint {
  std::size_t base_index = 0;  // k: the homogeneous coordinate divided out
  std::vector<Complex> coords;  // t_i for i != k, in increasing i

  std::size_t ambient_dim() const noexcept { return coords.size() + 1; }
  std::size_t real_dim() const noexcept { return 2 * coords.size(); }
  double max_modulus() const;
  Eigen::VectorXd real_coords() const;

  static ChartPoint origin(std::size_t ambient_dim, std::size_t base_index = 0);
  static ChartPoint from_real(std::size_t base_index, const Eigen::VectorXd& x);
};

struct MetricAtPoint {
  ChartPoint point;
  Eigen::MatrixXd g;
};

/// Homogeneous vector with z_k = 1.
Eigen::VectorXcd homogeneous(const ChartPoint& p);
Ray ray_of(const ChartPoint& p);

ChartPoint chart_of(const ComplexVector& z, std::size_t base_index);
/// Chart whose base is the largest-modulus component of z.
ChartPoint best_chart(const ComplexVector& z);

MetricAtPoint fs_metric(const ChartPoint& p, KahlerScale scale = KahlerScale::statistical());

/// Chart velocity of the curve psi + s X at s = 0, in the chart with the given base.
Eigen::VectorXd chart_tangent(const ComplexVector& psi, const Eigen::VectorXcd& X,
                              std::size_t base_index);

/// Horizontal Hilbert-space tangent at ray_of(p).rep() for chart velocity v.
Eigen::VectorXcd hilbert_tangent(const ChartPoint& p, const Eigen::VectorXd& v);

/// Point and velocity expressed in a different chart.
std::pair<ChartPoint, Eigen::VectorXd> rechart(const ChartPoint& p, const Eigen::VectorXd& v,
                                              std::size_t new_base);

}  // namespace gqm
