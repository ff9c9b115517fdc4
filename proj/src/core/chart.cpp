#include "gqm/chart.hpp"

#include <algorithm>
#include <cmath>

namespace gqm {

namespace {

constexpr Complex I{0.0, 1.0};

// Index into the ambient vector of chart coordinate j.
std::size_t ambient_index(std::size_t base, std::size_t j) { return j < base ? j : j + 1; }

Eigen::VectorXcd complex_of(const Eigen::VectorXd& x) {
  Eigen::VectorXcd c(x.size() / 2);
  for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = Complex(x(2 * j), x(2 * j + 1));
  return c;
}

Eigen::VectorXd real_of(const Eigen::VectorXcd& c) {
  Eigen::VectorXd x(2 * c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    x(2 * j) = c(j).real();
    x(2 * j + 1) = c(j).imag();
  }
  return x;
}

// Ambient displacement for a chart velocity: dz_k = 0.
Eigen::VectorXcd ambient_displacement(const ChartPoint& p, const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != p.real_dim())
    throw DimensionMismatch(p.real_dim(), static_cast<std::size_t>(v.size()));
  const Eigen::VectorXcd dt = complex_of(v);
  Eigen::VectorXcd dz = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(p.ambient_dim()));
  for (std::size_t j = 0; j < p.coords.size(); ++j)
    dz(static_cast<Eigen::Index>(ambient_index(p.base_index, j))) = dt(static_cast<Eigen::Index>(j));
  return dz;
}

}  // namespace

double ChartPoint::max_modulus() const {
  double m = 0.0;
  for (const auto& t : coords) m = std::max(m, std::abs(t));
  return m;
}

Eigen::VectorXd ChartPoint::real_coords() const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(real_dim()));
  for (std::size_t j = 0; j < coords.size(); ++j) {
    x(static_cast<Eigen::Index>(2 * j)) = coords[j].real();
    x(static_cast<Eigen::Index>(2 * j + 1)) = coords[j].imag();
  }
  return x;
}

ChartPoint ChartPoint::origin(std::size_t ambient_dim, std::size_t base_index) {
  if (ambient_dim < 2) throw InvalidInput("charts need ambient dimension at least 2");
  if (base_index >= ambient_dim) throw InvalidInput("chart base index out of range");
  return {base_index, std::vector<Complex>(ambient_dim - 1, Complex(0.0))};
}

ChartPoint ChartPoint::from_real(std::size_t base_index, const Eigen::VectorXd& x) {
  if (x.size() % 2 != 0 || x.size() == 0) throw InvalidInput("real chart coordinates come in pairs");
  ChartPoint p{base_index, {}};
  const Eigen::VectorXcd c = complex_of(x);
  p.coords.assign(c.data(), c.data() + c.size());
  if (base_index >= p.ambient_dim()) throw InvalidInput("chart base index out of range");
  return p;
}

Eigen::VectorXcd homogeneous(const ChartPoint& p) {
  Eigen::VectorXcd z(static_cast<Eigen::Index>(p.ambient_dim()));
  z(static_cast<Eigen::Index>(p.base_index)) = 1.0;
  for (std::size_t j = 0; j < p.coords.size(); ++j)
    z(static_cast<Eigen::Index>(ambient_index(p.base_index, j))) = p.coords[j];
  return z;
}

Ray ray_of(const ChartPoint& p) { return project(ComplexVector(homogeneous(p))); }

ChartPoint chart_of(const ComplexVector& z, std::size_t base_index) {
  if (base_index >= z.dim()) throw InvalidInput("chart base index out of range");
  const Complex zk = z[base_index];
  if (zk == Complex(0.0)) throw InvalidInput("point lies outside the requested chart");
  ChartPoint p{base_index, {}};
  p.coords.reserve(z.dim() - 1);
  for (std::size_t i = 0; i < z.dim(); ++i)
    if (i != base_index) p.coords.push_back(z[i] / zk);
  return p;
}

ChartPoint best_chart(const ComplexVector& z) {
  Eigen::Index k = 0;
  z.amplitudes().cwiseAbs().maxCoeff(&k);
  return chart_of(z, static_cast<std::size_t>(k));
}

MetricAtPoint fs_metric(const ChartPoint& p, KahlerScale scale) {
  const auto m = static_cast<Eigen::Index>(p.coords.size());
  double t2 = 0.0;
  for (const auto& t : p.coords) t2 += std::norm(t);
  const double w = 1.0 + t2;
  const double inv = scale.factor() / (w * w);
  Eigen::MatrixXd g(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      // Coefficient of dt_i conj(dt_j) in the line element.
      Complex h = -std::conj(p.coords[static_cast<std::size_t>(i)]) * p.coords[static_cast<std::size_t>(j)];
      if (i == j) h += w;
      h *= inv;
      g(2 * i, 2 * j) = h.real();
      g(2 * i + 1, 2 * j + 1) = h.real();
      g(2 * i, 2 * j + 1) = h.imag();
      g(2 * i + 1, 2 * j) = -h.imag();
    }
  return {p, g};
}

Eigen::VectorXd chart_tangent(const ComplexVector& psi, const Eigen::VectorXcd& X,
                              std::size_t base_index) {
  require_same_dim(psi.dim(), static_cast<std::size_t>(X.size()));
  const auto k = static_cast<Eigen::Index>(base_index);
  const Complex zk = psi.amplitudes()(k);
  if (zk == Complex(0.0)) throw InvalidInput("point lies outside the requested chart");
  Eigen::VectorXcd dt(psi.amplitudes().size() - 1);
  for (Eigen::Index j = 0; j < dt.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(ambient_index(base_index, static_cast<std::size_t>(j)));
    dt(j) = (X(i) * zk - psi.amplitudes()(i) * X(k)) / (zk * zk);
  }
  return real_of(dt);
}

Eigen::VectorXcd hilbert_tangent(const ChartPoint& p, const Eigen::VectorXd& v) {
  const Eigen::VectorXcd z = homogeneous(p);
  const double nz = z.norm();
  const Eigen::VectorXcd u = z / nz;
  Eigen::VectorXcd dz = ambient_displacement(p, v) / nz;
  dz -= u.dot(dz) * u;
  const Ray ray = ray_of(p);
  const Complex gauge = u.dot(ray.rep().amplitudes());
  return gauge * dz;
}

std::pair<ChartPoint, Eigen::VectorXd> rechart(const ChartPoint& p, const Eigen::VectorXd& v,
                                              std::size_t new_base) {
  const Eigen::VectorXcd z = homogeneous(p);
  const Eigen::VectorXcd dz = ambient_displacement(p, v);
  const ComplexVector zv(z);
  ChartPoint q = chart_of(zv, new_base);
  return {std::move(q), chart_tangent(zv, dz, new_base)};
}

}  // namespace gqm
