#include "gqm/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gqm/kahler.hpp"

namespace gqm {

namespace {

void require_grid(const GridSpec& g) {
  if (g.points < 2) throw InvalidInput("grid needs at least two points");
  if (!(g.max > g.min) || !std::isfinite(g.min) || !std::isfinite(g.max))
    throw InvalidInput("grid bounds must be finite with min < max");
}

Eigen::VectorXcd normalized_on(const GridSpec& grid, Eigen::VectorXcd v) {
  const double norm = std::sqrt(v.squaredNorm() * grid.spacing());
  if (norm == 0.0) throw InvalidInput("beam vanishes on the grid");
  return v / norm;
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double pattern_difference(const InterferencePattern& a, const InterferencePattern& b) {
  return std::max(max_abs_difference(a.normalized_intensity, b.normalized_intensity),
                  max_abs_difference(a.normalized_cross, b.normalized_cross));
}

}  // namespace

double GridSpec::spacing() const {
  require_grid(*this);
  return (max - min) / static_cast<double>(points - 1);
}

std::vector<double> GridSpec::positions() const {
  const double h = spacing();
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) x[i] = min + h * static_cast<double>(i);
  x.back() = max;
  return x;
}

SlitWall::SlitWall(GridSpec grid, std::vector<IndexRange> slit_supports)
    : grid_(grid), positions_(grid.positions()), supports_(std::move(slit_supports)) {
  if (supports_.empty()) throw InvalidInput("a wall needs at least one slit");
  for (std::size_t i = 0; i < supports_.size(); ++i) {
    const auto& s = supports_[i];
    if (s.begin >= s.end || s.end > grid_.points) throw InvalidInput("slit support outside the grid");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& t = supports_[j];
      if (s.begin < t.end && t.begin < s.end) {
        std::ostringstream os;
        os << "slits " << j << " and " << i << " overlap; their projectors would not be orthogonal";
        throw InvalidInput(os.str());
      }
    }
  }
}

std::size_t SlitWall::rank() const {
  std::size_t r = 0;
  for (const auto& s : supports_) r += s.size();
  return r;
}

ComplexVector SlitWall::apply_slit(std::size_t i, const ComplexVector& psi) const {
  require_same_dim(grid_.points, psi.dim());
  if (i >= supports_.size()) throw InvalidInput("slit index out of range");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amplitudes().size());
  const auto& s = supports_[i];
  const auto b = static_cast<Eigen::Index>(s.begin);
  const auto n = static_cast<Eigen::Index>(s.size());
  out.segment(b, n) = psi.amplitudes().segment(b, n);
  return ComplexVector(std::move(out));
}

ComplexVector SlitWall::apply_wall(const ComplexVector& psi) const {
  require_same_dim(grid_.points, psi.dim());
  Eigen::VectorXcd mask = Eigen::VectorXcd::Zero(psi.amplitudes().size());
  for (const auto& s : supports_)
    mask.segment(static_cast<Eigen::Index>(s.begin), static_cast<Eigen::Index>(s.size())).setOnes();
  return ComplexVector(psi.amplitudes().cwiseProduct(mask));
}

Projector SlitWall::slit_projector(std::size_t i) const {
  if (i >= supports_.size()) throw InvalidInput("slit index out of range");
  std::vector<ComplexVector> basis;
  for (std::size_t k = supports_[i].begin; k < supports_[i].end; ++k)
    basis.push_back(ComplexVector::basis(grid_.points, k));
  return make_projector(basis);
}

Projector SlitWall::projector() const {
  std::vector<ComplexVector> basis;
  for (const auto& s : supports_)
    for (std::size_t k = s.begin; k < s.end; ++k) basis.push_back(ComplexVector::basis(grid_.points, k));
  return make_projector(basis);
}

SlitWall build_wall(const GridSpec& grid, const std::vector<double>& slit_centers, double slit_width) {
  require_grid(grid);
  if (!(slit_width > 0.0)) throw InvalidInput("slit width must be positive");
  if (slit_centers.empty()) throw InvalidInput("a wall needs at least one slit");
  const double half = 0.5 * slit_width;
  const double slack = 1e-9 * grid.spacing();
  for (std::size_t i = 0; i < slit_centers.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(slit_centers[i] - slit_centers[j]) < slit_width) {
        std::ostringstream os;
        os << "slits " << j << " and " << i << " overlap (separation "
           << std::abs(slit_centers[i] - slit_centers[j]) << " < width " << slit_width << ")";
        throw InvalidInput(os.str());
      }

  const std::vector<double> y = grid.positions();
  std::vector<IndexRange> supports;
  for (const double c : slit_centers) {
    if (c - half < grid.min - slack || c + half > grid.max + slack)
      throw InvalidInput("slit does not fit inside the wall grid");
    IndexRange r{grid.points, grid.points};
    for (std::size_t k = 0; k < y.size(); ++k)
      if (std::abs(y[k] - c) <= half + slack) {
        if (r.begin == grid.points) r.begin = k;
        r.end = k + 1;
      }
    if (r.begin == grid.points) throw InvalidInput("slit is narrower than the grid spacing");
    supports.push_back(r);
  }
  return SlitWall(grid, std::move(supports));
}

ComplexVector plane_wave(const GridSpec& grid) {
  require_grid(grid);
  return ComplexVector(normalized_on(grid, Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(grid.points))));
}

ComplexVector gaussian_beam(const GridSpec& grid, double waist, double center) {
  require_grid(grid);
  if (!(waist > 0.0)) throw InvalidInput("beam waist must be positive");
  const std::vector<double> y = grid.positions();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(y.size()));
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double s = (y[k] - center) / waist;
    v(static_cast<Eigen::Index>(k)) = std::exp(-s * s);
  }
  return ComplexVector(normalized_on(grid, std::move(v)));
}

std::vector<double> InterferencePattern::incoherent_intensity() const {
  std::vector<double> out(screen_positions.size(), 0.0);
  for (const auto& phi : per_slit_amplitudes)
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += std::norm(phi[x]);
  return out;
}

InterferencePattern propagate_to_screen(const SlitWall& wall, const ComplexVector& psi_in,
                                        double wavelength, double distance, const GridSpec& screen) {
  if (!(wavelength > 0.0)) throw InvalidInput("wavelength must be positive");
  if (!(distance > 0.0)) throw InvalidInput("propagation distance must be positive");
  require_grid(screen);
  require_same_dim(wall.grid().points, psi_in.dim());

  const double lz = wavelength * distance;
  const double dy = wall.grid().spacing();
  const Complex prefactor = std::sqrt(Complex(0.0, -1.0 / lz)) * dy;
  const std::vector<double>& y = wall.positions();

  InterferencePattern pat;
  pat.screen_positions = screen.positions();
  const std::size_t nx = pat.screen_positions.size();

  auto propagate = [&](const Eigen::VectorXcd& source, std::vector<Complex>& out) {
    out.assign(nx, Complex(0.0));
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = pat.screen_positions[ix];
      Complex acc(0.0);
      for (std::size_t k = 0; k < y.size(); ++k) {
        const Complex s = source(static_cast<Eigen::Index>(k));
        if (s == Complex(0.0)) continue;
        const double r = x - y[k];
        acc += std::polar(1.0, std::numbers::pi * r * r / lz) * s;
      }
      out[ix] = prefactor * acc;
    }
  };

  pat.per_slit_amplitudes.resize(wall.slit_count());
  for (std::size_t i = 0; i < wall.slit_count(); ++i)
    propagate(wall.apply_slit(i, psi_in).amplitudes(), pat.per_slit_amplitudes[i]);
  propagate(wall.apply_wall(psi_in).amplitudes(), pat.wall_amplitude);

  pat.total_intensity.assign(nx, 0.0);
  pat.cross_term.assign(nx, 0.0);
  const double dx = screen.spacing();
  for (std::size_t ix = 0; ix < nx; ++ix) {
    Complex sum(0.0);
    double cross = 0.0;
    for (std::size_t i = 0; i < wall.slit_count(); ++i) {
      sum += pat.per_slit_amplitudes[i][ix];
      for (std::size_t j = i + 1; j < wall.slit_count(); ++j)
        cross += (pat.per_slit_amplitudes[i][ix] * std::conj(pat.per_slit_amplitudes[j][ix])).real();
    }
    pat.total_intensity[ix] = std::norm(sum);
    pat.cross_term[ix] = cross;
    pat.screen_probability += pat.total_intensity[ix] * dx;
  }
  pat.normalized_intensity.resize(nx);
  pat.normalized_cross.resize(nx);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double p = pat.screen_probability;
    pat.normalized_intensity[ix] = p > 0.0 ? pat.total_intensity[ix] / p : 0.0;
    pat.normalized_cross[ix] = p > 0.0 ? pat.cross_term[ix] / p : 0.0;
  }

  double widest_slit = 0.0;
  for (const auto& s : wall.slit_supports())
    widest_slit = std::max(widest_slit, static_cast<double>(s.size()) * dy);
  const double reach = std::max(std::abs(screen.max - wall.grid().min), std::abs(screen.min - wall.grid().max));
  pat.paraxial_valid = distance >= 100.0 * widest_slit && reach <= 0.1 * distance;
  return pat;
}

double decomposition_residual(const InterferencePattern& pattern) {
  double peak = 0.0;
  double worst = 0.0;
  for (std::size_t ix = 0; ix < pattern.wall_amplitude.size(); ++ix) {
    Complex sum(0.0);
    for (const auto& phi : pattern.per_slit_amplitudes) sum += phi[ix];
    peak = std::max(peak, std::abs(pattern.wall_amplitude[ix]));
    worst = std::max(worst, std::abs(pattern.wall_amplitude[ix] - sum));
  }
  return peak > 0.0 ? worst / peak : worst;
}

double phase_invariance_check(const SlitWall& wall, const ComplexVector& psi_in, double wavelength,
                              double distance, const GridSpec& screen, double lambda_phase) {
  const auto base = propagate_to_screen(wall, psi_in, wavelength, distance, screen);
  const auto rotated =
      propagate_to_screen(wall, psi_in.scaled(std::polar(1.0, lambda_phase)), wavelength, distance, screen);
  return pattern_difference(base, rotated);
}

double scale_invariance_check(const SlitWall& wall, const ComplexVector& psi_in, double wavelength,
                              double distance, const GridSpec& screen, double scale) {
  if (scale == 0.0) throw InvalidInput("scale must be nonzero");
  const auto base = propagate_to_screen(wall, psi_in, wavelength, distance, screen);
  const auto scaled = propagate_to_screen(wall, psi_in.scaled(scale), wavelength, distance, screen);
  return pattern_difference(base, scaled);
}

double projector_poisson_check(const SlitWall& wall, const Ray& at) {
  require_same_dim(wall.grid().points, at.dim());
  std::vector<TangentVector> fields;
  fields.reserve(wall.slit_count());
  for (std::size_t i = 0; i < wall.slit_count(); ++i)
    fields.push_back(hamiltonian_vector_field_from_action(at, wall.apply_slit(i, at.rep())));
  double worst = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i; j < fields.size(); ++j)
      worst = std::max(worst, std::abs(symplectic_eval(KahlerScale::observable(), fields[i], fields[j])));
  return worst;
}

FringeMeasurement measure_fringe_spacing(const InterferencePattern& pattern, double window) {
  const auto& c = pattern.cross_term;
  const auto& x = pattern.screen_positions;
  if (c.size() < 3) throw InvalidInput("pattern too small to locate fringes");
  const double h = x[1] - x[0];
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (!(c[i] > c[i - 1] && c[i] >= c[i + 1])) continue;
    const double curvature = c[i - 1] - 2.0 * c[i] + c[i + 1];
    const double offset = curvature != 0.0 ? 0.5 * (c[i - 1] - c[i + 1]) / curvature : 0.0;
    const double at = x[i] + offset * h;
    if (std::abs(at) <= window) peaks.push_back(at);
  }
  if (peaks.size() < 2) throw NumericalError("fewer than two fringe maxima inside the window");
  return {(peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1), peaks.size()};
}

}  // namespace gqm
