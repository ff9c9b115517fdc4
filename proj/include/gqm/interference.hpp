// Two-slit interference as a decomposition over slit projectors: the wall
// acts by P_wall = sum_i P_i on a transverse position grid, and the screen
// amplitude is the sum of the per-slit amplitudes.

#pragma once

#include <cstddef>
#include <vector>

#include "gqm/linalg.hpp"
#include "gqm/projective.hpp"

namespace gqm {

struct GridSpec {
  double min;
  double max;
  std::size_t points;

  double spacing() const;
  std::vector<double> positions() const;
};

struct IndexRange {
  std::size_t begin;  // inclusive
  std::size_t end;    // exclusive
  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
};

/// Position-diagonal projectors onto the grid points of each slit.
class SlitWall {
 public:
  SlitWall(GridSpec grid, std::vector<IndexRange> slit_supports);

  const GridSpec& grid() const noexcept { return grid_; }
  const std::vector<double>& positions() const noexcept { return positions_; }
  const std::vector<IndexRange>& slit_supports() const noexcept { return supports_; }
  std::size_t slit_count() const noexcept { return supports_.size(); }
  std::size_t rank() const;

  /// P_i psi.
  ComplexVector apply_slit(std::size_t i, const ComplexVector& psi) const;
  /// P_wall psi.
  ComplexVector apply_wall(const ComplexVector& psi) const;

  /// Dense projectors, dim = grid points. Meant for small grids.
  Projector slit_projector(std::size_t i) const;
  Projector projector() const;

 private:
  GridSpec grid_;
  std::vector<double> positions_;
  std::vector<IndexRange> supports_;
};

/// Top-hat slits: grid points within width/2 of each center. Throws for slits
/// that leave the grid, contain no grid point, or overlap.
SlitWall build_wall(const GridSpec& grid, const std::vector<double>& slit_centers, double slit_width);

/// Unit-normalized plane wave (uniform amplitude) on the wall grid, with
/// sum |psi|^2 dy = 1.
ComplexVector plane_wave(const GridSpec& grid);
/// Gaussian beam exp(-(y - center)^2 / waist^2), same normalization.
ComplexVector gaussian_beam(const GridSpec& grid, double waist, double center = 0.0);

struct InterferencePattern {
  std::vector<double> screen_positions;
  std::vector<std::vector<Complex>> per_slit_amplitudes;
  std::vector<Complex> wall_amplitude;   // propagated P_wall psi (single route)
  std::vector<double> total_intensity;   // |sum_i phi_i|^2
  std::vector<double> cross_term;        // sum_{i<j} Re(phi_i conj(phi_j))
  std::vector<double> normalized_intensity;  // total / (sum total * dx)
  std::vector<double> normalized_cross;      // cross on the same normalization
  double screen_probability = 0.0;       // sum total * dx
  bool paraxial_valid = true;

  /// sum_i |phi_i|^2: the pattern with its cross term removed.
  std::vector<double> incoherent_intensity() const;
};

/// Fresnel propagation over `distance`:
/// phi_i(x) = sqrt(1/(i lambda L)) sum_y exp(i pi (x-y)^2/(lambda L)) (P_i psi)(y) dy.
InterferencePattern propagate_to_screen(const SlitWall& wall, const ComplexVector& psi_in,
                                        double wavelength, double distance, const GridSpec& screen);

/// Max |wall route - coherent per-slit sum| over the screen, relative to the
/// peak wall-route amplitude.
double decomposition_residual(const InterferencePattern& pattern);

/// Max-abs difference of the normalized patterns (intensity and cross term)
/// for psi and exp(i lambda_phase) psi.
double phase_invariance_check(const SlitWall& wall, const ComplexVector& psi_in, double wavelength,
                              double distance, const GridSpec& screen, double lambda_phase);

/// Same comparison for psi and scale * psi.
double scale_invariance_check(const SlitWall& wall, const ComplexVector& psi_in, double wavelength,
                              double distance, const GridSpec& screen, double scale);

/// Max over slit pairs (i, j), i <= j, of |{P_i, P_j}| at the ray.
double projector_poisson_check(const SlitWall& wall, const Ray& at);

struct FringeMeasurement {
  double spacing;         // mean distance between adjacent maxima of the cross term
  std::size_t maxima;     // number of maxima used
};

/// Maxima of the cross term, located to sub-cell accuracy by parabolic
/// interpolation, within `window` of the screen center.
FringeMeasurement measure_fringe_spacing(const InterferencePattern& pattern, double window);

}  // namespace gqm
