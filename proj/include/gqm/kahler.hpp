// Kaehler structure of projective space: Hamiltonian vector fields of
// expectation-value functions, the metric and symplectic pairings, Poisson
// brackets, and the flow-level checks (Killing property, commutator closure,
// uncertainty decomposition).
//
// Tangent vectors at a ray are horizontal representatives at ray.rep(): vec
// with <rep|vec> = 0. The complex structure J acts as multiplication by -i.

#pragma once

#include <cstdint>
#include <vector>

#include "gqm/linalg.hpp"
#include "gqm/projective.hpp"
#include "gqm/scale.hpp"

namespace gqm {

class TangentVector {
 public:
  /// Validates horizontality: |<base|vec>| <= 1e-12 * max(1, |vec|).
  TangentVector(Ray base, ComplexVector vec);
  /// Removes the vertical component of an arbitrary vector.
  static TangentVector horizontal_part(const Ray& base, const ComplexVector& v);
  static TangentVector zero(const Ray& base);

  const Ray& base() const noexcept { return base_; }
  const ComplexVector& vec() const noexcept { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  Ray base_;
  ComplexVector vec_;
};

/// f = <F> as a function on projective space.
class ObservableFunction {
 public:
  explicit ObservableFunction(HermitianOperator op) : op_(std::move(op)) {}
  const HermitianOperator& op() const noexcept { return op_; }
  double operator()(const Ray& x) const { return expectation(op_, x.rep()); }

 private:
  HermitianOperator op_;
};

/// -i(F - <F>) rep; exactly zero when F is a multiple of the identity.
TangentVector hamiltonian_vector_field(const HermitianOperator& F, const Ray& at);
/// Same field from a precomputed F*rep, for operators too large to store densely.
TangentVector hamiltonian_vector_field_from_action(const Ray& at, const ComplexVector& f_rep);

/// scale * Re<X|Y>.
double metric_eval(KahlerScale scale, const TangentVector& X, const TangentVector& Y);
/// scale * Im<X|Y>.
double symplectic_eval(KahlerScale scale, const TangentVector& X, const TangentVector& Y);

/// Observable-scale symplectic pairing of X_F and X_G; equals <-i[F,G]>.
double poisson_bracket(const HermitianOperator& F, const HermitianOperator& G, const Ray& at);
/// Observable-scale metric pairing of X_F and X_G; equals 2 Cov(F,G).
double riemannian_product(const HermitianOperator& F, const HermitianOperator& G, const Ray& at);

enum class Transport {
  isometric,          // push tangent vectors forward with the unitary flow
  frozen_components,  // keep the chart components fixed (negative control)
};

/// Max over random tangent pairs of |d/dt g(X_t, Y_t)| at t = 0 along the flow
/// of X_F, by central differences at t = +/- eps, with metrics evaluated in
/// an affine chart.
double killing_residual(const HermitianOperator& F, const Ray& at, double eps,
                        std::uint64_t seed = 0x5eed, Transport transport = Transport::isometric);

/// Fubini-Study distance between the group commutator of the flows of X_F and
/// X_G over time eps and the flow of X_{f,g} over time eps^2.
double commutator_closure_residual(const HermitianOperator& F, const HermitianOperator& G,
                                   const Ray& at, double eps);

struct UncertaintyAudit {
  double lhs;              // (dF)^2 (dM)^2
  double symplectic_term;  // ({f,m}/2)^2
  double metric_term;      // Cov(F,M)^2 = ((f,m)/2)^2
  double slack;            // lhs - symplectic_term - metric_term
};

UncertaintyAudit uncertainty_audit(const HermitianOperator& F, const HermitianOperator& M,
                                   const Ray& at);

struct Extremum {
  Ray ray;
  double value;
};

/// Eigenpairs of F as critical points of f, sorted by descending eigenvalue and,
/// within a degenerate eigenspace, by descending lexicographic order of the
/// gauge-fixed representatives.
std::vector<Extremum> eigen_extrema(const HermitianOperator& F);

}  // namespace gqm
