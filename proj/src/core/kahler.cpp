#include "gqm/kahler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "gqm/chart.hpp"
#include "gqm/random.hpp"

namespace gqm {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kHorizontalTolerance = 1e-12;

void require_same_base(const TangentVector& X, const TangentVector& Y) {
  require_same_dim(X.base().dim(), Y.base().dim());
  if ((X.base().rep().amplitudes() - Y.base().rep().amplitudes()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("tangent vectors are attached to different rays");
}

bool proportional_to_identity(const HermitianOperator& F) {
  const Eigen::MatrixXcd& m = F.entries();
  const Complex d = m(0, 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? d : Complex(0.0))) return false;
  return true;
}

std::size_t largest_component(const ComplexVector& v) {
  Eigen::Index k = 0;
  v.amplitudes().cwiseAbs().maxCoeff(&k);
  return static_cast<std::size_t>(k);
}

// Lexicographic "a > b" over (re, im) of the components.
bool lex_greater(const ComplexVector& a, const ComplexVector& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() > b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() > b[i].imag();
  }
  return false;
}

}  // namespace

TangentVector::TangentVector(Ray base, ComplexVector vec) : base_(std::move(base)), vec_(std::move(vec)) {
  require_same_dim(base_.dim(), vec_.dim());
  const double vertical = std::abs(inner(base_.rep(), vec_));
  if (vertical > kHorizontalTolerance * std::max(1.0, vec_.norm())) {
    std::ostringstream os;
    os << "tangent vector is not horizontal (|<base|vec>| = " << vertical << ")";
    throw InvalidInput(os.str());
  }
}

TangentVector TangentVector::horizontal_part(const Ray& base, const ComplexVector& v) {
  require_same_dim(base.dim(), v.dim());
  const Eigen::VectorXcd& r = base.rep().amplitudes();
  Eigen::VectorXcd h = v.amplitudes() - r.dot(v.amplitudes()) * r;
  // A second pass removes what rounding left behind after the first.
  h -= r.dot(h) * r;
  return TangentVector(base, ComplexVector(std::move(h)));
}

TangentVector TangentVector::zero(const Ray& base) {
  return TangentVector(base, ComplexVector(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(base.dim()))));
}

TangentVector hamiltonian_vector_field_from_action(const Ray& at, const ComplexVector& f_rep) {
  require_same_dim(at.dim(), f_rep.dim());
  const Eigen::VectorXcd& r = at.rep().amplitudes();
  const double f = r.dot(f_rep.amplitudes()).real();
  Eigen::VectorXcd centered = f_rep.amplitudes() - f * r;
  centered -= r.dot(centered) * r;
  return TangentVector(at, ComplexVector(-I * centered));
}

TangentVector hamiltonian_vector_field(const HermitianOperator& F, const Ray& at) {
  require_same_dim(F.dim(), at.dim());
  if (proportional_to_identity(F)) return TangentVector::zero(at);
  return hamiltonian_vector_field_from_action(at, F.apply(at.rep()));
}

double metric_eval(KahlerScale scale, const TangentVector& X, const TangentVector& Y) {
  require_same_base(X, Y);
  return scale.factor() * X.vec().amplitudes().dot(Y.vec().amplitudes()).real();
}

double symplectic_eval(KahlerScale scale, const TangentVector& X, const TangentVector& Y) {
  require_same_base(X, Y);
  return scale.factor() * X.vec().amplitudes().dot(Y.vec().amplitudes()).imag();
}

double poisson_bracket(const HermitianOperator& F, const HermitianOperator& G, const Ray& at) {
  require_same_dim(F.dim(), G.dim());
  return symplectic_eval(KahlerScale::observable(), hamiltonian_vector_field(F, at),
                         hamiltonian_vector_field(G, at));
}

double riemannian_product(const HermitianOperator& F, const HermitianOperator& G, const Ray& at) {
  require_same_dim(F.dim(), G.dim());
  return metric_eval(KahlerScale::observable(), hamiltonian_vector_field(F, at),
                     hamiltonian_vector_field(G, at));
}

double killing_residual(const HermitianOperator& F, const Ray& at, double eps, std::uint64_t seed,
                        Transport transport) {
  require_same_dim(F.dim(), at.dim());
  if (!(eps >= 1e-6 && eps <= 1e-2)) throw InvalidInput("Killing step must lie in [1e-6, 1e-2]");
  if (at.dim() < 2) return 0.0;
  // The flow of a multiple of the identity is a global phase: the identity map on P.
  if (proportional_to_identity(F)) return 0.0;

  Rng rng(seed);
  const std::size_t k = largest_component(at.rep());
  const ComplexVector& psi = at.rep();
  const Eigen::MatrixXcd u_plus = propagator(F, eps);
  const Eigen::MatrixXcd u_minus = propagator(F, -eps);

  double worst = 0.0;
  constexpr int kPairs = 3;
  for (int pair = 0; pair < kPairs; ++pair) {
    const auto X = TangentVector::horizontal_part(at, rng.gaussian_vector(at.dim()));
    const auto Y = TangentVector::horizontal_part(at, rng.gaussian_vector(at.dim()));
    const Eigen::VectorXd x0 = chart_tangent(psi, X.vec().amplitudes(), k);
    const Eigen::VectorXd y0 = chart_tangent(psi, Y.vec().amplitudes(), k);

    auto pairing = [&](const Eigen::MatrixXcd& u) {
      const ComplexVector moved(u * psi.amplitudes());
      const MetricAtPoint metric = fs_metric(chart_of(moved, k));
      Eigen::VectorXd x = x0;
      Eigen::VectorXd y = y0;
      if (transport == Transport::isometric) {
        x = chart_tangent(moved, u * X.vec().amplitudes(), k);
        y = chart_tangent(moved, u * Y.vec().amplitudes(), k);
      }
      return std::array<double, 2>{x.dot(metric.g * y), x.dot(metric.g * x)};
    };
    const auto plus = pairing(u_plus);
    const auto minus = pairing(u_minus);
    for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(plus[c] - minus[c]) / (2.0 * eps));
  }
  return worst;
}

double commutator_closure_residual(const HermitianOperator& F, const HermitianOperator& G,
                                   const Ray& at, double eps) {
  require_same_dim(F.dim(), G.dim());
  require_same_dim(F.dim(), at.dim());
  const Eigen::MatrixXcd& f = F.entries();
  const Eigen::MatrixXcd& g = G.entries();
  // The function {f,g} is the expectation value of -i[F,G].
  const HermitianOperator bracket(-I * (f * g - g * f));
  const Eigen::VectorXcd& psi = at.rep().amplitudes();
  const Eigen::VectorXcd loop =
      propagator(F, eps) * (propagator(G, eps) * (propagator(F, -eps) * (propagator(G, -eps) * psi)));
  const Eigen::VectorXcd target = propagator(bracket, eps * eps) * psi;
  return fs_distance(project(ComplexVector(loop)), project(ComplexVector(target)));
}

UncertaintyAudit uncertainty_audit(const HermitianOperator& F, const HermitianOperator& M,
                                   const Ray& at) {
  require_same_dim(F.dim(), M.dim());
  const ComplexVector& psi = at.rep();
  const double lhs = variance(F, psi) * variance(M, psi);
  const double half_bracket = 0.5 * poisson_bracket(F, M, at);
  const double cov = symmetrized_covariance(F, M, psi);
  const double symplectic_term = half_bracket * half_bracket;
  const double metric_term = cov * cov;
  return {lhs, symplectic_term, metric_term, lhs - symplectic_term - metric_term};
}

std::vector<Extremum> eigen_extrema(const HermitianOperator& F) {
  const auto spec = F.spectrum();
  std::vector<Extremum> out;
  out.reserve(F.dim());
  for (Eigen::Index k = spec.values.size() - 1; k >= 0; --k)
    out.push_back({project(ComplexVector(spec.vectors.col(k))), spec.values(k)});

  // Values arrive sorted descending; order each degenerate run lexicographically.
  auto degenerate = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)); };
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t end = start + 1;
    while (end < out.size() && degenerate(out[end - 1].value, out[end].value)) ++end;
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.begin() + static_cast<std::ptrdiff_t>(end),
              [](const Extremum& a, const Extremum& b) { return lex_greater(a.ray.rep(), b.ray.rep()); });
    start = end;
  }
  return out;
}

}  // namespace gqm
