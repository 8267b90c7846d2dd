#include "reencoder/density_matrix.hpp"

#include <stdexcept>

namespace reencoder {

Eigen::Vector4cd polarization_vector(const PhotonicState& s,
                                     const SpatialMode& first,
                                     const SpatialMode& second) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  for (const auto& [cfg, amp] : s.terms()) {
    int idx = 0;
    int photons = 0;
    for (const auto& [key, c] : cfg.entries()) {
      if (key.tag != DistTag::Matched || c != 1 ||
          (key.mode != first && key.mode != second)) {
        throw std::invalid_argument(
            "polarization_vector: not a one-photon-per-output-beam state");
      }
      photons += c;
      if (key.mode == first && key.pol == Pol::V) idx += 2;
      if (key.mode == second && key.pol == Pol::V) idx += 1;
    }
    if (photons != 2)
      throw std::invalid_argument(
          "polarization_vector: not a one-photon-per-output-beam state");
    v[idx] += amp;
  }
  return v;
}

void OutputDensityMatrix::accumulate(double weight,
                                     const Eigen::Vector4cd& psi) {
  mat += weight * (psi * psi.adjoint());
}

double OutputDensityMatrix::trace() const { return mat.trace().real(); }

double OutputDensityMatrix::hermiticity_error() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double OutputDensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(
      0.5 * (mat + mat.adjoint()));
  return es.eigenvalues().minCoeff();
}

double OutputDensityMatrix::fidelity_with(
    const Eigen::Vector4cd& target) const {
  const double t = trace();
  if (t <= 0.0) throw std::domain_error("fidelity_with: zero-trace operator");
  const double n2 = target.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("fidelity_with: zero target");
  return (target.adjoint() * mat * target)[0].real() / (t * n2);
}

double OutputDensityMatrix::max_abs_diff(
    const OutputDensityMatrix& other) const {
  return (mat - other.mat).cwiseAbs().maxCoeff();
}

}  // namespace reencoder
