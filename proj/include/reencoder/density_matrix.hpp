#pragma once

#include <Eigen/Dense>

#include "reencoder/photonic_state.hpp"

namespace reencoder {

// Polarization statevector of a two-photon state with exactly one matched
// photon in each of beams (first, second). Basis order: HH, HV, VH, VV with
// the first beam's polarization leading. Throws std::invalid_argument if any
// configuration deviates from that occupation.
Eigen::Vector4cd polarization_vector(const PhotonicState& s,
                                     const SpatialMode& first,
                                     const SpatialMode& second);

// Unnormalized 4x4 density operator on the output beam pair; the trace carries
// the event probability.
struct OutputDensityMatrix {
  Eigen::Matrix4cd mat = Eigen::Matrix4cd::Zero();

  void accumulate(double weight, const Eigen::Vector4cd& psi);
  double trace() const;
  double hermiticity_error() const;   // max |m - m^dag| entry
  double min_eigenvalue() const;      // of the Hermitian part
  // <target|rho|target> / tr(rho); target need not be normalized.
  double fidelity_with(const Eigen::Vector4cd& target) const;
  double max_abs_diff(const OutputDensityMatrix& other) const;
};

}  // namespace reencoder
