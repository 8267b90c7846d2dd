#pragma once

#include <vector>

#include "reencoder/photonic_state.hpp"

namespace reencoder {

// Normalized single-qubit amplitudes. Construction rescales to unit norm and
// rejects the zero vector.
struct LogicalQubit {
  Amplitude alpha{1.0};
  Amplitude beta{0.0};

  LogicalQubit() = default;
  LogicalQubit(Amplitude a, Amplitude b);
};

// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, theta in [0, pi].
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
  LogicalQubit to_qubit() const;
};

// n-photon parity code word for alpha|0>^(n) + beta|1>^(n): a uniform
// superposition of all H/V assignments, even-parity terms weighted alpha and
// odd-parity terms weighted beta, each with magnitude 1/sqrt(2^(n-1)).
PhotonicState parity_state(const LogicalQubit& q, int n,
                           const std::vector<SpatialMode>& modes);

// (|HH> + |VV>)/sqrt2 on two beams.
PhotonicState bell_phi_plus(const SpatialMode& m1, const SpatialMode& m2);

// Builds the two-photon code word by the preparation route: a nonmaximally
// entangled pair A|HH> + B|VV> with A=(alpha+beta)/sqrt2, B=(alpha-beta)/sqrt2,
// followed by a half-wave plate on each beam.
PhotonicState prepare_via_nonmaximal(const LogicalQubit& q,
                                     const SpatialMode& m1,
                                     const SpatialMode& m2);

// Reads (alpha, beta) back out of an n-photon code word. Throws
// std::invalid_argument if the state is not supported on the code space
// (residual squared norm above 1e-9).
LogicalQubit extract_logical(const PhotonicState& s,
                             const std::vector<SpatialMode>& modes);

struct CollapseResult {
  double probability = 0.0;
  PhotonicState state;       // normalized (n-1)-photon code word
  bool bit_flip_owed = false;  // V outcome: remaining word carries beta<->alpha
};

// Computational-basis measurement of photon `index` of an n-photon code word.
// H leaves the remaining word unchanged; V swaps the roles of alpha and beta,
// flagged for downstream correction. n >= 2.
CollapseResult collapse_component(const PhotonicState& s,
                                  const std::vector<SpatialMode>& modes,
                                  std::size_t index, Pol outcome);

// Logical X rotation: cos(theta/2) I - i sin(theta/2) X, with X implemented as
// a polarization flip on any single photon of the word.
PhotonicState apply_logical_xtheta(const PhotonicState& s,
                                   const std::vector<SpatialMode>& modes,
                                   double theta);

// Logical Z: sign flip on every V photon, applied to all n beams.
PhotonicState apply_logical_z(const PhotonicState& s,
                              const std::vector<SpatialMode>& modes);

}  // namespace reencoder
