#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "reencoder/photonic_state.hpp"

namespace reencoder {

// Linear combination of creation operators a single input key maps to.
using KeyTargets = std::vector<std::pair<PhotonKey, Amplitude>>;

// Returns the substitution for a key, or nullopt to leave it untouched.
using KeyMap = std::function<std::optional<KeyTargets>(const PhotonKey&)>;

// Applies a linear-optical substitution a_k^dag -> sum_j c_kj a_j^dag to every
// configuration, with full bosonic normalization: multi-photon occupations are
// expanded multinomially and sqrt(n!) factors restored on the output counts.
PhotonicState apply_key_map(const PhotonicState& s, const KeyMap& map,
                            double eps = kPruneEps);

// Polarizing beam splitter, transmit-H / reflect-V convention:
//   H@in1 -> H@out1,  H@in2 -> H@out2,  V@in1 -> V@out2,  V@in2 -> V@out1,
// reflected amplitudes multiplied by reflection_phase. Tags ride along.
// The output modes must be fresh: distinct from the inputs and unoccupied in s.
PhotonicState apply_pbs_general(const PhotonicState& s, const SpatialMode& in1,
                                const SpatialMode& in2, const SpatialMode& out1,
                                const SpatialMode& out2,
                                Amplitude reflection_phase,
                                double eps = kPruneEps);

// The physical beam splitter used throughout: no reflection phase.
PhotonicState apply_pbs(const PhotonicState& s, const SpatialMode& in1,
                        const SpatialMode& in2, const SpatialMode& out1,
                        const SpatialMode& out2, double eps = kPruneEps);

// Arbitrary polarization (Jones) transform on one spatial mode, tag-preserving:
// |H> -> u00|H> + u10|V>, |V> -> u01|H> + u11|V>. u is row-major {u00,u01,u10,u11}.
PhotonicState apply_polarization_unitary(const PhotonicState& s,
                                         const SpatialMode& mode,
                                         const std::array<Amplitude, 4>& u,
                                         double eps = kPruneEps);

// Half-wave plate at 22.5 degrees: H -> (H+V)/sqrt2, V -> (H-V)/sqrt2.
PhotonicState apply_hwp22_5(const PhotonicState& s, const SpatialMode& mode,
                            double eps = kPruneEps);

// Quarter-wave plate, fast axis horizontal: H -> H, V -> i V.
PhotonicState apply_qwp0(const PhotonicState& s, const SpatialMode& mode,
                         double eps = kPruneEps);

enum class PauliOp { X, Z };

// sigma_x swaps H/V on the mode; sigma_z flips the sign of every V photon.
PhotonicState apply_pauli(const PhotonicState& s, const SpatialMode& mode,
                          PauliOp op, double eps = kPruneEps);

}  // namespace reencoder
