#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace reencoder {

using Amplitude = std::complex<double>;

// Polarization basis. The diagonal |+>/|-> states are always expanded on the
// fly, never stored as basis labels.
enum class Pol : std::uint8_t { H = 0, V = 1 };

// Distinguishability tag. Photons carrying different tags have zero overlap
// and never interfere; every optical element preserves the tag.
enum class DistTag : std::uint8_t { Matched = 0, Prime = 1, DoublePrime = 2 };

struct SpatialMode {
  std::string id;
  auto operator<=>(const SpatialMode&) const = default;
};

// One bosonic mode: spatial beam x polarization x distinguishability tag.
struct PhotonKey {
  SpatialMode mode;
  Pol pol = Pol::H;
  DistTag tag = DistTag::Matched;
  auto operator<=>(const PhotonKey&) const = default;
};

std::string to_string(Pol p);
std::string to_string(const PhotonKey& key);  // e.g. H_a, V'_b, H''_e

// Occupation-number configuration: photon counts per PhotonKey. Entries are
// kept sorted by key and zero counts are never stored, so equal configurations
// compare equal and map ordering is canonical.
class OccupationConfig {
 public:
  OccupationConfig() = default;
  static OccupationConfig vacuum() { return {}; }

  void add(const PhotonKey& key, int n = 1);
  int count(const PhotonKey& key) const;
  int total_photons() const;
  int photons_in_mode(const SpatialMode& mode) const;
  bool empty() const { return counts_.empty(); }

  const std::vector<std::pair<PhotonKey, int>>& entries() const { return counts_; }
  std::set<SpatialMode> modes() const;

  // Splits into (entries on `selected` modes, remaining entries).
  std::pair<OccupationConfig, OccupationConfig> split_modes(
      const std::set<SpatialMode>& selected) const;

  auto operator<=>(const OccupationConfig&) const = default;

 private:
  std::vector<std::pair<PhotonKey, int>> counts_;
};

// Amplitudes below this magnitude are dropped after element applications and
// state arithmetic; far below any physical amplitude in these circuits.
inline constexpr double kPruneEps = 1e-14;

// Sparse superposition over occupation configurations. Configurations are
// orthonormal basis vectors (bosonic normalization is carried inside the
// amplitudes by the element-application rules). Immutable in practice: all
// operations return new states.
class PhotonicState {
 public:
  PhotonicState() = default;

  static PhotonicState vacuum();
  static PhotonicState basis_state(OccupationConfig cfg, Amplitude amp = 1.0);
  static PhotonicState single_photon(const SpatialMode& mode, Pol pol,
                                     DistTag tag = DistTag::Matched);

  void add_term(const OccupationConfig& cfg, Amplitude amp);

  const std::map<OccupationConfig, Amplitude>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Amplitude amplitude(const OccupationConfig& cfg) const;
  std::set<SpatialMode> modes() const;

  PhotonicState& operator+=(const PhotonicState& other);
  PhotonicState& operator*=(Amplitude c);
  friend PhotonicState operator+(PhotonicState a, const PhotonicState& b) {
    a += b;
    return a;
  }
  friend PhotonicState operator*(Amplitude c, PhotonicState s) {
    s *= c;
    return s;
  }

 private:
  std::map<OccupationConfig, Amplitude> terms_;
};

double squared_norm(const PhotonicState& s);

// Conjugate-linear in s1, linear in s2.
Amplitude inner_product(const PhotonicState& s1, const PhotonicState& s2);

// |<s1|s2>|; the standard global-phase-insensitive comparison for unit states.
double state_overlap(const PhotonicState& s1, const PhotonicState& s2);

// Product state; throws std::invalid_argument if the mode sets overlap.
PhotonicState tensor(const PhotonicState& s1, const PhotonicState& s2);

// Throws std::domain_error on a zero state.
PhotonicState normalize(const PhotonicState& s);

PhotonicState pruned(PhotonicState s, double eps = kPruneEps);

// Sorted "amplitude |ket>" lines, one per configuration; stable across runs.
std::string to_debug_string(const PhotonicState& s);

}  // namespace reencoder
