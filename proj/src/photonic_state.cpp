#include "reencoder/photonic_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace reencoder {

std::string to_string(Pol p) { return p == Pol::H ? "H" : "V"; }

std::string to_string(const PhotonKey& key) {
  std::string s = to_string(key.pol);
  if (key.tag == DistTag::Prime) s += "'";
  if (key.tag == DistTag::DoublePrime) s += "''";
  s += "_" + key.mode.id;
  return s;
}

void OccupationConfig::add(const PhotonKey& key, int n) {
  if (n <= 0) throw std::invalid_argument("photon count must be positive");
  auto it = std::lower_bound(
      counts_.begin(), counts_.end(), key,
      [](const auto& entry, const PhotonKey& k) { return entry.first < k; });
  if (it != counts_.end() && it->first == key) {
    it->second += n;
  } else {
    counts_.insert(it, {key, n});
  }
}

int OccupationConfig::count(const PhotonKey& key) const {
  auto it = std::lower_bound(
      counts_.begin(), counts_.end(), key,
      [](const auto& entry, const PhotonKey& k) { return entry.first < k; });
  if (it != counts_.end() && it->first == key) return it->second;
  return 0;
}

int OccupationConfig::total_photons() const {
  int n = 0;
  for (const auto& [key, c] : counts_) n += c;
  return n;
}

int OccupationConfig::photons_in_mode(const SpatialMode& mode) const {
  int n = 0;
  for (const auto& [key, c] : counts_)
    if (key.mode == mode) n += c;
  return n;
}

std::set<SpatialMode> OccupationConfig::modes() const {
  std::set<SpatialMode> out;
  for (const auto& [key, c] : counts_) out.insert(key.mode);
  return out;
}

std::pair<OccupationConfig, OccupationConfig> OccupationConfig::split_modes(
    const std::set<SpatialMode>& selected) const {
  OccupationConfig in, rest;
  for (const auto& [key, c] : counts_) {
    (selected.count(key.mode) ? in : rest).add(key, c);
  }
  return {in, rest};
}

PhotonicState PhotonicState::vacuum() {
  return basis_state(OccupationConfig::vacuum());
}

PhotonicState PhotonicState::basis_state(OccupationConfig cfg, Amplitude amp) {
  PhotonicState s;
  s.add_term(cfg, amp);
  return s;
}

PhotonicState PhotonicState::single_photon(const SpatialMode& mode, Pol pol,
                                           DistTag tag) {
  OccupationConfig cfg;
  cfg.add({mode, pol, tag});
  return basis_state(cfg);
}

void PhotonicState::add_term(const OccupationConfig& cfg, Amplitude amp) {
  auto [it, inserted] = terms_.try_emplace(cfg, amp);
  if (!inserted) it->second += amp;
}

Amplitude PhotonicState::amplitude(const OccupationConfig& cfg) const {
  auto it = terms_.find(cfg);
  return it == terms_.end() ? Amplitude{0.0} : it->second;
}

std::set<SpatialMode> PhotonicState::modes() const {
  std::set<SpatialMode> out;
  for (const auto& [cfg, amp] : terms_) {
    auto m = cfg.modes();
    out.insert(m.begin(), m.end());
  }
  return out;
}

PhotonicState& PhotonicState::operator+=(const PhotonicState& other) {
  for (const auto& [cfg, amp] : other.terms_) add_term(cfg, amp);
  return *this;
}

PhotonicState& PhotonicState::operator*=(Amplitude c) {
  for (auto& [cfg, amp] : terms_) amp *= c;
  return *this;
}

double squared_norm(const PhotonicState& s) {
  double n = 0.0;
  for (const auto& [cfg, amp] : s.terms()) n += std::norm(amp);
  return n;
}

Amplitude inner_product(const PhotonicState& s1, const PhotonicState& s2) {
  // Walk the smaller support.
  const auto& a = s1.terms();
  const auto& b = s2.terms();
  Amplitude out = 0.0;
  if (a.size() <= b.size()) {
    for (const auto& [cfg, amp] : a) {
      auto it = b.find(cfg);
      if (it != b.end()) out += std::conj(amp) * it->second;
    }
  } else {
    for (const auto& [cfg, amp] : b) {
      auto it = a.find(cfg);
      if (it != a.end()) out += std::conj(it->second) * amp;
    }
  }
  return out;
}

double state_overlap(const PhotonicState& s1, const PhotonicState& s2) {
  return std::abs(inner_product(s1, s2));
}

PhotonicState tensor(const PhotonicState& s1, const PhotonicState& s2) {
  auto m1 = s1.modes();
  auto m2 = s2.modes();
  for (const auto& m : m2) {
    if (m1.count(m))
      throw std::invalid_argument("tensor: states share spatial mode '" +
                                  m.id + "'");
  }
  PhotonicState out;
  for (const auto& [cfg1, amp1] : s1.terms()) {
    for (const auto& [cfg2, amp2] : s2.terms()) {
      OccupationConfig joined = cfg1;
      for (const auto& [key, c] : cfg2.entries()) joined.add(key, c);
      out.add_term(joined, amp1 * amp2);
    }
  }
  return out;
}

PhotonicState normalize(const PhotonicState& s) {
  double n2 = squared_norm(s);
  if (n2 <= 0.0) throw std::domain_error("normalize: zero state");
  return Amplitude{1.0 / std::sqrt(n2)} * s;
}

PhotonicState pruned(PhotonicState s, double eps) {
  PhotonicState out;
  for (const auto& [cfg, amp] : s.terms()) {
    if (std::abs(amp) > eps) out.add_term(cfg, amp);
  }
  return out;
}

std::string to_debug_string(const PhotonicState& s) {
  std::ostringstream os;
  char buf[64];
  for (const auto& [cfg, amp] : s.terms()) {
    std::snprintf(buf, sizeof(buf), "%+.6g%+.6gi ", amp.real(), amp.imag());
    os << buf << "|";
    if (cfg.empty()) {
      os << "vac";
    } else {
      bool first = true;
      for (const auto& [key, c] : cfg.entries()) {
        for (int i = 0; i < c; ++i) {
          if (!first) os << " ";
          os << to_string(key);
          first = false;
        }
      }
    }
    os << ">\n";
  }
  return os.str();
}

}  // namespace reencoder
