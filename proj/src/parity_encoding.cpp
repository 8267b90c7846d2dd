#include "reencoder/parity_encoding.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "reencoder/optical_elements.hpp"

namespace reencoder {

namespace {

void require_distinct(const std::vector<SpatialMode>& modes) {
  std::set<SpatialMode> seen(modes.begin(), modes.end());
  if (seen.size() != modes.size())
    throw std::invalid_argument("parity code beams must be distinct");
}

OccupationConfig word_config(const std::vector<SpatialMode>& modes,
                             std::uint32_t bits) {
  OccupationConfig cfg;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    cfg.add({modes[i], (bits >> i) & 1u ? Pol::V : Pol::H, DistTag::Matched});
  }
  return cfg;
}

}  // namespace

LogicalQubit::LogicalQubit(Amplitude a, Amplitude b) : alpha(a), beta(b) {
  double n2 = std::norm(a) + std::norm(b);
  if (n2 <= 0.0) throw std::invalid_argument("logical qubit: zero amplitudes");
  double inv = 1.0 / std::sqrt(n2);
  alpha *= inv;
  beta *= inv;
}

LogicalQubit BlochAngles::to_qubit() const {
  if (theta < 0.0 || theta > 3.14159265358979323846 + 1e-12)
    throw std::invalid_argument("bloch angles: theta outside [0, pi]");
  return LogicalQubit(std::cos(theta / 2.0),
                      std::polar(std::sin(theta / 2.0), phi));
}

PhotonicState parity_state(const LogicalQubit& q, int n,
                           const std::vector<SpatialMode>& modes) {
  if (n < 1) throw std::invalid_argument("parity code needs at least 1 photon");
  if (modes.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("parity code: mode count != n");
  require_distinct(modes);
  const double w = 1.0 / std::sqrt(std::pow(2.0, n - 1));
  PhotonicState s;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const bool odd = std::popcount(bits) & 1;
    s.add_term(word_config(modes, bits), (odd ? q.beta : q.alpha) * w);
  }
  return pruned(std::move(s));
}

PhotonicState bell_phi_plus(const SpatialMode& m1, const SpatialMode& m2) {
  return parity_state(LogicalQubit(1.0, 0.0), 2, {m1, m2});
}

PhotonicState prepare_via_nonmaximal(const LogicalQubit& q,
                                     const SpatialMode& m1,
                                     const SpatialMode& m2) {
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude big_a = (q.alpha + q.beta) * r;
  const Amplitude big_b = (q.alpha - q.beta) * r;
  PhotonicState s;
  OccupationConfig hh, vv;
  hh.add({m1, Pol::H, DistTag::Matched});
  hh.add({m2, Pol::H, DistTag::Matched});
  vv.add({m1, Pol::V, DistTag::Matched});
  vv.add({m2, Pol::V, DistTag::Matched});
  s.add_term(hh, big_a);
  s.add_term(vv, big_b);
  s = apply_hwp22_5(s, m1);
  s = apply_hwp22_5(s, m2);
  return s;
}

LogicalQubit extract_logical(const PhotonicState& s,
                             const std::vector<SpatialMode>& modes) {
  const int n = static_cast<int>(modes.size());
  if (n < 1) throw std::invalid_argument("extract_logical: no modes");
  const PhotonicState zero = parity_state(LogicalQubit(1.0, 0.0), n, modes);
  const PhotonicState one = parity_state(LogicalQubit(0.0, 1.0), n, modes);
  const Amplitude a = inner_product(zero, s);
  const Amplitude b = inner_product(one, s);
  const double residual = squared_norm(s) - std::norm(a) - std::norm(b);
  if (std::abs(residual) > 1e-9)
    throw std::invalid_argument(
        "extract_logical: state lies outside the code space");
  return LogicalQubit(a, b);
}

CollapseResult collapse_component(const PhotonicState& s,
                                  const std::vector<SpatialMode>& modes,
                                  std::size_t index, Pol outcome) {
  if (modes.size() < 2)
    throw std::invalid_argument("collapse_component: word too short");
  if (index >= modes.size())
    throw std::invalid_argument("collapse_component: index out of range");
  extract_logical(s, modes);  // rejects non-code-space input

  const SpatialMode& measured = modes[index];
  const PhotonKey want{measured, outcome, DistTag::Matched};
  PhotonicState rest;
  for (const auto& [cfg, amp] : s.terms()) {
    if (cfg.count(want) != 1) continue;
    auto [det, remainder] = cfg.split_modes({measured});
    rest.add_term(remainder, amp);
  }
  CollapseResult out;
  out.probability = squared_norm(rest);
  if (out.probability > 0.0) out.state = normalize(rest);
  out.bit_flip_owed = outcome == Pol::V;
  return out;
}

PhotonicState apply_logical_xtheta(const PhotonicState& s,
                                   const std::vector<SpatialMode>& modes,
                                   double theta) {
  if (modes.empty()) throw std::invalid_argument("logical gate: no modes");
  const Amplitude c = std::cos(theta / 2.0);
  const Amplitude ms = Amplitude{0.0, -1.0} * std::sin(theta / 2.0);
  PhotonicState flipped = apply_pauli(s, modes.front(), PauliOp::X);
  return pruned(c * s + ms * flipped);
}

PhotonicState apply_logical_z(const PhotonicState& s,
                              const std::vector<SpatialMode>& modes) {
  if (modes.empty()) throw std::invalid_argument("logical gate: no modes");
  PhotonicState out = s;
  for (const auto& m : modes) out = apply_pauli(out, m, PauliOp::Z);
  return out;
}

}  // namespace reencoder
