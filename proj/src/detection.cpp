#include "reencoder/detection.hpp"

#include <stdexcept>

namespace reencoder {

namespace {

const SpatialMode kGroupModes[4] = {{"1"}, {"2"}, {"3"}, {"4"}};

ModePattern pattern_of(const OccupationConfig& detected_part) {
  ModePattern p;
  for (const auto& [key, c] : detected_part.entries()) {
    auto& [h, v] = p[key.mode];
    (key.pol == Pol::H ? h : v) += c;
  }
  return p;
}

}  // namespace

std::string to_string(const ModePattern& p) {
  std::string out;
  for (const auto& [mode, hv] : p) {
    if (!out.empty()) out += " ";
    out += mode.id + ":" + std::to_string(hv.first) + "H" +
           std::to_string(hv.second) + "V";
  }
  return out.empty() ? "empty" : out;
}

ProjectionResult project_pattern(const PhotonicState& s, const ModePattern& p,
                                 const std::set<SpatialMode>& detected) {
  auto dist = detection_distribution(s, detected);
  auto it = dist.find(p);
  if (it == dist.end()) return {};
  return it->second;
}

std::map<ModePattern, ProjectionResult> detection_distribution(
    const PhotonicState& s, const std::set<SpatialMode>& detected) {
  // Group amplitudes by the exact detected sub-configuration first: detectors
  // cannot see tags, so distinct sub-configurations with the same click record
  // become incoherent branches of that record.
  std::map<OccupationConfig, PhotonicState> by_detected;
  for (const auto& [cfg, amp] : s.terms()) {
    auto [det, rest] = cfg.split_modes(detected);
    by_detected[det].add_term(rest, amp);
  }
  std::map<ModePattern, ProjectionResult> out;
  for (const auto& [det, rest_state] : by_detected) {
    const double w = squared_norm(rest_state);
    if (w <= 0.0) continue;
    auto& res = out[pattern_of(det)];
    res.probability += w;
    res.branches.push_back({w, normalize(rest_state)});
  }
  return out;
}

DetectorPattern DetectorPattern::from_string(const std::string& s) {
  if (s.size() != 4)
    throw std::invalid_argument("detector pattern must have 4 letters");
  DetectorPattern p;
  for (int i = 0; i < 4; ++i) {
    if (s[i] == 'H') {
      p.pol[i] = Pol::H;
    } else if (s[i] == 'V') {
      p.pol[i] = Pol::V;
    } else {
      throw std::invalid_argument("detector pattern letters must be H or V");
    }
  }
  return p;
}

std::string DetectorPattern::to_string() const {
  std::string s;
  for (Pol p : pol) s += p == Pol::H ? 'H' : 'V';
  return s;
}

ModePattern DetectorPattern::to_mode_pattern() const {
  ModePattern p;
  for (int i = 0; i < 4; ++i) {
    p[kGroupModes[i]] = pol[i] == Pol::H ? std::make_pair(1, 0)
                                         : std::make_pair(0, 1);
  }
  return p;
}

const std::vector<DetectorPattern>& all_detector_patterns() {
  static const std::vector<DetectorPattern> patterns = [] {
    std::vector<DetectorPattern> out;
    for (int bits = 0; bits < 16; ++bits) {
      DetectorPattern p;
      for (int i = 0; i < 4; ++i)
        p.pol[i] = (bits >> (3 - i)) & 1 ? Pol::V : Pol::H;
      out.push_back(p);
    }
    return out;
  }();
  return patterns;
}

std::string to_string(FlipClass c) {
  switch (c) {
    case FlipClass::None: return "none";
    case FlipClass::Phase: return "phase";
    case FlipClass::Bit: return "bit";
    case FlipClass::Both: return "both";
  }
  return "?";
}

FlipClass flip_class_for(const DetectorPattern& p, GateMode mode) {
  if (mode == GateMode::Identity) {
    // Bit flip iff detectors 1 and 4 disagree; phase flip iff 2 and 3 disagree.
    const bool bit = p.v_at(1) != p.v_at(4);
    const bool phase = p.v_at(2) != p.v_at(3);
    if (bit && phase) return FlipClass::Both;
    if (bit) return FlipClass::Bit;
    if (phase) return FlipClass::Phase;
    return FlipClass::None;
  }
  // With the quarter-wave plate in the path the heralding regroups; fixed
  // lookup, verified against the conditional states by the self tests.
  static const std::map<std::string, FlipClass> table = {
      {"HHHH", FlipClass::None},  {"HVVH", FlipClass::None},
      {"VVHV", FlipClass::None},  {"VHVV", FlipClass::None},
      {"VHHV", FlipClass::Phase}, {"VVVV", FlipClass::Phase},
      {"HVHH", FlipClass::Phase}, {"HHVH", FlipClass::Phase},
      {"HHHV", FlipClass::Bit},   {"HVVV", FlipClass::Bit},
      {"VVHH", FlipClass::Bit},   {"VHVH", FlipClass::Bit},
      {"VHHH", FlipClass::Both},  {"VVVH", FlipClass::Both},
      {"HVHV", FlipClass::Both},  {"HHVV", FlipClass::Both},
  };
  return table.at(p.to_string());
}

CorrectionOp correction_for(const DetectorPattern& p, GateMode mode) {
  const SpatialMode a{"a"}, d{"d"};
  CorrectionOp op;
  switch (flip_class_for(p, mode)) {
    case FlipClass::None:
      break;
    case FlipClass::Phase:
      op.ops = {{a, PauliOp::Z}, {d, PauliOp::Z}};
      break;
    case FlipClass::Bit:
      op.ops = {{d, PauliOp::X}};
      break;
    case FlipClass::Both:
      op.ops = {{d, PauliOp::X}, {a, PauliOp::Z}, {d, PauliOp::Z}};
      break;
  }
  return op;
}

PhotonicState apply_correction(const PhotonicState& s, const CorrectionOp& op) {
  PhotonicState out = s;
  for (const auto& [mode, pauli] : op.ops) out = apply_pauli(out, mode, pauli);
  return out;
}

std::vector<ConditionalOutcome> enumerate_success_patterns(
    const PhotonicState& s, GateMode mode) {
  const std::set<SpatialMode> groups(kGroupModes, kGroupModes + 4);
  auto dist = detection_distribution(s, groups);
  std::vector<ConditionalOutcome> out;
  out.reserve(16);
  for (const auto& p : all_detector_patterns()) {
    ConditionalOutcome o;
    o.pattern = p;
    o.flip_class = flip_class_for(p, mode);
    o.correction = correction_for(p, mode);
    auto it = dist.find(p.to_mode_pattern());
    if (it != dist.end()) {
      o.probability = it->second.probability;
      o.branches = it->second.branches;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace reencoder
