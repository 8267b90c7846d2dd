#include "reencoder/teleport.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <stdexcept>

namespace reencoder {

namespace {

using beam::a;
using beam::d;
using beam::four;
using beam::one;
using beam::three;
using beam::two;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in [0,1) from the top 53 bits; identical on every platform, unlike
// std::uniform_real_distribution.
double next_u(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Reduced polarization density operator of the beam-1 photon, traced over the
// (a, d) pair; input state must hold one matched photon in each of a, d, 1.
Eigen::Matrix2cd beam1_density(const PhotonicState& s) {
  std::map<std::pair<Pol, Pol>, Eigen::Vector2cd> by_ad;
  for (const auto& [cfg, amp] : s.terms()) {
    Pol pa{}, pd{}, p1{};
    int seen = 0;
    for (const auto& [key, c] : cfg.entries()) {
      if (c != 1 || key.tag != DistTag::Matched)
        throw std::invalid_argument("beam1_density: unexpected occupation");
      if (key.mode == a) pa = key.pol, ++seen;
      else if (key.mode == d) pd = key.pol, ++seen;
      else if (key.mode == one) p1 = key.pol, ++seen;
      else throw std::invalid_argument("beam1_density: unexpected beam");
    }
    if (seen != 3)
      throw std::invalid_argument("beam1_density: unexpected occupation");
    auto [it, inserted] =
        by_ad.try_emplace({pa, pd}, Eigen::Vector2cd::Zero());
    it->second[p1 == Pol::H ? 0 : 1] += amp;
  }
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (const auto& [ad, v] : by_ad) rho += v * v.adjoint();
  return rho;
}

LogicalQubit canonical_phase(const LogicalQubit& q) {
  const Amplitude lead =
      std::abs(q.alpha) >= std::abs(q.beta) ? q.alpha : q.beta;
  const Amplitude rot = std::conj(lead) / std::abs(lead);
  return LogicalQubit(rot * q.alpha, rot * q.beta);
}

double qubit_overlap(const LogicalQubit& p, const LogicalQubit& q) {
  return std::abs(std::conj(p.alpha) * q.alpha + std::conj(p.beta) * q.beta);
}

struct SuccessEntry {
  std::array<Pol, 3> outputs;
  double p = 0.0;
  double fidelity = 0.0;  // after Bob's correction, vs the original target
};

struct FailureEntry {
  int bunch_beam = 0;  // 2 or 3
  double p = 0.0;
  // Posterior of the surviving beam-1 qubit, conditional on this outcome.
  std::vector<std::pair<double, LogicalQubit>> posterior;
};

struct Stage2Table {
  std::vector<SuccessEntry> successes;
  std::vector<FailureEntry> failures;
};

struct Stage1Table {
  double p_success[2] = {0.0, 0.0};  // herald H, V
  std::array<std::vector<TaggedBranch>, 2> resource;  // on (a, d, 2')
  double p_failure = 0.0;
};

}  // namespace

void RetryPolicy::validate() const {
  if (max_type1_attempts < 1 || max_type2_attempts < 1)
    throw std::invalid_argument("retry policy bounds must be >= 1");
}

std::string to_string(ProtocolPhase p) {
  switch (p) {
    case ProtocolPhase::AwaitType1: return "await-type1";
    case ProtocolPhase::AwaitType2: return "await-type2";
    case ProtocolPhase::Recovering: return "recovering";
    case ProtocolPhase::Done: return "done";
    case ProtocolPhase::Aborted: return "aborted";
  }
  return "?";
}

CorrectionOp bob_correction(const ClassicalMessage& msg) {
  DetectorPattern p;
  p.pol = {msg.outputs[0], msg.outputs[1], msg.outputs[2], msg.herald};
  return correction_for(p, GateMode::Identity);
}

struct ProtocolEngine::Impl {
  TeleportSetup setup;
  Eigen::Vector4cd target;
  Stage1Table stage1;
  std::vector<ElementStep> steps1, steps2;

  struct CachedTables {
    LogicalQubit q;
    std::array<Stage2Table, 2> per_herald;  // indexed by herald H=0, V=1
  };
  std::deque<CachedTables> cache;  // deque: stable references across growth

  explicit Impl(const TeleportSetup& s) : setup(s) {
    target =
        polarization_vector(canonical_target(s.input, GateMode::Identity), a, d);
    std::optional<double> eta1;
    if (s.mismatch) eta1 = s.mismatch->eta1;
    Fusion1Result f1 = type1_fusion_stage(eta1);
    stage1.p_success[0] = f1.success[0].probability;
    stage1.p_success[1] = f1.success[1].probability;
    stage1.resource[0] = f1.success[0].branches;
    stage1.resource[1] = f1.success[1].branches;
    stage1.p_failure = f1.failure_probability;
    steps1 = fusion1_steps();
    steps2 = fusion2_steps(GateMode::Identity);
  }

  Stage2Table build_stage2(const LogicalQubit& q, Pol herald) const {
    std::optional<double> eta2;
    if (setup.mismatch) eta2 = setup.mismatch->eta2;
    const PhotonicState input = input_word_state(q, eta2);

    std::map<std::array<Pol, 3>, OutputDensityMatrix> rho_by_outputs;
    std::map<int, std::pair<double, Eigen::Matrix2cd>> fail_by_beam;

    const int hidx = herald == Pol::H ? 0 : 1;
    // Table probabilities are conditional on this herald, so the resource
    // branch weights (raw herald mass) renormalize to 1 first.
    const double herald_mass = stage1.p_success[hidx];
    for (const auto& res : stage1.resource[hidx]) {
      PhotonicState s = tensor(res.state, input);
      s = apply_steps(std::move(s), steps2);
      auto dist = detection_distribution(s, {two, three});
      for (const auto& [pat, proj] : dist) {
        auto counts = [&pat](const SpatialMode& m) {
          auto it = pat.find(m);
          return it == pat.end() ? std::pair<int, int>{0, 0} : it->second;
        };
        const auto [h2, v2] = counts(two);
        const auto [h3, v3] = counts(three);
        if (h2 + v2 == 1 && h3 + v3 == 1) {
          const Pol p2 = v2 ? Pol::V : Pol::H;
          const Pol p3 = v3 ? Pol::V : Pol::H;
          for (const auto& br : proj.branches) {
            // Alice still measures beam 1 before announcing.
            auto dist1 = detection_distribution(br.state, {one});
            for (const auto& [pat1, proj1] : dist1) {
              const Pol p1 =
                  pat1.at(one).second == 1 ? Pol::V : Pol::H;
              for (const auto& br1 : proj1.branches) {
                const double mass =
                    res.weight / herald_mass * br.weight * br1.weight;
                ClassicalMessage msg{herald, {p1, p2, p3}};
                const PhotonicState corrected =
                    apply_correction(br1.state, bob_correction(msg));
                auto [it, ins] = rho_by_outputs.try_emplace(
                    std::array<Pol, 3>{p1, p2, p3});
                it->second.accumulate(mass,
                                      polarization_vector(corrected, a, d));
              }
            }
          }
        } else {
          const int bunch = h2 + v2 == 2 ? 2 : 3;
          auto [it, ins] = fail_by_beam.try_emplace(
              bunch, std::pair<double, Eigen::Matrix2cd>{
                         0.0, Eigen::Matrix2cd::Zero()});
          for (const auto& br : proj.branches) {
            const double mass = res.weight / herald_mass * br.weight;
            it->second.first += mass;
            it->second.second += mass * beam1_density(br.state);
          }
        }
      }
    }

    Stage2Table table;
    for (const auto& [outs, rho] : rho_by_outputs) {
      SuccessEntry entry;
      entry.outputs = outs;
      entry.p = rho.trace();
      entry.fidelity = rho.fidelity_with(target);
      table.successes.push_back(entry);
    }
    for (const auto& [bunch, acc] : fail_by_beam) {
      FailureEntry entry;
      entry.bunch_beam = bunch;
      entry.p = acc.first;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(acc.second /
                                                         acc.first);
      for (int i = 0; i < 2; ++i) {
        const double lambda = es.eigenvalues()[i];
        if (lambda < 1e-12) continue;
        const Eigen::Vector2cd u = es.eigenvectors().col(i);
        entry.posterior.push_back(
            {lambda, LogicalQubit(u[0], u[1])});
      }
      table.failures.push_back(std::move(entry));
    }
    return table;
  }

  const Stage2Table& tables_for(const LogicalQubit& q, Pol herald) {
    for (auto& c : cache) {
      if (qubit_overlap(c.q, q) > 1.0 - 1e-12)
        return c.per_herald[herald == Pol::H ? 0 : 1];
    }
    CachedTables c;
    c.q = canonical_phase(q);
    c.per_herald[0] = build_stage2(c.q, Pol::H);
    c.per_herald[1] = build_stage2(c.q, Pol::V);
    cache.push_back(std::move(c));
    return cache.back().per_herald[herald == Pol::H ? 0 : 1];
  }

  void log_steps(TrialTrace* trace, const std::string& stage,
                 const std::vector<ElementStep>& steps) const {
    if (!trace) return;
    for (const auto& step : steps) {
      AccessRecord rec;
      rec.stage = stage;
      rec.element = step.name;
      for (const auto& m : step.modes) rec.modes.push_back(m.id);
      trace->accesses.push_back(std::move(rec));
    }
  }
};

ProtocolEngine::ProtocolEngine(const TeleportSetup& setup)
    : impl_(std::make_unique<Impl>(setup)) {}

ProtocolEngine::~ProtocolEngine() = default;

TrialResult ProtocolEngine::trial(const RetryPolicy& policy, std::uint64_t seed,
                                  std::uint64_t trial_index,
                                  bool record_trace) {
  policy.validate();
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(trial_index)));
  TrialResult result;
  TrialTrace trace;
  TrialTrace* tr = record_trace ? &trace : nullptr;
  auto event = [&](const std::string& s) {
    if (tr) tr->events.push_back(s);
  };

  LogicalQubit current = impl_->setup.input;
  for (std::uint32_t round = 1;; ++round) {
    // Fusion-1 attempts, two fresh Bell pairs each; the input word idles.
    event("phase:" + to_string(ProtocolPhase::AwaitType1));
    bool heralded = false;
    Pol herald = Pol::H;
    for (std::uint32_t t1 = 0; t1 < policy.max_type1_attempts && !heralded;
         ++t1) {
      ++result.type1_attempts;
      result.bell_pairs_consumed += 2;
      impl_->log_steps(tr, "fusion1", impl_->steps1);
      const double u = next_u(rng);
      if (u < impl_->stage1.p_success[0]) {
        herald = Pol::H;
        heralded = true;
      } else if (u < impl_->stage1.p_success[0] + impl_->stage1.p_success[1]) {
        herald = Pol::V;
        heralded = true;
      }
      event(heralded ? std::string("herald:") + (herald == Pol::H ? "H" : "V")
                     : std::string("type1-failure"));
    }
    if (!heralded) {
      result.phase = ProtocolPhase::Aborted;
      event("phase:" + to_string(ProtocolPhase::Aborted));
      break;
    }

    event("phase:" + to_string(ProtocolPhase::AwaitType2));
    ++result.type2_attempts;
    impl_->log_steps(tr, "fusion2", impl_->steps2);
    const Stage2Table& table = impl_->tables_for(current, herald);
    double u = next_u(rng);
    const SuccessEntry* hit = nullptr;
    const FailureEntry* miss = nullptr;
    for (const auto& entry : table.successes) {
      if (u < entry.p) {
        hit = &entry;
        break;
      }
      u -= entry.p;
    }
    if (!hit && table.failures.empty()) {
      hit = &table.successes.back();  // float slop on an all-success table
    } else if (!hit) {
      for (const auto& entry : table.failures) {
        if (u < entry.p || &entry == &table.failures.back()) {
          miss = &entry;
          break;
        }
        u -= entry.p;
      }
    }

    if (hit) {
      result.phase = ProtocolPhase::Done;
      result.delivered_fidelity = hit->fidelity;
      result.first_attempt_success =
          result.type1_attempts == 1 && result.type2_attempts == 1;
      event(std::string("outputs:") +
            (hit->outputs[0] == Pol::H ? "H" : "V") +
            (hit->outputs[1] == Pol::H ? "H" : "V") +
            (hit->outputs[2] == Pol::H ? "H" : "V"));
      event("phase:" + to_string(ProtocolPhase::Done));
      break;
    }

    event("type2-failure:bunch@" + std::to_string(miss->bunch_beam));
    const bool rounds_left =
        round < policy.max_type2_attempts ||
        policy.max_type2_attempts == RetryPolicy::kUnbounded;
    if (!policy.recovery_enabled || !rounds_left) {
      result.phase = ProtocolPhase::Aborted;
      event("phase:" + to_string(ProtocolPhase::Aborted));
      break;
    }

    // Recovery: the input word survived on beam 1 up to a heralded bit flip;
    // re-prepare it (idealized) and start a fresh round.
    event("phase:" + to_string(ProtocolPhase::Recovering));
    ++result.recovery_rounds;
    double pu = next_u(rng);
    LogicalQubit sampled = miss->posterior.back().second;
    for (const auto& [lambda, qubit] : miss->posterior) {
      if (pu < lambda) {
        sampled = qubit;
        break;
      }
      pu -= lambda;
    }
    if (miss->bunch_beam == 2) {
      sampled = LogicalQubit(sampled.beta, sampled.alpha);  // owed bit flip
    }
    current = sampled;
    event("recovered-qubit");
  }

  if (tr) result.trace = trace;
  return result;
}

TrialResult run_protocol_trial(const TeleportSetup& setup,
                               const RetryPolicy& policy, std::uint64_t seed,
                               std::uint64_t trial_index, bool record_trace) {
  ProtocolEngine engine(setup);
  return engine.trial(policy, seed, trial_index, record_trace);
}

std::vector<TrialResult> run_protocol(const TeleportSetup& setup,
                                      const RetryPolicy& policy,
                                      std::uint64_t trials,
                                      std::uint64_t seed) {
  ProtocolEngine engine(setup);
  std::vector<TrialResult> out;
  out.reserve(trials);
  for (std::uint64_t i = 0; i < trials; ++i)
    out.push_back(engine.trial(policy, seed, i));
  return out;
}

RunStats aggregate(const std::vector<TrialResult>& trials) {
  if (trials.empty())
    throw std::invalid_argument("aggregate: no trials");
  RunStats st;
  st.trials = trials.size();
  double fid_sum = 0.0;
  double min_fid = 2.0;
  std::uint64_t first = 0;
  for (const auto& t : trials) {
    st.mean_bell_pairs += t.bell_pairs_consumed;
    st.mean_type1_attempts += t.type1_attempts;
    st.mean_type2_attempts += t.type2_attempts;
    st.mean_recovery_rounds += t.recovery_rounds;
    if (t.phase == ProtocolPhase::Done) {
      ++st.successes;
      fid_sum += t.delivered_fidelity;
      min_fid = std::min(min_fid, t.delivered_fidelity);
      if (t.first_attempt_success) ++first;
    }
  }
  const double n = static_cast<double>(st.trials);
  st.eventual_success_rate = st.successes / n;
  st.single_shot_success_rate = first / n;
  st.abort_rate = 1.0 - st.eventual_success_rate;
  st.mean_bell_pairs /= n;
  st.mean_type1_attempts /= n;
  st.mean_type2_attempts /= n;
  st.mean_recovery_rounds /= n;
  if (st.successes > 0) {
    st.mean_delivered_fidelity = fid_sum / st.successes;
    st.min_delivered_fidelity = min_fid;
  }
  return st;
}

}  // namespace reencoder
