#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "reencoder/photonic_state.hpp"

using namespace reencoder;

namespace {

const SpatialMode ma{"a"};
const SpatialMode mb{"b"};
const SpatialMode mc{"c"};

OccupationConfig cfg_of(std::initializer_list<PhotonKey> keys) {
  OccupationConfig cfg;
  for (const auto& k : keys) cfg.add(k);
  return cfg;
}

}  // namespace

TEST_CASE("occupation configs keep counts sorted and zero-free") {
  OccupationConfig cfg;
  cfg.add({mb, Pol::V, DistTag::Matched}, 2);
  cfg.add({ma, Pol::H, DistTag::Matched});
  CHECK(cfg.total_photons() == 3);
  CHECK(cfg.count({mb, Pol::V, DistTag::Matched}) == 2);
  CHECK(cfg.count({mb, Pol::H, DistTag::Matched}) == 0);

  // entries come back ordered by key regardless of insertion order
  REQUIRE(cfg.entries().size() == 2);
  CHECK(cfg.entries()[0].first.mode.id == "a");
  CHECK(cfg.entries()[1].first.mode.id == "b");

  // zero counts can never enter: non-positive increments are rejected
  CHECK_THROWS_AS(cfg.add({mb, Pol::V, DistTag::Matched}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cfg.add({mb, Pol::V, DistTag::Matched}, -2),
                  std::invalid_argument);
  CHECK(cfg.entries().size() == 2);

  SUBCASE("equal content compares equal independent of build order") {
    OccupationConfig other;
    other.add({ma, Pol::H, DistTag::Matched});
    other.add({mb, Pol::V, DistTag::Matched});
    other.add({mb, Pol::V, DistTag::Matched});
    CHECK(cfg == other);
  }
}

TEST_CASE("occupation configs report per-mode photon totals and splits") {
  OccupationConfig cfg;
  cfg.add({ma, Pol::H, DistTag::Matched});
  cfg.add({ma, Pol::V, DistTag::Prime});
  cfg.add({mb, Pol::V, DistTag::Matched}, 2);
  CHECK(cfg.photons_in_mode(ma) == 2);
  CHECK(cfg.photons_in_mode(mb) == 2);
  CHECK(cfg.photons_in_mode(mc) == 0);
  CHECK(cfg.modes() == std::set<SpatialMode>{ma, mb});

  auto [sel, rest] = cfg.split_modes({ma});
  CHECK(sel.total_photons() == 2);
  CHECK(rest.total_photons() == 2);
  CHECK(sel.modes() == std::set<SpatialMode>{ma});
  CHECK(rest.modes() == std::set<SpatialMode>{mb});
}

TEST_CASE("states accumulate amplitudes per configuration") {
  PhotonicState s;
  const auto cfg = cfg_of({{ma, Pol::H, DistTag::Matched}});
  s.add_term(cfg, 0.25);
  s.add_term(cfg, 0.5);
  CHECK(s.term_count() == 1);
  CHECK(s.amplitude(cfg).real() == doctest::Approx(0.75));
  CHECK(s.amplitude(cfg_of({{ma, Pol::V, DistTag::Matched}})) == Amplitude{});

  s *= Amplitude{0.0, 2.0};
  CHECK(s.amplitude(cfg).imag() == doctest::Approx(1.5));
}

TEST_CASE("vacuum and single-photon constructors") {
  CHECK(PhotonicState::vacuum().amplitude(OccupationConfig::vacuum()) ==
        Amplitude{1.0});
  const PhotonicState one = PhotonicState::single_photon(ma, Pol::V);
  CHECK(one.amplitude(cfg_of({{ma, Pol::V, DistTag::Matched}})) ==
        Amplitude{1.0});
  CHECK(squared_norm(one) == doctest::Approx(1.0));
}

TEST_CASE("inner product is conjugate-linear in its first slot") {
  PhotonicState s1 = PhotonicState::single_photon(ma, Pol::H);
  s1 *= Amplitude{0.0, 1.0};
  const PhotonicState s2 = PhotonicState::single_photon(ma, Pol::H);
  const Amplitude ip = inner_product(s1, s2);
  CHECK(ip.real() == doctest::Approx(0.0));
  CHECK(ip.imag() == doctest::Approx(-1.0));
  CHECK(state_overlap(s1, s2) == doctest::Approx(1.0));  // phase-blind
}

TEST_CASE("photons with different tags never overlap") {
  const PhotonicState matched = PhotonicState::single_photon(ma, Pol::H);
  const PhotonicState primed =
      PhotonicState::single_photon(ma, Pol::H, DistTag::Prime);
  CHECK(inner_product(matched, primed) == Amplitude{});
}

TEST_CASE("tensor product multiplies amplitudes and merges configs") {
  const double r = 1.0 / std::sqrt(2.0);
  PhotonicState left = PhotonicState::single_photon(ma, Pol::H) +
                       PhotonicState::single_photon(ma, Pol::V);
  left *= r;
  const PhotonicState right = PhotonicState::single_photon(mb, Pol::V);
  const PhotonicState joint = tensor(left, right);
  CHECK(joint.term_count() == 2);
  CHECK(squared_norm(joint) == doctest::Approx(1.0));
  CHECK(joint.amplitude(cfg_of({{ma, Pol::H, DistTag::Matched},
                                {mb, Pol::V, DistTag::Matched}}))
            .real() == doctest::Approx(r));

  SUBCASE("overlapping mode sets are rejected") {
    CHECK_THROWS_AS(tensor(left, PhotonicState::single_photon(ma, Pol::H)),
                    std::invalid_argument);
  }
}

TEST_CASE("normalize rescales to unit norm and rejects the zero state") {
  PhotonicState s = PhotonicState::single_photon(ma, Pol::H);
  s *= 3.0;
  CHECK(squared_norm(normalize(s)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(normalize(PhotonicState{}), std::domain_error);
}

TEST_CASE("pruning drops only negligible amplitudes") {
  PhotonicState s;
  s.add_term(cfg_of({{ma, Pol::H, DistTag::Matched}}), 0.5);
  s.add_term(cfg_of({{ma, Pol::V, DistTag::Matched}}), 1e-16);
  const PhotonicState p = pruned(s);
  CHECK(p.term_count() == 1);
  CHECK(p.amplitude(cfg_of({{ma, Pol::H, DistTag::Matched}})).real() ==
        doctest::Approx(0.5));
}

TEST_CASE("debug rendering is stable and names tagged photons") {
  PhotonicState s;
  s.add_term(cfg_of({{ma, Pol::H, DistTag::Matched},
                     {mb, Pol::V, DistTag::Prime}}),
             0.5);
  const std::string txt = to_debug_string(s);
  CHECK(txt.find("H_a") != std::string::npos);
  CHECK(txt.find("V'_b") != std::string::npos);
  CHECK(txt == to_debug_string(s));
}
