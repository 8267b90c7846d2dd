#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "reencoder/optical_elements.hpp"

using namespace reencoder;

namespace {

const SpatialMode ma{"a"};
const SpatialMode mb{"b"};
const SpatialMode mo1{"o1"};
const SpatialMode mo2{"o2"};

const double kR = 1.0 / std::sqrt(2.0);

OccupationConfig cfg_of(std::initializer_list<std::pair<PhotonKey, int>> keys) {
  OccupationConfig cfg;
  for (const auto& [k, n] : keys) cfg.add(k, n);
  return cfg;
}

// A seeded superposition spread over two beams with multi-photon terms,
// exercising every normalization branch of the substitution engine.
PhotonicState random_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  PhotonicState s;
  for (int t = 0; t < 6; ++t) {
    OccupationConfig cfg;
    auto roll = [&](const PhotonKey& key, int limit) {
      const int n = static_cast<int>(rng() % static_cast<std::uint64_t>(limit));
      if (n > 0) cfg.add(key, n);
    };
    roll({ma, Pol::H, DistTag::Matched}, 3);
    roll({ma, Pol::V, DistTag::Matched}, 3);
    roll({mb, Pol::H, DistTag::Prime}, 2);
    if (cfg.empty()) continue;
    s.add_term(cfg, Amplitude{u() - 0.5, u() - 0.5});
  }
  return normalize(s);
}

}  // namespace

TEST_CASE("polarization unitaries act on single photons as written") {
  const PhotonicState h = PhotonicState::single_photon(ma, Pol::H);
  // row-major {u00,u01,u10,u11}: H -> u00 H + u10 V
  const PhotonicState out =
      apply_polarization_unitary(h, ma, {0.6, 0.8, 0.8, -0.6});
  CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 1}})).real() ==
        doctest::Approx(0.6));
  CHECK(out.amplitude(cfg_of({{{ma, Pol::V, DistTag::Matched}, 1}})).real() ==
        doctest::Approx(0.8));
}

TEST_CASE("polarization unitaries leave other beams and tags alone") {
  PhotonicState s = PhotonicState::single_photon(mb, Pol::V, DistTag::Prime);
  const PhotonicState out = apply_hwp22_5(s, ma);
  CHECK(out.amplitude(cfg_of({{{mb, Pol::V, DistTag::Prime}, 1}})) ==
        Amplitude{1.0});

  // the plate on the photon's own beam preserves its tag
  const PhotonicState rotated = apply_hwp22_5(s, mb);
  CHECK(rotated.amplitude(cfg_of({{{mb, Pol::H, DistTag::Prime}, 1}})).real() ==
        doctest::Approx(kR));
  CHECK(rotated.amplitude(cfg_of({{{mb, Pol::V, DistTag::Prime}, 1}})).real() ==
        doctest::Approx(-kR));
}

TEST_CASE("half-wave plate on photon pairs carries bosonic factors") {
  SUBCASE("HV pair interferes to the bunched difference") {
    PhotonicState s;
    s.add_term(cfg_of({{{ma, Pol::H, DistTag::Matched}, 1},
                       {{ma, Pol::V, DistTag::Matched}, 1}}),
               1.0);
    const PhotonicState out = apply_hwp22_5(s, ma);
    CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 2}})).real() ==
          doctest::Approx(kR));
    CHECK(out.amplitude(cfg_of({{{ma, Pol::V, DistTag::Matched}, 2}})).real() ==
          doctest::Approx(-kR));
    CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 1},
                                {{ma, Pol::V, DistTag::Matched}, 1}})) ==
          Amplitude{});
    CHECK(squared_norm(out) == doctest::Approx(1.0));
  }
  SUBCASE("HH pair splits with multinomial weights") {
    PhotonicState s;
    s.add_term(cfg_of({{{ma, Pol::H, DistTag::Matched}, 2}}), 1.0);
    const PhotonicState out = apply_hwp22_5(s, ma);
    CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 2}})).real() ==
          doctest::Approx(0.5));
    CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 1},
                                {{ma, Pol::V, DistTag::Matched}, 1}}))
              .real() == doctest::Approx(kR));
    CHECK(out.amplitude(cfg_of({{{ma, Pol::V, DistTag::Matched}, 2}})).real() ==
          doctest::Approx(0.5));
    CHECK(squared_norm(out) == doctest::Approx(1.0));
  }
}

TEST_CASE("quarter-wave plate advances V by a quarter turn") {
  const PhotonicState v = PhotonicState::single_photon(ma, Pol::V);
  const PhotonicState out = apply_qwp0(v, ma);
  const Amplitude amp =
      out.amplitude(cfg_of({{{ma, Pol::V, DistTag::Matched}, 1}}));
  CHECK(amp.real() == doctest::Approx(0.0));
  CHECK(amp.imag() == doctest::Approx(1.0));
  CHECK(apply_qwp0(PhotonicState::single_photon(ma, Pol::H), ma)
            .amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 1}})) ==
        Amplitude{1.0});
}

TEST_CASE("beam splitter transmits H and reflects V without a phase") {
  PhotonicState s = tensor(PhotonicState::single_photon(ma, Pol::H),
                           PhotonicState::single_photon(mb, Pol::V));
  const PhotonicState out = apply_pbs(s, ma, mb, mo1, mo2);
  // H from the first port goes straight through; V from the second crosses.
  CHECK(out.amplitude(cfg_of({{{mo1, Pol::H, DistTag::Matched}, 1},
                              {{mo1, Pol::V, DistTag::Matched}, 1}})) ==
        Amplitude{1.0});

  SUBCASE("V from the first port crosses the other way") {
    PhotonicState t = PhotonicState::single_photon(ma, Pol::V);
    const PhotonicState r = apply_pbs(t, ma, mb, mo1, mo2);
    CHECK(r.amplitude(cfg_of({{{mo2, Pol::V, DistTag::Matched}, 1}})) ==
          Amplitude{1.0});
  }
  SUBCASE("tags ride through unchanged") {
    PhotonicState t = PhotonicState::single_photon(ma, Pol::V, DistTag::Prime);
    const PhotonicState r = apply_pbs(t, ma, mb, mo1, mo2);
    CHECK(r.amplitude(cfg_of({{{mo2, Pol::V, DistTag::Prime}, 1}})) ==
          Amplitude{1.0});
  }
  SUBCASE("a requested reflection phase lands on reflected photons only") {
    PhotonicState t = tensor(PhotonicState::single_photon(ma, Pol::V),
                             PhotonicState::single_photon(mb, Pol::H));
    const PhotonicState r =
        apply_pbs_general(t, ma, mb, mo1, mo2, Amplitude{0.0, 1.0});
    const Amplitude amp =
        r.amplitude(cfg_of({{{mo2, Pol::V, DistTag::Matched}, 1},
                            {{mo2, Pol::H, DistTag::Matched}, 1}}));
    CHECK(amp.real() == doctest::Approx(0.0));
    CHECK(amp.imag() == doctest::Approx(1.0));
  }
  SUBCASE("occupied output beams are rejected") {
    PhotonicState t = tensor(PhotonicState::single_photon(ma, Pol::H),
                             PhotonicState::single_photon(mo1, Pol::H));
    CHECK_THROWS_AS(apply_pbs(t, ma, mb, mo1, mo2), std::invalid_argument);
  }
}

TEST_CASE("pauli flips act per mode") {
  PhotonicState s = PhotonicState::single_photon(ma, Pol::V);
  CHECK(apply_pauli(s, ma, PauliOp::X)
            .amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 1}})) ==
        Amplitude{1.0});
  CHECK(apply_pauli(s, ma, PauliOp::Z)
            .amplitude(cfg_of({{{ma, Pol::V, DistTag::Matched}, 1}})) ==
        Amplitude{-1.0});

  SUBCASE("sign scales with the V count") {
    PhotonicState two;
    two.add_term(cfg_of({{{ma, Pol::V, DistTag::Matched}, 2}}), 1.0);
    CHECK(apply_pauli(two, ma, PauliOp::Z)
              .amplitude(cfg_of({{{ma, Pol::V, DistTag::Matched}, 2}})) ==
          Amplitude{1.0});
  }
}

TEST_CASE("every element preserves the norm of arbitrary states") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const PhotonicState s = random_state(seed);
    CHECK(squared_norm(apply_hwp22_5(s, ma)) == doctest::Approx(1.0));
    CHECK(squared_norm(apply_qwp0(s, ma)) == doctest::Approx(1.0));
    CHECK(squared_norm(apply_pauli(s, ma, PauliOp::X)) == doctest::Approx(1.0));
    CHECK(squared_norm(apply_pauli(s, ma, PauliOp::Z)) == doctest::Approx(1.0));
    CHECK(squared_norm(apply_pbs(s, ma, mb, mo1, mo2)) == doctest::Approx(1.0));
    // an arbitrary unitary, not just the named plates
    const Amplitude i{0.0, 1.0};
    CHECK(squared_norm(apply_polarization_unitary(
              s, ma, {kR, kR * i, kR * i, kR})) == doctest::Approx(1.0));
  }
}

TEST_CASE("substitution handles identical multi-photon inputs exactly") {
  // two H photons through a 50/50-like rotation keep unit norm and show the
  // bunched enhancement, the smallest nontrivial bosonic check
  PhotonicState s;
  s.add_term(cfg_of({{{ma, Pol::H, DistTag::Matched}, 3}}), 1.0);
  const PhotonicState out = apply_hwp22_5(s, ma);
  CHECK(squared_norm(out) == doctest::Approx(1.0));
  // |3H> -> sum_k sqrt(C(3,k)/8) |kH,(3-k)V>, all positive
  CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 3}})).real() ==
        doctest::Approx(std::sqrt(1.0 / 8.0)));
  CHECK(out.amplitude(cfg_of({{{ma, Pol::H, DistTag::Matched}, 2},
                              {{ma, Pol::V, DistTag::Matched}, 1}}))
            .real() == doctest::Approx(std::sqrt(3.0 / 8.0)));
}
