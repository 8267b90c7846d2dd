#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "reencoder/parity_encoding.hpp"

using namespace reencoder;

namespace {

const SpatialMode m1{"p"};
const SpatialMode m2{"q"};
const SpatialMode m3{"r"};
const SpatialMode m4{"s"};

const double kR = 1.0 / std::sqrt(2.0);
constexpr double kPi = 3.14159265358979323846;

OccupationConfig word(std::initializer_list<std::pair<SpatialMode, Pol>> pols) {
  OccupationConfig cfg;
  for (const auto& [m, p] : pols) cfg.add({m, p, DistTag::Matched});
  return cfg;
}

}  // namespace

TEST_CASE("logical qubits normalize on construction") {
  const LogicalQubit q{3.0, 4.0};
  CHECK(std::abs(q.alpha) == doctest::Approx(0.6));
  CHECK(std::abs(q.beta) == doctest::Approx(0.8));
  CHECK_THROWS_AS(LogicalQubit(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("bloch angles produce the usual amplitudes") {
  const LogicalQubit q = BlochAngles{kPi / 2.0, kPi / 2.0}.to_qubit();
  CHECK(q.alpha.real() == doctest::Approx(kR));
  CHECK(q.beta.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q.beta.imag() == doctest::Approx(kR));
  CHECK_THROWS_AS((BlochAngles{-0.1, 0.0}.to_qubit()), std::invalid_argument);
  CHECK_THROWS_AS((BlochAngles{3.2, 0.0}.to_qubit()), std::invalid_argument);
}

TEST_CASE("code words weight even strings by alpha and odd by beta") {
  const LogicalQubit q{0.8, 0.6};

  SUBCASE("one photon is the bare qubit") {
    const PhotonicState s = parity_state(q, 1, {m1});
    CHECK(s.amplitude(word({{m1, Pol::H}})).real() == doctest::Approx(0.8));
    CHECK(s.amplitude(word({{m1, Pol::V}})).real() == doctest::Approx(0.6));
  }
  SUBCASE("two photons split into the four pair strings") {
    const PhotonicState s = parity_state(q, 2, {m1, m2});
    CHECK(s.term_count() == 4);
    CHECK(s.amplitude(word({{m1, Pol::H}, {m2, Pol::H}})).real() ==
          doctest::Approx(0.8 * kR));
    CHECK(s.amplitude(word({{m1, Pol::V}, {m2, Pol::V}})).real() ==
          doctest::Approx(0.8 * kR));
    CHECK(s.amplitude(word({{m1, Pol::H}, {m2, Pol::V}})).real() ==
          doctest::Approx(0.6 * kR));
    CHECK(squared_norm(s) == doctest::Approx(1.0));
  }
  SUBCASE("three photons carry magnitude 1/2 per string") {
    const PhotonicState s = parity_state(q, 3, {m1, m2, m3});
    CHECK(s.term_count() == 8);
    CHECK(s.amplitude(word({{m1, Pol::H}, {m2, Pol::V}, {m3, Pol::V}}))
              .real() == doctest::Approx(0.8 * 0.5));
    CHECK(s.amplitude(word({{m1, Pol::V}, {m2, Pol::H}, {m3, Pol::H}}))
              .real() == doctest::Approx(0.6 * 0.5));
    CHECK(squared_norm(s) == doctest::Approx(1.0));
  }
}

TEST_CASE("the maximally entangled pair is the zero-logical code word") {
  CHECK(state_overlap(bell_phi_plus(m1, m2),
                      parity_state(LogicalQubit{1.0, 0.0}, 2, {m1, m2})) ==
        doctest::Approx(1.0));
}

TEST_CASE("nonmaximal pair plus two plates prepares the code word") {
  for (double theta : {0.0, 0.4, kPi / 2.0, 2.5, kPi}) {
    for (double phi : {0.0, 1.0, 4.4}) {
      const LogicalQubit q = BlochAngles{theta, phi}.to_qubit();
      const PhotonicState direct = parity_state(q, 2, {m1, m2});
      const PhotonicState prepared = prepare_via_nonmaximal(q, m1, m2);
      CHECK(std::abs(inner_product(direct, prepared) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("logical readout inverts encoding and rejects junk") {
  const LogicalQubit q = BlochAngles{1.2, 2.5}.to_qubit();
  const LogicalQubit back = extract_logical(parity_state(q, 3, {m1, m2, m3}),
                                            {m1, m2, m3});
  CHECK(std::abs(back.alpha - q.alpha) < 1e-12);
  CHECK(std::abs(back.beta - q.beta) < 1e-12);

  PhotonicState junk;
  junk.add_term(word({{m1, Pol::H}, {m2, Pol::H}, {m3, Pol::H}}), 1.0);
  CHECK_THROWS_AS(extract_logical(junk, {m1, m2, m3}), std::invalid_argument);
}

TEST_CASE("measuring one photon halves the word and may swap roles") {
  const std::vector<SpatialMode> all{m1, m2, m3, m4};
  for (int n = 2; n <= 4; ++n) {
    const std::vector<SpatialMode> modes(all.begin(), all.begin() + n);
    const LogicalQubit q = BlochAngles{0.9, 5.1}.to_qubit();
    const PhotonicState s = parity_state(q, n, modes);
    for (std::size_t index = 0; index < modes.size(); ++index) {
      std::vector<SpatialMode> rest;
      for (std::size_t j = 0; j < modes.size(); ++j)
        if (j != index) rest.push_back(modes[j]);

      const CollapseResult rh = collapse_component(s, modes, index, Pol::H);
      CHECK(rh.probability == doctest::Approx(0.5));
      CHECK_FALSE(rh.bit_flip_owed);
      const LogicalQubit qh = extract_logical(rh.state, rest);
      CHECK(std::abs(qh.alpha - q.alpha) < 1e-12);
      CHECK(std::abs(qh.beta - q.beta) < 1e-12);

      const CollapseResult rv = collapse_component(s, modes, index, Pol::V);
      CHECK(rv.probability == doctest::Approx(0.5));
      CHECK(rv.bit_flip_owed);
      const LogicalQubit qv = extract_logical(rv.state, rest);
      CHECK(std::abs(qv.alpha - q.beta) < 1e-12);
      CHECK(std::abs(qv.beta - q.alpha) < 1e-12);
    }
  }
}

TEST_CASE("logical rotations act on the encoded qubit") {
  const std::vector<SpatialMode> modes{m1, m2, m3};
  const LogicalQubit q = BlochAngles{1.0, 0.3}.to_qubit();
  const PhotonicState s = parity_state(q, 3, modes);

  SUBCASE("an X half-turn swaps the words up to phase") {
    const PhotonicState swapped = apply_logical_xtheta(s, modes, kPi);
    const PhotonicState target =
        parity_state(LogicalQubit{q.beta, q.alpha}, 3, modes);
    CHECK(state_overlap(swapped, target) == doctest::Approx(1.0));
  }
  SUBCASE("a partial X rotation matches the two-level formula") {
    const double theta = 0.77;
    const Amplitude c = std::cos(theta / 2.0);
    const Amplitude is{0.0, std::sin(theta / 2.0)};
    const PhotonicState rotated = apply_logical_xtheta(s, modes, theta);
    const PhotonicState target = parity_state(
        LogicalQubit{c * q.alpha - is * q.beta, c * q.beta - is * q.alpha}, 3,
        modes);
    CHECK(state_overlap(rotated, target) == doctest::Approx(1.0));
  }
  SUBCASE("logical Z flips the odd word's sign") {
    const PhotonicState flipped = apply_logical_z(s, modes);
    const PhotonicState target =
        parity_state(LogicalQubit{q.alpha, -q.beta}, 3, modes);
    CHECK(std::abs(inner_product(target, flipped) - 1.0) < 1e-12);
  }
}
