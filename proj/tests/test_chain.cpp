#include <doctest.h>

#include "fccfold/benchmark.hpp"
#include "fccfold/chain.hpp"
#include "fccfold/error.hpp"
#include "oracles.hpp"

using namespace fccfold;
namespace ft = fccfold::testing;

TEST_CASE("residue classification follows the hydrophobic/polar split") {
  for (char c : std::string("GAPVLIMFYW")) CHECK(classify(c) == ResidueClass::H);
  for (char c : std::string("STCNQKHRDE")) CHECK(classify(c) == ResidueClass::P);
  CHECK_THROWS_AS(classify('B'), FoldError);
}

TEST_CASE("parse_sequence: plain strings") {
  const Sequence gav = Sequence::parse("GAV");
  CHECK(gav.length() == 3);
  CHECK(gav.h_count() == 3);
  const Sequence ses = Sequence::parse("SES");
  CHECK(ses.length() == 3);
  CHECK(ses.h_count() == 0);
}

TEST_CASE("parse_sequence: FASTA records and whitespace") {
  const Sequence seq = Sequence::parse(">1ABC some description\nGAV\n LIF \n");
  CHECK(seq.id() == "1ABC");
  CHECK(seq.residues() == "GAVLIF");
  CHECK(seq.length() == 6);
}

TEST_CASE("parse_sequence: rejection names the offending position") {
  try {
    Sequence::parse("GAXV");
    FAIL("expected FoldError");
  } catch (const FoldError& e) {
    const std::string message = e.what();
    CHECK(message.find("'X'") != std::string::npos);
    CHECK(message.find("position 3") != std::string::npos);
  }
  CHECK_THROWS_AS(Sequence::parse("GA"), FoldError);  // too short
}

TEST_CASE("the bundled 4RXN sequence has the registered length and H count") {
  const Sequence seq = suite_entry("4RXN").parse();
  CHECK(seq.length() == 54);
  CHECK(seq.h_count() == 27);
}

TEST_CASE("rebuild_coords: valid two-step walk") {
  const std::vector<std::uint8_t> dirs = {0, 3};  // v1 then v4
  const Rebuild r = rebuild_coords(dirs);
  REQUIRE(r.ok());
  REQUIRE(r.coords.size() == 3);
  CHECK(r.coords[0] == LatticePoint(0, 0, 0));
  CHECK(r.coords[1] == LatticePoint(1, 1, 0));
  CHECK(r.coords[2] == LatticePoint(2, 0, 0));
}

TEST_CASE("rebuild_coords: immediate backtrack collides at step two") {
  const std::vector<std::uint8_t> dirs = {0, 1};  // v1 then v2 = -v1
  const Rebuild r = rebuild_coords(dirs);
  CHECK_FALSE(r.ok());
  CHECK(r.collision_at == 2);
}

TEST_CASE("alternating v1/v4 zig-zag is valid for every length") {
  for (int n = 3; n <= 200; ++n) {
    const Conformation c = zigzag(n);
    CHECK(c.size() == n);
    CHECK(is_valid_saw(c));
  }
}

TEST_CASE("initialise always yields a valid walk") {
  const Sequence seq = ft::all_h_sequence(54);
  Rng rng(2024);
  for (int draw = 0; draw < 2000; ++draw) {
    const Conformation c = initialise(seq, rng);
    CHECK(c.size() == 54);
    CHECK(is_valid_saw(c));
  }
}

TEST_CASE("initialise is deterministic for a fixed seed") {
  const Sequence seq = ft::all_h_sequence(30);
  Rng a(42);
  Rng b(42);
  const Conformation ca = initialise(seq, a);
  const Conformation cb = initialise(seq, b);
  CHECK(ca.dirs == cb.dirs);
}

TEST_CASE("initialise falls back to the zig-zag when every attempt dies") {
  // Find a seed whose single attempt picks an immediate backtrack.
  const Sequence seq = ft::all_h_sequence(3);
  bool exercised = false;
  for (std::uint64_t seed = 0; seed < 4000 && !exercised; ++seed) {
    Rng probe(seed);
    const int k1 = static_cast<int>(probe.below(12));
    const int k2 = static_cast<int>(probe.below(12));
    if (k2 != opposite_basis(k1)) continue;
    Rng rng(seed);
    const Conformation c = initialise(seq, rng, 1);
    CHECK(c.dirs == zigzag(3).dirs);
    exercised = true;
  }
  CHECK(exercised);
}

TEST_CASE("duplicate keys equal exactly for equal direction lists") {
  const Conformation a = from_directions({0, 3, 0});
  const Conformation b = from_directions({0, 3, 0});
  const Conformation c = from_directions({3, 0, 3});
  CHECK(duplicate_key(a) == duplicate_key(b));
  CHECK(duplicate_key(a) != duplicate_key(c));
}

TEST_CASE("direction lists are determined by coordinates") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Conformation c = ft::random_walk_conformation(rng, 16);
    // Re-derive directions from coordinate differences.
    std::vector<std::uint8_t> derived;
    for (std::size_t i = 0; i + 1 < c.coords.size(); ++i) {
      derived.push_back(
          static_cast<std::uint8_t>(basis_index(c.coords[i + 1] - c.coords[i])));
    }
    CHECK(derived == c.dirs);
  }
}

TEST_CASE("direction_difference counts differing entries") {
  const Conformation a = from_directions({0, 3, 0, 3});
  const Conformation b = from_directions({0, 3, 0, 3});
  const Conformation c = from_directions({0, 3, 4, 3});
  CHECK(direction_difference(a, b) == doctest::Approx(0.0));
  CHECK(direction_difference(a, c) == doctest::Approx(0.25));
}
